#ifndef VECPROD_H
#define VECPROD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VpStatus {
  VP_STATUS_OK = 0,
  VP_STATUS_NULL_POINTER = 1,
  VP_STATUS_INVALID_UTF8 = 2,
  // Malformed field, scalar, vector or document.
  VP_STATUS_PARSE = 3,
  // Well-formed input the operation cannot accept (wrong kind, bad
  // dimension, too many norms, degenerate form).
  VP_STATUS_INVALID_ARGUMENT = 4,
  // Input does not satisfy the algebra axioms.
  VP_STATUS_NOT_AN_ALGEBRA = 5,
  VP_STATUS_NOT_ISOMORPHIC = 6,
  VP_STATUS_INCONCLUSIVE = 7,
  VP_STATUS_PANIC = 8,
} VpStatus;

// Opaque algebra handle.
typedef struct VpAlgebra VpAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next call on the same thread.
const char *vp_last_error(void);

// Builds the standard algebra from up to three comma-separated norms over
// `field` ("Q" or "Fp:<p>").
enum VpStatus vp_construct(const char *field, const char *norms_csv, struct VpAlgebra **out);

// Parses an algebra document.
enum VpStatus vp_from_json(const char *json, struct VpAlgebra **out);

// Canonical document text; release with `vp_string_free`.
enum VpStatus vp_to_json(const struct VpAlgebra *algebra, char **out);

void vp_string_free(char *s);

// Dimension of the algebra, or 0 for a null handle.
size_t vp_dim(const struct VpAlgebra *algebra);

bool vp_is_unital(const struct VpAlgebra *algebra);

// Runs the axiom check (vector product algebras) or the composition check
// with 1000 seeded random pairs (unital algebras).
enum VpStatus vp_check(const struct VpAlgebra *algebra, bool *passed);

// Product of two comma-separated coordinate vectors, returned the same way.
enum VpStatus vp_multiply(const struct VpAlgebra *algebra,
                          const char *u_csv,
                          const char *v_csv,
                          char **out);

// Unital composition algebra of a vector product algebra.
enum VpStatus vp_hurwitz(const struct VpAlgebra *algebra, struct VpAlgebra **out);

// Vector product algebra on the orthogonal complement of the identity.
enum VpStatus vp_imaginary(const struct VpAlgebra *algebra, struct VpAlgebra **out);

// Searches for an isomorphism `a -> b`. On `VP_STATUS_OK`, `matrix_json`
// receives the matrix as a JSON array of rows of scalar strings.
// `VP_STATUS_NOT_ISOMORPHIC` and `VP_STATUS_INCONCLUSIVE` leave it null and
// put the reason in `vp_last_error`.
enum VpStatus vp_isomorphism(const struct VpAlgebra *a,
                             const struct VpAlgebra *b,
                             uint64_t height_bound,
                             char **matrix_json);

void vp_free(struct VpAlgebra *algebra);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VECPROD_H */
