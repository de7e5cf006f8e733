#include <stdio.h>
#include <string.h>

#include "vecprod.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, vp_last_error());                          \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    VpAlgebra *v = NULL, *h = NULL, *back = NULL, *bad = NULL;
    char *out = NULL;
    bool ok = false;

    CHECK(vp_construct("Q", "1,1,1", &v) == VP_STATUS_OK);
    CHECK(vp_dim(v) == 7);
    CHECK(vp_check(v, &ok) == VP_STATUS_OK && ok);

    CHECK(vp_multiply(v, "1,0,0,0,0,0,0", "0,1,0,0,0,0,0", &out) == VP_STATUS_OK);
    CHECK(strcmp(out, "0,0,1,0,0,0,0") == 0);
    vp_string_free(out);

    CHECK(vp_hurwitz(v, &h) == VP_STATUS_OK);
    CHECK(vp_is_unital(h) && vp_dim(h) == 8);
    CHECK(vp_check(h, &ok) == VP_STATUS_OK && ok);
    CHECK(vp_imaginary(h, &back) == VP_STATUS_OK);

    CHECK(vp_isomorphism(v, back, 20, &out) == VP_STATUS_OK);
    vp_string_free(out);

    CHECK(vp_construct("Q", "1,1,1,1", &bad) == VP_STATUS_INVALID_ARGUMENT && bad == NULL);
    CHECK(strstr(vp_last_error(), "at most 3") != NULL);

    vp_free(v);
    vp_free(h);
    vp_free(back);
    puts("ok");
    return 0;
}
