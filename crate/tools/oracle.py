#!/usr/bin/env python3
"""Independent reference values for the vecprod test suite.

Builds composition algebras by Cayley-Dickson doubling of the base field,
reads off the vector product on the imaginary part in the basis of ordered
products of the adjoined generators, and writes canonical documents plus a
JSON file of frozen numbers. Pure Python, exact arithmetic only.

    python3 tools/oracle.py crates/core/tests/golden
"""

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path


class Fp:
    def __init__(self, p):
        self.p = p

    def __call__(self, x):
        return x % self.p

    def div(self, a, b):
        return a * pow(b, self.p - 2, self.p) % self.p


class Q:
    def __call__(self, x):
        return Fraction(x)

    def div(self, a, b):
        return Fraction(a) / b


# Cayley-Dickson elements are nested pairs; level 0 is a scalar.

def cd_zero(level):
    return 0 if level == 0 else (cd_zero(level - 1), cd_zero(level - 1))


def cd_add(x, y):
    if not isinstance(x, tuple):
        return x + y
    return (cd_add(x[0], y[0]), cd_add(x[1], y[1]))


def cd_neg(x):
    if not isinstance(x, tuple):
        return -x
    return (cd_neg(x[0]), cd_neg(x[1]))


def cd_scale(c, x):
    if not isinstance(x, tuple):
        return c * x
    return (cd_scale(c, x[0]), cd_scale(c, x[1]))


def cd_conj(x):
    if not isinstance(x, tuple):
        return x
    return (cd_conj(x[0]), cd_neg(x[1]))


def cd_mul(x, y, mus):
    """(a,b)(c,d) = (ac - mu d*b, da + bc*) with mu = mus[-1]."""
    if not isinstance(x, tuple):
        return x * y
    a, b = x
    c, d = y
    rest, mu = mus[:-1], mus[-1]
    first = cd_add(cd_mul(a, c, rest), cd_neg(cd_scale(mu, cd_mul(cd_conj(d), b, rest))))
    second = cd_add(cd_mul(d, a, rest), cd_mul(b, cd_conj(c), rest))
    return (first, second)


def flatten(x):
    if not isinstance(x, tuple):
        return [x]
    return flatten(x[0]) + flatten(x[1])


def unflatten(v):
    if len(v) == 1:
        return v[0]
    h = len(v) // 2
    return (unflatten(v[:h]), unflatten(v[h:]))


class CayleyDickson:
    def __init__(self, field, mus):
        self.f = field
        self.mus = [field(m) for m in mus]
        self.level = len(mus)
        self.n = 2 ** self.level

    def mul(self, x, y):
        r = cd_mul(unflatten(x), unflatten(y), self.mus)
        return [self.f(c) for c in flatten(r)]

    def norm(self, x):
        r = cd_mul(unflatten(x), cd_conj(unflatten(x)), self.mus)
        return self.f(flatten(r)[0])

    def ip(self, x, y):
        s = [a + b for a, b in zip(x, y)]
        return self.f.div(self.norm(s) - self.norm(x) - self.norm(y), 2)

    def generator(self, k):
        """j_k: the element adjoined at level k + 1."""
        v = [self.f(0)] * self.n
        v[2 ** k] = self.f(1)
        return v

    def cross(self, x, y):
        xy, yx = self.mul(x, y), self.mul(y, x)
        return [self.f.div(a - b, 2) for a, b in zip(xy, yx)]


def product_basis(cd, gens):
    """Left-nested products over non-empty subsets in bitmask order."""
    basis = []
    for mask in range(1, 2 ** len(gens)):
        factors = [g for i, g in enumerate(gens) if mask >> i & 1]
        acc = factors[0]
        for g in factors[1:]:
            acc = cd.cross(acc, g)
        basis.append(acc)
    return basis


def coords(cd, basis, x):
    return [cd.f.div(cd.ip(x, b), cd.ip(b, b)) for b in basis]


def vpa_from_cd(field, mus):
    cd = CayleyDickson(field, mus)
    gens = [cd.generator(k) for k in range(len(mus))]
    basis = product_basis(cd, gens)
    n = len(basis)
    gram = [[cd.ip(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    structure = [[coords(cd, basis, cd.cross(basis[i], basis[j])) for j in range(n)]
                 for i in range(n)]
    for i in range(n):
        for j in range(n):
            # the cross product stays imaginary and inside the span
            back = [field(0)] * cd.n
            for c, b in zip(structure[i][j], basis):
                back = [field(u + c * w) for u, w in zip(back, b)]
            assert back == cd.cross(basis[i], basis[j])
    return gram, structure, cd, basis


def unital_from_cd(field, mus):
    """The composition algebra itself in the basis (1, Π(A)...)."""
    cd = CayleyDickson(field, mus)
    gens = [cd.generator(k) for k in range(len(mus))]
    one = [field(0)] * cd.n
    one[0] = field(1)
    basis = [one] + product_basis(cd, gens)
    n = len(basis)
    gram = [[cd.ip(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    structure = [[coords(cd, basis, cd.mul(basis[i], basis[j])) for j in range(n)]
                 for i in range(n)]
    return gram, structure


def scalar_text(x, field):
    if isinstance(field, Q):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x % field.p)


def emit(field, gram, structure, identity_index=None):
    n = len(gram)
    row = lambda v: json.dumps([scalar_text(c, field) for c in v], separators=(",", ":"))
    kind = '{"kind":"Q"}' if isinstance(field, Q) else '{"kind":"Fp","p":%d}' % field.p
    out = ["{", '  "schema": "vpa-1",', f'  "field": {kind},', f'  "dim": {n},']
    if n == 0:
        out += ['  "gram": [],', '  "structure": []']
    else:
        out.append('  "gram": [')
        out += [f"    {row(r)}" + ("," if i + 1 < n else "") for i, r in enumerate(gram)]
        out.append("  ],")
        out.append('  "structure": [')
        for i, r in enumerate(structure):
            out.append("    [")
            out += [f"      {row(v)}" + ("," if j + 1 < n else "") for j, v in enumerate(r)]
            out.append("    ]" + ("," if i + 1 < n else ""))
        out.append("  ]")
    if identity_index is not None:
        out[-1] += ","
        out.append(f'  "identity_index": {identity_index}')
    out.append("}")
    return "\n".join(out) + "\n"


def mul_table(field, structure, x, y):
    n = len(structure)
    out = [field(0)] * n
    for i in range(n):
        for j in range(n):
            if x[i] and y[j]:
                c = x[i] * y[j]
                out = [field(o + c * s) for o, s in zip(out, structure[i][j])]
    return out


def d2_violations(field, gram, structure):
    n = len(gram)
    gp = [[[field(sum(gram[k][m] * structure[i][j][m] for m in range(n))) for k in range(n)]
           for j in range(n)] for i in range(n)]
    count = 0
    for i, x, j, l in itertools.product(range(n), repeat=4):
        lhs = field(sum(a * b for a, b in zip(structure[i][j], gp[x][l]))
                    + sum(a * b for a, b in zip(structure[x][j], gp[i][l])))
        rhs = field(2 * gram[i][x] * gram[j][l] - gram[i][j] * gram[x][l]
                    - gram[i][l] * gram[x][j])
        count += lhs != rhs
    return count


def sedenion_candidate(field, mus):
    """Commutator product on the imaginary sedenions, in the basis
    [Π-basis of the octonions, j4, Π-basis · j4]."""
    cd = CayleyDickson(field, list(mus) + [1])
    gens = [cd.generator(k) for k in range(3)]
    low = product_basis(cd, gens)
    z = cd.generator(3)
    basis = low + [z] + [cd.cross(b, z) for b in low]
    n = len(basis)
    gram = [[cd.ip(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    structure = [[coords(cd, basis, cd.cross(basis[i], basis[j])) for j in range(n)]
                 for i in range(n)]
    return gram, structure


def brute_force_isometric(p, d1, d2):
    n = len(d1)
    for entries in itertools.product(range(p), repeat=n * n):
        t = [entries[i * n:(i + 1) * n] for i in range(n)]
        ok = True
        for i in range(n):
            for j in range(n):
                s = sum(t[k][i] * d2[k] * t[k][j] for k in range(n)) % p
                if s != (d1[i] if i == j else 0):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def main(out_dir):
    out = Path(out_dir)
    q = Q()
    frozen = {}

    for name, mus in [("cross_q.json", [1, 1]), ("octonion_q.json", [1, 1, 1]),
                      ("split_q.json", [1, 2, 3])]:
        gram, structure, _, _ = vpa_from_cd(q, mus)
        assert d2_violations(q, gram, structure) == 0
        (out / name).write_text(emit(q, gram, structure))
    gram, structure = unital_from_cd(q, [1, 1, 1])
    (out / "octonion_unital_q.json").write_text(emit(q, gram, structure, 0))

    for fname, field, mus in [("Q", q, (1, 1, 1)), ("Q", q, (1, 2, 3)),
                              ("F7", Fp(7), (1, 1, 1)), ("F7", Fp(7), (2, 3, 5))]:
        gram, structure = sedenion_candidate(field, mus)
        key = f"d2_violations_{fname}_{'_'.join(map(str, mus))}"
        frozen[key] = d2_violations(field, gram, structure)
        # ((vw)u)z with u, v, w the generators and z the new one
        u, v, w, z = (([field(0)] * 15) for _ in range(4))
        u[0] = v[1] = w[3] = z[7] = field(1)
        vw = mul_table(field, structure, v, w)
        pivot = mul_table(field, structure, mul_table(field, structure, vw, u), z)
        frozen[f"pivot_{fname}_{'_'.join(map(str, mus))}"] = [scalar_text(c, field) for c in pivot]

    # Diagonal forms over F_3 in dimensions 1 and 3.
    table = {}
    for dim in (1, 3):
        forms = list(itertools.product([1, 2], repeat=dim))
        for a, b in itertools.product(forms, repeat=2):
            table[f"{a}|{b}"] = brute_force_isometric(3, list(a), list(b))
    frozen["f3_isometric_pairs"] = sorted(k for k, v in table.items() if v)
    frozen["f3_pairs_total"] = len(table)

    (out / "oracle.json").write_text(json.dumps(frozen, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/golden")
