"""Independent oracles used across the test modules.

Everything here deliberately avoids the code paths it is checking:
polynomial arithmetic is dict-based, the 2x2 matrix model is explicit,
and lattice covolumes come from minor gcds rather than the HNF code.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from quatorders.orders import mul_vec

# ----- polynomial helpers (dense coefficient lists over Fraction) -----


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ]


def charpoly_frac(mat):
    """det(x I - M) over Q by permutation expansion; mat is n x n."""
    from itertools import permutations

    n = len(mat)
    total = [Fraction(0)] * (n + 1)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        poly = [Fraction(1)]
        for i in range(n):
            lin = [Fraction(-mat[i][perm[i]]), Fraction(1 if perm[i] == i else 0)]
            poly = poly_mul(poly, lin)
        total = poly_add(total, [sign * c for c in poly])
    return total


def left_mul_matrix(coeffs, alpha):
    """Rows r -> coords of alpha * e_r (transpose of left multiplication,
    same characteristic polynomial)."""
    units = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    return [mul_vec(coeffs, alpha, e) for e in units]


# ----- explicit 2x2 integer matrix models -----


class Mat2:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    def __mul__(self, other):
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other):
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def scale(self, s):
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def __eq__(self, other):
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def m2_model(scale_i=1, scale_j=1, scale_k=1):
    """Images of 1, i, j, k for the split-form orders: i -> -s E21,
    j -> s' E12, k -> s'' E11."""
    one = Mat2(1, 0, 0, 1)
    i = Mat2(0, 0, -scale_i, 0)
    j = Mat2(0, scale_j, 0, 0)
    k = Mat2(scale_k, 0, 0, 0)
    return one, i, j, k


def model_element(model, vec):
    one, i, j, k = model
    out = one.scale(vec[0])
    out = out + i.scale(vec[1]) + j.scale(vec[2]) + k.scale(vec[3])
    return out


# ----- independent lattice covolume via maximal-minor gcd -----


def covolume_from_generators(rows):
    """Covolume of the Z-span of rational 4-vectors: clear denominators,
    take the gcd of all 4x4 minors, undo the scaling."""
    den = 1
    work = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        work.append(fr)
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [[int(x * den) for x in r] for r in work]
    g = 0
    for sel in combinations(range(len(ints)), 4):
        m = [ints[i] for i in sel]
        g = gcd(g, abs(det4(m)))
    return Fraction(g, den**4)


def det4(m):
    total = 0
    from itertools import permutations

    for perm in permutations(range(4)):
        sign = 1
        seen = list(perm)
        for i in range(4):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        prod = 1
        for i in range(4):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


# ----- symbolic ternary form substitution -----


def form_to_poly(coeffs):
    a, b, c, u, v, w = coeffs
    return {(2, 0, 0): a, (0, 2, 0): b, (0, 0, 2): c,
            (0, 1, 1): u, (1, 0, 1): v, (1, 1, 0): w}


def substitute_linear(poly, umat):
    """Substitute (x, y, z) -> rows of umat acting on new variables."""
    out = {}
    vars_new = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def lin_combination(row):
        return {vars_new[t]: Fraction(row[t]) for t in range(3)}

    lin = [lin_combination(umat[i]) for i in range(3)]
    # old variable i equals sum_t umat[t][i] * new_t  (points transform by v @ U)
    old_as_new = [
        {vars_new[t]: Fraction(umat[t][i]) for t in range(3)} for i in range(3)
    ]

    def mono_expand(exps):
        acc = {(0, 0, 0): Fraction(1)}
        for var_idx, e in enumerate(exps):
            for _ in range(e):
                nxt = {}
                for m1, c1 in acc.items():
                    for m2, c2 in old_as_new[var_idx].items():
                        key = tuple(m1[t] + m2[t] for t in range(3))
                        nxt[key] = nxt.get(key, Fraction(0)) + c1 * c2
                acc = nxt
        return acc

    for exps, coef in poly.items():
        for mono, c in mono_expand(exps).items():
            out[mono] = out.get(mono, Fraction(0)) + coef * c
    return {k: v for k, v in out.items() if v}


def poly_to_form_coeffs(poly):
    return tuple(
        poly.get(key, Fraction(0))
        for key in ((2, 0, 0), (0, 2, 0), (0, 0, 2), (0, 1, 1), (1, 0, 1), (1, 1, 0))
    )
