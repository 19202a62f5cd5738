"""Brute-force reference implementations used only by the tests.

Nothing here imports the code under test except for the form primitives
(generators, wedge, derive) that the S-form oracle combines in a
different way, namely as a full antisymmetrization.
"""

from fractions import Fraction
from itertools import combinations, permutations

from bckit.dga import FormExpr, derive, wedge_all


def sbinom(a, b):
    """Number of b-element subsets of an a-element set (0 outside the range)."""
    if a < 0 or b < 0:
        return 0
    return sum(1 for _ in combinations(range(a), b))


def coeff_a(n, m, i, j):
    """1 - 2 P(|S cap [i+j-1]| < i) for S a uniform n-subset of [n+m]."""
    total = good = 0
    for s in combinations(range(n + m), n):
        total += 1
        if sum(1 for x in s if x < i + j - 1) < i:
            good += 1
    return 1 - Fraction(2 * good, total)


def perm_sign(p):
    inversions = sum(1 for x, y in combinations(range(len(p)), 2) if p[x] > p[y])
    return -1 if inversions % 2 else 1


def s_form(n, i, args):
    """Sum over sigma of sgn(sigma) u_s1 del u_s2 .. del u_si delbar u_s(i+1) .. delbar u_sn."""
    total = FormExpr()
    for p in permutations(range(n)):
        factors = [args[p[0]]]
        factors += [derive(args[p[k]], "del") for k in range(1, i)]
        factors += [derive(args[p[k]], "delbar") for k in range(i, n)]
        term = wedge_all(*factors)
        total = total + (term if perm_sign(p) > 0 else -term)
    return total


def det(rows):
    """Leibniz determinant."""
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        prod = Fraction(perm_sign(p))
        for r in range(n):
            prod *= rows[r][p[r]]
        total += prod
    return total


def rank(rows, cols):
    """Largest k with a nonzero k x k minor."""
    for k in range(min(len(rows), cols), 0, -1):
        for rs in combinations(range(len(rows)), k):
            for cs in combinations(range(cols), k):
                if det([[rows[r][c] for c in cs] for r in rs]) != 0:
                    return k
    return 0


def matmul(x, y, inner, cols):
    return [[sum((row[k] * y[k][c] for k in range(inner)), Fraction(0)) for c in range(cols)]
            for row in x]


def is_exact(c):
    """Exactness of a cube from ranks of minors and explicit products."""
    n = c.n

    def step(a, i):
        return a[:i - 1] + (a[i - 1] + 1,) + a[i:]

    for i in range(1, n + 1):
        for a in c.verts:
            if a[i - 1] != -1:
                continue
            f, g = c.maps[(i, a)], c.maps[(i, step(a, i))]
            p, q, r = f.cols, f.rows, g.rows
            if rank(f.data, p) != p or rank(g.data, q) != r or p + r != q:
                return False
            if any(x != 0 for row in matmul(g.data, f.data, q, p) for x in row):
                return False
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for a in c.verts:
                if a[i - 1] == 1 or a[j - 1] == 1:
                    continue
                f1, g1 = c.maps[(i, a)], c.maps[(j, step(a, i))]
                f2, g2 = c.maps[(j, a)], c.maps[(i, step(a, j))]
                lhs = matmul(g1.data, f1.data, f1.rows, f1.cols)
                rhs = matmul(g2.data, f2.data, f2.rows, f2.cols)
                if lhs != rhs:
                    return False
    return True


# Vertex labels (a, b) of Cub on S_2 and S_3, read off the standard
# pictures: the label means E_{a,b} = E_{0,b} / E_{0,a}; None is zero.
CUB_TABLES = {
    2: {(-1,): (0, 1), (0,): (0, 2), (1,): (1, 2)},
    3: {
        (-1, -1): (0, 1), (-1, 0): (0, 1), (-1, 1): None,
        (0, -1): (0, 2), (0, 0): (0, 3), (0, 1): (2, 3),
        (1, -1): (1, 2), (1, 0): (1, 3), (1, 1): (2, 3),
    },
}
