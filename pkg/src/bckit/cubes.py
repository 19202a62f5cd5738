"""Exact n-cubes of based rational vector spaces.

A cube has vertices indexed by ``{-1, 0, 1}^n`` (tuples, axes numbered
from 1) and, for every axis ``i`` and vertex ``a`` with ``a[i-1] in
(-1, 0)``, a matrix from ``a`` to its neighbor along axis ``i``.

Every vertex carries a metric tag: a tuple of summands ``(obj, metric,
dim)``.  ``obj`` names the underlying object, ``metric`` names the vertex
whose metric it carries.  Direct sums concatenate summands, and lambda
rewrites the metric label of summands that receive an induced metric.

Permutations act by ``(sigma F)_a = F_b`` with ``b_k = a_{sigma(k)}``; a
permutation is a tuple of 1-based images.  With this convention
``permute(permute(F, s), r) == permute(F, compose(r, s))`` where
``compose(r, s)(k) = r(s(k))``.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .linalg import Mat, block_diag
from .results import rational_text, run_check

UNIT_LABEL = "1"
SPACE_LABEL = "h"


class CubeError(ValueError):
    pass


class VecObj(NamedTuple):
    dim: int
    tag: tuple = ()

    @classmethod
    def atom(cls, dim, label=SPACE_LABEL, metric=None):
        if dim == 0:
            return ZERO_OBJ
        return cls(dim, ((label, label if metric is None else metric, dim),))

    def text(self):
        if not self.tag:
            return "-"
        return "|".join(f"{o}@{m}:{d}" for o, m, d in self.tag)


ZERO_OBJ = VecObj(0, ())
UNIT_OBJ = VecObj.atom(1, UNIT_LABEL)


@lru_cache(maxsize=None)
def addresses(n):
    return tuple(product((-1, 0, 1), repeat=n))


def _insert(addr, i, value):
    return addr[:i - 1] + (value,) + addr[i - 1:]


def _drop(addr, i):
    return addr[:i - 1] + addr[i:]


def _step(addr, i):
    return addr[:i - 1] + (addr[i - 1] + 1,) + addr[i:]


def edge_keys(n):
    return [(i, a) for i in range(1, n + 1) for a in addresses(n) if a[i - 1] < 1]


class ExactCube:
    """An n-cube; instances are treated as immutable values."""

    __slots__ = ("n", "verts", "maps", "_key", "_hash")

    def __init__(self, n, verts, maps):
        self.n = n
        self.verts = dict(verts)
        self.maps = dict(maps)
        if set(self.verts) != set(addresses(n)):
            raise CubeError(f"vertex table of a {n}-cube is incomplete")
        if set(self.maps) != set(edge_keys(n)):
            raise CubeError(f"axis-map table of a {n}-cube is incomplete")
        for (i, a), m in self.maps.items():
            src, dst = self.verts[a], self.verts[_step(a, i)]
            if m.shape != (dst.dim, src.dim):
                raise CubeError(f"map along axis {i} at {addr_text(a)} has shape "
                                f"{m.rows}x{m.cols}, expected {dst.dim}x{src.dim}")
        for a, v in self.verts.items():
            if sum(d for _, _, d in v.tag) != v.dim or any(d <= 0 for _, _, d in v.tag):
                raise CubeError(f"tag at {addr_text(a)} does not match dimension {v.dim}")
        self._key = None
        self._hash = None

    def key(self):
        if self._key is None:
            self._key = (self.n, tuple(self.verts[a] for a in addresses(self.n)),
                         tuple(self.maps[k] for k in edge_keys(self.n)))
        return self._key

    def __eq__(self, other):
        return isinstance(other, ExactCube) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        dims = ",".join(str(self.verts[a].dim) for a in addresses(self.n))
        return f"ExactCube(n={self.n}, dims=[{dims}])"

    def dims(self):
        return tuple(self.verts[a].dim for a in addresses(self.n))

    def is_zero(self):
        return all(v.dim == 0 for v in self.verts.values())


def addr_text(a):
    return ",".join(str(x) for x in a) if a else "."


def zero_cube(n):
    return ExactCube(n, {a: ZERO_OBJ for a in addresses(n)},
                     {k: Mat.zero(0, 0) for k in edge_keys(n)})


def point(obj):
    """The 0-cube with a single vertex."""
    return ExactCube(0, {(): obj}, {})


def identity_cube(obj):
    """The 1-cube ``0 -> V = V``."""
    return ExactCube(1, {(-1,): ZERO_OBJ, (0,): obj, (1,): obj},
                     {(1, (-1,)): Mat.zero(obj.dim, 0), (1, (0,)): Mat.identity(obj.dim)})


def ses_cube(a, b, labels=(SPACE_LABEL,) * 3):
    """The 1-cube ``Q^p --a--> Q^q --b--> Q^r``."""
    p, q, r = a.cols, a.rows, b.rows
    objs = [VecObj.atom(d, lab) for d, lab in zip((p, q, r), labels)]
    return ExactCube(1, {(-1,): objs[0], (0,): objs[1], (1,): objs[2]},
                     {(1, (-1,)): a, (1, (0,)): b})


# exactness

def exactness_failure(c):
    """None if ``c`` is exact, else a description of the first defect."""
    n = c.n
    for i in range(1, n + 1):
        for a in addresses(n):
            if a[i - 1] != -1:
                continue
            b = _step(a, i)
            f, g = c.maps[(i, a)], c.maps[(i, b)]
            where = f"edge axis {i} at {addr_text(a)}"
            if f.rank() != f.cols:
                return f"{where}: first map not injective"
            if g.rank() != g.rows:
                return f"{where}: second map not surjective"
            if not (g * f).is_zero():
                return f"{where}: composite not zero"
            if f.cols + g.rows != f.rows:
                return f"{where}: image differs from kernel"
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for a in addresses(n):
                if a[i - 1] == 1 or a[j - 1] == 1:
                    continue
                lhs = c.maps[(j, _step(a, i))] * c.maps[(i, a)]
                rhs = c.maps[(i, _step(a, j))] * c.maps[(j, a)]
                if lhs != rhs:
                    return f"square axes {i},{j} at {addr_text(a)} does not commute"
    return None


def validate_exact(c):
    return run_check("EXACT", {"n": c.n}, lambda: exactness_failure(c))


# faces, degeneracies, permutations

def _check_axis(i, lo, hi, what):
    if not lo <= i <= hi:
        raise CubeError(f"{what} index {i} outside {lo}..{hi}")


def face(c, i, j):
    _check_axis(i, 1, c.n, "face")
    if j not in (-1, 0, 1):
        raise CubeError(f"face position {j} not in -1, 0, 1")
    m = c.n - 1
    verts = {b: c.verts[_insert(b, i, j)] for b in addresses(m)}
    maps = {(k, b): c.maps[(k if k < i else k + 1, _insert(b, i, j))] for k, b in edge_keys(m)}
    return ExactCube(m, verts, maps)


def degeneracy(c, i, j):
    _check_axis(i, 1, c.n + 1, "degeneracy")
    if j not in (-1, 1):
        raise CubeError(f"degeneracy position {j} not in -1, 1")
    m = c.n + 1
    verts = {a: ZERO_OBJ if a[i - 1] == j else c.verts[_drop(a, i)] for a in addresses(m)}
    maps = {}
    for k, a in edge_keys(m):
        if k == i:
            if j in (a[i - 1], a[i - 1] + 1):
                maps[(k, a)] = Mat.zero(verts[_step(a, i)].dim, verts[a].dim)
            else:
                maps[(k, a)] = Mat.identity(verts[a].dim)
        elif a[i - 1] == j:
            maps[(k, a)] = Mat.zero(0, 0)
        else:
            maps[(k, a)] = c.maps[(k if k < i else k - 1, _drop(a, i))]
    return ExactCube(m, verts, maps)


def transposition(n, i):
    """The adjacent transposition tau_i of {1..n} swapping i and i+1."""
    images = list(range(1, n + 1))
    images[i - 1], images[i] = i + 1, i
    return tuple(images)


def compose(r, s):
    return tuple(r[s[k] - 1] for k in range(len(s)))


def inverse_permutation(s):
    inv = [0] * len(s)
    for k, image in enumerate(s, start=1):
        inv[image - 1] = k
    return tuple(inv)


def permute(c, sigma):
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, c.n + 1)):
        raise CubeError(f"{sigma} is not a permutation of 1..{c.n}")
    inv = inverse_permutation(sigma)

    def pull(a):
        return tuple(a[s - 1] for s in sigma)

    verts = {a: c.verts[pull(a)] for a in addresses(c.n)}
    maps = {(i, a): c.maps[(inv[i - 1], pull(a))] for i, a in edge_keys(c.n)}
    return ExactCube(c.n, verts, maps)


def is_degenerate(c):
    """Some (i, j, face) with ``c == degeneracy(face, i, j)``, else None."""
    for i in range(1, c.n + 1):
        for j in (1, -1):
            if any(c.verts[a].dim for a in addresses(c.n) if a[i - 1] == j):
                continue
            base = face(c, i, 0)
            if degeneracy(base, i, j) == c:
                return i, j, base
    return None


def is_tau_symmetric(c):
    for i in range(1, c.n):
        if permute(c, transposition(c.n, i)) == c:
            return i
    return None


# sums and products

def direct_sum(a, b):
    if a.n != b.n:
        raise CubeError(f"direct sum of a {a.n}-cube and a {b.n}-cube")
    verts = {x: VecObj(a.verts[x].dim + b.verts[x].dim, a.verts[x].tag + b.verts[x].tag)
             for x in addresses(a.n)}
    maps = {k: block_diag(a.maps[k], b.maps[k]) for k in edge_keys(a.n)}
    return ExactCube(a.n, verts, maps)


def _combine(x, y):
    if x == UNIT_LABEL:
        return y
    if y == UNIT_LABEL:
        return x
    if x == y == SPACE_LABEL:
        return SPACE_LABEL
    return f"({x}⊗{y})"


def _tensor_obj(u, v):
    """Tensor object and the Kronecker indices listed in summand-block order."""
    tag, order = [], []
    ustart = 0
    for uo, um, ud in u.tag:
        vstart = 0
        for vo, vm, vd in v.tag:
            tag.append((_combine(uo, vo), _combine(um, vm), ud * vd))
            order.extend(x * v.dim + y for x in range(ustart, ustart + ud)
                         for y in range(vstart, vstart + vd))
            vstart += vd
        ustart += ud
    return VecObj(u.dim * v.dim, tuple(tag)), order


def tensor(a, b):
    n = a.n + b.n
    verts, orders = {}, {}
    for x in addresses(a.n):
        for y in addresses(b.n):
            verts[x + y], orders[x + y] = _tensor_obj(a.verts[x], b.verts[y])
    maps = {}
    for i, z in edge_keys(n):
        x, y = z[:a.n], z[a.n:]
        if i <= a.n:
            m = a.maps[(i, x)].kron(Mat.identity(b.verts[y].dim))
        else:
            m = Mat.identity(a.verts[x].dim).kron(b.maps[(i - a.n, y)])
        maps[(i, z)] = m.permuted(orders[_step(z, i)], orders[z])
    return ExactCube(n, verts, maps)


# lambda and emi cubes

def _blocks(obj):
    start = 0
    for summand in obj.tag:
        yield summand, range(start, start + summand[2])
        start += summand[2]


def _induced_tag(target, source, m):
    tag = []
    for (o, _, d), rows in _blocks(target):
        sources = [mt for (_, mt, _), cols in _blocks(source)
                   if any(m.data[r][s] != 0 for r in rows for s in cols)]
        metric = sources[0] if len(sources) == 1 else "mix(" + ",".join(sources) + ")"
        tag.append((o, metric, d))
    return VecObj(target.dim, tuple(tag))


def lambda_one(c, i):
    verts = dict(c.verts)
    for a in addresses(c.n):
        if a[i - 1] == 1:
            src = a[:i - 1] + (0,) + a[i:]
            verts[a] = _induced_tag(c.verts[a], c.verts[src], c.maps[(i, src)])
    return ExactCube(c.n, verts, c.maps)


def lambda_two(c, i, one=None):
    one = lambda_one(c, i) if one is None else one

    def top(a):
        return a[:i - 1] + (1,) + a[i:]

    verts = {}
    for a in addresses(c.n):
        verts[a] = {-1: c.verts[top(a)], 0: one.verts[top(a)], 1: ZERO_OBJ}[a[i - 1]]
    maps = {}
    for k, a in edge_keys(c.n):
        if k == i:
            d = verts[a].dim
            maps[(k, a)] = Mat.identity(d) if a[i - 1] == -1 else Mat.zero(0, d)
        elif a[i - 1] == 1:
            maps[(k, a)] = Mat.zero(0, 0)
        else:
            maps[(k, a)] = c.maps[(k, top(a))]
    return ExactCube(c.n, verts, maps)


def lambda_i(c, i):
    _check_axis(i, 1, c.n, "lambda")
    one = lambda_one(c, i)
    return direct_sum(one, lambda_two(c, i, one))


def lambda_op(c):
    for i in range(1, c.n + 1):
        c = lambda_i(c, i)
    return c


def emi_failure(c):
    """None if every alpha_i = 1 vertex carries the induced tag."""
    for i in range(1, c.n + 1):
        induced = lambda_one(c, i)
        for a in addresses(c.n):
            if a[i - 1] == 1 and induced.verts[a] != c.verts[a]:
                return f"axis {i} at {addr_text(a)}: {c.verts[a].text()} is not induced"
    return None


def is_emi(c):
    return emi_failure(c) is None


def canonical_form(c):
    """Sort the summands at every vertex and reindex the matrices to match."""
    verts, orders = {}, {}
    for a, v in c.verts.items():
        blocks = sorted(_blocks(v), key=lambda b: (b[0][0], b[0][1]))
        verts[a] = VecObj(v.dim, tuple(s for s, _ in blocks))
        orders[a] = [r for _, rows in blocks for r in rows]
    maps = {(i, a): m.permuted(orders[_step(a, i)], orders[a]) for (i, a), m in c.maps.items()}
    return ExactCube(c.n, verts, maps)


# serialization

HEADER = "EXACTCUBE v1"
CHAIN_HEADER = "CUBECHAIN v1"


def _mat_text(m):
    if m.rows == 0 or m.cols == 0:
        return f"{m.rows}x{m.cols} -"
    rows = ";".join(",".join(rational_text(x) for x in row) for row in m.data)
    return f"{m.rows}x{m.cols} {rows}"


def serialize(c):
    lines = [HEADER, f"n {c.n}"]
    for a in addresses(c.n):
        v = c.verts[a]
        lines.append(f"V {addr_text(a)} {v.dim} {v.text()}")
    for i, a in edge_keys(c.n):
        lines.append(f"M {i} {addr_text(a)} {_mat_text(c.maps[(i, a)])}")
    return "\n".join(lines)


def _parse_addr(text):
    return () if text == "." else tuple(int(x) for x in text.split(","))


def _parse_tag(text):
    if text == "-":
        return ()
    out = []
    for part in text.split("|"):
        om, d = part.rsplit(":", 1)
        o, m = om.split("@", 1)
        out.append((o, m, int(d)))
    return tuple(out)


def _parse_mat(shape, body):
    rows, cols = (int(x) for x in shape.split("x"))
    if body == "-":
        return Mat.zero(rows, cols)
    return Mat(rows, cols, [[Fraction(x) for x in r.split(",")] for r in body.split(";")])


def parse(text):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise CubeError("missing cube header")
    n = int(lines[1].split()[1])
    verts, maps = {}, {}
    for ln in lines[2:]:
        parts = ln.split(" ")
        if parts[0] == "V":
            verts[_parse_addr(parts[1])] = VecObj(int(parts[2]), _parse_tag(" ".join(parts[3:])))
        elif parts[0] == "M":
            maps[(int(parts[1]), _parse_addr(parts[2]))] = _parse_mat(parts[3], parts[4])
        else:
            raise CubeError(f"unrecognized line {ln!r}")
    return ExactCube(n, verts, maps)


# chains

MODES = ("plain", "tilde", "cub")


class CubeChain:
    """Integer combination of cubes of one dimension in a quotient complex."""

    __slots__ = ("mode", "terms")

    def __init__(self, terms=None, mode="plain"):
        if mode not in MODES:
            raise CubeError(f"unknown quotient mode {mode!r}")
        self.mode = mode
        acc = {}
        for c, k in (terms.items() if isinstance(terms, dict) else (terms or ())):
            acc[c] = acc.get(c, 0) + k
        self.terms = {c: k for c, k in acc.items() if k and self._keeps(c)}

    def _keeps(self, c):
        if self.mode == "plain":
            return True
        # the zero 0-cube bounds degenerate 1-cubes, so it is killed with them
        if c.is_zero() or is_degenerate(c) is not None:
            return False
        return self.mode == "tilde" or is_tau_symmetric(c) is None

    @classmethod
    def of(cls, cube, mode="plain", coef=1):
        return cls([(cube, coef)], mode)

    def normalize(self, mode):
        return CubeChain(self.terms, mode)

    def __add__(self, other):
        return CubeChain(list(self.terms.items()) + list(other.terms.items()), self.mode)

    def __neg__(self):
        return CubeChain({c: -k for c, k in self.terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, CubeChain) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"CubeChain({self.mode}, {len(self.terms)} terms)"

    def sorted_terms(self):
        return sorted(((serialize(c), k, c) for c, k in self.terms.items()), key=lambda t: t[0])

    def text(self):
        lines = [f"{CHAIN_HEADER} {self.mode} {len(self.terms)}"]
        for body, k, _ in self.sorted_terms():
            lines.append(f"C {k}")
            lines.append(body)
        return "\n".join(lines)

    def summary(self):
        if not self.terms:
            return "0"
        parts = [f"{k:+d}*cube(n={c.n}, dims=[{','.join(map(str, c.dims()))}])"
                 for _, k, c in self.sorted_terms()]
        return " ".join(parts)


def parse_chain(text):
    lines = text.strip().splitlines()
    head = lines[0].split()
    if " ".join(head[:2]) != CHAIN_HEADER:
        raise CubeError("missing chain header")
    mode = head[2]
    terms, block, coef = [], [], None
    for ln in lines[1:] + ["C end"]:
        if ln.startswith("C "):
            if coef is not None:
                terms.append((parse("\n".join(block)), coef))
            coef = None if ln == "C end" else int(ln.split()[1])
            block = []
        else:
            block.append(ln)
    return CubeChain(terms, mode)


def cube_boundary(c, mode="plain"):
    terms = []
    for i in range(1, c.n + 1):
        for j in (-1, 0, 1):
            terms.append((face(c, i, j), (-1) ** (i + j + 1)))
    return CubeChain(terms, mode)


def boundary(ch):
    total = CubeChain(mode=ch.mode)
    acc = []
    for c, k in ch.terms.items():
        if c.n == 0:
            continue
        for f, s in cube_boundary(c, "plain").terms.items():
            acc.append((f, k * s))
    return total + CubeChain(acc, ch.mode)


def tensor_chain(a, b):
    return CubeChain([(tensor(x, y), k * l) for x, k in a.terms.items() for y, l in b.terms.items()],
                     a.mode)
