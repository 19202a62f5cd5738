"""S- and G-constructions over based rational vector spaces, and Cub.

A flag in ``k`` directions assigns a space ``V_x`` to every position
``x`` in ``[1..n_1] x ... x [1..n_k]`` (``V_x = 0`` when some coordinate
is 0) with injective inclusions along each direction.  The subquotient
for arrows ``(lo, hi)`` is ``V_hi`` modulo the sum of the images of the
``V_hi`` with one coordinate lowered to ``lo``.  An element of ``S_n`` is
a flag in one direction, an element of ``S_n S_m`` a flag in two.
"""

import random
from functools import lru_cache
from itertools import permutations, product

from .cubes import (SPACE_LABEL, CubeChain, CubeError, ExactCube, VecObj, ZERO_OBJ, addresses,
                    edge_keys, tensor_chain)
from .linalg import Mat, Quotient, random_injective, random_matrix


class FlagError(ValueError):
    pass


class Flag:
    """Spaces on a grid of positions with adjacent inclusions."""

    __slots__ = ("sizes", "dims", "incl", "_cache", "_quot", "_maps", "_key")

    def __init__(self, sizes, dims, incl):
        self.sizes = tuple(sizes)
        self.dims = dict(dims)
        self.incl = dict(incl)
        self._cache, self._quot, self._maps, self._key = {}, {}, {}, None
        for x in self.positions():
            for d in range(len(self.sizes)):
                if x[d] < self.sizes[d]:
                    y = _bump(x, d, x[d] + 1)
                    m = self.incl[(d, x)]
                    if m.shape != (self.dims[y], self.dims[x]):
                        raise FlagError(f"inclusion at {x} along direction {d + 1} has wrong shape")
                    if m.rank() != m.cols:
                        raise FlagError(f"inclusion at {x} along direction {d + 1} is not injective")

    def positions(self):
        return list(product(*(range(1, s + 1) for s in self.sizes)))

    def key(self):
        if self._key is None:
            xs = self.positions()
            self._key = (self.sizes, tuple(self.dims[x] for x in xs),
                         tuple(sorted(self.incl.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Flag) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def dim(self, x):
        return 0 if 0 in x else self.dims[x]

    def inclusion(self, lo, hi):
        """The composite inclusion ``V_lo -> V_hi``."""
        if (lo, hi) in self._cache:
            return self._cache[(lo, hi)]
        if any(a > b for a, b in zip(lo, hi)):
            raise FlagError(f"no inclusion from {lo} to {hi}")
        if 0 in lo:
            m = Mat.zero(self.dim(hi), 0)
        else:
            m = Mat.identity(self.dim(lo))
            x = lo
            for d in range(len(self.sizes)):
                while x[d] < hi[d]:
                    m = self.incl[(d, x)] * m
                    x = _bump(x, d, x[d] + 1)
        self._cache[(lo, hi)] = m
        return m

    def subquotient(self, lo, hi):
        key = (lo, hi)
        if key not in self._quot:
            ambient = self.dim(hi)
            vectors = []
            for d in range(len(self.sizes)):
                vectors.extend(self.inclusion(_bump(hi, d, lo[d]), hi).columns())
            self._quot[key] = Quotient(ambient, vectors)
        return self._quot[key]

    def canonical_map(self, src, dst):
        """The map between subquotients induced by inclusions."""
        key = (src, dst)
        if key not in self._maps:
            (lo, hi), (lo2, hi2) = src, dst
            if any(a > b for a, b in zip(lo + hi, lo2 + hi2)):
                raise FlagError(f"labels {src} and {dst} are not monotone")
            q1, q2 = self.subquotient(lo, hi), self.subquotient(lo2, hi2)
            self._maps[key] = q2.matrix() * self.inclusion(hi, hi2).select_columns(q1.complement)
        return self._maps[key]


def _bump(x, d, value):
    return x[:d] + (value,) + x[d + 1:]


# S-construction

class SElement:
    """A chain ``E_{0,1} -> ... -> E_{0,n}`` of injections."""

    __slots__ = ("n", "dims", "maps", "flag")

    def __init__(self, dims, maps):
        self.dims = tuple(dims)
        self.maps = tuple(maps)
        self.n = len(self.dims)
        if len(self.maps) != max(self.n - 1, 0):
            raise FlagError("an S_n element needs n - 1 maps")
        self.flag = Flag((self.n,), {(j,): d for j, d in enumerate(self.dims, start=1)},
                         {(0, (j,)): m for j, m in enumerate(self.maps, start=1)})

    def __eq__(self, other):
        return isinstance(other, SElement) and (self.dims, self.maps) == (other.dims, other.maps)

    def __hash__(self):
        return hash((self.dims, self.maps))

    def __repr__(self):
        return f"SElement(dims={list(self.dims)})"

    def quotient(self, i, j):
        """``E_{i,j}`` as a normal-form quotient of ``E_{0,j}``."""
        return self.flag.subquotient((i,), (j,))

    def is_zero(self):
        return all(d == 0 for d in self.dims)


def zero_s_element(n):
    return SElement((0,) * n, [Mat.zero(0, 0)] * max(n - 1, 0))


def s_face(e, k):
    if not 0 <= k <= e.n:
        raise FlagError(f"face index {k} outside 0..{e.n}")
    if k == 0:
        fl = e.flag
        dims = [e.quotient(1, j).qdim for j in range(2, e.n + 1)]
        maps = [fl.canonical_map(((1,), (j,)), ((1,), (j + 1,))) for j in range(2, e.n)]
        return SElement(dims, maps)
    dims = e.dims[:k - 1] + e.dims[k:]
    maps = list(e.maps)
    if k == e.n:
        maps = maps[:k - 2] if k >= 2 else []
    elif k == 1:
        maps = maps[1:]
    else:
        maps[k - 2:k] = [maps[k - 1] * maps[k - 2]]
    return SElement(dims, maps)


def s_degeneracy(e, k):
    if not 0 <= k <= e.n:
        raise FlagError(f"degeneracy index {k} outside 0..{e.n}")
    if k == 0:
        first = [Mat.zero(e.dims[0], 0)] if e.n else []
        return SElement((0,) + e.dims, first + list(e.maps))
    dims = e.dims[:k] + e.dims[k - 1:]
    maps = list(e.maps[:k - 1]) + [Mat.identity(e.dims[k - 1])] + list(e.maps[k - 1:])
    return SElement(dims, maps)


def random_s_element(n, max_dim, seed):
    """Random chain whose successive dimension jumps are at most ``max_dim``."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    dims = [rng.randint(0, max_dim)]
    for _ in range(n - 1):
        dims.append(dims[-1] + rng.randint(0, max_dim))
    maps = [random_injective(rng, dims[j + 1], dims[j]) for j in range(n - 1)]
    return SElement(dims[:n], maps)


def random_bounded_s_element(n, top_dim, rng):
    """Random chain with ``dim E_{0,n} <= top_dim``."""
    dims = sorted(rng.randint(0, top_dim) for _ in range(n))
    maps = [random_injective(rng, dims[j + 1], dims[j]) for j in range(n - 1)]
    return SElement(dims, maps)


def _coordinate_embeddings(p, q):
    for image in permutations(range(q), p):
        yield Mat(q, p, [[1 if image[c] == r else 0 for c in range(p)] for r in range(q)])


def split_chains(n, max_dim):
    """Every chain of coordinate embeddings with dimensions at most ``max_dim``."""
    out = []
    for dims in product(range(max_dim + 1), repeat=n):
        if any(dims[j] > dims[j + 1] for j in range(n - 1)):
            continue
        choices = [list(_coordinate_embeddings(dims[j], dims[j + 1])) for j in range(n - 1)]
        for maps in product(*choices):
            out.append(SElement(dims, maps))
    return out


# Cub

@lru_cache(maxsize=None)
def cub_labels(n):
    """Arrows ``(a, b)`` of ``[n]`` labelling the vertices of Cub on ``S_n`` (None = zero)."""
    if n < 1:
        raise CubeError("Cub needs n >= 1")
    if n == 1:
        return {(): (0, 1)}
    inner = cub_labels(n - 1)
    out = {}
    for a in addresses(n - 1):
        head, rest = a[0], a[1:]
        if head == -1:
            out[a] = None if 1 in rest else (0, 1)
        else:
            lab = inner[rest]
            shift = (lambda x: x if x < 1 else x + 1) if head == 0 else (lambda x: x + 1)
            out[a] = None if lab is None else (shift(lab[0]), shift(lab[1]))
    return out


def _step(addr, i):
    return addr[:i - 1] + (addr[i - 1] + 1,) + addr[i:]


def realize(flag, labels, n):
    """The n-cube whose vertex at ``a`` is the subquotient for ``labels[a] = (lo, hi)``."""
    verts = {}
    for a in addresses(n):
        lab = labels[a]
        verts[a] = ZERO_OBJ if lab is None else VecObj.atom(flag.subquotient(*lab).qdim, SPACE_LABEL)
    maps = {}
    for i, a in edge_keys(n):
        b = _step(a, i)
        src, dst = labels[a], labels[b]
        if src is None or dst is None or verts[a].dim == 0 or verts[b].dim == 0:
            maps[(i, a)] = Mat.zero(verts[b].dim, verts[a].dim)
        else:
            maps[(i, a)] = flag.canonical_map(src, dst)
    return ExactCube(n, verts, maps)


def cub(e):
    labels = {a: None if lab is None else ((lab[0],), (lab[1],))
              for a, lab in cub_labels(e.n).items()}
    return realize(e.flag, labels, e.n - 1)


# bisimplicial elements

class BiElement:
    """An element of ``S_n S_m``: a flag in two directions."""

    __slots__ = ("flag",)

    def __init__(self, flag):
        if len(flag.sizes) != 2:
            raise FlagError("a bisimplicial element is a flag in two directions")
        self.flag = flag

    @property
    def shape(self):
        return self.flag.sizes

    def __eq__(self, other):
        return isinstance(other, BiElement) and self.flag == other.flag

    def __hash__(self):
        return hash(self.flag)

    def __repr__(self):
        return f"BiElement(shape={self.shape})"


def s_tensor(e, f):
    dims = {(j, b): e.dims[j - 1] * f.dims[b - 1] for j in range(1, e.n + 1) for b in range(1, f.n + 1)}
    incl = {}
    for j, b in dims:
        if j < e.n:
            incl[(0, (j, b))] = e.maps[j - 1].kron(Mat.identity(f.dims[b - 1]))
        if b < f.n:
            incl[(1, (j, b))] = Mat.identity(e.dims[j - 1]).kron(f.maps[b - 1])
    return BiElement(Flag((e.n, f.n), dims, incl))


def as_row(e):
    """``E`` viewed in ``S_1 S_n``."""
    return BiElement(Flag((1, e.n), {(1, b): d for b, d in enumerate(e.dims, start=1)},
                          {(1, (1, b)): m for b, m in enumerate(e.maps, start=1)}))


def zero_bi(n, m):
    flag = Flag((n, m), {(j, b): 0 for j in range(1, n + 1) for b in range(1, m + 1)},
                {(d, x): Mat.zero(0, 0) for x in product(range(1, n + 1), range(1, m + 1))
                 for d in range(2) if x[d] < (n, m)[d]})
    return BiElement(flag)


def bi_transpose(x):
    fl = x.flag
    dims = {(b, a): d for (a, b), d in fl.dims.items()}
    incl = {(1 - d, (p[1], p[0])): m for (d, p), m in fl.incl.items()}
    return BiElement(Flag((fl.sizes[1], fl.sizes[0]), dims, incl))


def bi_cub(x):
    """Cub in both directions: an (n-1)+(m-1) cube, outer axes first."""
    n, m = x.shape
    outer, inner = cub_labels(n), cub_labels(m)
    labels = {}
    for a in addresses(n - 1):
        for b in addresses(m - 1):
            la, lb = outer[a], inner[b]
            labels[a + b] = None if la is None or lb is None else ((la[0], lb[0]), (la[1], lb[1]))
    return realize(x.flag, labels, n + m - 2)


# G-construction

class GElement:
    """A pair of ``S_{n+1}`` elements with equal zeroth face."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus, minus):
        if plus.n != minus.n or plus.n < 1:
            raise FlagError("G elements pair two flags of equal length n + 1 >= 1")
        if s_face(plus, 0) != s_face(minus, 0):
            raise FlagError("the two flags have different zeroth faces")
        self.plus, self.minus = plus, minus

    @property
    def n(self):
        return self.plus.n - 1

    def __eq__(self, other):
        return isinstance(other, GElement) and (self.plus, self.minus) == (other.plus, other.minus)

    def __hash__(self):
        return hash((self.plus, self.minus))

    def __repr__(self):
        return f"GElement(n={self.n}, plus={self.plus!r}, minus={self.minus!r})"

    def side(self, sign):
        return self.plus if sign > 0 else self.minus


def g_face(e, i):
    if not 0 <= i <= e.n:
        raise FlagError(f"face index {i} outside 0..{e.n}")
    return GElement(s_face(e.plus, i + 1), s_face(e.minus, i + 1))


def g_degeneracy(e, i):
    if not 0 <= i <= e.n:
        raise FlagError(f"degeneracy index {i} outside 0..{e.n}")
    return GElement(s_degeneracy(e.plus, i + 1), s_degeneracy(e.minus, i + 1))


def split_extension(base, kernel_dim, rng):
    """``E_{0,1} = K`` and ``E_{0,i+1} = K + B_{0,i}`` with a random twist into ``K``."""
    k = kernel_dim
    dims = [k] + [k + d for d in base.dims]
    maps = []
    if base.n:
        maps.append(Mat(k + base.dims[0], k, [[int(r == c) for c in range(k)]
                                              for r in range(k + base.dims[0])]))
    for i, b in enumerate(base.maps):
        phi = random_matrix(rng, k, b.cols)
        rows = [[int(r == c) for c in range(k)] + list(phi.data[r]) for r in range(k)]
        rows += [[0] * k + list(row) for row in b.data]
        maps.append(Mat(k + b.rows, k + b.cols, rows))
    return SElement(dims, maps)


def random_g_element(n, max_dim, seed):
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    base = random_s_element(n, max_dim, rng) if n else SElement((), ())
    plus = split_extension(base, rng.randint(0, max_dim), rng)
    minus = split_extension(base, rng.randint(0, max_dim), rng)
    return GElement(plus, minus)


def chi(k, e, sign):
    """The simplex ``chi^sign(iota_k, E)`` of ``S_n``."""
    if not 0 <= k <= e.n + 1:
        raise FlagError(f"chi index {k} outside 0..{e.n + 1}")
    x = e.side(sign)
    if k == 0:
        return s_face(x, 0)
    for _ in range(k):
        x = s_face(x, 1)
    for _ in range(k - 1):
        x = s_degeneracy(x, 0)
    return x


def iota_face(k, i):
    """``d_i iota_k`` in ``Delta[1]``: the first index sent to 1 after deleting vertex ``i``."""
    return k - 1 if i < k else k


def g_cub(e, mode="plain"):
    return CubeChain([(cub(e.plus), 1), (cub(e.minus), -1)], mode)


class G2Element:
    """Four bisimplicial elements ``(E++, E+-, E-+, E--)``."""

    __slots__ = ("pp", "pm", "mp", "mm")

    def __init__(self, pp, pm, mp, mm):
        if len({pp.shape, pm.shape, mp.shape, mm.shape}) != 1:
            raise FlagError("the four components must have equal shape")
        self.pp, self.pm, self.mp, self.mm = pp, pm, mp, mm

    def parts(self):
        return self.pp, self.pm, self.mp, self.mm

    def __eq__(self, other):
        return isinstance(other, G2Element) and self.parts() == other.parts()

    def __hash__(self):
        return hash(self.parts())


def m_g(e, f):
    return G2Element(s_tensor(e.plus, f.plus), s_tensor(e.plus, f.minus),
                     s_tensor(e.minus, f.plus), s_tensor(e.minus, f.minus))


def embed_r(e):
    z = zero_bi(1, e.plus.n)
    return G2Element(as_row(e.plus), as_row(e.minus), z, z)


def embed_l(e):
    z = zero_bi(e.plus.n, 1)
    return G2Element(bi_transpose(as_row(e.plus)), z, bi_transpose(as_row(e.minus)), z)


def g2_transpose(x):
    return G2Element(bi_transpose(x.pp), bi_transpose(x.mp), bi_transpose(x.pm), bi_transpose(x.mm))


def g2_cub(x, mode="plain"):
    return CubeChain([(bi_cub(x.pp), 1), (bi_cub(x.pm), -1), (bi_cub(x.mp), -1), (bi_cub(x.mm), 1)],
                     mode)


def g_cub_product(e, f, mode="cub"):
    return tensor_chain(g_cub(e, mode), g_cub(f, mode))
