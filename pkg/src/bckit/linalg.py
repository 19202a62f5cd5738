"""Exact matrices over Q and normal-form quotients.

Quotient bases are chosen by reducing modulo the reduced row echelon
basis of the subspace: the complement is spanned by the non-leading
coordinates.  This choice composes, i.e. quotienting by U1 and then by
the image of U2 gives literally the same matrices as quotienting by U2
at once, which is what makes face formulas hold structurally.
"""

from fractions import Fraction


class Mat:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows, cols, data=None):
        self.rows, self.cols = rows, cols
        if data is None:
            data = ((Fraction(0),) * cols,) * rows
        else:
            data = tuple(tuple(Fraction(x) for x in row) for row in data)
            if len(data) != rows or any(len(row) != cols for row in data):
                raise ValueError(f"matrix data does not have shape {rows}x{cols}")
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols, m.data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def from_columns(cls, rows, columns):
        return cls(rows, len(columns), [[col[i] for col in columns] for i in range(rows)])

    @property
    def shape(self):
        return self.rows, self.cols

    def __eq__(self, other):
        return isinstance(other, Mat) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {[list(map(str, r)) for r in self.data]})"

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        zero = Fraction(0)
        out = []
        for row in self.data:
            acc = [zero] * other.cols
            for a, brow in zip(row, other.data):
                if a:
                    acc = [x + a * b if b else x for x, b in zip(acc, brow)]
            out.append(tuple(acc))
        return Mat._raw(self.rows, other.cols, tuple(out))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols,
                   [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        return Mat(self.rows, self.cols, [[-a for a in row] for row in self.data])

    def __sub__(self, other):
        return self + (-other)

    def transpose(self):
        return Mat(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows
                   else [[] for _ in range(self.cols)])

    def column(self, j):
        return [row[j] for row in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, idx):
        return Mat(self.rows, len(idx), [[row[j] for j in idx] for row in self.data])

    def select_rows(self, idx):
        return Mat(len(idx), self.cols, [self.data[i] for i in idx])

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def rank(self):
        return len(rref(self.data, self.cols)[1])

    def kron(self, other):
        rows = []
        for r1 in self.data:
            for r2 in other.data:
                rows.append([a * b for a in r1 for b in r2])
        return Mat(self.rows * other.rows, self.cols * other.cols, rows)

    def inverse(self):
        n = self.rows
        if n != self.cols:
            raise ValueError("only square matrices are invertible")
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.data)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Mat(n, n, [row[n:] for row in red[:n]])

    def permuted(self, row_order, col_order):
        """Rows and columns reindexed: new[i][j] = old[row_order[i]][col_order[j]]."""
        return Mat(len(row_order), len(col_order),
                   [[self.data[i][j] for j in col_order] for i in row_order])


def block_diag(a, b):
    rows = [list(r) + [0] * b.cols for r in a.data] + [[0] * a.cols + list(r) for r in b.data]
    return Mat(a.rows + b.rows, a.cols + b.cols, rows)


def rref(rows, width):
    """Reduced row echelon form of a list of vectors: (nonzero rows, pivot columns)."""
    work = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(width):
        sel = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        inv = 1 / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


class Quotient:
    """The quotient Q^d / span(vectors) with normal-form coordinates."""

    def __init__(self, dim, vectors):
        self.dim = dim
        self.basis, self.pivots = rref(vectors, dim)
        pivset = set(self.pivots)
        self.complement = [x for x in range(dim) if x not in pivset]
        self._matrix = None

    @property
    def qdim(self):
        return len(self.complement)

    def matrix(self):
        """The projection Q^d -> Q^qdim."""
        if self._matrix is None:
            pos = {x: k for k, x in enumerate(self.complement)}
            cols = []
            for x in range(self.dim):
                if x in pos:
                    col = [Fraction(0)] * self.qdim
                    col[pos[x]] = Fraction(1)
                else:
                    row = self.basis[self.pivots.index(x)]
                    col = [-row[c] for c in self.complement]
                cols.append(col)
            self._matrix = Mat.from_columns(self.qdim, cols)
        return self._matrix

    def lift(self):
        """Columns e_c for the complement coordinates, as a dim x qdim matrix."""
        return Mat.identity(self.dim).select_columns(self.complement)


def random_matrix(rng, rows, cols, low=-2, high=2):
    return Mat(rows, cols, [[rng.randint(low, high) for _ in range(cols)] for _ in range(rows)])


def random_injective(rng, rows, cols):
    if cols > rows:
        raise ValueError("no injective map into a smaller space")
    while True:
        m = random_matrix(rng, rows, cols)
        if m.rank() == cols:
            return m


def random_invertible(rng, n):
    return random_injective(rng, n, n)
