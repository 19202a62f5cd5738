"""Binomial coefficient families and their identity catalog.

Everything here is exact: binomials are Python integers and every
coefficient is a :class:`fractions.Fraction`.  The families are

* ``coeff_a(n, m, i, j)``: the pairing coefficients of the triangle product,
* ``coeff_b`` and ``coeff_c``: coefficients of the primitive ``Psi``,
* ``coeff_d_case`` and ``coeff_e_case``: the residual coefficients whose
  vanishing (or constancy) proves the associativity defect formula.

``coeff_b`` is built from its unsimplified product-of-``a`` definition.
The simplified closed forms are checked against it in the catalog, which
is also where the misprinted closed form is kept for reference.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from . import mutations
from .results import rational_text, run_check


class RangeError(ValueError):
    """Index arguments outside the range where a family is defined."""


class UnsupportedCase(ValueError):
    """A case whose closed form is only available by formal extraction."""


class UnknownCheck(KeyError):
    pass


def _sign(e):
    return -1 if e % 2 else 1


def sbinom(a, b):
    """Binomial coefficient with the convention 0 when b < 0 or a < b."""
    if mutations.is_active("SBINOM-OFFBY1"):
        a += 1
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def _check(cond, what):
    if not cond:
        raise RangeError(what)


@lru_cache(maxsize=None)
def _coeff_a(n, m, i, j):
    total = sum(sbinom(n + m - i - j + 1, n - alpha) * sbinom(i + j - 1, alpha)
                for alpha in range(i))
    value = 1 - Fraction(2 * total, sbinom(n + m, n))
    if mutations.is_active("A-SIGN-FLIP"):
        value = -value
    return value


def coeff_a(n, m, i, j):
    _check(n >= 1 and m >= 1, f"a needs n,m >= 1, got n={n} m={m}")
    _check(1 <= i <= n and 1 <= j <= m, f"a^{{{n},{m}}} index ({i},{j}) out of range")
    return _coeff_a(n, m, i, j)


@lru_cache(maxsize=None)
def _coeff_b(n, m, l, i, j, k):
    a = _coeff_a
    s = _sign(m)
    if i == 0:
        return s * a(m, l, j, k) - s * a(n + m, l, j, k) + s * a(n + m, l, j, k) * a(n, m, 1, j)
    if i == n:
        return (-s * a(m, l, j, k) + s * a(n + m, l, n + j, k)
                + s * a(n + m, l, n + j, k) * a(n, m, n, j))
    return -s * a(n + m, l, i + j, k) * a(n, m, i + 1, j) + s * a(n + m, l, i + j, k) * a(n, m, i, j)


def _check_nml(n, m, l):
    _check(n >= 1 and m >= 1 and l >= 1, f"need n,m,l >= 1, got ({n},{m},{l})")


def coeff_b(n, m, l, i, j, k):
    _check_nml(n, m, l)
    _check(0 <= i <= n and 1 <= j <= m and 1 <= k <= l, f"b index ({i},{j},{k}) out of range")
    return _coeff_b(n, m, l, i, j, k)


@lru_cache(maxsize=None)
def _coeff_c(n, m, l, i, j, k):
    s = _sign(m)
    total = sum(sbinom(n + m - alpha - j, n - alpha) * sbinom(alpha + j - 1, alpha)
                * _coeff_a(n + m, l, alpha + j, k) for alpha in range(i))
    return s * _coeff_a(m, l, j, k) - 2 * s * Fraction(total) / sbinom(n + m, n)


def coeff_c(n, m, l, i, j, k):
    _check_nml(n, m, l)
    _check(1 <= i <= n and 1 <= j <= m and 1 <= k <= l, f"c index ({i},{j},{k}) out of range")
    return _coeff_c(n, m, l, i, j, k)


def coeff_d_case(n, m, l, i, j, k):
    """Residual coefficient of ``F^(i) G^(j) dH`` for 0 <= k <= l-1."""
    _check_nml(n, m, l)
    _check(1 <= i <= n and 1 <= j <= m, f"d index ({i},{j}) out of range")
    if k == l:
        raise UnsupportedCase("d at k = l is obtained by formal coefficient extraction")
    _check(0 <= k <= l - 1, f"d index k={k} out of range")
    a, c = _coeff_a, _coeff_c
    sn = _sign(n)
    if k == 0:
        return (-sn * a(n, m, i, j) + sn * a(n, m + l, i, j) * (1 + a(m, l, j, 1))
                - _sign(n + m) * c(n, m, l, i, j, 1))
    return (sn * a(n, m + l, i, j + k) * (a(m, l, j, k) - a(m, l, j, k + 1))
            - _sign(n + m) * (c(n, m, l, i, j, k) - c(n, m, l, i, j, k + 1)))


def coeff_e_case(n, m, l, i, j, k):
    """Residual coefficient of ``F^(i) dG H^(k)`` for 0 <= j <= m-1."""
    _check_nml(n, m, l)
    _check(1 <= i <= n and 1 <= k <= l, f"e index ({i},{k}) out of range")
    if j == m:
        raise UnsupportedCase("e at j = m is obtained by formal coefficient extraction")
    _check(0 <= j <= m - 1, f"e index j={j} out of range")
    a, c = _coeff_a, _coeff_c
    s = _sign(n + m + 1)
    if j == 0:
        return (s * a(n + m, l, i, k) * (1 + a(n, m, i, 1))
                - s * a(n, m + l, i, k) * (1 - a(m, l, 1, k))
                - _sign(n + 1) * c(n, m, l, i, 1, k))
    return (s * a(n + m, l, i + j, k) * (a(n, m, i, j) - a(n, m, i, j + 1))
            + s * a(n, m + l, i, j + k) * (a(m, l, j, k) - a(m, l, j + 1, k))
            + _sign(n) * (c(n, m, l, i, j, k) - c(n, m, l, i, j + 1, k)))


@mutations.register_reset
def clear_caches():
    for fn in (_coeff_a, _coeff_b, _coeff_c):
        fn.cache_clear()


# closed forms quoted alongside the definition of b

def b_closed_form(n, m, l, i, j, k):
    """Simplified closed form of b, with the corrected i = n line."""
    s = _sign(m)
    big = _coeff_a(n + m, l, (j if i == 0 else i + j), k)
    inv = Fraction(1, sbinom(n + m, n))
    if i == 0:
        return s * _coeff_a(m, l, j, k) - 2 * s * inv * sbinom(n + m - j, n) * big
    if i == n:
        return -s * _coeff_a(m, l, j, k) + 2 * s * inv * sbinom(n + j - 1, n) * big
    return 2 * s * inv * sbinom(n + m - i - j, n - i) * sbinom(i + j - 1, i) * big


def b_closed_form_as_printed(n, m, l, j, k):
    """The i = n closed form exactly as printed (known misprint)."""
    s = _sign(m)
    inv = Fraction(1, sbinom(n + m, n))
    return -s * _coeff_a(m, l, j, k) + 2 * s * inv * sbinom(n - j + 1, n) * _coeff_a(n + m, l, n + j, k)


# ---------------------------------------------------------------------------
# identity catalog
#
# Each entry maps its outer parameters to an iterator of
# (inner-index label, LHS - RHS) pairs.  A check passes when every
# difference equals the identity's expected value (zero unless noted).

def _pascal(a):
    for b in range(-1, a + 3):
        yield f"b={b}", sbinom(a + 1, b) - sbinom(a, b) - sbinom(a, b - 1)


def _vandermonde(a, b, c):
    lhs = sum(sbinom(b, a - alpha) * sbinom(c, alpha) for alpha in range(a + 1))
    yield "", lhs - sbinom(b + c, a)


def _ij(n, m):
    return product(range(1, n + 1), range(1, m + 1))


def _antisym_1(n, m):
    for i, j in _ij(n, m):
        yield f"i={i} j={j}", coeff_a(n, m, i, j) + coeff_a(n, m, n - i + 1, m - j + 1)


def _antisym_2(n, m):
    for i, j in _ij(n, m):
        yield f"i={i} j={j}", coeff_a(n, m, i, j) + coeff_a(m, n, j, i)


def _diff_i(n, m):
    inv = Fraction(1, sbinom(n + m, n))
    for i, j in product(range(1, n), range(1, m + 1)):
        rhs = 2 * inv * sbinom(n + m - i - j, n - i) * sbinom(i + j - 1, i)
        yield f"i={i} j={j}", coeff_a(n, m, i, j) - coeff_a(n, m, i + 1, j) - rhs


def _diff_j(n, m):
    inv = Fraction(1, sbinom(n + m, n))
    for i, j in product(range(1, n + 1), range(1, m)):
        diff = coeff_a(n, m, i, j) - coeff_a(n, m, i, j + 1)
        first = -2 * inv * sbinom(n + m - i - j, n - i) * sbinom(i + j - 1, i - 1)
        second = -2 * inv * sbinom(n + m - i - j, m - j) * sbinom(i + j - 1, j)
        yield f"i={i} j={j} form=1", diff - first
        yield f"i={i} j={j} form=2", diff - second


def _boundary(n, m):
    inv_n = Fraction(1, sbinom(n + m, n))
    inv_m = Fraction(1, sbinom(n + m, m))
    for j in range(1, m + 1):
        yield f"a1j j={j}", coeff_a(n, m, 1, j) - (1 - 2 * inv_n * sbinom(n + m - j, n))
        yield f"anj j={j}", coeff_a(n, m, n, j) - (-1 + 2 * inv_n * sbinom(n + j - 1, n))
    for i in range(1, n + 1):
        yield f"ai1 i={i}", coeff_a(n, m, i, 1) - (-1 + 2 * inv_m * sbinom(n + m - i, m))
        yield f"aim i={i}", coeff_a(n, m, i, m) - (1 - 2 * inv_m * sbinom(m + i - 1, m))


def _recurrence_n(n, m):
    if n < 2:
        return
    for i, j in product(range(1, n), range(1, m + 1)):
        lhs = (n - i) * coeff_a(n, m, i, j) + i * coeff_a(n, m, i + 1, j)
        yield f"i={i} j={j}", lhs - n * coeff_a(n - 1, m, i, j)


def _recurrence_m(n, m):
    if m < 2:
        return
    for i, j in product(range(1, n + 1), range(1, m)):
        lhs = (m - j) * coeff_a(n, m, i, j) + j * coeff_a(n, m, i, j + 1)
        yield f"i={i} j={j}", lhs - m * coeff_a(n, m - 1, i, j)


def _l521(n, m, l):
    inv = Fraction(1, sbinom(n + m, n))
    for j, k in product(range(1, m + 1), range(1, l + 1)):
        total = sum(sbinom(n + m - i - j, n - i) * sbinom(i + j - 1, i) * coeff_a(n + m, l, i + j, k)
                    for i in range(n + 1))
        yield f"j={j} k={k}", inv * total - coeff_a(m, l, j, k)


def _ijk(n, m, l):
    return product(range(1, n + 1), range(1, m + 1), range(1, l + 1))


def _l522(n, m, l):
    for i, j, k in _ijk(n, m, l):
        yield (f"i={i} j={j} k={k}",
               coeff_c(n, m, l, n - i + 1, m - j + 1, l - k + 1) - coeff_c(n, m, l, i, j, k))


def _l523(n, m, l):
    for i, j, k in product(range(1, n + 1), range(1, m + 1), range(l)):
        yield f"i={i} j={j} k={k}", coeff_d_case(n, m, l, i, j, k)


def _l524(n, m, l):
    for i, j, k in product(range(1, n + 1), range(m), range(1, l + 1)):
        expected = _sign(n + m + 1) if j == 0 else 0
        yield f"i={i} j={j} k={k}", coeff_e_case(n, m, l, i, j, k) - expected


def _bcrec(n, m, l):
    for j, k in product(range(1, m + 1), range(1, l + 1)):
        yield f"c1=b0 j={j} k={k}", coeff_c(n, m, l, 1, j, k) - coeff_b(n, m, l, 0, j, k)
        for i in range(1, n):
            yield (f"ci-ci1=bi i={i} j={j} k={k}",
                   coeff_c(n, m, l, i, j, k) - coeff_c(n, m, l, i + 1, j, k) - coeff_b(n, m, l, i, j, k))
        yield f"cn=bn j={j} k={k}", coeff_c(n, m, l, n, j, k) - coeff_b(n, m, l, n, j, k)
        regrouped = (_sign(m) * coeff_a(m, l, j, k)
                     - _sign(m) * (1 - coeff_a(n, m, 1, j)) * coeff_a(n + m, l, j, k))
        yield f"b0-regrouped j={j} k={k}", coeff_b(n, m, l, 0, j, k) - regrouped
        for i in range(n + 1):
            yield (f"b-closed i={i} j={j} k={k}",
                   coeff_b(n, m, l, i, j, k) - b_closed_form(n, m, l, i, j, k))


def _appa1(n, m):
    for i, j in product(range(1, n + 1), range(1, m + 1)):
        for k in range(i + 1):
            lhs = ((n - i) * sum(sbinom(n + m - i - j + 1, n - al) * sbinom(i + j - 1, al) for al in range(k))
                   + i * sum(sbinom(n + m - i - j, n - al) * sbinom(i + j, al) for al in range(k + 1)))
            rhs = ((n + m) * sum(sbinom(n + m - i - j, n - 1 - al) * sbinom(i + j - 1, al) for al in range(k))
                   + (i - k) * sbinom(n + m - i - j, n - k) * sbinom(i + j - 1, k))
            yield f"part=1 i={i} j={j} k={k}", Fraction(lhs - rhs)
            lhs = ((m - j) * sum(sbinom(n + m - i - j + 1, n - al) * sbinom(i + j - 1, al) for al in range(k, i))
                   + j * sum(sbinom(n + m - i - j, n - al) * sbinom(i + j, al) for al in range(k, i)))
            rhs = ((n + m) * sum(sbinom(n + m - i - j, n - al) * sbinom(i + j - 1, al) for al in range(k, i))
                   - (i - k) * sbinom(n + m - i - j, n - k) * sbinom(i + j - 1, k - 1))
            yield f"part=2 i={i} j={j} k={k}", Fraction(lhs - rhs)


def _appa2(n, m, l):
    inv = Fraction(1, sbinom(n + m + l, n))
    for j, k in product(range(1, m + 1), range(1, l + 1)):
        total = 0
        for i in range(n + 1):
            inner = sum(sbinom(n + m + l - i - j - k + 1, n + m - al) * sbinom(i + j + k - 1, al)
                        for al in range(i + j))
            total += sbinom(n + m - i - j, n - i) * sbinom(i + j - 1, i) * inner
        rhs = sum(sbinom(m + l - j - k + 1, m - al) * sbinom(j + k - 1, al) for al in range(j))
        yield f"j={j} k={k}", inv * total - rhs


def _appa3(n, m):
    for j in range(1, m + 1):
        for i in range(n + 1):
            lhs = sum(sbinom(n + m - al - j, n - al) * sbinom(al + j - 1, al) for al in range(i + 1))
            rhs = sum(sbinom(n + m - i - j, n - al) * sbinom(i + j, al) for al in range(i + 1))
            yield f"i={i} j={j}", Fraction(lhs - rhs)
        full = sum(sbinom(n + m - al - j, n - al) * sbinom(al + j - 1, al) for al in range(n + 1))
        middle = sum(sbinom(m - j, n - al) * sbinom(n + j, al) for al in range(n + 1))
        yield f"special-1 j={j}", Fraction(full - middle)
        yield f"special-2 j={j}", Fraction(full - sbinom(n + m, n))


# check-id -> (outer parameter names, evaluator)
CATALOG = {
    "PASCAL": (("a",), _pascal),
    "VANDERMONDE": (("a", "b", "c"), _vandermonde),
    "A-ANTISYM-1": (("n", "m"), _antisym_1),
    "A-ANTISYM-2": (("n", "m"), _antisym_2),
    "A-DIFF-I": (("n", "m"), _diff_i),
    "A-DIFF-J": (("n", "m"), _diff_j),
    "A-BOUNDARY": (("n", "m"), _boundary),
    "A-RECURRENCE-N": (("n", "m"), _recurrence_n),
    "A-RECURRENCE-M": (("n", "m"), _recurrence_m),
    "L521": (("n", "m", "l"), _l521),
    "L522": (("n", "m", "l"), _l522),
    "L523": (("n", "m", "l"), _l523),
    "L524": (("n", "m", "l"), _l524),
    "BCREC": (("n", "m", "l"), _bcrec),
    "APPA1": (("n", "m"), _appa1),
    "APPA2": (("n", "m", "l"), _appa2),
    "APPA3": (("n", "m"), _appa3),
}

# identities whose parameters are sizes of the coefficient families
_POSITIVE = {"n", "m", "l"}


def _validate(check_id, params):
    if check_id not in CATALOG:
        raise UnknownCheck(check_id)
    names, fn = CATALOG[check_id]
    if set(params) != set(names):
        raise RangeError(f"{check_id} takes parameters {names}, got {sorted(params)}")
    for name in names:
        value = params[name]
        if not isinstance(value, int) or value < (1 if name in _POSITIVE else 0):
            raise RangeError(f"{check_id}: parameter {name}={value!r} out of range")
    return names, fn


def evaluate_coeff_identity(check_id, params):
    """Return the first (label, difference) that is not as expected, else None."""
    names, fn = _validate(check_id, params)
    for label, diff in fn(*(params[name] for name in names)):
        if diff != 0:
            return label, diff
    return None


def check_coeff_identity(check_id, params):
    """Evaluate one catalog identity over all inner indices of ``params``."""
    _validate(check_id, params)

    def body():
        bad = evaluate_coeff_identity(check_id, params)
        if bad is None:
            return None
        label, diff = bad
        return f"{label}: {rational_text(diff)}".lstrip(": ")

    return run_check(check_id, params, body)
