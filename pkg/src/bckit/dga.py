"""A free bigraded-commutative differential algebra over Q[t, 1/t].

The symbol ``t`` stands for 2*pi*sqrt(-1).  Forms are finite sums of
canonical monomials in jet generators; a generator is a small tuple

    (rank, name, slot, jet, s, t)

with ``rank`` the kind (0 Log, 1 general family, 2 closed family,
3 closed top-degree family), ``jet`` one of 0 (base), 1 (del),
2 (delbar), 3 (del delbar) and (s, t) its bidegree.  Tuples sort in
exactly the canonical monomial order, so a monomial is just a sorted
tuple of generators and Koszul signs come from counting transpositions
of odd generators while sorting.

Deligne elements carry a homological degree ``N`` and a flavor
(``"D"`` unrenormalized, ``"A"`` renormalized).  The slot of a
monomial is read off its bidegree: a form of type (a, b) in degree N
sits in slot k = (a - b + N + 1) / 2 at weight p = b + k.
"""

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import NamedTuple

from . import combinatorics, mutations
from .results import rational_text

LOG, GENERAL, CLOSED, TOP = 0, 1, 2, 3
BASE, DEL, DELBAR, DDBAR = 0, 1, 2, 3

MAX_SYMMETRIZED = 8


class ResourceLimit(ValueError):
    pass


class FlavorError(ValueError):
    pass


class SlotError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars

class TauScalar:
    """Laurent polynomial in t over Q, stored as {exponent: Fraction}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: Fraction(terms)}
        self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, coeff, exponent=0):
        return cls({exponent: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TauScalar):
            other = TauScalar(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, TauScalar):
            other = TauScalar(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TauScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return TauScalar._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TauScalar) else TauScalar(-Fraction(other)))

    def __mul__(self, other):
        if not isinstance(other, TauScalar):
            other = Fraction(other)
            if not other:
                return TauScalar._raw({})
            return TauScalar._raw({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return TauScalar._raw(out)

    __rmul__ = __mul__

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            body = rational_text(abs(c)) + ("" if e == 0 else f"*t^{e}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"TauScalar({self.text()})"


def tau(exponent=1, coeff=1):
    return TauScalar.monomial(coeff, exponent)


def _scalar(c):
    return c if isinstance(c, TauScalar) else TauScalar(c)


# ---------------------------------------------------------------------------
# generators

class Gen(NamedTuple):
    rank: int
    name: str
    slot: int
    jet: int
    s: int
    t: int

    @property
    def odd(self):
        return (self.s + self.t) & 1

    def text(self):
        if self.rank == LOG:
            return "LPQW"[self.jet] + str(self.slot)
        prefix = ("", "d", "db", "ddb")[self.jet]
        if self.rank == TOP:
            return prefix + self.name
        return f"{prefix}{self.name}[{self.slot}]"


_SHIFT = {BASE: (0, 0), DEL: (1, 0), DELBAR: (0, 1), DDBAR: (1, 1)}


def _jet(g, jet):
    ds, dt = _SHIFT[jet]
    bs, bt = _SHIFT[g.jet]
    return Gen(g.rank, g.name, g.slot, jet, g.s - bs + ds, g.t - bt + dt)


def _derive_gen(g, which):
    """Return (sign, generator) or None for del (which=1) / delbar (which=2)."""
    if g.rank in (LOG, GENERAL):
        if g.jet == BASE:
            return 1, _jet(g, which)
        if g.jet == DDBAR or g.jet == which:
            return None
        if g.jet == DEL:            # delbar(del x) = -del delbar x
            return -1, _jet(g, DDBAR)
        return 1, _jet(g, DDBAR)    # del(delbar x)
    if g.rank == CLOSED:
        if g.jet != BASE:
            return None
        if which == DEL or g.slot == 1:
            return 1, _jet(g, which)
        # delbar G^(i) = -del G^(i-1)
        return -1, Gen(g.rank, g.name, g.slot - 1, DEL, g.s, g.t + 1)
    return None


def _canonical(gens):
    """Sort a generator list; return (sign, tuple) or None if it vanishes."""
    gens = list(gens)
    sign = 1
    for idx in range(1, len(gens)):
        g = gens[idx]
        pos = idx
        while pos > 0 and gens[pos - 1] > g:
            if g.odd and gens[pos - 1].odd:
                sign = -sign
            gens[pos] = gens[pos - 1]
            pos -= 1
        gens[pos] = g
        if pos > 0 and gens[pos - 1] == g and g.odd:
            return None
    for a, b in zip(gens, gens[1:]):
        if a == b and a.odd:
            return None
    return sign, tuple(gens)


def _mono_bidegree(mono):
    s = t = 0
    for g in mono:
        s += g.s
        t += g.t
    return s, t


# ---------------------------------------------------------------------------
# forms

class FormExpr:
    """Immutable map canonical-monomial -> TauScalar."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @classmethod
    def from_items(cls, items):
        out = {}
        for mono, coeff in items:
            coeff = _scalar(coeff)
            if not coeff:
                continue
            prev = out.get(mono)
            v = coeff if prev is None else prev + coeff
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return cls(out)

    @classmethod
    def generator(cls, g, coeff=1):
        return cls({(g,): _scalar(coeff)})

    @classmethod
    def scalar(cls, coeff=1):
        coeff = _scalar(coeff)
        return cls({(): coeff} if coeff else {})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, FormExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        for mono, c in other.terms.items():
            prev = out.get(mono)
            v = c if prev is None else prev + c
            if v:
                out[mono] = v
            else:
                del out[mono]
        return FormExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return FormExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _scalar(c)
        if not c:
            return FormExpr()
        return FormExpr({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FormExpr):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def map_terms(self, fn):
        """Apply ``fn(mono, coeff) -> coeff`` monomialwise."""
        return FormExpr.from_items((m, fn(m, c)) for m, c in self.terms.items())

    def coefficient(self, basis):
        """c such that self contains c * basis, for a signed product of generators."""
        (mono, unit), = basis.terms.items()
        c = self.terms.get(mono)
        if c is None:
            return TauScalar()
        # unit is +-1, so dividing by it is multiplying by it
        return c * unit

    def monomial_texts(self):
        out = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            ctext = coeff.text()
            if len(coeff.terms) > 1:
                ctext = f"({ctext})"
            gens = " ∧ ".join(g.text() for g in mono) if mono else "1"
            out.append(f"{ctext} * {gens}")
        return out

    def text(self):
        return " + ".join(self.monomial_texts()) if self.terms else "0"

    def __repr__(self):
        return f"FormExpr({self.text()})"


ZERO = FormExpr()
ONE = FormExpr.scalar(1)


def wedge(x, y):
    if not x.terms or not y.terms:
        return FormExpr()
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            res = _canonical(m1 + m2) if m1 and m2 else (1, m1 or m2)
            if res is None:
                continue
            sign, mono = res
            c = c1 * c2
            if sign < 0:
                c = -c
            prev = out.get(mono)
            v = c if prev is None else prev + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return FormExpr(out)


def wedge_all(*xs):
    out = ONE
    for x in xs:
        out = wedge(out, x)
    return out


def derive(x, which):
    """Graded derivation ``which`` in {"del", "delbar", "d"}."""
    if which == "d":
        return derive(x, "del") + derive(x, "delbar")
    code = {"del": DEL, "delbar": DELBAR}[which]
    items = []
    for mono, c in x.terms.items():
        parity = 0
        for pos, g in enumerate(mono):
            res = _derive_gen(g, code)
            if res is not None:
                sign, ng = res
                if parity:
                    sign = -sign
                can = _canonical(mono[:pos] + (ng,) + mono[pos + 1:])
                if can is not None:
                    s2, nm = can
                    items.append((nm, c if sign * s2 > 0 else -c))
            parity ^= g.odd
    return FormExpr.from_items(items)


def d(x):
    return derive(x, "d")


def bidegree_parts(x):
    """Group a form by total bidegree."""
    out = {}
    for mono, c in x.terms.items():
        out.setdefault(_mono_bidegree(mono), {})[mono] = c
    return {k: FormExpr(v) for k, v in out.items()}


def component(x, hol_count, families):
    """Sub-sum of monomials with exactly ``hol_count`` del-type jets among ``families``.

    ``families`` is an iterable of family keys ``(rank, name)``; for Log
    generators use ``(0, index)``.
    """
    keys = set(families)

    def hol(mono):
        count = 0
        for g in mono:
            key = (g.rank, g.slot) if g.rank == LOG else (g.rank, g.name)
            if key in keys and g.jet in (DEL, DDBAR):
                count += 1
        return count

    return FormExpr({m: c for m, c in x.terms.items() if hol(m) == hol_count})


def dprod_component(args, h):
    """(u_1, ..., u_n)^{(h)}: part of du_1 ^ ... ^ du_n with h del-factors."""
    layers = {0: ONE}
    for u in args:
        du, dbu = derive(u, "del"), derive(u, "delbar")
        nxt = {}
        for count, form in layers.items():
            for c2, piece in ((count + 1, du), (count, dbu)):
                if c2 > h:
                    continue
                term = wedge(form, piece)
                nxt[c2] = nxt[c2] + term if c2 in nxt else term
        layers = nxt
    return layers.get(h, FormExpr())


# ---------------------------------------------------------------------------
# generator families

def log_form(alpha):
    return FormExpr.generator(Gen(LOG, "L", alpha, BASE, 0, 0))


def log_jet(alpha, jet):
    return FormExpr.generator(_jet(Gen(LOG, "L", alpha, BASE, 0, 0), jet))


def _slot_gen(rank, name, n, p, i, jet=BASE):
    s, t = p - n + i - 1, p - i
    if s < 0 or t < 0:
        raise SlotError(f"slot {i} of a degree-{n} family at p={p} has negative bidegree")
    ds, dt = _SHIFT[jet]
    return Gen(rank, name, i, jet, s + ds, t + dt)


def family_slot(rank, name, n, p, i, jet=BASE):
    return FormExpr.generator(_slot_gen(rank, name, n, p, i, jet))


def closed_jet(name, n, p, k):
    """The free jet A_k of a closed family (A_0 = delbar G^(1), A_k = del G^(k))."""
    if k == 0:
        return family_slot(CLOSED, name, n, p, 1, DELBAR)
    return family_slot(CLOSED, name, n, p, k, DEL)


# ---------------------------------------------------------------------------
# Deligne elements

class DeligneElement:
    __slots__ = ("degree", "flavor", "form")

    def __init__(self, degree, flavor, form):
        if flavor not in ("D", "A"):
            raise FlavorError(flavor)
        self.degree = degree
        self.flavor = flavor
        self.form = form

    def __add__(self, other):
        _same(self, other)
        return DeligneElement(self.degree, self.flavor, self.form + other.form)

    def __sub__(self, other):
        _same(self, other)
        return DeligneElement(self.degree, self.flavor, self.form - other.form)

    def __neg__(self):
        return DeligneElement(self.degree, self.flavor, -self.form)

    def scale(self, c):
        return DeligneElement(self.degree, self.flavor, self.form.scale(c))

    def __eq__(self, other):
        return (isinstance(other, DeligneElement) and self.degree == other.degree
                and self.flavor == other.flavor and self.form == other.form)

    def __hash__(self):
        return hash((self.degree, self.flavor, self.form))

    def is_zero(self):
        return self.form.is_zero()

    def slots(self):
        """Split into {slot: FormExpr}; degree 0 uses the single slot 0."""
        out = {}
        for mono, c in self.form.terms.items():
            out.setdefault(slot_of(mono, self.degree)[0], {})[mono] = c
        return {k: FormExpr(v) for k, v in out.items()}

    def slot(self, i):
        return self.slots().get(i, FormExpr())

    def with_flavor(self, flavor):
        return DeligneElement(self.degree, flavor, self.form)

    def __repr__(self):
        return f"DeligneElement(N={self.degree}, {self.flavor}, {self.form.text()})"


def slot_of(mono, degree):
    """(slot, p) of a monomial in a degree-``degree`` element."""
    a, b = _mono_bidegree(mono)
    if degree == 0:
        if a != b:
            raise SlotError(f"degree-0 component of type ({a},{b}) is not (p,p)")
        return 0, a
    twice = a - b + degree + 1
    k = twice // 2
    if twice % 2 or not 1 <= k <= degree:
        raise SlotError(f"type ({a},{b}) is not a slot of degree {degree}")
    return k, b + k


def _same(x, y):
    if x.flavor != y.flavor:
        raise FlavorError(f"flavor mismatch {x.flavor} vs {y.flavor}")
    if x.degree != y.degree:
        raise ValueError(f"degree mismatch {x.degree} vs {y.degree}")


def element(degree, form, flavor="D"):
    return DeligneElement(degree, flavor, form)


def zero_element(degree, flavor="D"):
    return DeligneElement(degree, flavor, FormExpr())


def log_element(alpha, flavor="D"):
    return DeligneElement(1, flavor, log_form(alpha))


def general_family(n, name, p=None, flavor="D"):
    """Abstract element of degree n with independent jets on every slot."""
    if n < 1:
        raise ValueError("general_family needs n >= 1")
    p = n if p is None else p
    form = sum((family_slot(GENERAL, name, n, p, i) for i in range(1, n + 1)), FormExpr())
    return DeligneElement(n, flavor, form)


def closed_family(n, name, p=None, flavor="D"):
    """Abstract d-closed element of degree n.

    Free jets are A_0 = delbar G^(1) and A_i = del G^(i); closedness forces
    delbar G^(i+1) = -A_i, and the second-order jet del delbar G^(1)
    vanishes (it equals delbar A_1 = -delbar delbar G^(2) for n >= 2, and
    is the whole of d_D G for n = 1).
    """
    if n < 1:
        raise ValueError("closed_family needs n >= 1")
    p = n if p is None else p
    form = sum((family_slot(CLOSED, name, n, p, i) for i in range(1, n + 1)), FormExpr())
    return DeligneElement(n, flavor, form)


def top_family(name, p, flavor="D"):
    """Abstract closed (p,p)-form viewed as a degree-0 element."""
    return DeligneElement(0, flavor, FormExpr.generator(Gen(TOP, name, 0, BASE, p, p)))


def sign_involution(x, alpha):
    """L_alpha -> -L_alpha together with all of its jets."""
    def flip(mono, c):
        count = sum(1 for g in mono if g.rank == LOG and g.slot == alpha)
        return -c if count % 2 else c
    if isinstance(x, DeligneElement):
        return DeligneElement(x.degree, x.flavor, x.form.map_terms(flip))
    return x.map_terms(flip)


# ---------------------------------------------------------------------------
# products and differential

_HALF_INV_TAU = tau(-1, Fraction(1, 2))


def _extreme_derivative(x):
    """del x^(N) - delbar x^(1)."""
    parts = x.slots()
    top = parts.get(x.degree, FormExpr())
    first = parts.get(1, FormExpr())
    return derive(top, "del") - derive(first, "delbar")


def bullet(x, y):
    if x.flavor != y.flavor:
        raise FlavorError(f"flavor mismatch {x.flavor} vs {y.flavor}")
    n, m = x.degree, y.degree
    if n == 0 or m == 0:
        return DeligneElement(n + m, x.flavor, wedge(x.form, y.form))
    left = wedge(_extreme_derivative(x), y.form)
    if n % 2:
        left = -left
    form = left + wedge(x.form, _extreme_derivative(y))
    if x.flavor == "A":
        form = form.scale(_HALF_INV_TAU)
    return DeligneElement(n + m, x.flavor, form)


def triangle(x, y):
    if x.flavor != y.flavor:
        raise FlavorError(f"flavor mismatch {x.flavor} vs {y.flavor}")
    n, m = x.degree, y.degree
    if n == 0 or m == 0:
        return zero_element(n + m + 1, x.flavor)
    xs, ys = x.slots(), y.slots()
    form = FormExpr()
    for i, xi in xs.items():
        for j, yj in ys.items():
            a = combinatorics.coeff_a(n, m, i, j)
            if a:
                form = form + wedge(xi, yj).scale(a)
    if x.flavor == "A":
        form = form.scale(_HALF_INV_TAU)
    return DeligneElement(n + m + 1, x.flavor, form)


def deligne_d(x):
    n = x.degree
    if n == 0:
        raise ValueError("deligne_d is not defined on degree 0")
    if n == 1:
        form = derive(derive(x.form, "delbar"), "del")
        form = form.scale(-2 if x.flavor == "D" else tau(-1, -1))
        return DeligneElement(0, x.flavor, form)
    parts = x.slots()
    full = d(x.form)
    dropped = (derive(parts.get(n, FormExpr()), "del")
               + derive(parts.get(1, FormExpr()), "delbar"))
    return DeligneElement(n - 1, x.flavor, dropped - full)


def deligne_d_or_zero(x):
    """deligne_d with degree-0 elements treated as closed."""
    if x.degree == 0:
        return zero_element(0, x.flavor)
    return deligne_d(x)


def theta(x):
    if x.flavor != "D":
        raise FlavorError("theta expects an unrenormalized element")

    def rescale(mono, c):
        _, p = slot_of(mono, x.degree)
        if x.degree == 0:
            return c * tau(-p)
        return c * tau(-(p - 1), 2)

    return DeligneElement(x.degree, "A", x.form.map_terms(rescale))


def canonical_digest(x):
    if isinstance(x, DeligneElement):
        return f"N={x.degree} {x.flavor}: {x.form.text()}"
    return x.text()


# ---------------------------------------------------------------------------
# S-forms, T_n and symmetrized products

def _guard(n):
    if n > MAX_SYMMETRIZED:
        raise ResourceLimit(f"symmetrized builders are capped at n <= {MAX_SYMMETRIZED}, got {n}")


def _as_form(u):
    return u.form if isinstance(u, DeligneElement) else u


def s_form(n, i, args):
    """S_n^i(u_1, ..., u_n)."""
    args = [_as_form(u) for u in args]
    if len(args) != n:
        raise ValueError(f"s_form expects {n} arguments, got {len(args)}")
    if not 1 <= i <= n:
        raise combinatorics.RangeError(f"S_{n}^{i} index out of range")
    _guard(n)
    drop_sign = mutations.is_active("S-FORM-DROP-SIGN")
    total = FormExpr()
    for alpha in range(n):
        rest = args[:alpha] + args[alpha + 1:]
        term = wedge(args[alpha], dprod_component(rest, i - 1))
        if alpha % 2 and not drop_sign:      # (-1)^(alpha+1) with alpha 1-based
            term = -term
        total = total + term
    return total.scale(factorial(i - 1) * factorial(n - i))


def s_sum(args):
    """Sum_i (-1)^i S_n^i(args)."""
    n = len(args)
    total = FormExpr()
    for i in range(1, n + 1):
        term = s_form(n, i, args)
        total = total + (-term if i % 2 else term)
    return total


def t_form(n):
    if n < 1:
        raise ValueError("t_form needs n >= 1")
    logs = [log_form(a) for a in range(1, n + 1)]
    coeff = Fraction((-1) ** n, 2 * factorial(n))
    return s_sum(logs).scale(coeff)


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def _nested(args, order, cache):
    """u_{o1} . (u_{o2} . ( ... u_{ok}))."""
    key = tuple(order)
    hit = cache.get(key)
    if hit is None:
        if len(order) == 1:
            hit = args[order[0]]
        else:
            hit = bullet(args[order[0]], _nested(args, order[1:], cache))
        cache[key] = hit
    return hit


def c_n_form(args, flavor=None):
    """Symmetrized nested bullet product; 1/2^n normalization for D, 1 for A."""
    n = len(args)
    if n < 1:
        raise ValueError("c_n_form needs n >= 1")
    _guard(n)
    flavor = flavor or args[0].flavor
    cache = {}
    total = zero_element(sum(u.degree for u in args), flavor)
    for perm in permutations(range(n)):
        term = _nested(args, perm, cache)
        total = total + (term if _perm_sign(perm) > 0 else -term)
    if flavor == "D":
        total = total.scale(Fraction(1, 2 ** n))
    return total


def c_gs_first(args):
    """Variant with a distinguished first argument (of degree 2).

    Sum_j (-1)^(j+1) Sum_{sigma(j)=1} sgn(sigma) u_s(1) . ( ... u_s(n)).
    """
    n = len(args)
    _guard(n)
    cache = {}
    total = zero_element(sum(u.degree for u in args), args[0].flavor)
    for perm in permutations(range(n)):
        j = perm.index(0)                   # 0-based position holding u_1
        term = _nested(args, perm, cache)
        if (_perm_sign(perm) * (-1) ** j) < 0:
            term = -term
        total = total + term
    return total
