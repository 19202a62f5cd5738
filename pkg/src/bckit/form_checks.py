"""Identity catalog over the formal algebra.

Every evaluator yields ``(label, difference)`` pairs; a difference is a
FormExpr (or TauScalar for extracted coefficients) and the identity
holds when all of them are exactly zero.  Degree-one arguments are
abstract (p, p)-forms whose weights alternate between 1 and 2 so that
bidegree bookkeeping is exercised.
"""

from fractions import Fraction
from math import comb, factorial

from . import combinatorics
from .combinatorics import RangeError, UnknownCheck
from .dga import (
    FormExpr, TauScalar, bullet, c_gs_first, c_n_form, closed_family, closed_jet,
    d, deligne_d, derive, dprod_component, element,
    general_family, log_form, s_form, s_sum, tau, theta, top_family,
    triangle, wedge, wedge_all,
)
from .results import run_check


def _sign(e):
    return -1 if e % 2 else 1


def degree_one_args(count, prefix, flavor="D"):
    """Abstract degree-1 elements u1..u<count> at alternating weights."""
    return [general_family(1, f"{prefix}{k}", p=1 if k % 2 else 2, flavor=flavor)
            for k in range(1, count + 1)]


def log_args(count):
    return [log_form(a) for a in range(1, count + 1)]


def _forms(args):
    return [getattr(u, "form", u) for u in args]


def ddbar(u):
    """W = del delbar u."""
    return derive(derive(u, "delbar"), "del")


def w_sum(args, i):
    """Sum_alpha (-1)^alpha W_alpha S^i_{n-1}(args without alpha)."""
    n = len(args)
    total = FormExpr()
    if n < 2 or not 1 <= i <= n - 1:
        return total
    for alpha in range(1, n + 1):
        rest = args[:alpha - 1] + args[alpha:]
        term = wedge(ddbar(args[alpha - 1]), s_form(n - 1, i, rest))
        total = total + (term if alpha % 2 == 0 else -term)
    return total


# ---------------------------------------------------------------------------
# derivatives of S-forms

def _lem_del_delbar(args):
    n = len(args)
    for i in range(1, n + 1):
        s = s_form(n, i, args)
        rhs = dprod_component(args, i).scale(factorial(i) * factorial(n - i))
        rhs = rhs + w_sum(args, i).scale(n - i)
        yield f"del i={i}", derive(s, "del") - rhs
        rhs = dprod_component(args, i - 1).scale(factorial(i - 1) * factorial(n - i + 1))
        rhs = rhs - w_sum(args, i - 1).scale(i - 1)
        yield f"delbar i={i}", derive(s, "delbar") - rhs


def _l16(n):
    yield from _lem_del_delbar(log_args(n))


def _l43(n):
    yield from _lem_del_delbar(_forms(degree_one_args(n, "u")))


def _dsum_for(args, tag):
    n = len(args)
    lhs = d(s_sum(args))
    rhs = (dprod_component(args, n).scale(_sign(n) * factorial(n))
           - dprod_component(args, 0).scale(factorial(n)))
    for i in range(1, n):
        rhs = rhs + w_sum(args, i).scale(_sign(i) * n)
    yield tag, lhs - rhs


def _dsum(n):
    yield from _dsum_for(log_args(n), "log")
    yield from _dsum_for(_forms(degree_one_args(n, "u")), "abstract")


# ---------------------------------------------------------------------------
# S-forms of concatenated arguments

def _l44(n, m):
    u = _forms(degree_one_args(n, "u"))
    v = _forms(degree_one_args(m, "v"))
    total = n + m
    s_u = {i: s_form(n, i, u) for i in range(1, n + 1)}
    s_v = {j: s_form(m, j, v) for j in range(1, m + 1)}
    comp_u = {h: dprod_component(u, h) for h in range(n + 1)}
    comp_v = {h: dprod_component(v, h) for h in range(m + 1)}
    for k in range(1, total + 1):
        rhs = FormExpr()
        for i in range(1, min(k, n) + 1):
            if k - i <= m:
                c = Fraction(factorial(k - 1) * factorial(total - k),
                             factorial(n - i) * factorial(i - 1))
                rhs = rhs + wedge(s_u[i], comp_v[k - i]).scale(c)
        for j in range(1, min(k, m) + 1):
            if k - j <= n:
                c = Fraction(factorial(k - 1) * factorial(total - k),
                             factorial(m - j) * factorial(j - 1))
                rhs = rhs + wedge(comp_u[k - j], s_v[j]).scale(_sign(n) * c)
        yield f"k={k}", s_form(total, k, u + v) - rhs
    rhs = FormExpr()
    for i in range(1, n + 1):
        for j in range(0, m + 1):
            c = Fraction(factorial(total - i - j) * factorial(i + j - 1),
                         factorial(n - i) * factorial(i - 1))
            rhs = rhs + wedge(s_u[i], comp_v[j]).scale(_sign(i + j) * c)
    for i in range(0, n + 1):
        for j in range(1, m + 1):
            c = Fraction(factorial(total - i - j) * factorial(i + j - 1),
                         factorial(m - j) * factorial(j - 1))
            rhs = rhs + wedge(comp_u[i], s_v[j]).scale(_sign(n + i + j) * c)
    yield "alternating sum", s_sum(u + v) - rhs


# ---------------------------------------------------------------------------
# the differential of a triangle product of S-sums

def _triangle_identity(n, m, flavor):
    u = degree_one_args(n, "u", flavor)
    v = degree_one_args(m, "v", flavor)
    uf, vf = _forms(u), _forms(v)
    x = element(n, s_sum(uf), flavor)
    y = element(m, s_sum(vf), flavor)
    lhs = deligne_d(triangle(x, y)).form
    inv = Fraction(1, comb(n + m, n))
    if flavor == "D":
        lead, left, right = 2 * _sign(n + 1) * inv, -n, _sign(n) * m
    else:
        lead = tau(-1, _sign(n + 1) * inv)
        left, right = tau(-1, Fraction(-n, 2)), tau(-1, Fraction(_sign(n) * m, 2))
    rhs = s_sum(uf + vf).scale(lead)
    acc = FormExpr()
    for i in range(1, n):
        wi = w_sum(uf, i)
        for j in range(1, m + 1):
            a = combinatorics.coeff_a(n - 1, m, i, j)
            if a:
                acc = acc + wedge(wi, s_form(m, j, vf)).scale(_sign(i + j) * a)
    rhs = rhs + acc.scale(left)
    acc = FormExpr()
    for i in range(1, n + 1):
        si = s_form(n, i, uf)
        for j in range(1, m):
            a = combinatorics.coeff_a(n, m - 1, i, j)
            if a:
                acc = acc + wedge(si, w_sum(vf, j)).scale(_sign(i + j) * a)
    rhs = rhs + acc.scale(right)
    rhs = rhs + bullet(x, y).form.scale(_sign(n))
    return lhs - rhs


def _p45(n, m):
    yield "D", _triangle_identity(n, m, "D")


def _l612(n, m):
    yield "A", _triangle_identity(n, m, "A")


# ---------------------------------------------------------------------------
# symmetrized bullet products

def _p63(n):
    u = degree_one_args(n, "u", "D")
    yield "D", (c_n_form(u).form - s_sum(_forms(u)).scale(Fraction(_sign(n), 2)))
    u = degree_one_args(n, "u", "A")
    yield "A", (c_n_form(u).form - s_sum(_forms(u)).scale(tau(-(n - 1), _sign(n))))


def _l65(n):
    first = general_family(2, "u1", p=2, flavor="A")
    rest = [general_family(1, f"u{k}", p=1 if k % 2 else 2, flavor="A")
            for k in range(2, n + 1)]
    args = [first] + rest
    lhs = deligne_d(c_gs_first(args))
    rhs = c_n_form([deligne_d(first)] + rest, "A")
    for k in range(2, n + 1):
        others = args[:k - 1] + args[k:]
        term = bullet(deligne_d(args[k - 1]), c_gs_first(others)).scale(n * _sign(k))
        rhs = rhs + term
    yield "d_A", (lhs - rhs).form


# ---------------------------------------------------------------------------
# associators

_QUARTER = tau(-2, Fraction(1, 4))


def _extremes(x):
    """del x^(N) + delbar x^(1) as a form."""
    return derive(x.slot(x.degree), "del") + derive(x.slot(1), "delbar")


def _associator(a, b, c):
    return (bullet(bullet(a, b), c) - bullet(a, bullet(b, c))).form


def _l517_1(n, m, l):
    a = general_family(n, "alpha", flavor="A")
    b = general_family(m, "beta", flavor="A")
    c = general_family(l, "gamma", flavor="A")
    rhs = (wedge_all(_extremes(a), _extremes(b), c.form).scale(_QUARTER * _sign(n + m))
           - wedge_all(a.form, _extremes(b), _extremes(c)).scale(_QUARTER))
    yield "associator", _associator(a, b, c) - rhs


def _exact_part(n, m, l, middle, a, c):
    """d_A of (-1)^(n+m+1)/(4t^2) a ^ middle ^ c as a degree n+m+l+1 element."""
    prim = wedge_all(a.form, middle, c.form).scale(_QUARTER * _sign(n + m + 1))
    return deligne_d(element(n + m + l + 1, prim, "A")).form


def _l517_2(n, m, l):
    a = closed_family(n, "alpha", flavor="A")
    b = closed_family(m, "beta", flavor="A")
    c = general_family(l, "gamma", flavor="A")
    rhs = _exact_part(n, m, l, d(b.form), a, c)
    if l >= 2:
        rhs = rhs - wedge_all(a.form, d(b.form), deligne_d(c).form).scale(_QUARTER)
    yield "associator", _associator(a, b, c) - rhs


def _l517_3(n, m, l):
    a = general_family(n, "alpha", flavor="A")
    b = closed_family(m, "beta", flavor="A")
    c = closed_family(l, "gamma", flavor="A")
    rhs = _exact_part(n, m, l, d(b.form), a, c)
    if n >= 2:
        rhs = rhs + wedge_all(deligne_d(a).form, d(b.form), c.form).scale(_QUARTER * _sign(n + m))
    yield "associator", _associator(a, b, c) - rhs


def _l517_4(n, m, l):
    a = closed_family(n, "alpha", flavor="A")
    b = general_family(m, "beta", flavor="A")
    c = closed_family(l, "gamma", flavor="A")
    if m >= 2:
        db = deligne_d(b).form
        rhs = _exact_part(n, m, l, d(b.form) + db, a, c)
        rhs = rhs + wedge_all(a.form, d(db), c.form).scale(_QUARTER * _sign(m))
    else:
        rhs = _exact_part(n, m, l, d(b.form), a, c)
    yield "associator", _associator(a, b, c) - rhs


# ---------------------------------------------------------------------------
# the triple-product defect

def build_phi_psi(n, m, l, f=None, g=None, h=None):
    """(Phi, Psi) for closed families F, G, H of degrees n, m, l."""
    for name, value in (("n", n), ("m", m), ("l", l)):
        if not isinstance(value, int) or value < 1:
            raise RangeError(f"build_phi_psi: {name}={value!r} must be >= 1")
    f = f or closed_family(n, "F")
    g = g or closed_family(m, "G")
    h = h or closed_family(l, "H")

    def product(x, y):
        # the degree n+m class realizing the product of x and y
        return bullet(x, y) + deligne_d(triangle(x, y)).scale(_sign(x.degree + 1))

    phi = (bullet(triangle(f, g), h).scale(_sign(n))
           - bullet(f, triangle(g, h)).scale(_sign(n + m))
           + triangle(product(f, g), h).scale(_sign(n + m))
           - triangle(f, product(g, h)).scale(_sign(n)))
    fs, gs, hs = f.slots(), g.slots(), h.slots()
    psi = FormExpr()
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            fg = wedge(fs[i], gs[j])
            for k in range(1, l + 1):
                c = combinatorics.coeff_c(n, m, l, i, j, k)
                if c:
                    psi = psi + wedge(fg, hs[k]).scale(c)
    return phi.form, psi


def _p518(n, m, l):
    f, g, h = closed_family(n, "F"), closed_family(m, "G"), closed_family(l, "H")
    phi, psi = build_phi_psi(n, m, l, f, g, h)
    defect = wedge_all(f.form, d(g.form), h.form).scale(_sign(n + m + 1))
    yield "Phi - dPsi", phi - d(psi) - defect


def _p518_extract(n, m, l):
    f, g, h = closed_family(n, "F"), closed_family(m, "G"), closed_family(l, "H")
    phi, psi = build_phi_psi(n, m, l, f, g, h)
    residual = phi - d(psi)
    fs, gs, hs = f.slots(), g.slots(), h.slots()
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for k in range(0, l + 1):
                basis = wedge_all(fs[i], gs[j], closed_jet("H", l, l, k))
                got = residual.coefficient(basis)
                yield f"d i={i} j={j} k={k}", got
                if k < l:
                    yield (f"d i={i} j={j} k={k} vs closed form",
                           got - combinatorics.coeff_d_case(n, m, l, i, j, k))
    expected = _sign(n + m + 1)
    for i in range(1, n + 1):
        for k in range(1, l + 1):
            for j in range(0, m + 1):
                basis = wedge_all(fs[i], closed_jet("G", m, m, j), hs[k])
                got = residual.coefficient(basis)
                yield f"e i={i} j={j} k={k}", got - (expected if j in (0, m) else 0)
                if j < m:
                    yield (f"e i={i} j={j} k={k} vs closed form",
                           got - combinatorics.coeff_e_case(n, m, l, i, j, k))


# ---------------------------------------------------------------------------
# structural identities of the products

def sample_element(degree, name, flavor="D"):
    """An abstract element spread over two weights (degree 0: a closed top form)."""
    if degree == 0:
        return top_family(name, 1, flavor) + top_family(name + "'", 2, flavor)
    return (general_family(degree, name, p=degree, flavor=flavor)
            + general_family(degree, name + "'", p=degree + 1, flavor=flavor))


def _flavors(n, m):
    for flavor in ("D", "A"):
        yield flavor, sample_element(n, "x", flavor), sample_element(m, "y", flavor)


def _bulletsym(n, m):
    for flavor, x, y in _flavors(n, m):
        yield flavor, (bullet(x, y) - bullet(y, x).scale(_sign(n * m))).form


def _trisym(n, m):
    for flavor, x, y in _flavors(n, m):
        yield flavor, (triangle(x, y) - triangle(y, x).scale(_sign(n * m + n + m))).form


def _leibniz(n, m):
    if n + m == 0:
        raise RangeError("LEIBNIZ needs n + m >= 1")
    for flavor, x, y in _flavors(n, m):
        # top-degree arguments are closed, so their terms drop out
        lhs = deligne_d(bullet(x, y)).form
        rhs = FormExpr()
        if n:
            rhs = rhs + bullet(deligne_d(x), y).form
        if m:
            rhs = rhs + bullet(x, deligne_d(y)).form.scale(_sign(n))
        yield flavor, lhs - rhs


def _theta_mult(n, m):
    x, y = sample_element(n, "x"), sample_element(m, "y")
    yield "bullet", (theta(bullet(x, y)) - bullet(theta(x), theta(y))).form
    yield "triangle", (theta(triangle(x, y)) - triangle(theta(x), theta(y))).form
    if n >= 1:
        yield "d", (theta(deligne_d(x)) - deligne_d(theta(x))).form


# check-id -> (parameter names, evaluator, minimum parameter value)
CATALOG = {
    "L16": (("n",), _l16, 1),
    "L43": (("n",), _l43, 1),
    "DSUM": (("n",), _dsum, 1),
    "L44": (("n", "m"), _l44, 1),
    "P45": (("n", "m"), _p45, 1),
    "L612": (("n", "m"), _l612, 1),
    "P63": (("n",), _p63, 1),
    "L65": (("n",), _l65, 1),
    "L517-1": (("n", "m", "l"), _l517_1, 1),
    "L517-2": (("n", "m", "l"), _l517_2, 1),
    "L517-3": (("n", "m", "l"), _l517_3, 1),
    "L517-4": (("n", "m", "l"), _l517_4, 1),
    "P518": (("n", "m", "l"), _p518, 1),
    "P518-EXTRACT": (("n", "m", "l"), _p518_extract, 1),
    "BULLETSYM": (("n", "m"), _bulletsym, 0),
    "TRISYM": (("n", "m"), _trisym, 0),
    "LEIBNIZ": (("n", "m"), _leibniz, 0),
    "THETA-MULT": (("n", "m"), _theta_mult, 0),
}


def _validate(check_id, params):
    if check_id not in CATALOG:
        raise UnknownCheck(check_id)
    names, fn, low = CATALOG[check_id]
    if set(params) != set(names):
        raise RangeError(f"{check_id} takes parameters {names}, got {sorted(params)}")
    for name in names:
        value = params[name]
        if not isinstance(value, int) or isinstance(value, bool) or value < low:
            raise RangeError(f"{check_id}: parameter {name}={value!r} out of range")
    return names, fn


def _nonzero(diff):
    if isinstance(diff, FormExpr):
        return bool(diff.terms)
    if isinstance(diff, TauScalar):
        return bool(diff)
    return diff != 0


def _describe(diff):
    if isinstance(diff, FormExpr):
        texts = diff.monomial_texts()
        more = f" (+{len(texts) - 1} more)" if len(texts) > 1 else ""
        return texts[0] + more
    if isinstance(diff, TauScalar):
        return diff.text()
    return str(diff)


def evaluate_form_identity(check_id, params):
    """First (label, difference) that is not zero, else None."""
    names, fn = _validate(check_id, params)
    for label, diff in fn(*(params[name] for name in names)):
        if _nonzero(diff):
            return label, diff
    return None


def check_form_identity(check_id, params):
    _validate(check_id, params)

    def body():
        bad = evaluate_form_identity(check_id, params)
        if bad is None:
            return None
        label, diff = bad
        return f"{label}: {_describe(diff)}"

    return run_check(check_id, params, body)
