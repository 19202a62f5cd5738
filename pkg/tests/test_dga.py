from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bckit import dga
from bckit.dga import (BASE, DDBAR, DEL, DELBAR, FormExpr, bullet, d, derive, log_form, log_jet,
                       s_form, s_sum, sign_involution, t_form, tau, theta, wedge)
from bckit.form_checks import degree_one_args
from bckit.mutations import apply_mutation


def L(a):
    return log_form(a)


def Q(a):
    return log_jet(a, DELBAR)


def test_s21_spot_value():
    assert s_form(2, 1, [L(1), L(2)]) == wedge(L(1), Q(2)) - wedge(L(2), Q(1))


def test_s21_text():
    # canonical order sorts by slot first, and L2 is even
    assert s_form(2, 1, [L(1), L(2)]).text() == "1 * L1 ∧ Q2 + -1 * Q1 ∧ L2"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_s_form_matches_antisymmetrization(n):
    args = [L(a) for a in range(1, n + 1)]
    for i in range(1, n + 1):
        assert s_form(n, i, args) == oracles.s_form(n, i, args), (n, i)


def test_s_form_on_general_families():
    args = [u.form for u in degree_one_args(3, "u")]
    for i in (1, 2, 3):
        assert s_form(3, i, args) == oracles.s_form(3, i, args)


def test_s_form_alternates_in_its_arguments():
    args = [L(1), L(2), L(3)]
    swapped = [L(2), L(1), L(3)]
    for i in (1, 2, 3):
        assert s_form(3, i, swapped) == -s_form(3, i, args)


def test_drop_sign_mutation_breaks_s21():
    with apply_mutation("S-FORM-DROP-SIGN"):
        assert s_form(2, 1, [L(1), L(2)]) != oracles.s_form(2, 1, [L(1), L(2)])
    assert s_form(2, 1, [L(1), L(2)]) == oracles.s_form(2, 1, [L(1), L(2)])


def test_t_form_normalization():
    # T_1 = (-1/2) * (-S_1^1(L1)) = L1 / 2
    assert t_form(1) == L(1).scale(Fraction(1, 2))
    assert t_form(2) == s_sum([L(1), L(2)]).scale(Fraction(1, 4))


def test_symmetrized_builder_cap():
    with pytest.raises(dga.ResourceLimit):
        s_form(9, 1, [L(a) for a in range(1, 10)])


def test_s_form_argument_errors():
    with pytest.raises(ValueError):
        s_form(2, 1, [L(1)])
    with pytest.raises(ValueError):
        s_form(2, 3, [L(1), L(2)])


# tau scalars

def test_tau_arithmetic():
    t = tau()
    assert t * tau(-1) == 1
    assert (t + 1) * (t - 1) == t * t - 1
    assert tau(2, Fraction(1, 3)).text() == "1/3*t^2"
    assert not (t - t)


# random homogeneous forms

JETS = st.sampled_from([BASE, DEL, DELBAR, DDBAR])
GEN = st.tuples(st.integers(1, 3), JETS)
JET_DEGREE = {BASE: 0, DEL: 1, DELBAR: 1, DDBAR: 2}


@st.composite
def monomials(draw):
    gens = draw(st.lists(GEN, max_size=4))
    coeff = draw(st.integers(-3, 3).filter(bool))
    form = FormExpr.scalar(coeff)
    for slot, jet in gens:
        form = wedge(form, log_jet(slot, jet))
    return form, sum(JET_DEGREE[j] for _, j in gens)


@st.composite
def homogeneous(draw):
    base, degree = draw(monomials())
    total = base
    for _ in range(draw(st.integers(0, 2))):
        other, deg = draw(monomials())
        if deg == degree:
            total = total + other
    return total, degree


@settings(max_examples=80, deadline=None)
@given(homogeneous())
def test_d_squares_to_zero(x):
    form, _ = x
    assert d(d(form)).is_zero()
    assert derive(derive(form, "del"), "del").is_zero()
    assert derive(derive(form, "delbar"), "delbar").is_zero()


@settings(max_examples=80, deadline=None)
@given(homogeneous(), homogeneous())
def test_graded_commutativity(x, y):
    (a, p), (b, q) = x, y
    sign = -1 if p * q % 2 else 1
    assert wedge(a, b) == wedge(b, a).scale(sign)


@settings(max_examples=80, deadline=None)
@given(homogeneous(), homogeneous())
def test_leibniz_rule(x, y):
    (a, p), (b, _) = x, y
    sign = -1 if p % 2 else 1
    assert d(wedge(a, b)) == wedge(d(a), b) + wedge(a, d(b)).scale(sign)


@settings(max_examples=50, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous())
def test_wedge_is_associative(x, y, z):
    a, b, c = x[0], y[0], z[0]
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_odd_generators_square_to_zero():
    assert wedge(Q(1), Q(1)).is_zero()
    assert not wedge(log_jet(1, DDBAR), log_jet(1, DDBAR)).is_zero()


def test_del_delbar_anticommute():
    x = L(1)
    assert derive(derive(x, "delbar"), "del") == -derive(derive(x, "del"), "delbar")


# Deligne elements

def test_sign_involution_is_an_involution():
    x = s_form(3, 2, [L(1), L(2), L(3)])
    once = sign_involution(x, 2)
    assert once == -x
    assert sign_involution(once, 2) == x


def test_bullet_of_logs_is_nonzero_and_theta_needs_d_flavor():
    u, v = degree_one_args(2, "u")
    prod = bullet(u, v)
    assert prod.degree == 2 and not prod.is_zero()
    renorm = theta(prod)
    assert renorm.flavor == "A"
    with pytest.raises(dga.FlavorError):
        theta(renorm)


def test_flavor_mismatch_raises():
    u, = degree_one_args(1, "u")
    with pytest.raises(dga.FlavorError):
        u + u.with_flavor("A")
