import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvechow import chow
from curvechow.chow import (
    AmbientError,
    ChowClass,
    Configuration,
    configurations,
    diagonal,
    eta,
    fundamental,
    integrate,
    point,
    power,
    pullback_insert_first,
    pushforward_forget_first,
    small_diagonal,
    symmetric_classes,
)
from curvechow.poly import RatPoly

from oracle import Cohomology, degree_against_H_power
from strategies import classes, generators, monomial_classes

G = RatPoly.symbol("g")


def cfg(n, *blocks):
    return Configuration.make(n, blocks)


def single(n, *blocks, coeff=1):
    return ChowClass(n, {cfg(n, *blocks): RatPoly.coerce(coeff)})


# -- generators ---------------------------------------------------------------

def test_point_generator():
    assert point(1, 2) == single(2, ((1,), True), ((2,), False))


def test_diagonal_generator():
    assert diagonal(1, 2, 2) == single(2, ((1, 2), False))


def test_eta_generator():
    assert eta({1, 2}, 3) == single(3, ((1,), True), ((2,), True), ((3,), False))


def test_eta_of_empty_set_is_fundamental():
    assert eta((), 3) == fundamental(3)


@pytest.mark.parametrize("make", [
    lambda: point(3, 2),
    lambda: point(0, 2),
    lambda: diagonal(1, 1, 3),
    lambda: diagonal(1, 4, 3),
    lambda: eta({5}, 3),
])
def test_generator_index_errors(make):
    with pytest.raises(AmbientError):
        make()


def test_ambient_cap(monkeypatch):
    monkeypatch.setattr(chow.config, "max_n", 4)
    with pytest.raises(AmbientError):
        fundamental(5)


def test_configuration_rejects_non_partition():
    with pytest.raises(AmbientError):
        Configuration.make(3, [((1, 2), False)])
    with pytest.raises(AmbientError):
        Configuration.make(2, [((1, 2), False), ((2,), True)])


def test_canonical_form_and_rendering():
    c = Configuration.make(3, [((3,), False), ((2, 1), False)])
    assert c.blocks == (((1, 2), False), ((3,), False))
    assert str(c) == "[{1,2} {3}]"
    # a pinned block is the same locus as its pinned singletons
    assert Configuration.make(3, [((2, 1), True), ((3,), False)]) == \
        Configuration.make(3, [((1,), True), ((2,), True), ((3,), False)])


def test_codimension():
    assert cfg(3, ((1, 2, 3), False)).codim == 2
    assert cfg(3, ((1,), True), ((2, 3), False)).codim == 2
    assert Configuration.fundamental(4).codim == 0


def test_symmetric_classes_n2():
    H, delta, delta_prime = symmetric_classes(2)
    assert H == point(1, 2) + point(2, 2)
    assert delta == diagonal(1, 2, 2)
    assert delta_prime == diagonal(1, 2, 2)


@pytest.mark.parametrize("n, n_delta, n_prime", [(1, 0, 0), (3, 3, 2), (4, 6, 3)])
def test_symmetric_classes_sizes(n, n_delta, n_prime):
    H, delta, delta_prime = symmetric_classes(n)
    assert (len(H), len(delta), len(delta_prime)) == (n, n_delta, n_prime)


# -- products -----------------------------------------------------------------

def test_point_squared_vanishes():
    assert (point(1, 2) * point(1, 2)).is_zero()


def test_diagonal_self_intersection():
    assert diagonal(1, 2, 2) ** 2 == eta({1, 2}, 2) * (2 - 2 * G)


def test_two_diagonals_through_a_common_index():
    assert diagonal(1, 2, 3) * diagonal(1, 3, 3) == small_diagonal((1, 2, 3), 3)


def test_point_on_diagonal():
    assert point(1, 2) * diagonal(1, 2, 2) == eta({1, 2}, 2)


def test_both_pinned_under_diagonal_vanishes():
    assert (eta({1, 2}, 3) * diagonal(1, 2, 3)).is_zero()


def test_diagonal_inside_free_block():
    big = small_diagonal((1, 2, 3), 4)
    assert big * diagonal(2, 3, 4) == \
        single(4, ((1,), True), ((2,), True), ((3,), True), ((4,), False), coeff=2 - 2 * G)


def test_mismatched_ambient():
    with pytest.raises(AmbientError):
        point(1, 2) * point(1, 3)


# -- powers and integration ----------------------------------------------------

def test_H_squared_on_C2():
    H, _, _ = symmetric_classes(2)
    assert power(H, 2) == eta({1, 2}, 2) * 2


def test_H_squared_on_C3():
    H, _, _ = symmetric_classes(3)
    assert power(H, 2) == (eta({1, 2}, 3) + eta({1, 3}, 3) + eta({2, 3}, 3)) * 2


def test_zeroth_power_is_fundamental():
    _, delta, _ = symmetric_classes(3)
    assert power(delta, 0) == fundamental(3)
    assert power(ChowClass.zero(1), 0) == fundamental(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_integrate_top_power_of_H(n):
    H, _, _ = symmetric_classes(n)
    assert integrate(power(H, n)) == factorial(n)


def test_integrate_delta_H2_on_C3():
    H, delta, _ = symmetric_classes(3)
    assert integrate(delta * power(H, 2)) == 12


@pytest.mark.parametrize("n", [1, 2, 5])
def test_integrate_fundamental(n):
    assert integrate(fundamental(n)) == 0


def test_integrate_delta_squared_H_on_C3():
    # oracle: cohomology at g = 0, 1, 2, 3 fixes the affine polynomial in g
    H, delta, _ = symmetric_classes(3)
    value = integrate(delta * delta * H)
    for genus in range(4):
        C = Cohomology(3, genus)
        assert value.evaluate({"g": genus}) == C.integrate(C.mul(C.mul(C.delta(), C.delta()), C.H()))
    assert value == 24 - 6 * G


# -- pushforward and pullback ---------------------------------------------------

def test_pushforward_of_pinned_first_point():
    assert pushforward_forget_first(eta({1}, 2)) == fundamental(1)


def test_pushforward_of_fundamental_vanishes():
    assert pushforward_forget_first(fundamental(2)).is_zero()


def test_pushforward_of_diagonal():
    assert pushforward_forget_first(diagonal(1, 2, 2)) == fundamental(1)


def test_pushforward_needs_n_at_least_2():
    with pytest.raises(AmbientError):
        pushforward_forget_first(fundamental(1))


def test_pushforward_relabels():
    assert pushforward_forget_first(eta({1, 3}, 3)) == eta({2}, 2)
    assert pushforward_forget_first(small_diagonal((1, 2, 3), 3)) == diagonal(1, 2, 2)


def test_pullback_of_fundamental():
    assert pullback_insert_first(fundamental(1)) == fundamental(2)


def test_pullback_relabels():
    assert pullback_insert_first(point(1, 1)) == point(2, 2)


def test_pushforward_of_eta_sum():
    # pr1bar_* eta_I = eta_{I - 1} if 1 in I, else 0
    for I in [(1,), (1, 2), (2,), (2, 3), (1, 2, 3)]:
        pushed = pushforward_forget_first(eta(I, 3))
        expected = eta([i - 1 for i in I if i != 1], 2) if 1 in I else ChowClass.zero(2)
        assert pushed == expected


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_projection_formula(data):
    n = data.draw(st.integers(2, 4))
    alpha = data.draw(classes(n - 1))
    beta = data.draw(classes(n))
    lhs = integrate(pullback_insert_first(alpha) * beta)
    rhs = integrate(alpha * pushforward_forget_first(beta))
    assert lhs == rhs


# -- algebra properties ------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.data())
def test_commutative_and_associative(data):
    n = data.draw(st.integers(1, 5))
    a, b, c = (data.draw(monomial_classes(n)) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_distributive(data):
    n = data.draw(st.integers(1, 4))
    a, b, c = (data.draw(classes(n)) for _ in range(3))
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_grading(data):
    n = data.draw(st.integers(2, 5))
    c1 = data.draw(st.sampled_from(list(configurations(n))))
    c2 = data.draw(st.sampled_from(list(configurations(n))))
    prod = chow.config_product(c1, c2)
    if prod is not None:
        assert prod[1].codim == c1.codim + c2.codim


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_permutation_equivariance(data):
    n = data.draw(st.integers(2, 5))
    perm_list = data.draw(st.permutations(range(1, n + 1)))
    perm = dict(zip(range(1, n + 1), perm_list))
    a = data.draw(classes(n))
    b = data.draw(classes(n))
    assert (a * b).relabel(perm) == a.relabel(perm) * b.relabel(perm)
    assert integrate(a.relabel(perm)) == integrate(a)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_top_degree_products_match_cohomology(data):
    n = data.draw(st.integers(2, 4))
    gens = [data.draw(generators(n)) for _ in range(n)]
    cls = fundamental(n)
    for _, gen in gens:
        cls = cls * gen
    value = integrate(cls)
    for genus in range(3):
        C = Cohomology(n, genus)
        assert value.evaluate({"g": genus}) == C.integrate(C.from_generators([lab for lab, _ in gens]))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_pairing_with_powers_of_H(data):
    n = data.draw(st.integers(2, 6))
    k = data.draw(st.integers(0, n))
    c = data.draw(st.sampled_from(list(configurations(n, n - k))))
    H, _, _ = symmetric_classes(n)
    alpha = ChowClass(n, {c: 1})
    assert integrate(alpha * power(H, k)) == degree_against_H_power(c.blocks, k)


@pytest.mark.parametrize("n", range(2, 8))
def test_powers_of_H_are_sums_of_eta(n):
    H, _, _ = symmetric_classes(n)
    Hk = fundamental(n)
    for k in range(1, n + 1):
        Hk = Hk * H
        expected = ChowClass.zero(n)
        for I in itertools.combinations(range(1, n + 1), k):
            expected = expected + eta(I, n)
        assert Hk == expected * factorial(k)


@pytest.mark.parametrize("n", range(2, 6))
def test_delta_squared_expansion(n):
    _, delta, _ = symmetric_classes(n)
    idx = range(1, n + 1)
    expected = ChowClass.zero(n)
    for i, j in itertools.combinations(idx, 2):
        expected = expected + diagonal(i, j, n) ** 2
    for i, j, k in itertools.combinations(idx, 3):
        expected = expected + small_diagonal((i, j, k), n) * 6
    pairs = list(itertools.combinations(idx, 2))
    for p, q in itertools.permutations(pairs, 2):
        if not set(p) & set(q):
            expected = expected + diagonal(*p, n) * diagonal(*q, n)
    assert delta * delta == expected


@pytest.mark.parametrize("n, codim, count", [
    (2, 1, 3), (3, 1, 6), (3, 2, 7), (4, 2, 25), (5, 3, 90),
])
def test_configuration_counts(n, codim, count):
    # a pinned set acts as one extra block: Stirling S(n + 1, n + 1 - codim)
    assert sum(1 for _ in configurations(n, codim)) == count


def test_total_configuration_count_is_bell():
    # a pinned set behaves like one extra element: B(n + 1)
    bell = [1, 1, 2, 5, 15, 52, 203]
    for n in range(1, 6):
        assert sum(1 for _ in configurations(n)) == bell[n + 1]
