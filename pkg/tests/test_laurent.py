import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powercentral import MatrixAlgebra, QuaternionAlgebra, RationalField, parse_monomial
from powercentral.errors import InsufficientPoints, LeadingCoefficientNotInvertible, TruncationError
from powercentral.laurent import (
    LaurentSeries,
    bad_beta,
    central_poly_test,
    central_polys_g,
    check_central_pipeline,
    expand_monomial,
    first_nonzero_index,
    format_series,
    invert_algebraic,
    invert_general,
    invert_geometric,
    one_plus,
    sample_args,
    series_arith,
)

from .conftest import H, I, J, ONE, QQ, quat

CONSTS = {"a": I}


def series(alg, terms, order):
    return LaurentSeries.from_terms(alg, terms, order)


# -- arithmetic ------------------------------------------------------------------


def test_product_of_conjugate_linear_terms():
    s = series_arith(one_plus(I, 4), "mul", one_plus(-I, 4))
    assert s == series(H, {0: ONE, 2: ONE}, 4)


def test_zero_times_anything():
    z = series(H, {}, 5)
    assert (z * one_plus(J, 5)).is_zero()


def test_negative_degrees():
    t_inv = series(H, {-1: ONE}, 6)
    t = series(H, {1: ONE}, 6)
    prod = t_inv * t
    assert prod[0] == ONE and all(c.is_zero() for d, c in prod.terms() if d != 0)


def test_truncation_bookkeeping():
    s = one_plus(I, 3)
    with pytest.raises(TruncationError):
        s[4]
    # multiplying by t^-1 loses one known coefficient at the top
    t_inv = series(H, {-1: ONE}, 3)
    assert (s * t_inv).order == 2


# -- inversion ---------------------------------------------------------------------


def test_geometric_examples():
    s = invert_geometric(I, 3)
    assert s == series(H, {0: ONE, 1: -I, 2: -ONE, 3: I}, 3)
    assert invert_geometric(H.zero, 5) == series(H, {0: ONE}, 5)
    assert invert_geometric(quat(-1), 2) == series(H, {0: ONE, 1: ONE, 2: ONE}, 2)
    assert (one_plus(I, 3) * s) == series(H, {0: ONE}, 3)


def test_general_inverse():
    s = one_plus(J, 8)
    assert invert_general(s) == invert_geometric(J, 8)
    t_times = series(H, {1: ONE, 2: ONE}, 8)
    inv = invert_general(t_times)
    assert inv.val == -1
    assert (t_times * inv)[0] == ONE


def test_general_inverse_rejects_non_unit_leading_coefficient():
    split = QuaternionAlgebra(1, 1)
    s = LaurentSeries.from_terms(split, {0: split("[1,1,0,0]"), 1: split.one}, 4)
    with pytest.raises(LeadingCoefficientNotInvertible):
        invert_general(s)


def test_algebraic_form_for_i():
    form = invert_algebraic(I)
    assert [str(c) for c in form.denominator] == ["1", "0", "1"]
    assert list(form.numerator) == [ONE, -I]
    assert form.expand(8) == invert_geometric(I, 8)


def test_algebraic_form_for_central_elements():
    form = invert_algebraic(QQ("-1"))
    assert [str(c) for c in form.denominator] == ["-1", "1"]
    assert form.expand(6) == invert_geometric(QQ("-1"), 6)
    lam = QQ("3/2")
    g = central_polys_g(lam)
    assert [str(c) for c in g[0]] == ["-1", "-3/2"]
    assert invert_algebraic(lam).expand(6) == invert_geometric(lam, 6)


small = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@settings(max_examples=60, deadline=None)
@given(
    st.one_of(
        st.tuples(small, small, small, small).map(H.element),
        st.tuples(small, small, small, small).map(lambda c: MatrixAlgebra(2, QQ).element(((c[0], c[1]), (c[2], c[3])))),
        st.tuples(small, small, small, small).map(QuaternionAlgebra(2, -3).element),
    )
)
def test_two_inversion_routes_agree(a):
    assert invert_algebraic(a).expand(10) == invert_geometric(a, 10)


# -- bad beta -----------------------------------------------------------------------


def test_bad_beta_examples():
    assert bad_beta(I) == []
    for beta in range(-20, 21):
        assert (ONE + I * beta).is_unit()
    assert [str(b) for b in bad_beta(QQ("-1"))] == ["1"]
    m = MatrixAlgebra(2, QQ)("[[-1,0],[0,-1/2]]")
    assert sorted(str(b) for b in bad_beta(m)) == ["1", "2"]


def test_bad_beta_over_finite_fields():
    from powercentral import FiniteField

    m = MatrixAlgebra(2, FiniteField(5))
    a = m("[[1,2],[0,3]]")
    found = {str(b) for b in bad_beta(a)}
    brute = {str(b) for b in (FiniteField(5).element(((k,))) for k in range(5)) if not (m.one + a * b).is_unit()}
    assert found == brute


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_bad_beta_is_exact_on_rational_3x3(entries):
    m = MatrixAlgebra(3, QQ)
    a = m.element(tuple(tuple(Fraction(entries[3 * r + c]) for c in range(3)) for r in range(3)))
    betas = bad_beta(a)
    for b in betas:
        assert not (m.one + a * b).is_unit()
    listed = {b.v for b in betas}
    for k in range(-6, 7):
        for d in (1, 2, 3):
            beta = QQ.element(Fraction(k, d))
            if beta.v not in listed:
                assert (m.one + a * beta).is_unit()


# -- expansion of monomials ---------------------------------------------------------------


def test_commutator_expansion():
    w = parse_monomial("@a * x1 * @a^-1 * x1^-1", CONSTS, H)
    s = expand_monomial(w, [J], 4)
    assert s[0] == ONE
    assert s[1] == I * J * I.inverse() - J
    assert s[1] == -2 * J


def test_expansion_at_zero_args_is_constant():
    w = parse_monomial("@a * x1 * @{[1,1,0,0]} * x2^-1 * @a", CONSTS, H)
    s = expand_monomial(w, [H.zero, H.zero], 6)
    assert s.terms() == [(0, I * quat(1, 1) * I)]


def test_first_nonzero_index():
    w = parse_monomial("@a * x1 * @a^-1 * x1^-1", CONSTS, H)
    assert first_nonzero_index(w, [[J]], 6) == 1
    assert first_nonzero_index(parse_monomial("x1", {}, H), [[quat(2)]], 6) == 1
    central = parse_monomial("@c * x1 * @c^-1 * x1^-1", {"c": quat(5)}, H)
    assert first_nonzero_index(central, [[J], [I]], 6) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([Fraction(2), Fraction(-3), Fraction(1, 2)]))
def test_expansion_is_homogeneous(seed, lam):
    rng = random.Random(seed)
    w = parse_monomial("@a * x1 * @{[1,0,1,1]} * x2^-1 * x1^2 * @a^-1", CONSTS, H)
    args = [H.element(H.random(rng, 3)) for _ in range(2)]
    base = expand_monomial(w, args, 6)
    scaled = expand_monomial(w, [x * lam for x in args], 6)
    for i in range(7):
        assert scaled[i] == base[i] * lam**i


def test_pipeline_commutator():
    w = parse_monomial("@a * x1 * @a^-1 * x1^-1", CONSTS, H)
    rep = check_central_pipeline(w, [[J]], alpha=1)
    assert rep.status == "fails" and rep.extra["i0"] == 1
    rep = check_central_pipeline(w, [[J]], alpha=2)
    assert rep.status == "holds-on-sample"
    assert (rep.extra["i0"], rep.p_list) == (1, [2])


def test_pipeline_reports_are_reproducible():
    w = parse_monomial("@a * x1 * @a^-1 * x1^-1", CONSTS, H)
    samples = sample_args(H, 1, 10, seed=4)
    assert samples == sample_args(H, 1, 10, seed=4)
    a = check_central_pipeline(w, samples, alpha=2, seed=4).to_json()
    assert a == check_central_pipeline(w, sample_args(H, 1, 10, seed=4), alpha=2, seed=4).to_json()


# -- central polynomial test ------------------------------------------------------------


def test_central_polynomial_examples():
    assert central_poly_test([ONE, H.zero, ONE], [0, 1, 2]).central
    verdict = central_poly_test([H.zero, I], [0, 1])
    assert not verdict.central and verdict.witness == ONE
    f = [H.zero, -J, J]
    assert not central_poly_test(f, [0, 1, 2]).central
    with pytest.raises(InsufficientPoints):
        central_poly_test(f, [0, 1])


def test_format_series():
    assert format_series(invert_geometric(QQ("2"), 2)) == "1 + -2*t^1 + 4*t^2 + O(t^3)"


# -- seeded invariant sweeps ----------------------------------------------------


def _rand_h(rng, height=3):
    return H.element(H.random(rng, height))


def test_one_plus_times_geometric_is_one():
    rng = random.Random("geo")
    m2 = MatrixAlgebra(2, QQ)
    for _ in range(60):
        for a in (_rand_h(rng), m2.element(m2.random(rng, 3))):
            assert one_plus(a, 12) * invert_geometric(a, 12) == LaurentSeries.one(a.alg, 12)
            assert invert_geometric(a, 12) * one_plus(a, 12) == LaurentSeries.one(a.alg, 12)


def test_g0_degree_is_the_minimal_degree():
    from powercentral import minimal_polynomial

    rng = random.Random("g0")
    m3 = MatrixAlgebra(3, QQ)
    for _ in range(40):
        for a in (_rand_h(rng), m3.element(m3.random(rng, 2))):
            g0 = central_polys_g(a)[0]
            while len(g0) > 1 and g0[-1].is_zero():
                g0 = g0[:-1]
            mp = minimal_polynomial(a)
            # g_0(t) = +-t^n f(-1/t) loses degree only when f(0) = 0, i.e. a is not a unit
            lowest = next(k for k, c in enumerate(mp.monic_coeffs()) if not c.is_zero())
            assert len(g0) - 1 == mp.degree - lowest
            if a.is_unit():
                assert len(g0) - 1 == mp.degree
            assert len(bad_beta(a)) <= mp.degree


def test_expansion_is_multiplicative():
    from powercentral.words import Monomial, multiply

    rng = random.Random("mult")
    pool = [I, J, quat(1, 1), quat(2, 0, 1, -1), ONE]
    for _ in range(60):
        words = []
        for _ in range(2):
            t = rng.randint(1, 3)
            words.append(
                Monomial.make(
                    [rng.choice(pool) for _ in range(t + 1)],
                    [(rng.randint(1, 2), rng.choice([-2, -1, 1, 2])) for _ in range(t)],
                )
            )
        u, v = words
        args = [_rand_h(rng) for _ in range(2)]
        uv = multiply(u, v)
        if uv.is_constant():
            continue
        assert expand_monomial(uv, args, 8) == expand_monomial(u, args, 8) * expand_monomial(v, args, 8)


def test_homogeneity_seeded_sweep():
    from powercentral.words import Monomial

    rng = random.Random("homog")
    pool = [I, J, quat(1, 1), quat(2, 0, 1, -1), ONE]
    for _ in range(200):
        t = rng.randint(1, 3)
        w = Monomial.make([rng.choice(pool) for _ in range(t + 1)], [(rng.randint(1, 2), rng.choice([-1, 1, 2])) for _ in range(t)])
        if w.is_constant():
            continue
        args = [_rand_h(rng, 2) for _ in range(w.arity)]
        lam = rng.choice([Fraction(2), Fraction(-3), Fraction(1, 2)])
        base = expand_monomial(w, args, 6)
        scaled = expand_monomial(w, [x * lam for x in args], 6)
        assert base[0] == w.coefficient_product()
        for i in range(1, 7):
            assert scaled[i] == base[i] * lam**i


def test_central_poly_test_matches_direct_check():
    rng = random.Random("cpoly")
    for _ in range(200):
        deg = rng.randint(0, 6)
        f = []
        for _ in range(deg + 1):
            if rng.random() < 0.7:
                f.append(H.scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3))))
            else:
                f.append(_rand_h(rng, 2))
        if f[-1].is_zero():
            f[-1] = ONE
        points = list(range(deg + 1 + rng.randint(0, 2)))
        verdict = central_poly_test(f, points)
        assert verdict.central == all(c.is_central() for c in f)
