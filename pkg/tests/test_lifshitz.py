import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from casimir_debye.errors import ContractError, DomainError
from casimir_debye.lifshitz import (
    ModePoint,
    QuadratureSpec,
    ScreeningSpec,
    gamma_material,
    gamma_vacuum,
    mode_function,
    mode_integral_dd,
    mode_integral_f,
    reflection_te,
    reflection_tm,
    zero_frequency_te_reflection_limit,
    zero_frequency_tm_reflection_limit,
)
from casimir_debye.materials import C_LIGHT, DrudeConductivity, IntrinsicSemiconductor, PerfectConductor, StaticDielectric

OFF = ScreeningSpec.off()
ZETA3 = 1.2020569031595942


def test_gamma_vacuum():
    assert gamma_vacuum(7.0, 0.0) == 7.0
    assert gamma_vacuum(0.0, 2.0 * C_LIGHT) == pytest.approx(2.0)
    assert gamma_vacuum(3.0, 4.0 * C_LIGHT) == pytest.approx(5.0, rel=1e-15)
    with pytest.raises(DomainError):
        gamma_vacuum(-1.0, 0.0)


def test_gamma_material_screened():
    s = ScreeningSpec.debye_fixed(1e-7)
    assert gamma_material(0.0, 0.0, DrudeConductivity(1e7), s) == pytest.approx(1e7)
    assert gamma_material(1.0, 0.0, DrudeConductivity(1e7), ScreeningSpec.debye_fixed(1.0)) == pytest.approx(math.sqrt(2))


def test_gamma_material_vacuum_like():
    for q, xi in ((0.0, 1e12), (1e6, 1e14), (3e5, 5e13)):
        assert gamma_material(q, xi, StaticDielectric(1.0), OFF) == pytest.approx(gamma_vacuum(q, xi), rel=1e-15)


def test_gamma_material_contracts():
    with pytest.raises(ContractError):
        gamma_material(1.0, 1.0, PerfectConductor(), OFF)
    with pytest.raises(ContractError):
        gamma_material(1.0, 0.0, DrudeConductivity(1.0), OFF)


@settings(max_examples=100)
@given(st.floats(0, 1e9), st.floats(1e6, 1e16), st.floats(1e-10, 1e-5))
def test_gamma_material_at_least_vacuum(q, xi, lam):
    model = DrudeConductivity(1e6)
    assert gamma_material(q, xi, model, ScreeningSpec.debye_fixed(lam)) >= gamma_vacuum(q, xi)
    assert gamma_material(q, xi, model, OFF) >= gamma_vacuum(q, xi) * (1 - 1e-15)


def test_screening_off_records_tm_false():
    assert ScreeningSpec("off", apply_to_tm=True).apply_to_tm is False
    with pytest.raises(DomainError):
        ScreeningSpec.debye_fixed(0.0)


def test_reflection_identical_media_zero():
    p = ModePoint(1e6, 1e14, 1e-6)
    assert reflection_te(p, StaticDielectric(1.0), OFF) == 0.0
    assert reflection_tm(p, StaticDielectric(1.0), OFF) == 0.0


def test_reflection_perfect_conductor_one():
    for xi in (0.0, 1e14):
        p = ModePoint(1e6, xi, 1e-6)
        assert reflection_te(p, PerfectConductor(), OFF) == 1.0
        assert reflection_tm(p, PerfectConductor(), OFF) == 1.0


def test_reflection_te_strong_screening():
    p = ModePoint(1e6, 0.0, 1e-6)
    r = reflection_te(p, DrudeConductivity(4.5e7), ScreeningSpec.debye_fixed(1e-10))
    # mpmath oracle; first-order expansion 1 - 2 q lambda = 0.9998
    assert r == pytest.approx(0.999800019999000000, rel=1e-14)
    assert r == pytest.approx(1 - 2 * 1e6 * 1e-10, abs=1e-7)


def test_reflection_tm_static_zero_frequency():
    for q in (1.0, 1e6, 1e9):
        assert reflection_tm(ModePoint(q, 0.0, 1e-6), StaticDielectric(16), OFF) == pytest.approx(15 / 17)


def test_reflection_tm_static_small_xi_matches_limit():
    p = ModePoint(1e6, 1e-3, 1e-6)
    assert reflection_tm(p, StaticDielectric(16), OFF) == pytest.approx(15 / 17, rel=1e-12)


def test_zero_frequency_te_limits():
    drude = DrudeConductivity(4.5e7)
    for q in (0.0, 1.0, 1e6):
        assert zero_frequency_te_reflection_limit(drude, OFF, q) == 0.0
    lam = 1e-7
    s = ScreeningSpec.debye_fixed(lam)
    assert zero_frequency_te_reflection_limit(drude, s, 0.75 / lam) == pytest.approx(0.25, rel=1e-14)
    assert zero_frequency_te_reflection_limit(drude, s, 1e-6 / lam) == pytest.approx(1.0, abs=3e-6)
    assert zero_frequency_te_reflection_limit(PerfectConductor(), OFF, 1e6) == 1.0


def test_zero_frequency_tm_limits():
    assert zero_frequency_tm_reflection_limit(DrudeConductivity(1.0), OFF, 1e6) == 1.0
    assert zero_frequency_tm_reflection_limit(StaticDielectric(3.0), OFF, 1e6) == pytest.approx(0.5)


screened_models = st.sampled_from([DrudeConductivity(4.5e7), IntrinsicSemiconductor(16, 4.7e19), StaticDielectric(16)])


# each model with its physical range of log10(lambda): metals screen within
# a nanometre, so a metallic conductivity never meets a long Debye length
screened_pairs = st.one_of(
    st.tuples(st.just(DrudeConductivity(4.5e7)), st.floats(-11, -9)),
    st.tuples(st.just(IntrinsicSemiconductor(16, 4.7e19)), st.floats(-9, -5)),
    st.tuples(st.just(StaticDielectric(16)), st.floats(-9, -5)),
)


@settings(max_examples=80)
@given(screened_pairs, st.floats(-7, -4), st.floats(0, 3))
def test_zero_frequency_continuity(pair, log_d, qd):
    """Analytic xi -> 0 limit agrees with the finite-xi coefficient at
    xi = 1e-6 c/d. At q = 0 the two differ by about 2e-6 lambda/d, so the
    screening length is kept below d/2."""
    model, log_lam = pair
    lam, d = 10.0**log_lam, 10.0**log_d
    assume(lam <= 0.5 * d)
    q = qd / d
    s = ScreeningSpec.debye_fixed(lam)
    xi = 1e-6 * C_LIGHT / d
    limit = zero_frequency_te_reflection_limit(model, s, q)
    assert reflection_te(ModePoint(q, xi, d), model, s) == pytest.approx(limit, abs=1e-6)


@settings(max_examples=60)
@given(screened_models, st.floats(-10, -5), st.floats(0, 16), st.floats(0, 1e9), st.floats(1.0, 10.0))
def test_te_reflection_bounds_and_q_monotone(model, log_lam, log_xi, q, factor):
    s = ScreeningSpec.debye_fixed(10.0**log_lam)
    xi = 0.0 if log_xi < 1 else 10.0**log_xi
    r1 = reflection_te(ModePoint(q, xi, 1e-6), model, s)
    r2 = reflection_te(ModePoint(q * factor + 1.0, xi, 1e-6), model, s)
    assert 0.0 <= r2 <= 1.0 and 0.0 <= r1 <= 1.0
    assert r2 <= r1 * (1 + 1e-15)


def test_mode_function_values():
    p = ModePoint(1e6, 0.0, 1e-6)
    assert mode_function(p, "TE", StaticDielectric(1.0), OFF) == 1.0
    assert mode_function(p, "TE", PerfectConductor(), OFF) == pytest.approx(1 - math.exp(-2e6 * 1e-6))
    # r = 1/2 with gamma_0 d = ln 2: TE limit with q = 0.75/lambda gives r = 1/4, so use TM static eps=3
    d = math.log(2) / 1e6
    assert mode_function(ModePoint(1e6, 0.0, d), "TM", StaticDielectric(3.0), OFF) == pytest.approx(15 / 16)


@settings(max_examples=60)
@given(screened_models, st.floats(0, 1e8), st.floats(0, 16), st.sampled_from(["TE", "TM"]))
def test_mode_function_range(model, q, log_xi, pol):
    xi = 0.0 if log_xi < 1 else 10.0**log_xi
    s = ScreeningSpec.debye_fixed(1e-8)
    g = mode_function(ModePoint(q + 1.0, xi, 1e-6), pol, model, s)
    assert 0.0 < g <= 1.0


def _mp_pc_zero(d):
    """(1/2pi) int ln(1 - e^{-2qd}) q dq by mpmath quadrature."""
    mpmath.mp.dps = 30
    val = mpmath.quad(lambda q: mpmath.log(1 - mpmath.exp(-2 * q * d)) * q, [0, 1 / d, mpmath.inf])
    return float(val / (2 * mpmath.pi))


def test_mode_integral_perfect_zero_frequency():
    d = 1e-6
    exact = -ZETA3 / (8 * math.pi * d * d)
    v = mode_integral_f(0.0, d, PerfectConductor(), OFF)
    assert v == pytest.approx(exact, rel=1e-10)
    assert v == pytest.approx(_mp_pc_zero(d), rel=1e-10)
    assert mode_integral_f(0.0, 2 * d, PerfectConductor(), OFF) == pytest.approx(v / 4, rel=1e-10)


def test_mode_integral_finite_xi_against_mpmath():
    d, xi = 1e-6, 2e14
    model = DrudeConductivity(4.5e7)
    eps = 1 + 4.5e7 / (8.8541878128e-12 * xi)
    k = xi / C_LIGHT

    def integrand(q):
        g0 = mpmath.sqrt(q * q + k * k)
        g1 = mpmath.sqrt(q * q + eps * k * k)
        r = (g1 - g0) / (g1 + g0)
        return mpmath.log(1 - r * r * mpmath.exp(-2 * g0 * d)) * q

    mpmath.mp.dps = 25
    oracle = float(mpmath.quad(integrand, [0, 1 / d, 10 / d, mpmath.inf]) / (2 * mpmath.pi))
    assert mode_integral_f(xi, d, model, OFF, "TE") == pytest.approx(oracle, rel=1e-9)


def test_mode_integral_vacuum_zero():
    assert mode_integral_f(1e14, 1e-6, StaticDielectric(1.0), OFF) == 0.0
    assert mode_integral_f(0.0, 1e-6, DrudeConductivity(1.0), OFF, "TE") == 0.0


@settings(max_examples=30, deadline=None)
@given(screened_models, st.floats(0, 15.5), st.floats(-7, -4), st.sampled_from(["TE", "TM"]))
def test_mode_integral_nonpositive_and_shrinks_with_d(model, log_xi, log_d, pol):
    xi = 0.0 if log_xi < 1 else 10.0**log_xi
    d = 10.0**log_d
    s = ScreeningSpec.debye_fixed(1e-8)
    a = mode_integral_f(xi, d, model, s, pol)
    b = mode_integral_f(xi, 1.5 * d, model, s, pol)
    assert a <= 0.0 and b <= 0.0
    assert abs(b) <= abs(a) * (1 + 1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(-9.5, -6), st.floats(1.1, 10), st.floats(-6.5, -5))
def test_screening_monotonicity(log_lam, factor, log_d):
    lam, d = 10.0**log_lam, 10.0**log_d
    model = DrudeConductivity(4.5e7)
    for q in (1e4, 1e6, 1e8):
        assert zero_frequency_te_reflection_limit(model, ScreeningSpec.debye_fixed(lam / factor), q) >= \
            zero_frequency_te_reflection_limit(model, ScreeningSpec.debye_fixed(lam), q)
    f_big = mode_integral_f(0.0, d, model, ScreeningSpec.debye_fixed(lam))
    f_small = mode_integral_f(0.0, d, model, ScreeningSpec.debye_fixed(lam / factor))
    assert f_small <= f_big


@pytest.mark.parametrize("model", [PerfectConductor(), DrudeConductivity(4.5e7), StaticDielectric(16)])
def test_quadrature_self_consistency(model):
    d, xi = 1e-6, 1e14
    v1, e1 = mode_integral_f(xi, d, model, OFF, "TM", QuadratureSpec(rel_tol=1e-8), return_error=True)
    v2, _ = mode_integral_f(xi, d, model, OFF, "TM", QuadratureSpec(rel_tol=5e-9), return_error=True)
    assert abs(v1 - v2) <= max(e1, 1e-15 * abs(v1))


@pytest.mark.parametrize("xi", [0.0, 5e13, 3e14])
@pytest.mark.parametrize("pol", ["TE", "TM"])
def test_mode_integral_derivative_matches_finite_difference(xi, pol):
    d = 2e-6
    model, s = DrudeConductivity(4.5e7), ScreeningSpec.debye_fixed(1e-8)
    h = d * 1e-4
    q = QuadratureSpec(rel_tol=1e-12)
    fd = (mode_integral_f(xi, d + h, model, s, pol, q) - mode_integral_f(xi, d - h, model, s, pol, q)) / (2 * h)
    assert mode_integral_dd(xi, d, model, s, pol, q) == pytest.approx(fd, rel=1e-6)
