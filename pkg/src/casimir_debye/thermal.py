"""Matsubara summation of the Lifshitz free energy and derived quantities.

The free energy per unit area is

    E(T) = k_B T sum'_n [f_TE(xi_n) + f_TM(xi_n)],   xi_n = 2 pi n k_B T / hbar,

with the n = 0 term halved. The T = 0 value is the integral
(hbar / 2 pi) int_0^inf [f_TE + f_TM] dxi, evaluated on its own code path.

Entropy uses the thermodynamic sign S = -dF/dT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from scipy import integrate

from .errors import ConvergenceError, DomainError
from .lifshitz import POLARIZATIONS, QuadratureSpec, mode_integral_dd, mode_integral_f
from .materials import C_LIGHT, HBAR, K_B, validity_max_frequency


@dataclass(frozen=True)
class GapConfig:
    d: float
    temperature: float
    rel_tol: float = 1e-10
    n_max: int = 100_000
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError("d", f"must be > 0, got {self.d!r}")
        if not self.temperature >= 0:
            raise DomainError("temperature", f"must be >= 0, got {self.temperature!r}")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol", "must be > 0")
        if self.n_max < 1:
            raise DomainError("n_max", "must be >= 1")

    def at(self, d=None, temperature=None):
        return GapConfig(
            self.d if d is None else d,
            self.temperature if temperature is None else temperature,
            self.rel_tol,
            self.n_max,
            self.quad,
        )


@dataclass
class FreeEnergyBreakdown:
    """Free energy per area with every Matsubara term kept.

    ``te_terms[0]``/``tm_terms[0]`` are the already-halved n = 0 terms.
    ``total`` is the plain sum of the listed terms; ``truncation_estimate``
    is the geometric tail beyond ``n_used`` and is *not* included in it.
    """

    total: float
    te_terms: list
    tm_terms: list
    n_zero_te: float
    n_zero_tm: float
    n_used: int
    truncation_estimate: float
    validity_warnings: list = field(default_factory=list)


@dataclass
class GapCheck:
    rows: list
    energy_t0: float
    degenerate: bool = False


def matsubara_frequency(n, temperature):
    if n < 0 or int(n) != n:
        raise DomainError("n", f"must be an integer >= 0, got {n!r}")
    if not temperature > 0:
        raise DomainError("temperature", f"must be > 0, got {temperature!r}")
    return 2.0 * math.pi * n * K_B * temperature / HBAR


def _thermal_arg(omega, temperature):
    if not omega > 0:
        raise DomainError("omega", f"must be > 0, got {omega!r}")
    if not temperature > 0:
        raise DomainError("temperature", f"must be > 0, got {temperature!r}")
    return HBAR * omega / (2.0 * K_B * temperature)


def photon_number(omega, temperature):
    """coth(hbar omega / 2 k_B T)."""
    return 1.0 / math.tanh(_thermal_arg(omega, temperature))


def photon_number_dT(omega, temperature):
    """Analytic dn/dT = (x / T) csch^2 x with x = hbar omega / 2 k_B T."""
    x = _thermal_arg(omega, temperature)
    e = math.exp(-2.0 * x)
    csch2 = 4.0 * e / math.expm1(-2.0 * x) ** 2
    return x / temperature * csch2


def _sum_matsubara(gap, model, screening, kernel):
    """Primed sum over n of kernel(xi_n, pol) for both polarizations.

    Returns per-n lists (n = 0 halved), the number of indices used and the
    geometric tail estimate. Terms are not yet multiplied by k_B T.
    """
    T = gap.temperature
    te = [0.5 * kernel(0.0, "TE")]
    tm = [0.5 * kernel(0.0, "TM")]
    partial = te[0] + tm[0]
    prev = None
    small_run = 0
    tail = 0.0
    n = 0
    while True:
        n += 1
        if n >= gap.n_max:
            break
        xi = matsubara_frequency(n, T)
        a, b = kernel(xi, "TE"), kernel(xi, "TM")
        te.append(a)
        tm.append(b)
        term = a + b
        partial += term
        if partial == 0.0 and term == 0.0:
            small_run += 1
        elif partial != 0.0 and abs(term) < gap.rel_tol * abs(partial):
            small_run += 1
        else:
            small_run = 0
        tail = _tail(term, prev)
        prev = term
        if small_run >= 2:
            return te, tm, n + 1, tail
    if partial != 0.0 and abs(tail) > gap.rel_tol * abs(partial):
        raise ConvergenceError(
            f"Matsubara sum not converged after n_max={gap.n_max} terms",
            residual=tail,
            partial=(te, tm),
        )
    return te, tm, n, tail


def _tail(term, prev):
    if term == 0.0 or prev is None or prev == 0.0:
        return 0.0
    ratio = term / prev
    if 0.0 < ratio < 1.0:
        return term * ratio / (1.0 - ratio)
    return term


def _validity_warnings(gap, screening, kinetics, n_used):
    if kinetics is None or not screening.enabled or n_used < 2:
        return []
    lam = screening.length(gap.temperature)
    bound = validity_max_frequency(kinetics, lam)
    xi_max = matsubara_frequency(n_used - 1, gap.temperature)
    if xi_max <= bound:
        return []
    first = math.floor(bound / matsubara_frequency(1, gap.temperature)) + 1
    return [f"xi_n exceeds v_c/lambda={bound:.6g} rad/s for n >= {first}"]


def free_energy(gap, model, screening, kinetics=None):
    """Matsubara-summed free energy per unit area, J/m^2."""
    if not gap.temperature > 0:
        raise DomainError("temperature", "must be > 0 for the Matsubara sum; use free_energy_T0")
    T = gap.temperature

    def kernel(xi, pol):
        return mode_integral_f(xi, gap.d, model, screening, pol, gap.quad, T)

    te, tm, n_used, tail = _sum_matsubara(gap, model, screening, kernel)
    kT = K_B * T
    te = [kT * v for v in te]
    tm = [kT * v for v in tm]
    total = math.fsum(te + tm)
    return FreeEnergyBreakdown(
        total=total,
        te_terms=te,
        tm_terms=tm,
        n_zero_te=te[0],
        n_zero_tm=tm[0],
        n_used=n_used,
        truncation_estimate=kT * tail,
        validity_warnings=_validity_warnings(gap, screening, kinetics, n_used),
    )


def _xi_integral(d, kernel, quad):
    """hbar/(2 pi) int_0^inf sum_pol kernel(xi, pol) dxi via xi = (c/d) s."""
    scale = C_LIGHT / d

    def integrand(s):
        xi = scale * s
        return kernel(xi, "TE") + kernel(xi, "TM")

    out = integrate.quad(
        integrand, 0.0, math.inf, epsrel=quad.rel_tol, epsabs=0.0, limit=quad.max_subdivisions, full_output=1
    )
    value, err = out[0], out[1]
    if len(out) > 3 and err > quad.rel_tol * abs(value) * 10:
        raise ConvergenceError(f"frequency integral did not converge: {out[3]}", residual=err, partial=value)
    return HBAR / (2.0 * math.pi) * scale * value


def _inner_quad(quad):
    return QuadratureSpec(min(quad.rel_tol, 1e-10), quad.abs_tol, quad.max_subdivisions)


def free_energy_T0(d, model, screening, quad=QuadratureSpec(), temperature=None):
    """Zero-temperature free energy per area, J/m^2.

    ``temperature`` is only consulted for a computed Debye length.
    """
    if not d > 0:
        raise DomainError("d", f"must be > 0, got {d!r}")
    inner = _inner_quad(quad)

    def kernel(xi, pol):
        return mode_integral_f(xi, d, model, screening, pol, inner, temperature)

    return min(_xi_integral(d, kernel, quad), 0.0)


def pressure_T0(d, model, screening, quad=QuadratureSpec(), temperature=None):
    if not d > 0:
        raise DomainError("d", f"must be > 0, got {d!r}")
    inner = _inner_quad(quad)

    def kernel(xi, pol):
        return mode_integral_dd(xi, d, model, screening, pol, inner, temperature)

    return -_xi_integral(d, kernel, quad)


def pressure(gap, model, screening):
    """Pressure -dE/dd in N/m^2 (negative = attractive).

    Uses the analytic separation derivative of the integrand; T = 0 goes
    through the frequency integral.
    """
    if gap.temperature == 0:
        return pressure_T0(gap.d, model, screening, gap.quad)
    T = gap.temperature

    def kernel(xi, pol):
        return mode_integral_dd(xi, gap.d, model, screening, pol, gap.quad, T)

    te, tm, _, _ = _sum_matsubara(gap, model, screening, kernel)
    return -K_B * T * math.fsum(te + tm)


def _zero_mode_energy(gap, model, screening):
    T = gap.temperature
    f0 = sum(mode_integral_f(0.0, gap.d, model, screening, pol, gap.quad, T) for pol in POLARIZATIONS)
    return 0.5 * K_B * T * f0


ENTROPY_REL_TOL = 1e-13
ENTROPY_QUAD_REL_TOL = 1e-12


def entropy(gap, model, screening, dT, terms="all"):
    """Central-difference entropy S = -(F(T+dT) - F(T-dT)) / 2 dT, J/(K m^2).

    ``terms="zero"`` restricts F to the isolated n = 0 contribution.

    The difference cancels most of F at low temperature, so both
    evaluations run with tolerances of at most ENTROPY_REL_TOL (sum) and
    ENTROPY_QUAD_REL_TOL (quadrature), whatever ``gap`` asks for.
    """
    T = gap.temperature
    if not (dT > 0 and T > dT):
        raise DomainError("dT", f"need T > dT > 0, got T={T!r}, dT={dT!r}")
    q = gap.quad
    gap = replace(
        gap,
        rel_tol=min(gap.rel_tol, ENTROPY_REL_TOL),
        quad=replace(q, rel_tol=min(q.rel_tol, ENTROPY_QUAD_REL_TOL)),
    )
    if terms == "all":
        energy = lambda g: free_energy(g, model, screening).total  # noqa: E731
    elif terms == "zero":
        energy = lambda g: _zero_mode_energy(g, model, screening)  # noqa: E731
    else:
        raise DomainError("terms", f"must be 'all' or 'zero', got {terms!r}")
    hi = energy(gap.at(temperature=T + dT))
    lo = energy(gap.at(temperature=T - dT))
    return -(hi - lo) / (2.0 * dT)


def sum_vs_integral_gap(d, model, screening, temperatures, gap_template=None):
    """Relative distance |E(T) - E_0| / |E_0| of the Matsubara sum from the
    T = 0 integral, for each temperature in ``temperatures``."""
    base = gap_template or GapConfig(d, 1.0)
    e0 = free_energy_T0(d, model, screening, base.quad)
    if e0 == 0.0:
        return GapCheck(rows=[], energy_t0=0.0, degenerate=True)
    rows = []
    for T in temperatures:
        if not T > 0:
            raise DomainError("temperature", f"must be > 0, got {T!r}")
        e = free_energy(base.at(d=d, temperature=T), model, screening).total
        rows.append((T, abs(e - e0) / abs(e0)))
    return GapCheck(rows=rows, energy_t0=e0)
