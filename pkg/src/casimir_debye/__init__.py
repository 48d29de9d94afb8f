"""Finite-temperature Casimir free energy between parallel half-spaces with
Debye screening of the material wavevector, plus screened electrostatic
calibration formulas for semiconductor plates."""

__version__ = "0.1.0"

from .errors import ContractError, ConvergenceError, DomainError
from .materials import (
    CODATA2018,
    CarrierKinetics,
    DrudeConductivity,
    IntrinsicSemiconductor,
    PerfectConductor,
    PhysicalConstants,
    StaticDielectric,
    debye_length,
    eps_imag_axis,
    validity_max_frequency,
)
from .lifshitz import (
    ModePoint,
    QuadratureSpec,
    ScreeningSpec,
    gamma_material,
    gamma_vacuum,
    mode_function,
    mode_integral_f,
    reflection_te,
    reflection_tm,
    zero_frequency_te_reflection_limit,
    zero_frequency_tm_reflection_limit,
)
from .thermal import (
    FreeEnergyBreakdown,
    GapConfig,
    entropy,
    free_energy,
    free_energy_T0,
    matsubara_frequency,
    photon_number,
    photon_number_dT,
    pressure,
    sum_vs_integral_gap,
)
from .electrostatics import (
    CalibrationScenario,
    effective_screening_length,
    field_energy_per_area,
    figure1_data,
    figure2_data,
    pfa_sphere_plate_force,
    separation_correction_factor,
    surface_potential,
)
