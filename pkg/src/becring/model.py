"""Mean-field model of condensate momentum states coupled to a ring cavity.

The state is a complex vector of momentum-mode amplitudes c_n on a finite
window [n_min, n_max] plus a single complex cavity amplitude a (|a|^2 is the
intracavity photon number). All rates are angular frequencies in rad/s, time
is in seconds.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .constants import HBAR, EPSILON_0, C_LIGHT


@dataclasses.dataclass(frozen=True)
class ModeAmplitudes:
    """Momentum-state expansion c_n over the truncation window."""

    n_min: int
    n_max: int
    amps: np.ndarray  # complex, length n_max - n_min + 1

    def __post_init__(self):
        if not self.n_min <= 0 <= self.n_max:
            raise ValueError("mode window must contain n = 0")
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 1 or len(amps) != self.n_max - self.n_min + 1:
            raise ValueError(
                f"amps length {len(amps)} does not match window "
                f"[{self.n_min}, {self.n_max}]"
            )
        object.__setattr__(self, "amps", amps)

    def index(self, n: int) -> int:
        if not self.n_min <= n <= self.n_max:
            raise IndexError(f"mode {n} outside window [{self.n_min}, {self.n_max}]")
        return n - self.n_min

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclasses.dataclass(frozen=True)
class CavityField:
    a: complex

    @property
    def photon_number(self) -> float:
        return abs(self.a) ** 2


@dataclasses.dataclass(frozen=True)
class ModelParams:
    """All rates and couplings of the equations of motion."""

    omega_r: float          # recoil frequency, rad/s
    delta: float            # pump-cavity detuning, rad/s
    Delta: float            # splitting of the two pump components, rad/s
    g: float                # single-atom coupling, rad/s
    N0: float               # initial atom number
    kappa: float            # cavity field decay rate, rad/s
    tau_loss: float = math.inf  # atom-number decay time, s (inf disables loss)
    n_min: int = -5
    n_max: int = 5

    def __post_init__(self):
        if self.omega_r <= 0:
            raise ValueError("omega_r must be > 0")
        if self.kappa <= 0:
            raise ValueError("kappa must be > 0")
        if self.N0 <= 0:
            raise ValueError("N0 must be > 0")
        if self.tau_loss <= 0:
            raise ValueError("tau_loss must be > 0")
        if not self.n_min <= 0 <= self.n_max:
            raise ValueError("window must contain n = 0")

    @property
    def n_modes(self) -> int:
        return self.n_max - self.n_min + 1


@dataclasses.dataclass(frozen=True)
class SystemState:
    modes: ModeAmplitudes
    field: CavityField
    t: float


@dataclasses.dataclass(frozen=True)
class PhysicalInputs:
    """Lab-frame quantities feeding the closed-form parameter formulas.

    E0 is the field amplitude of the first pump component only; the split of
    the quoted total pump intensity between the two components is not pinned
    down here (see field_amplitude_from_intensity).
    """

    dipole_d: float   # C m
    E0: float         # V/m
    omega: float      # optical angular frequency, rad/s
    V: float          # cavity mode volume, m^3
    Delta_a: float    # atomic detuning, rad/s, signed
    k_p: float        # pump wavenumber, rad/m
    phi: float        # pump incidence angle, rad
    M: float          # atomic mass, kg


def omega_n(n: int, params: ModelParams) -> float:
    """Kinetic-frame frequency of mode n: n*(n*omega_r - delta)."""
    return n * (n * params.omega_r - params.delta)


def omega_n_vector(params: ModelParams) -> np.ndarray:
    ns = np.arange(params.n_min, params.n_max + 1)
    return ns * (ns * params.omega_r - params.delta)


def alpha(t: float, eps: float, Delta: float) -> complex:
    """Two-component pump amplitude 1 + eps*exp(i*Delta*t)."""
    return 1.0 + eps * np.exp(1j * Delta * t)


def structure_factor(modes: ModeAmplitudes) -> complex:
    """Density-grating contrast S = sum_n c_n * conj(c_{n+1})."""
    c = modes.amps
    return complex(np.sum(c[:-1] * np.conj(c[1:])))


def populations(modes: ModeAmplitudes) -> np.ndarray:
    return np.abs(modes.amps) ** 2


def rhs_arrays(t, c, a, params, eps, eta, N_t, omega_vec=None):
    """Right-hand side on raw arrays; the hot path of the integrator.

    c_{n_min-1} and c_{n_max+1} are hard zeros (truncation).
    Returns (dc, da).
    """
    if omega_vec is None:
        omega_vec = omega_n_vector(params)
    al = 1.0 + eps * np.exp(1j * params.Delta * t)
    g = params.g
    dc = 1j * omega_vec * c
    dc[1:] += (g * al * np.conj(a)) * c[:-1]
    dc[:-1] -= (g * np.conj(al) * a) * c[1:]
    S = np.sum(c[:-1] * np.conj(c[1:]))
    da = g * N_t * al * S - params.kappa * a + eta
    return dc, da


def rhs(state: SystemState, params: ModelParams, eps: float, eta: float,
        N_t: float) -> tuple[np.ndarray, complex]:
    """Time derivative (dc_n/dt, da/dt) at the state's own time."""
    if N_t <= 0:
        raise ValueError("N_t must be > 0")
    dc, da = rhs_arrays(state.t, state.modes.amps.copy(), state.field.a,
                        params, eps, eta, N_t)
    return dc, complex(da)


def coupling_g(ph: PhysicalInputs) -> float:
    """Single-atom coupling from dipole moment, pump field and mode volume.

    Signed: negative for red atomic detuning. Populations are invariant
    under g -> -g together with a -> -a, so the sign never shows up in
    observables.
    """
    if ph.V <= 0:
        raise ValueError("mode volume V must be > 0")
    if ph.Delta_a == 0:
        raise ValueError("atomic detuning Delta_a must be nonzero")
    return (ph.dipole_d ** 2 * ph.E0
            * math.sqrt(ph.omega / (8.0 * HBAR ** 3 * EPSILON_0 * ph.V))
            / ph.Delta_a)


def recoil_frequency(ph: PhysicalInputs) -> float:
    """Two-photon recoil frequency [2*hbar*k_p*sin(phi/2)]^2 / (2*hbar*M)."""
    if not 0 <= ph.phi <= math.pi:
        raise ValueError("phi must lie in [0, pi]")
    p = 2.0 * HBAR * ph.k_p * math.sin(ph.phi / 2.0)
    return p * p / (2.0 * HBAR * ph.M)


def field_amplitude_from_intensity(intensity: float) -> float:
    """E-field amplitude (V/m) of a beam of given intensity (W/m^2).

    The experiment quotes only the combined intensity of both pump
    components; pass the per-component share you assume.
    """
    return math.sqrt(2.0 * intensity / (C_LIGHT * EPSILON_0))
