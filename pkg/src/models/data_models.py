"""
Core data models and type definitions for the short-pulse / sine-Gordon toolkit.

This module defines all data structures used throughout the system with proper
type hints, validation methods, and serialization support. Array-carrying
models are immutable snapshots: their numpy buffers are marked read-only on
construction so they can be handed to concurrent analysis tasks.
"""

from dataclasses import dataclass, field, asdict
from functools import cached_property
from typing import Dict, List, Optional, Any
from enum import Enum
import json

import numpy as np

from error_handling import InvalidInputError


def _frozen_array(values: Any) -> np.ndarray:
    array = np.array(values, dtype=float, copy=True).reshape(-1)
    array.flags.writeable = False
    return array


class PropagatorMode(Enum):
    """Evaluation paths of the linear solution operator."""
    SPECTRAL = "spectral"
    KERNEL = "kernel"


class ConservedFamily(Enum):
    """Which family of conserved quantities a triple belongs to."""
    E = "E"
    H = "H"


class TerminationFlag(Enum):
    """Why an evolution stopped."""
    COMPLETED = "completed"
    CONSTRAINT_HALT = "constraint_halt"
    STEP_FAILURE = "step_failure"


class Verdict(Enum):
    """Global well-posedness verdicts."""
    CERTIFIED_SUM = "certified_sum"
    CERTIFIED_SHARP = "certified_sharp"
    UNCERTIFIED = "uncertified"


class StepperKind(Enum):
    """Available nonlinear time steppers."""
    MOL = "mol"
    PICARD = "picard"


class InitialDataKind(Enum):
    """Initial profile families understood by the CLI."""
    GAUSSIAN_DERIVATIVE = "gaussian_derivative"
    SINGLE_MODE = "single_mode"
    WAVE_PACKET = "wave_packet"
    FROM_FILE = "from_file"


@dataclass(frozen=True)
class Grid:
    """
    Uniform periodic grid on [-L, L).

    Attributes:
        half_width: L, half the length of the computational domain
        n_points: N, number of samples (a power of two is recommended)
    """
    half_width: float
    n_points: int

    @property
    def spacing(self) -> float:
        """Grid spacing h = 2L/N."""
        return 2.0 * self.half_width / self.n_points

    @property
    def length(self) -> float:
        return 2.0 * self.half_width

    @cached_property
    def y(self) -> np.ndarray:
        """Sample locations y_j = -L + j h."""
        return _frozen_array(-self.half_width + self.spacing * np.arange(self.n_points))

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Non-negative wavenumbers k_j = pi j / L matching numpy's rfft layout."""
        return _frozen_array(np.pi * np.arange(self.n_points // 2 + 1) / self.half_width)

    def validate(self) -> bool:
        """
        Validate grid parameters.

        Returns:
            True if the grid is usable, False otherwise
        """
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            return False
        if int(self.n_points) != self.n_points or self.n_points < 8:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"half_width": self.half_width, "n_points": self.n_points, "spacing": self.spacing}


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Real samples on a uniform grid; the carrier for q, p, Q, P, u, u_x and u_xx.

    Attributes:
        grid: Grid the samples live on
        values: N real samples (stored as a read-only float array)
    """
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values))

    @classmethod
    def from_callable(cls, grid: Grid, func) -> "GridFunction":
        """Sample ``func`` at the grid points."""
        return cls(grid=grid, values=func(np.asarray(grid.y)))

    @classmethod
    def zeros(cls, grid: Grid) -> "GridFunction":
        return cls(grid=grid, values=np.zeros(grid.n_points))

    def with_values(self, values: Any) -> "GridFunction":
        """New function on the same grid."""
        return GridFunction(grid=self.grid, values=values)

    def max_abs(self) -> float:
        """Sup norm of the samples."""
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def validate(self) -> bool:
        """
        Validate sample data.

        Returns:
            True if the samples are finite and match the grid size
        """
        if self.values.shape != (self.grid.n_points,):
            return False
        return bool(np.all(np.isfinite(self.values)))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass
class NormReport:
    """
    Lebesgue and Sobolev norms of a grid function.

    Attributes:
        l2: L^2 norm
        linf: sup norm
        hs: map from Sobolev order s to the H^s norm
        hminus1: homogeneous H^{-1} norm, None when the mass residual fails
    """
    l2: float
    linf: float
    hs: Dict[float, float]
    hminus1: Optional[float] = None

    def validate(self) -> bool:
        values = [self.l2, self.linf, *self.hs.values()]
        if self.hminus1 is not None:
            values.append(self.hminus1)
        if any(v < 0 for v in values):
            return False
        if 0.0 in self.hs and abs(self.hs[0.0] - self.l2) > 1e-12 * max(self.l2, 1e-300):
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l2": self.l2,
            "linf": self.linf,
            "hs": {str(k): v for k, v in self.hs.items()},
            "hminus1": self.hminus1,
        }


@dataclass
class KernelSample:
    """
    Values of the propagator kernels at one (t, y).

    Attributes:
        t: time
        y: offset
        k_value: K_t(y)
        j_value: J_t(y)
    """
    t: float
    y: float
    k_value: float
    j_value: float

    def validate(self) -> bool:
        if self.t < 0 or self.y < 0:
            return False
        if abs(self.j_value) > 1.0 + 1e-12:
            return False
        return abs(self.k_value) <= self.t * (1.0 + 1e-9)


@dataclass
class KernelBoundsRow:
    """
    One row of the kernel bounds table.

    Attributes:
        t: time
        sup_K: numerical sup over y of |K_t|
        l2_K: L^2 norm of K_t over the window [0, Y(t)]
        sup_J: numerical sup over y of |J_t|
        C_inf_fit: sup_K / t
        C_l2_fit: tail-corrected L^2 norm divided by sqrt(t)
        window: Y(t)
        tail_estimate: analytic estimate of the squared norm beyond the window
    """
    t: float
    sup_K: float
    l2_K: float
    sup_J: float
    C_inf_fit: float
    C_l2_fit: float
    window: float
    tail_estimate: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class PropagatorPlan:
    """
    Immutable description of one application of e^{tL}.

    Attributes:
        grid: Grid of the data
        t: time (negative only in spectral mode)
        mode: spectral multiplier or Bessel-kernel quadrature
        order: quadrature order of the kernel path (2, 4, 6 or 8)
    """
    grid: Grid
    t: float
    mode: PropagatorMode = PropagatorMode.SPECTRAL
    order: int = 8

    def validate(self) -> bool:
        if not np.isfinite(self.t):
            return False
        if self.mode is PropagatorMode.KERNEL and self.t < 0:
            return False
        return self.order in (2, 4, 6, 8)


@dataclass(frozen=True, eq=False)
class SgState:
    """
    Sine-Gordon state in the q = sin(w) variable.

    Attributes:
        t: time stamp
        q: q(y, t)
        p: cached antiderivative of q (zero-flux normalization)
        q_c_bound: working ceiling for the sup norm of q
    """
    t: float
    q: GridFunction
    p: GridFunction
    q_c_bound: float

    @property
    def grid(self) -> Grid:
        return self.q.grid

    @property
    def max_abs_q(self) -> float:
        return self.q.max_abs()

    def validate(self) -> bool:
        """
        Validate the structural invariants.

        Returns:
            True if bound, grids and samples are consistent
        """
        if not 0 < self.q_c_bound < 1:
            return False
        if self.q.grid != self.p.grid:
            return False
        if not (self.q.validate() and self.p.validate()):
            return False
        return self.max_abs_q <= self.q_c_bound


@dataclass
class StepRule:
    """
    Inputs of the step-size inequalities.

    Attributes:
        alpha: fraction of the ball radius used by the data, in (0, 1)
        delta: ball radius in X^s
        q_c: sup-norm ceiling, in (0, 1)
        c_s: Banach algebra constant
        c_1: L^2 kernel constant
        c_2: nonlinear-term constant
    """
    alpha: float
    delta: float
    q_c: float
    c_s: float = 1.0
    c_1: float = 1.0
    c_2: float = 1.0

    def validate(self) -> bool:
        if not 0 < self.alpha < 1:
            return False
        if not 0 < self.q_c < 1:
            return False
        if self.delta <= 0:
            return False
        return min(self.c_s, self.c_1, self.c_2) > 0


@dataclass
class ConstantsEstimate:
    """
    Empirical constants of the step-size rule with their sampling metadata.

    Attributes:
        c_s: Banach algebra constant (1 for H^1)
        c_1: max over sampled t of the L^2 kernel fit
        c_2: max over sampled states of the nonlinear-term ratio
        t_samples: times used for c_1
        n_states: number of random states used for c_2
        seed: random seed for the state sample
    """
    c_s: float
    c_1: float
    c_2: float
    t_samples: List[float] = field(default_factory=list)
    n_states: int = 0
    seed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ConservedTriple:
    """
    Three conserved quantities of one family.

    Attributes:
        e_minus1: E_{-1} or H_{-1}
        e_0: E_0 or H_0
        e_1: E_1 or H_1
        family: E (sine-Gordon variables) or H (short-pulse variables)
        quadrature_error: estimated quadrature error (max over the three)
    """
    e_minus1: float
    e_0: float
    e_1: float
    family: ConservedFamily = ConservedFamily.E
    quadrature_error: float = 0.0

    def validate(self) -> bool:
        return min(self.e_minus1, self.e_0, self.e_1) >= 0

    def as_tuple(self):
        return (self.e_minus1, self.e_0, self.e_1)

    def to_dict(self) -> Dict[str, float]:
        prefix = self.family.value
        return {
            f"{prefix}_minus1": self.e_minus1,
            f"{prefix}_0": self.e_0,
            f"{prefix}_1": self.e_1,
            "quadrature_error": self.quadrature_error,
        }


@dataclass
class TrajectoryRecord:
    """
    Diagnostics recorded at one sample time.

    Attributes:
        t: sample time
        digest: SHA-256 digest of the q samples
        triple: conserved quantities
        q_inf: sup norm of q
        mass_residual: h * sum(q)
        x1_norm: X^1 norm of q
        flag: empty, or the termination flag on the last record
    """
    t: float
    digest: str
    triple: ConservedTriple
    q_inf: float
    mass_residual: float
    x1_norm: float
    flag: str = ""

    def to_row(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "E_minus1": self.triple.e_minus1,
            "E_0": self.triple.e_0,
            "E_1": self.triple.e_1,
            "q_inf": self.q_inf,
            "mass_residual": self.mass_residual,
            "x1_norm": self.x1_norm,
            "flag": self.flag,
        }


@dataclass
class Trajectory:
    """
    Sampled history of one evolution.

    Attributes:
        grid: Grid of the evolution
        records: diagnostics at strictly increasing sample times
        termination: why the evolution stopped
        reason: human-readable termination reason
        states: stored snapshots (only when requested)
        settings: stepper settings used
    """
    grid: Grid
    records: List[TrajectoryRecord] = field(default_factory=list)
    termination: TerminationFlag = TerminationFlag.COMPLETED
    reason: str = ""
    states: List[SgState] = field(default_factory=list)
    settings: Dict[str, Any] = field(default_factory=dict)

    @property
    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    @property
    def final_time(self) -> float:
        return self.records[-1].t if self.records else 0.0

    def validate(self) -> bool:
        """Sample times must increase strictly."""
        return bool(np.all(np.diff(self.times) > 0))

    def max_relative_drift(self, floor: float = 1e-300) -> Dict[str, float]:
        """
        Maximum relative drift of each conserved quantity against t = 0.

        Args:
            floor: denominator floor for vanishing initial values

        Returns:
            Mapping E_minus1 / E_0 / E_1 to max |E(t) - E(0)| / max(|E(0)|, floor)
        """
        if not self.records:
            return {"E_minus1": 0.0, "E_0": 0.0, "E_1": 0.0}
        initial = self.records[0].triple.as_tuple()
        drift = [0.0, 0.0, 0.0]
        for record in self.records:
            for i, value in enumerate(record.triple.as_tuple()):
                change = abs(value - initial[i])
                if change == 0.0:
                    continue
                drift[i] = max(drift[i], change / max(abs(initial[i]), floor))
        return {"E_minus1": drift[0], "E_0": drift[1], "E_1": drift[2]}

    def max_q_inf(self) -> float:
        return max((r.q_inf for r in self.records), default=0.0)


@dataclass
class PicardReport:
    """
    Outcome of one Duhamel-Picard time slab.

    Attributes:
        state: endpoint state
        distances: X^1 distance between successive iterates
        iterations: number of sweeps performed
        nodes: number of Gauss-Lobatto nodes
        step_size: slab length T
    """
    state: SgState
    distances: List[float]
    iterations: int
    nodes: int
    step_size: float

    def contraction_ratios(self, floor: float = 1e-13) -> List[float]:
        """Ratios d_{m+1}/d_m for distances above ``floor``."""
        ratios = []
        for previous, current in zip(self.distances, self.distances[1:]):
            if previous > floor and current > floor:
                ratios.append(current / previous)
        return ratios


@dataclass(frozen=True, eq=False)
class HodographFields:
    """
    Coordinate map x(y) and short-pulse fields sampled along it.

    Attributes:
        grid: y-grid
        t: time stamp
        anchor: x at the leftmost y sample
        x_of_y: strictly increasing x(y)
        u: u = p
        u_x: q / sqrt(1 - q^2)
        u_xx: q_y / (1 - q^2)^2
        q: q samples the map was built from
        slope: dx/dy = sqrt(1 - q^2)
        mean_slope: average of the slope over one period
    """
    grid: Grid
    t: float
    anchor: float
    x_of_y: np.ndarray
    u: np.ndarray
    u_x: np.ndarray
    u_xx: np.ndarray
    q: np.ndarray
    slope: np.ndarray
    mean_slope: float

    def __post_init__(self):
        for name in ("x_of_y", "u", "u_x", "u_xx", "q", "slope"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name)))

    @property
    def y(self) -> np.ndarray:
        return self.grid.y

    @property
    def x_period(self) -> float:
        """Length of one period of the map in x."""
        return self.grid.length * self.mean_slope

    def validate(self) -> bool:
        if not np.all(np.diff(self.x_of_y) > 0):
            return False
        bound = np.sqrt(max(0.0, 1.0 - float(np.max(self.q ** 2))))
        return float(np.min(self.slope)) >= bound * (1.0 - 1e-14)


@dataclass(frozen=True, eq=False)
class XFields:
    """
    Short-pulse fields on a uniform x-grid spanning one period of the map.

    Attributes:
        x: uniform sample points
        u: u(x)
        u_x: u_x(x)
        u_xx: u_xx(x)
        t: time stamp
        anchor: anchor of the map the fields came from
        spacing: x-grid spacing
        derivative_mismatch: sup |d/dx (resampled u) - resampled u_x|
    """
    x: np.ndarray
    u: np.ndarray
    u_x: np.ndarray
    u_xx: np.ndarray
    t: float
    anchor: float
    spacing: float
    derivative_mismatch: float = 0.0

    def __post_init__(self):
        for name in ("x", "u", "u_x", "u_xx"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name)))

    @property
    def period(self) -> float:
        return self.spacing * self.x.size

    def validate(self) -> bool:
        sizes = {self.x.size, self.u.size, self.u_x.size, self.u_xx.size}
        if len(sizes) != 1 or self.spacing <= 0:
            return False
        return all(np.all(np.isfinite(a)) for a in (self.x, self.u, self.u_x, self.u_xx))


@dataclass
class NormRatio:
    """
    One norm-equivalence chain: lower <= ratio <= upper.

    Attributes:
        name: label of the chain
        ratio: measured ratio of the x-side to the y-side squared norm
        lower: lower bracket
        upper: upper bracket
        holds: whether the ratio lies in the bracket (with relative slack)
    """
    name: str
    ratio: float
    lower: float
    upper: float
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class EquivalenceReport:
    """
    Norm-equivalence checks between (u in x) and (p in y).

    Attributes:
        q_c: measured sup norm of q
        entries: the three chains
    """
    q_c: float
    entries: List[NormRatio] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(entry.holds for entry in self.entries)

    def ratio(self, name: str) -> NormRatio:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q_c": self.q_c,
            "all_hold": self.all_hold,
            "entries": [entry.to_dict() for entry in self.entries],
        }


@dataclass
class PhiMinimum:
    """
    Minimizer of phi(alpha) = 2 alpha H0 + H1 / alpha.

    Attributes:
        alpha_star: minimizer, None in the degenerate case
        phi_star: minimum (infimum 0 when degenerate)
        grid_minimum: brute-force minimum over a logarithmic alpha grid
        degenerate: True when H0 or H1 vanishes
    """
    alpha_star: Optional[float]
    phi_star: float
    grid_minimum: Optional[float] = None
    degenerate: bool = False


@dataclass
class Certificate:
    """
    Global well-posedness certificate.

    Attributes:
        h_minus1: H_{-1}
        h_0: H_0
        h_1: H_1
        sum_criterion: 2 H0 + H1
        sharp_criterion: 2 sqrt(2 H0 H1)
        optimal_alpha: scale minimizing phi (None when degenerate)
        apriori_h2: T-independent H^2 bound, None when undefined
        raw_hypothesis: ||u0'||^2 + ||u0''||^2
        verdicts: verdict labels
    """
    h_minus1: float
    h_0: float
    h_1: float
    sum_criterion: float
    sharp_criterion: float
    optimal_alpha: Optional[float]
    apriori_h2: Optional[float]
    raw_hypothesis: Optional[float] = None
    verdicts: List[str] = field(default_factory=list)

    @property
    def certified_sum(self) -> bool:
        return Verdict.CERTIFIED_SUM.value in self.verdicts

    @property
    def certified_sharp(self) -> bool:
        return Verdict.CERTIFIED_SHARP.value in self.verdicts

    @property
    def raw_hypothesis_holds(self) -> Optional[bool]:
        if self.raw_hypothesis is None:
            return None
        return self.raw_hypothesis < 1.0

    def validate(self) -> bool:
        if self.sharp_criterion > self.sum_criterion * (1 + 1e-12) + 1e-300:
            return False
        if self.certified_sum and not self.certified_sharp:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "h_minus1": self.h_minus1,
            "h0": self.h_0,
            "h1": self.h_1,
            "sum": self.sum_criterion,
            "sharp": self.sharp_criterion,
            "alpha_star": self.optimal_alpha if self.optimal_alpha is not None else "undefined",
            "apriori_h2": self.apriori_h2 if self.apriori_h2 is not None else "undefined",
            "raw_hypothesis": self.raw_hypothesis if self.raw_hypothesis is not None else "undefined",
            "raw_hypothesis_holds": self.raw_hypothesis_holds,
            "verdicts": list(self.verdicts),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass
class ScaledFields:
    """
    Result of the scaling transformation X = alpha x, U = alpha u.

    Attributes:
        fields: scaled fields
        alpha: scale
        before: H triple of the input
        after: H triple measured on the scaled fields
        predicted: H triple predicted by the scaling laws
        max_relative_deviation: max relative gap between measured and predicted
    """
    fields: XFields
    alpha: float
    before: ConservedTriple
    after: ConservedTriple
    predicted: ConservedTriple
    max_relative_deviation: float


@dataclass
class StepperConfig:
    """
    Settings of the nonlinear time stepper.

    Attributes:
        method: "mol" or "picard"
        dt: cap on the step size
        tol: Picard tolerance in the X^1 norm
        max_iter: Picard iteration cap
        nodes: Gauss-Lobatto nodes per Picard slab
        alpha: step-rule alpha
        t_max: cap of the step-rule bisection
        sample_every: record diagnostics every this many steps
        store_states: keep snapshots in the trajectory
        max_retries: step refinements before halting
    """
    method: str = StepperKind.MOL.value
    dt: float = 1e-3
    tol: float = 1e-10
    max_iter: int = 60
    nodes: int = 4
    alpha: float = 0.5
    t_max: float = 1.0
    sample_every: int = 10
    store_states: bool = False
    max_retries: int = 3

    def validate(self) -> bool:
        if self.method not in [k.value for k in StepperKind]:
            return False
        if self.dt <= 0 or self.tol <= 0 or self.t_max <= 0:
            return False
        if self.max_iter < 1 or self.nodes < 2 or self.sample_every < 1 or self.max_retries < 0:
            return False
        return 0 < self.alpha < 1

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class InitialDataSpec:
    """
    Description of the initial profile.

    Attributes:
        kind: one of InitialDataKind
        amplitude: amplitude A
        parameters: kind-specific parameters (center, width, mode, wavenumber)
        path: CSV path for from_file
    """
    kind: str = InitialDataKind.GAUSSIAN_DERIVATIVE.value
    amplitude: float = 0.1
    parameters: Dict[str, float] = field(default_factory=dict)
    path: Optional[str] = None

    def validate(self) -> bool:
        if self.kind not in [k.value for k in InitialDataKind]:
            return False
        if self.kind == InitialDataKind.FROM_FILE.value and not self.path:
            return False
        return bool(np.isfinite(self.amplitude))


@dataclass
class RunConfig:
    """
    Full description of one CLI run.

    Attributes:
        grid_half_width: L
        grid_points: N
        initial_data: initial profile description
        stepper: stepper settings
        t_final: final time
        output_dir: output directory
        q_c_bound: sup-norm ceiling
        mass_tol_factor: relative mass tolerance factor
        decay_tol: endpoint decay tolerance
        ladder: refinement ladder for convergence studies (dt values or N values)
        study: convergence study kind ("mol_dt" or "kernel_n")
        sweep: parameter lists to sweep (e.g. {"amplitude": [...]})
        kernel_times: times for the kernel bounds table
        kernel_order: quadrature order of the kernel propagator in N-ladder studies
        label: run label used in output file names
    """
    grid_half_width: float = 20.0
    grid_points: int = 1024
    initial_data: InitialDataSpec = field(default_factory=InitialDataSpec)
    stepper: StepperConfig = field(default_factory=StepperConfig)
    t_final: float = 1.0
    output_dir: str = "./outputs"
    q_c_bound: float = 0.95
    mass_tol_factor: float = 1e-8
    decay_tol: float = 1e-8
    ladder: List[float] = field(default_factory=list)
    study: str = "mol_dt"
    sweep: Dict[str, List[Any]] = field(default_factory=dict)
    kernel_times: List[float] = field(default_factory=lambda: [0.1, 1.0, 2.0, 10.0])
    kernel_order: int = 8
    label: str = "run"

    @property
    def grid(self) -> Grid:
        return Grid(half_width=float(self.grid_half_width), n_points=int(self.grid_points))

    def validate(self) -> bool:
        """
        Validate run configuration.

        Returns:
            True if every field is admissible
        """
        if not self.grid.validate():
            return False
        if not (self.initial_data.validate() and self.stepper.validate()):
            return False
        if self.t_final <= 0 or not 0 < self.q_c_bound < 1:
            return False
        if self.mass_tol_factor <= 0 or self.decay_tol <= 0:
            return False
        if self.kernel_order not in (2, 4, 6, 8) or any(t <= 0 for t in self.kernel_times):
            return False
        if not self.label:
            return False
        try:
            peak = self.initial_peak()
        except (InvalidInputError, TypeError, ValueError):
            return False
        return peak is None or peak <= self.q_c_bound

    def initial_peak(self) -> Optional[float]:
        """
        max|q0| of the synthetic initial data on the run grid.

        Returns:
            The sampled maximum, or None for from_file data (its grid comes from the file)

        Raises:
            InvalidInputError: the profile parameters are rejected by the builder
        """
        if self.initial_data.kind == InitialDataKind.FROM_FILE.value:
            return None
        from grid.initial_profiles import build_profile

        spec = self.initial_data
        return build_profile(spec.kind, self.grid, spec.amplitude, spec.parameters).max_abs()

    @classmethod
    def from_dict(cls, data: Dict[str, Any], defaults: Optional[Dict[str, Any]] = None) -> "RunConfig":
        """
        Build a RunConfig from parsed JSON, falling back to ``defaults``.

        Args:
            data: parsed JSON object
            defaults: flat mapping of default field values

        Returns:
            RunConfig instance (call validate() before use)
        """
        merged: Dict[str, Any] = dict(defaults or {})
        merged.update({k: v for k, v in data.items() if k not in ("grid", "initial_data", "stepper")})

        grid = data.get("grid", {})
        if "L" in grid:
            merged["grid_half_width"] = grid["L"]
        if "N" in grid:
            merged["grid_points"] = grid["N"]

        stepper_defaults = dict(merged.pop("stepper_defaults", {}) or {})
        stepper_defaults.update(data.get("stepper", {}))
        initial = data.get("initial_data", {})

        return cls(
            grid_half_width=float(merged.get("grid_half_width", cls.grid_half_width)),
            grid_points=int(merged.get("grid_points", cls.grid_points)),
            initial_data=InitialDataSpec(**initial),
            stepper=StepperConfig(**stepper_defaults),
            t_final=float(merged.get("t_final", cls.t_final)),
            output_dir=str(merged.get("output_dir", cls.output_dir)),
            q_c_bound=float(merged.get("q_c_bound", cls.q_c_bound)),
            mass_tol_factor=float(merged.get("mass_tol_factor", cls.mass_tol_factor)),
            decay_tol=float(merged.get("decay_tol", cls.decay_tol)),
            ladder=[float(v) for v in merged.get("ladder", [])],
            study=str(merged.get("study", cls.study)),
            sweep=dict(merged.get("sweep", {})),
            kernel_times=[float(v) for v in merged.get("kernel_times", [0.1, 1.0, 2.0, 10.0])],
            kernel_order=int(merged.get("kernel_order", 8)),
            label=str(merged.get("label", cls.label)),
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["grid"] = {"L": data.pop("grid_half_width"), "N": data.pop("grid_points")}
        return data


@dataclass
class ConvergenceStudy:
    """
    Refinement-ladder study.

    Attributes:
        kind: "mol_dt" or "kernel_n"
        parameters: ladder values (dt or N)
        errors: error per rung
        fitted_order: least-squares slope of log(error) against log(1/parameter scale)
        degenerate: True when all errors vanish and no order can be fitted
    """
    kind: str
    parameters: List[float]
    errors: List[float]
    fitted_order: Optional[float]
    degenerate: bool = False

    def to_rows(self) -> List[Dict[str, Any]]:
        column = "dt" if self.kind == "mol_dt" else "N"
        return [{column: p, "error": e} for p, e in zip(self.parameters, self.errors)]


@dataclass
class CommandResult:
    """
    Result from a CLI command execution.

    Attributes:
        success: Whether the command completed
        data: Data returned by the command (None if failed)
        error: Error message if execution failed
        exit_code: process exit code (0 success, 1 usage/config, 2 constraint halt)
        metadata: Additional metadata about the execution
    """
    success: bool
    data: Optional[Any]
    error: Optional[str] = None
    exit_code: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def validate(self) -> bool:
        """
        Validate command result data.

        Returns:
            True if result is valid, False otherwise
        """
        if self.success and self.data is None:
            return False
        if not self.success and not self.error:
            return False
        return self.exit_code in (0, 1, 2)
