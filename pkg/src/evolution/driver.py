"""
Continuation driver: repeated slabs of the configured stepper with diagnostics.

The driver never raises on a constraint breach; it stops and returns the
trajectory with a termination flag.
"""

import time
from typing import Optional

from config import Config
from error_handling import (
    ContractionFailureError,
    ConvergenceFailureError,
    InfeasibleStepError,
    InvalidInputError,
    StepRefinement,
    StepRejectedError,
    retry_with_refinement,
)
from evolution.picard import step_picard
from evolution.sg_evolution import (
    DEFAULT_Q_C_BOUND,
    conserved_E,
    make_state,
    step_mol,
    x1_norm_values,
)
from evolution.step_control import estimate_constants, select_step, step_rule_from_state
from grid.grid_core import grid_function_digest, mass_residual
from models.data_models import (
    ConstantsEstimate,
    GridFunction,
    SgState,
    StepperConfig,
    StepperKind,
    TerminationFlag,
    Trajectory,
    TrajectoryRecord,
)
from structured_logging import StructuredLogger

_RETRYABLE = (StepRejectedError, ContractionFailureError, ConvergenceFailureError)


def record_state(state: SgState, flag: str = "") -> TrajectoryRecord:
    """Diagnostics of one state."""
    return TrajectoryRecord(
        t=state.t,
        digest=grid_function_digest(state.q),
        triple=conserved_E(state),
        q_inf=state.max_abs_q,
        mass_residual=mass_residual(state.q),
        x1_norm=x1_norm_values(state.q.values, state.grid),
        flag=flag,
    )


class Evolver:
    """
    Sequential time stepping of one sine-Gordon trajectory.

    Features:
    - Step size from the step rule, capped by the configured dt
    - Retry of rejected or non-contracting steps with refinement
    - Halting with a flag instead of raising on constraint breach
    - Sampled conserved-quantity monitoring
    """

    def __init__(
        self,
        config: StepperConfig,
        constants: Optional[ConstantsEstimate] = None,
        logger: Optional[StructuredLogger] = None
    ):
        """
        Initialize the driver.

        Args:
            config: stepper settings
            constants: step-rule constants (estimated on first use when None)
            logger: optional structured logger
        """
        if not config.validate():
            raise InvalidInputError("config", f"invalid stepper settings {config.to_dict()}")
        self.config = config
        self.constants = constants
        self.logger = logger
        self.refinement = StepRefinement(factor=0.5, node_growth=2)
        self.step_count = 0
        self.rule_warning_sent = False

    def _ensure_constants(self, state: SgState) -> ConstantsEstimate:
        if self.constants is None:
            self.constants = estimate_constants(
                state.grid, n_states=Config.CONSTANTS_SAMPLES, seed=Config.CONSTANTS_SEED
            )
            if self.logger:
                self.logger.log_info("Estimated step-rule constants", self.constants.to_dict())
        return self.constants

    def step_size(self, state: SgState, remaining: float) -> float:
        """min(dt, rule step, remaining time)."""
        cap = min(self.config.dt, remaining)
        try:
            rule = step_rule_from_state(state, self._ensure_constants(state), self.config.alpha)
            rule_step = select_step(rule, t_max=self.config.t_max, resolution=Config.STEP_RESOLUTION)
        except InfeasibleStepError as exc:
            if self.config.method == StepperKind.PICARD.value:
                raise
            if self.logger and not self.rule_warning_sent:
                self.logger.log_warning(
                    "Step rule infeasible for current data; using configured dt",
                    {"t": state.t, "error": exc.message}
                )
            self.rule_warning_sent = True
            return cap
        return min(cap, rule_step)

    def _stepper(self, state: SgState, dt: float, attempt: int) -> SgState:
        if self.config.method == StepperKind.PICARD.value:
            return step_picard(
                state,
                dt,
                tol=self.config.tol,
                max_iter=self.config.max_iter,
                nodes=self.refinement.nodes_for(self.config.nodes, attempt),
                logger=self.logger,
            )
        return step_mol(state, dt)

    def advance(self, state: SgState, dt: float) -> SgState:
        """
        One accepted step, retried with halved dt (and doubled nodes) on failure.

        Raises:
            The last retryable error when all retries fail
        """
        def attempt_step(attempt: int) -> SgState:
            return self._stepper(state, self.refinement.step_for(dt, attempt), attempt)

        def on_retry(error: Exception, attempt: int):
            if self.logger:
                self.logger.log_step_rejection(
                    self.config.method, state.t, self.refinement.step_for(dt, attempt), str(error),
                    suggested_dt=self.refinement.step_for(dt, attempt + 1)
                )
                self.logger.log_retry("step", attempt + 1, self.config.max_retries, type(error).__name__)

        new_state = retry_with_refinement(
            attempt_step,
            max_retries=self.config.max_retries,
            exceptions=_RETRYABLE,
            on_retry=on_retry,
        )
        self.step_count += 1
        if self.logger:
            self.logger.log_step(
                self.config.method, new_state.t, new_state.t - state.t,
                new_state.max_abs_q, mass_residual(new_state.q)
            )
        return new_state

    def _sample(self, trajectory: Trajectory, state: SgState, flag: str = ""):
        record = record_state(state, flag)
        trajectory.records.append(record)
        if self.config.store_states:
            trajectory.states.append(state)
        if self.logger:
            self.logger.log_conservation(
                state.t,
                record.triple.to_dict(),
                trajectory.max_relative_drift(),
                record.triple.quadrature_error,
            )

    def run(self, state: SgState, t_final: float) -> Trajectory:
        """
        Evolve to t_final or until the constraint guard trips.

        Returns:
            Trajectory with termination flag and reason
        """
        settings = self.config.to_dict()
        trajectory = Trajectory(grid=state.grid, settings=settings)
        self._sample(trajectory, state)
        start = time.time()
        end_tol = 1e-12 * max(1.0, t_final)
        last_sampled = 0

        while state.t < t_final - end_tol:
            try:
                dt = self.step_size(state, t_final - state.t)
                state = self.advance(state, dt)
            except StepRejectedError as exc:
                trajectory.termination = TerminationFlag.CONSTRAINT_HALT
                trajectory.reason = exc.message
                break
            except (ContractionFailureError, ConvergenceFailureError, InfeasibleStepError) as exc:
                trajectory.termination = TerminationFlag.STEP_FAILURE
                trajectory.reason = exc.message
                break
            if self.step_count % self.config.sample_every == 0:
                self._sample(trajectory, state)
                last_sampled = self.step_count

        if trajectory.termination is TerminationFlag.COMPLETED:
            trajectory.reason = f"reached t = {state.t:.6g}"
        flag = trajectory.termination.value
        if last_sampled == self.step_count and trajectory.records[-1].t == state.t:
            trajectory.records[-1].flag = flag
        else:
            self._sample(trajectory, state, flag)

        if self.constants is not None:
            trajectory.settings["constants"] = self.constants.to_dict()
        if self.logger:
            self.logger.log_performance_metric(
                "evolve_wall_time", time.time() - start, "seconds",
                {"steps": self.step_count, "termination": flag}
            )
        return trajectory


def evolve(
    q0: GridFunction,
    t_final: float,
    config: Optional[StepperConfig] = None,
    q_c_bound: float = DEFAULT_Q_C_BOUND,
    logger: Optional[StructuredLogger] = None,
    constants: Optional[ConstantsEstimate] = None,
    mass_tol: Optional[float] = None
) -> Trajectory:
    """
    Evolve initial data q0 to t_final.

    Args:
        q0: zero-mass initial data with max|q0| <= q_c_bound
        t_final: positive final time
        config: stepper settings (defaults to StepperConfig())
        q_c_bound: working ceiling for max|q|
        logger: optional structured logger
        constants: step-rule constants (estimated once when None)
        mass_tol: tolerance on the initial mass residual

    Returns:
        Trajectory; constraint breaches end it with TerminationFlag.CONSTRAINT_HALT
    """
    if not t_final > 0:
        raise InvalidInputError("t_final", "must be positive")
    state = make_state(q0, 0.0, q_c_bound, mass_tol)
    evolver = Evolver(config or StepperConfig(), constants, logger)
    trajectory = evolver.run(state, t_final)
    trajectory.settings["q_c_bound"] = q_c_bound
    return trajectory
