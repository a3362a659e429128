"""Classical dynamics under a minimal-length deformed bracket.

The Poisson bracket {x, p} = 1 + beta p^2 modifies Hamiltonian flow for
any system whose Hamiltonian is written in the physical momentum p.  The
canonical variable ptilde = arctan(sqrt(beta) p) / sqrt(beta) restores
{x, ptilde} = 1 and is what the integrators here evolve.

Two systems are covered:

* a plane pendulum parametrised by the horizontal displacement of the
  bob, valid for swing angles below pi/2, with
  H = p^2 cos^2(theta) / (2 m) - m g L cos(theta) after the remap, and
* the harmonic oscillator that the pendulum turns into in the
  small-amplitude limit, used for classical-limit comparisons.

For the pendulum the energy integral reduces the motion between turning
points to a first-order equation,

    dtheta/dt = -cos(theta) sqrt(2 (g/L) f(theta)) (1 + 2 m^2 g L f(theta) beta),
    f(theta)  = (cos(theta) - cos(phi)) / cos^2(theta),

which is non-Lipschitz at theta = +-phi.  The integrator therefore works
piecewise, switching to the equivalent second-order form inside a narrow
window around the turning points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

from .constants import PLANCK_MASS, SPEED_OF_LIGHT

__all__ = [
    "DeformationParams",
    "PendulumConfig",
    "TrajectorySample",
    "QuadratureError",
    "TrajectoryError",
    "effective_beta",
    "momentum_remap",
    "period_first_order",
    "period_exact_quadrature",
    "period_beta_linearized",
    "integrate_trajectory",
    "trajectory_period",
    "turning_point_energies",
    "integrate_oscillator_trajectory",
    "harmonic_frequency_shift",
]

# Width of the angular window around each turning point inside which the
# second-order form of the equation of motion is integrated.
_TURNING_WINDOW = 1e-6


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class TrajectoryError(RuntimeError):
    """The ODE integrator failed, typically near a turning point."""


@dataclass(frozen=True)
class DeformationParams:
    """Dimensionless deformation strength and its composite-body scaling.

    The bracket deformation felt by the centre of mass of a body made of
    n_particles constituents is

        beta = beta0 / (n_particles**alpha * (M_p c)**2)

    in SI units (1/momentum^2).  alpha interpolates between no
    suppression (alpha = 0) and the quadratic suppression expected for
    perfectly rigid composites (alpha = 2).
    """

    beta0: float
    alpha: float = 0.0
    n_particles: float = 1.0
    planck_mass: float = PLANCK_MASS
    light_speed: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        if not (self.beta0 >= 0.0 and math.isfinite(self.beta0)):
            raise ValueError("beta0 must be finite and non-negative")
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if not (self.n_particles >= 1.0 and math.isfinite(self.n_particles)):
            raise ValueError("n_particles must be finite and at least 1")
        if self.planck_mass <= 0.0 or self.light_speed <= 0.0:
            raise ValueError("planck_mass and light_speed must be positive")

    @property
    def effective_beta(self) -> float:
        """Deformation in SI units, beta0 / (N^alpha (M_p c)^2)."""
        scale = self.n_particles ** self.alpha
        beta = self.beta0 / (scale * (self.planck_mass * self.light_speed) ** 2)
        if not math.isfinite(beta):
            raise ValueError(
                f"effective beta overflows for n_particles={self.n_particles!r}, "
                f"alpha={self.alpha!r}"
            )
        return beta


def effective_beta(params: DeformationParams) -> float:
    """SI deformation strength of ``params``, see DeformationParams."""
    return params.effective_beta


def _as_beta(deformation: "float | DeformationParams") -> float:
    """Accept a raw SI beta or a DeformationParams and return SI beta."""
    if isinstance(deformation, DeformationParams):
        return deformation.effective_beta
    beta = float(deformation)
    if not (beta >= 0.0 and math.isfinite(beta)):
        raise ValueError("beta must be finite and non-negative")
    return beta


@dataclass(frozen=True)
class PendulumConfig:
    """Point pendulum: bob mass in kg, length in m, local g in m/s^2."""

    mass: float
    length: float
    gravity: float

    def __post_init__(self) -> None:
        for name in ("mass", "length", "gravity"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite")

    @property
    def small_period(self) -> float:
        """Undeformed small-amplitude period 2 pi sqrt(L/g)."""
        return 2.0 * math.pi * math.sqrt(self.length / self.gravity)


@dataclass(frozen=True)
class TrajectorySample:
    """One point of an integrated swing.

    displacement is the horizontal bob coordinate L sin(angle).
    """

    time: float
    angle: float
    displacement: float


def momentum_remap(momentum, beta: float):
    """Canonical momentum arctan(sqrt(beta) p) / sqrt(beta).

    Bounded by pi / (2 sqrt(beta)) for beta > 0 and reduces to the
    identity at beta = 0.  Accepts scalars or arrays.
    """
    beta = float(beta)
    if not (beta >= 0.0 and math.isfinite(beta)):
        raise ValueError("beta must be finite and non-negative")
    p = np.asarray(momentum, dtype=float)
    if beta == 0.0:
        out = p.copy()
    else:
        root = math.sqrt(beta)
        out = np.arctan(root * p) / root
    return out if out.ndim else float(out)


# --- periods ---------------------------------------------------------------


def _check_angular_amplitude(phi: float) -> float:
    phi = float(phi)
    if not (0.0 < phi < 0.5 * math.pi):
        raise ValueError("angular amplitude must lie in (0, pi/2)")
    return phi


def period_first_order(
    pend: PendulumConfig,
    deformation: "float | DeformationParams",
    amplitude: float,
) -> float:
    """Period to first order in amplitude^2 and in the deformation.

        T = 2 pi sqrt(L/g) (1 + A^2/(16 L^2) - beta m^2 g A^2 / (2 L))

    with A the displacement amplitude in metres, A < L.  The deformation
    shortens the period, opposing the usual anharmonic lengthening.
    """
    beta = _as_beta(deformation)
    amplitude = float(amplitude)
    if not (0.0 <= amplitude < pend.length):
        raise ValueError("amplitude must be non-negative and below the pendulum length")
    base = pend.small_period
    anharmonic = amplitude**2 / (16.0 * pend.length**2)
    deformed = beta * pend.mass**2 * pend.gravity * amplitude**2 / (2.0 * pend.length)
    return base * (1.0 + anharmonic - deformed)


def _quad_smooth(func, lo: float, hi: float, rel_tol: float) -> float:
    """Adaptive quadrature of a smooth integrand with failure detection."""
    result = integrate.quad(
        func, lo, hi, epsabs=1e-300, epsrel=rel_tol, full_output=True, limit=200
    )
    if len(result) > 3:
        # quad appends an explanation string only when it gave up
        raise QuadratureError(f"adaptive quadrature did not converge: {result[3]}")
    value, abserr = result[0], result[1]
    if value != 0.0 and abserr > 10.0 * rel_tol * abs(value):
        raise QuadratureError(
            f"quadrature error estimate {abserr:.2e} exceeds requested "
            f"relative tolerance {rel_tol:.2e}"
        )
    return value


def _check_rel_tol(rel_tol: float) -> float:
    rel_tol = float(rel_tol)
    if not (1e-14 < rel_tol < 1e-3):
        raise ValueError("rel_tol must lie in (1e-14, 1e-3)")
    return rel_tol


def _split_period(
    pend: PendulumConfig,
    beta: float,
    phi: float,
    rel_tol: float,
    linearized: bool,
) -> float:
    """Shared quadrature core for the exact and linearized periods.

    Substituting sin(theta/2) = sin(phi/2) sin(u) maps the half-swing to
    u in [0, pi/2] and turns the (cos theta - cos phi)^(-1/2) endpoint
    divergence into the smooth elliptic integrand.  The deformation term
    is kept either exactly, via 1/(1+z) = 1 - z/(1+z), or to first order
    in beta (z alone), matching the expansion used for the closed form.
    """
    k = math.sin(0.5 * phi)
    k2 = k * k
    strength = 2.0 * pend.mass**2 * pend.gravity * pend.length * beta

    def elliptic(u: float) -> float:
        s = k * math.sin(u)
        return 1.0 / math.sqrt(1.0 - s * s)

    singular = _quad_smooth(elliptic, 0.0, 0.5 * math.pi, rel_tol)

    remainder = 0.0
    if strength != 0.0:

        def deformation_term(u: float) -> float:
            sin_u = math.sin(u)
            s = k * sin_u
            theta = 2.0 * math.asin(s)
            height = 2.0 * k2 * (math.cos(u) ** 2)  # cos(theta) - cos(phi)
            z = strength * height / math.cos(theta) ** 2
            weight = z if linearized else z / (1.0 + z)
            return weight / math.sqrt(1.0 - s * s)

        remainder = _quad_smooth(deformation_term, 0.0, 0.5 * math.pi, rel_tol)

    prefactor = 2.0 * math.sqrt(2.0) * math.sqrt(2.0 * pend.length / pend.gravity)
    return prefactor * (singular - remainder)


def period_exact_quadrature(
    pend: PendulumConfig,
    deformation: "float | DeformationParams",
    angular_amplitude: float,
    rel_tol: float = 1e-10,
) -> float:
    """Full nonlinear period by quadrature of the energy integral.

    Evaluates

        T = 2 int_{-phi}^{phi} dtheta
            [cos(theta) sqrt(2 (g/L) f) (1 + 2 m^2 g L f beta)]^(-1)

    with no expansion in beta.  The endpoint singularity is removed
    analytically, so the two remaining integrands are smooth and the
    requested relative tolerance is met directly.
    """
    beta = _as_beta(deformation)
    phi = _check_angular_amplitude(angular_amplitude)
    rel_tol = _check_rel_tol(rel_tol)
    return _split_period(pend, beta, phi, rel_tol, linearized=False)


def period_beta_linearized(
    pend: PendulumConfig,
    deformation: "float | DeformationParams",
    angular_amplitude: float,
    rel_tol: float = 1e-10,
) -> float:
    """Period with the deformation kept to first order under the integral.

    Companion to period_exact_quadrature for quantifying how much the
    first-order treatment misses; the difference between the two scales
    with the square of the deformation strength.
    """
    beta = _as_beta(deformation)
    phi = _check_angular_amplitude(angular_amplitude)
    rel_tol = _check_rel_tol(rel_tol)
    return _split_period(pend, beta, phi, rel_tol, linearized=True)


# --- trajectories ----------------------------------------------------------


def _swing_fields(pend: PendulumConfig, beta: float, phi: float):
    """Speed |dtheta/dt| and angular acceleration as functions of theta."""
    g_over_l = pend.gravity / pend.length
    strength = 2.0 * pend.mass**2 * pend.gravity * pend.length * beta
    cos_phi = math.cos(phi)

    def speed(theta: float) -> float:
        c = math.cos(theta)
        height = c - cos_phi
        if height <= 0.0:
            return 0.0
        factor = 1.0 + strength * height / (c * c)
        return math.sqrt(2.0 * g_over_l * height) * factor

    def accel(theta: float) -> float:
        # One half the derivative of speed^2, valid on both swing branches.
        c = math.cos(theta)
        s = math.sin(theta)
        height = c - cos_phi
        factor = 1.0 + strength * height / (c * c)
        inner = -s * c + 2.0 * height * s
        return g_over_l * (
            -s * factor * factor
            + 2.0 * strength * height * factor * inner / c**3
        )

    return speed, accel


def _integrate_phases(
    pend: PendulumConfig,
    beta: float,
    phi: float,
    t_end: float,
    rel_tol: float,
):
    """Run the piecewise integration and return dense segments plus events.

    Returns (segments, crossings, turnings) where segments is a list of
    (t_start, t_stop, dense_interpolant, second_order_flag), crossings
    are the times where theta passes zero and turnings the (t, theta)
    pairs where dtheta/dt vanishes.
    """
    speed, accel = _swing_fields(pend, beta, phi)
    window = _TURNING_WINDOW
    edge = phi - window
    # The turn phase exits through a slightly wider edge than it enters:
    # entering leaves theta numerically ON the entry edge, and a
    # coincident event zero at the start would fire instantly and skip
    # the whole turning region.
    exit_edge = phi - 1.5 * window
    atol = rel_tol * max(phi, 1e-3) * 1e-2

    def second_order(t, state):
        return (state[1], accel(state[0]))

    segments = []
    crossings: list[float] = []
    turnings: list[tuple[float, float]] = []

    whole_swing = phi <= 8.0 * window
    t = 0.0
    theta, omega = phi, 0.0
    side = 1  # sign of the turning point the bob is near or heading away from
    mode = "turn"

    while t < t_end:
        if mode == "turn" or whole_swing:

            def stop_inward(tt, state, s=side):
                return state[0] - s * exit_edge

            stop_inward.terminal = not whole_swing
            stop_inward.direction = -side

            def at_rest(tt, state):
                return state[1]

            at_rest.terminal = False
            at_rest.direction = 0

            def crossing_zero(tt, state):
                return state[0]

            crossing_zero.terminal = False
            crossing_zero.direction = 0

            events = [stop_inward, at_rest]
            if whole_swing:
                events.append(crossing_zero)
            sol = integrate.solve_ivp(
                second_order,
                (t, t_end),
                (theta, omega),
                method="DOP853",
                rtol=rel_tol,
                atol=atol,
                dense_output=True,
                events=events,
            )
            if sol.status < 0:
                raise TrajectoryError(f"turning-point integration failed: {sol.message}")
            for t_turn in sol.t_events[1]:
                turnings.append((float(t_turn), float(sol.sol(t_turn)[0])))
            if whole_swing:
                crossings.extend(float(tc) for tc in sol.t_events[2])
            segments.append((t, float(sol.t[-1]), sol.sol, True))
            t = float(sol.t[-1])
            theta, omega = (float(v) for v in sol.y[:, -1])
            if sol.status == 1:
                mode = "swing"
                side = -side  # the coming swing ends at the opposite side
            else:
                break
        else:
            direction = int(math.copysign(1.0, side))
            # the swing drifts towards `side`, i.e. dtheta/dt has its sign
            speed_sign = float(direction)

            def first_order(tt, state):
                return (speed_sign * speed(state[0]),)

            def reach_far_edge(tt, state, s=side):
                return state[0] - s * edge

            reach_far_edge.terminal = True
            reach_far_edge.direction = direction

            def crossing(tt, state):
                return state[0]

            crossing.terminal = False
            crossing.direction = direction

            sol = integrate.solve_ivp(
                first_order,
                (t, t_end),
                (theta,),
                method="DOP853",
                rtol=rel_tol,
                atol=atol,
                dense_output=True,
                events=[reach_far_edge, crossing],
            )
            if sol.status < 0:
                raise TrajectoryError(f"swing integration failed: {sol.message}")
            crossings.extend(float(tc) for tc in sol.t_events[1])
            segments.append((t, float(sol.t[-1]), sol.sol, False))
            t = float(sol.t[-1])
            theta = float(sol.y[0, -1])
            omega = speed_sign * speed(theta)
            mode = "turn"

    return segments, crossings, turnings


def _sample_segments(segments, times: np.ndarray) -> np.ndarray:
    angles = np.empty_like(times)
    angles.fill(np.nan)
    for t0, t1, dense, _ in segments:
        mask = (times >= t0) & (times <= t1)
        if np.any(mask):
            angles[mask] = dense(times[mask])[0]
    return angles


def integrate_trajectory(
    pend: PendulumConfig,
    deformation: "float | DeformationParams",
    angular_amplitude: float,
    t_end: float,
    rel_tol: float = 1e-10,
    times: "Sequence[float] | None" = None,
) -> list[TrajectorySample]:
    """Integrate a swing released from rest at the angular amplitude.

    The bob starts at theta = +phi.  Between turning points the
    first-order energy-conserving equation is integrated directly; inside
    a window of 1e-6 rad around +-phi the second-order form takes over,
    which is what allows the trajectory to leave the turning points at
    all.  Samples are returned on a uniform grid unless explicit times
    are given, and are monotone in time either way.
    """
    beta = _as_beta(deformation)
    phi = _check_angular_amplitude(angular_amplitude)
    t_end = float(t_end)
    if t_end <= 0.0:
        raise ValueError("t_end must be positive")
    rel_tol = _check_rel_tol(rel_tol)

    segments, _, _ = _integrate_phases(pend, beta, phi, t_end, rel_tol)
    if times is None:
        approx_period = pend.small_period * (1.0 + phi * phi / 16.0)
        count = max(64, int(256 * t_end / approx_period))
        grid = np.linspace(0.0, t_end, count)
    else:
        grid = np.asarray(times, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("times must be a non-empty 1-D sequence")
        if np.any(np.diff(grid) < 0.0) or grid[0] < 0.0 or grid[-1] > t_end:
            raise ValueError("times must be non-decreasing within [0, t_end]")
    angles = _sample_segments(segments, grid)
    return [
        TrajectorySample(float(t), float(a), pend.length * math.sin(a))
        for t, a in zip(grid, angles)
    ]


def trajectory_period(
    pend: PendulumConfig,
    deformation: "float | DeformationParams",
    angular_amplitude: float,
    rel_tol: float = 1e-10,
) -> float:
    """Empirical period from the zero crossings of an integrated swing.

    Integrates a little under three periods and averages the spacing of
    same-direction zero crossings, which the solver locates by root
    finding on its dense output.
    """
    beta = _as_beta(deformation)
    phi = _check_angular_amplitude(angular_amplitude)
    rel_tol = _check_rel_tol(rel_tol)
    approx_period = pend.small_period * (1.0 + phi * phi / 16.0)
    _, crossings, _ = _integrate_phases(pend, beta, phi, 2.8 * approx_period, rel_tol)
    if len(crossings) < 3:
        raise TrajectoryError("not enough zero crossings to estimate a period")
    crossings = sorted(crossings)
    gaps = [crossings[i + 2] - crossings[i] for i in range(len(crossings) - 2)]
    return float(np.mean(gaps))


def turning_point_energies(
    pend: PendulumConfig,
    deformation: "float | DeformationParams",
    angular_amplitude: float,
    rel_tol: float = 1e-10,
) -> list[tuple[float, float]]:
    """(time, energy) at each detected turning point over a few periods.

    At a turning point the remapped momentum vanishes and the deformed
    energy is purely potential, -m g L cos(theta).  Comparing against
    -m g L cos(phi) measures the integrator's energy drift.
    """
    beta = _as_beta(deformation)
    phi = _check_angular_amplitude(angular_amplitude)
    rel_tol = _check_rel_tol(rel_tol)
    approx_period = pend.small_period * (1.0 + phi * phi / 16.0)
    _, _, turnings = _integrate_phases(pend, beta, phi, 2.3 * approx_period, rel_tol)
    scale = pend.mass * pend.gravity * pend.length
    return [(t, -scale * math.cos(theta)) for t, theta in turnings]


def integrate_oscillator_trajectory(
    mass: float,
    omega: float,
    deformation: "float | DeformationParams",
    amplitude: float,
    times: Sequence[float],
    rel_tol: float = 1e-12,
) -> np.ndarray:
    """Displacement of the deformed harmonic oscillator at given times.

    Evolves H = tan^2(sqrt(beta) ptilde) / (2 m beta) + m omega^2 x^2 / 2
    in the canonical pair (x, ptilde), released from rest at x =
    amplitude.  This phase-space form is smooth through the turning
    points, so a single high-order integration suffices.
    """
    beta = _as_beta(deformation)
    if not (mass > 0.0 and omega > 0.0):
        raise ValueError("mass and omega must be positive")
    amplitude = float(amplitude)
    if amplitude <= 0.0:
        raise ValueError("amplitude must be positive")
    grid = np.asarray(times, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) < 0.0):
        raise ValueError("times must be a non-decreasing 1-D sequence")
    root = math.sqrt(beta) if beta > 0.0 else 0.0

    def rhs(t, state):
        x, pt = state
        if root == 0.0:
            velocity = pt / mass
        else:
            u = root * pt
            velocity = math.tan(u) / (math.cos(u) ** 2 * mass * root)
        return (velocity, -mass * omega**2 * x)

    sol = integrate.solve_ivp(
        rhs,
        (min(0.0, grid[0]), grid[-1]),
        (amplitude, 0.0),
        method="DOP853",
        rtol=rel_tol,
        atol=rel_tol * amplitude * 1e-2,
        t_eval=grid,
        dense_output=False,
    )
    if sol.status != 0:
        raise TrajectoryError(f"oscillator integration failed: {sol.message}")
    return sol.y[0].copy()


def harmonic_frequency_shift(
    mass: float,
    omega: float,
    amplitude: float,
    deformation: "float | DeformationParams",
) -> float:
    """Deformation-induced frequency shift of a harmonic oscillator.

        delta omega = beta m^2 omega^3 A^2 / 2

    The same combination beta m^2 g L phi^2 / 2 controls the pendulum
    period shift, with omega^2 = g/L and A = phi L.
    """
    beta = _as_beta(deformation)
    if not (mass > 0.0 and omega > 0.0 and amplitude > 0.0):
        raise ValueError("mass, omega and amplitude must be positive")
    return 0.5 * beta * mass**2 * omega**3 * amplitude**2
