"""Quantum discord: closed forms for Werner/GWL states plus a numeric oracle.

Measurements are rank-1 projective on one side, parameterized as
Pi_m = 1/2 [ I + (-1)^m n . sigma ] with the Bloch direction

    n = (sin 2theta cos phi, sin 2theta sin phi, cos 2theta),

note the doubled polar angle: theta in [0, pi/2] and phi in [0, 2 pi)
already cover the whole sphere. The discord of rho with measurement on
side M is

    delta = S[rho_M] - S[rho] + min over directions of sum_m p_m S(rho_other|m).

For GWL states the minimum is analytic: each conditional state is again
a pure-state mixture with mixing weight x_m, the optimal direction
anti-aligns with the reduced Bloch vector, and the minimized average
conditional entropy is

    sum_m (1 -+ p d)/2 * H2((1 + x_m)/2),   d = 2 A,

with A the reduced-state Bloch amplitude (A = sqrt(1 - C^2)/2 for the
pure component). The remaining log terms are combined algebraically
into the total entropy so the p -> 1 limit evaluates cleanly.

``qd_numeric`` is the independent check: a deterministic direction grid
followed by compass refinement down to 1e-9 radians, no closed forms
involved anywhere on that path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DomainError,
    IDENTITY_2,
    NumericError,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    binary_entropy,
    is_hermitian,
    kronecker,
    partial_trace,
    resolve_tolerance,
)
from .states import GWL_RANGE, WERNER_RANGE, reduced_from_wmatrix, swap_qubits

# Refinement stops once both angular steps drop below this (radians).
REFINE_TARGET = 1e-9

# Measurement branches with probability at or below this weight are
# treated as empty and contribute zero to entropy averages.
BRANCH_EPS = 1e-14


@dataclass(frozen=True)
class MeasurementDirection:
    """Projective measurement axis, angles as in the module docstring."""

    theta: float
    phi: float

    @property
    def bloch_vector(self):
        s = math.sin(2.0 * self.theta)
        return np.array(
            [s * math.cos(self.phi), s * math.sin(self.phi), math.cos(2.0 * self.theta)]
        )


@dataclass(frozen=True)
class PostMeasurement:
    """One measurement branch: weight, conditional state, mixing weight.

    ``conditional_state_B`` is the 2x2 state of the unmeasured side
    (None for an empty branch); ``mixing_x`` is the difference of its
    eigenvalues, the x of the GWL conditional-state form.
    """

    probability: float
    conditional_state_B: np.ndarray | None
    mixing_x: float


@dataclass(frozen=True)
class DiscordBreakdown:
    """All the pieces entering one analytic discord evaluation.

    Satisfies discord = reduced entropy of the measured side
    - total_entropy + conditional_entropy.
    """

    total_entropy: float
    reduced_entropy_A: float
    reduced_entropy_B: float
    conditional_entropy: float
    mutual_information: float
    discord: float
    x0: float
    x1: float
    amplitude: float


def _xlog2x(u):
    return 0.0 if u <= 0.0 else u * math.log2(u)


def _check_p(p, lo, hi, what, tol):
    t = resolve_tolerance(tol)
    if p < lo - t or p > hi + t:
        raise DomainError("%s mixing parameter %r outside [%g, %g]" % (what, p, lo, hi))


def entropy_werner(p, tol=None):
    """Total von Neumann entropy of the Werner state, in bits."""
    p = float(p)
    _check_p(p, WERNER_RANGE[0], WERNER_RANGE[1], "Werner", tol)
    return 2.0 - _xlog2x(1.0 - 3.0 * p) / 4.0 - 3.0 * _xlog2x(1.0 + p) / 4.0


def entropy_gwl(p, tol=None):
    """Total von Neumann entropy of a GWL state, in bits.

    Depends on p only; the eigenvalues are (1 + 3p)/4 and (1 - p)/4
    (threefold) regardless of the pure component.
    """
    p = float(p)
    _check_p(p, GWL_RANGE[0], GWL_RANGE[1], "GWL", tol)
    return 2.0 - 3.0 * _xlog2x(1.0 - p) / 4.0 - _xlog2x(1.0 + 3.0 * p) / 4.0


def reduced_entropy_gwl(c_pure, p, tol=None):
    """Entropy of either reduced side of a GWL state, in bits.

    The reduced eigenvalues are (1 +- p sqrt(1 - c^2))/2.
    """
    t = resolve_tolerance(tol)
    c_pure = float(c_pure)
    if c_pure < -t or c_pure > 1.0 + t:
        raise DomainError("pure-state concurrence %r outside [0, 1]" % c_pure)
    c_pure = min(1.0, max(0.0, c_pure))
    p = float(p)
    _check_p(p, GWL_RANGE[0], GWL_RANGE[1], "GWL", tol)
    delta0 = math.sqrt(1.0 - c_pure * c_pure)
    return binary_entropy((1.0 + p * delta0) / 2.0, tol)


def measurement_projector(direction, m):
    """Rank-1 projector 1/2 [ I + (-1)^m n . sigma ] as a 2x2 matrix."""
    if m not in (0, 1):
        raise DomainError("branch index m must be 0 or 1, got %r" % (m,))
    n = direction.bloch_vector
    sign = 1.0 if m == 0 else -1.0
    return 0.5 * (IDENTITY_2 + sign * (n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z))


def lifted_projector(direction, m, partition="A"):
    """The projector acting on the full pair: Pi (x) I for side A."""
    pi = measurement_projector(direction, m)
    if partition == "A":
        return kronecker(pi, IDENTITY_2)
    if partition == "B":
        return kronecker(IDENTITY_2, pi)
    raise DomainError("partition must be 'A' or 'B', got %r" % (partition,))


def luders_update(rho, direction, m, partition="A", tol=None):
    """Apply one measurement branch and return the post-measurement data.

    The conditional state is the reduced state of the unmeasured side
    after the Lueders update. A branch whose probability is within
    tolerance of zero is flagged empty (conditional state None, mixing
    weight nan) so callers exclude it from entropy averages.
    """
    t = resolve_tolerance(tol)
    rho = np.asarray(rho, dtype=complex)
    proj = lifted_projector(direction, m, partition)
    prob = float(np.real(np.trace(proj @ rho)))
    if prob <= t:
        return PostMeasurement(
            probability=max(prob, 0.0), conditional_state_B=None, mixing_x=float("nan")
        )
    conditional = partial_trace(proj @ rho @ proj, partition) / prob
    eigs = np.linalg.eigvalsh(conditional)
    return PostMeasurement(
        probability=prob,
        conditional_state_B=conditional,
        mixing_x=float(eigs[1] - eigs[0]),
    )


def mixing_after_measurement(p, prob_pi, tol=None):
    """Mixing weight x_m of the conditional state after measuring a GWL state.

    Parameters
    ----------
    p : float
        GWL mixing parameter.
    prob_pi : float
        Expectation <Pi_m> of the projector in the pure component.

    Returns
    -------
    float
        x_m = p <Pi_m> / p_m with branch probability
        p_m = (1 - p)/2 + p <Pi_m>.
    """
    t = resolve_tolerance(tol)
    p = float(p)
    _check_p(p, GWL_RANGE[0], GWL_RANGE[1], "GWL", tol)
    prob_pi = float(prob_pi)
    if prob_pi < -t or prob_pi > 1.0 + t:
        raise DomainError("projector expectation %r outside [0, 1]" % prob_pi)
    prob_pi = min(1.0, max(0.0, prob_pi))
    branch = (1.0 - p) / 2.0 + p * prob_pi
    if branch <= t:
        raise NumericError(
            "degenerate measurement branch: probability %g within tolerance of zero" % branch
        )
    return p * prob_pi / branch


def amplitude(psi, partition="A"):
    """Half the Bloch-vector length of one reduced side of a pure state.

    This is the A of the conditional-entropy minimization: the smallest
    achievable <Pi_0> over measurement directions is 1/2 - A. Both
    partitions give the same value; it equals sqrt(1 - C^2)/2.
    """
    reduced = reduced_from_wmatrix(psi, partition)
    r = np.array(
        [
            float(np.real(np.trace(reduced @ PAULI_X))),
            float(np.real(np.trace(reduced @ PAULI_Y))),
            float(np.real(np.trace(reduced @ PAULI_Z))),
        ]
    )
    return 0.5 * float(np.linalg.norm(r))


def _branch_term(p, x):
    """Literal per-branch term F_p(x) = (1 - p)/(2 (1 - x)) H2((1 + x)/2).

    Defined for x in [-1, 1); used in its cancelled form
    p_m H2((1 + x_m)/2) inside the analytic conditional entropy, where
    the (1 - x) denominator never appears.
    """
    p = float(p)
    x = float(x)
    if not -1.0 <= x < 1.0:
        raise DomainError("branch mixing weight %r outside [-1, 1)" % x)
    return (1.0 - p) / (2.0 * (1.0 - x)) * binary_entropy((1.0 + x) / 2.0)


def _optimal_mixings(p, d):
    # x at the minimizing direction; the x0 branch has probability
    # (1 - p d)/2 which vanishes only at p = 1, d = 1, where the branch
    # is empty and the value of x0 is immaterial (H2 factor times zero).
    den0 = 1.0 - p * d
    x0 = 1.0 if den0 <= BRANCH_EPS else p * (1.0 - d) / den0
    x1 = p * (1.0 + d) / (1.0 + p * d)
    return x0, x1


def conditional_entropy_gwl_analytic(psi, p, partition="A", tol=None):
    """Minimized average conditional entropy for a GWL state, in bits.

    Returns
    -------
    (value, x0, x1) : tuple of float
        The minimum of sum_m p_m S(conditional_m) over measurement
        directions on ``partition``, and the two conditional mixing
        weights at the optimum.
    """
    p = float(p)
    _check_p(p, GWL_RANGE[0], GWL_RANGE[1], "GWL", tol)
    d = 2.0 * amplitude(psi, partition)
    x0, x1 = _optimal_mixings(p, d)
    value = (1.0 - p * d) / 2.0 * binary_entropy((1.0 + x0) / 2.0, tol) + (
        1.0 + p * d
    ) / 2.0 * binary_entropy((1.0 + x1) / 2.0, tol)
    return value, x0, x1


def qd_werner(p, tol=None):
    """Closed-form quantum discord of the Werner state, in bits."""
    p = float(p)
    _check_p(p, WERNER_RANGE[0], WERNER_RANGE[1], "Werner", tol)
    return (
        binary_entropy((1.0 + p) / 2.0, tol)
        - 1.0
        + _xlog2x(1.0 - 3.0 * p) / 4.0
        + 3.0 * _xlog2x(1.0 + p) / 4.0
    )


def qd_gwl_analytic(psi, p, partition="A", tol=None):
    """Closed-form quantum discord of a GWL state with full breakdown.

    The measurement acts on ``partition``; the discord is

        delta = S[rho_measured] - S[rho] + min conditional entropy,

    evaluated with the log terms combined so that p = 1 is the exact
    pure-state limit (discord equals the entanglement of formation
    there).
    """
    if partition not in ("A", "B"):
        raise DomainError("partition must be 'A' or 'B', got %r" % (partition,))
    p = float(p)
    _check_p(p, GWL_RANGE[0], GWL_RANGE[1], "GWL", tol)
    other = "B" if partition == "A" else "A"
    amp_meas = amplitude(psi, partition)
    amp_other = amplitude(psi, other)
    cond, x0, x1 = conditional_entropy_gwl_analytic(psi, p, partition, tol)
    total = entropy_gwl(p, tol)
    s_meas = binary_entropy((1.0 + 2.0 * p * amp_meas) / 2.0, tol)
    s_other = binary_entropy((1.0 + 2.0 * p * amp_other) / 2.0, tol)
    s_a, s_b = (s_meas, s_other) if partition == "A" else (s_other, s_meas)
    return DiscordBreakdown(
        total_entropy=total,
        reduced_entropy_A=s_a,
        reduced_entropy_B=s_b,
        conditional_entropy=cond,
        mutual_information=s_a + s_b - total,
        discord=s_meas - total + cond,
        x0=x0,
        x1=x1,
        amplitude=amp_meas,
    )


def _entropy_from_eigenvalues(eigs):
    out = 0.0
    for lam in eigs:
        lam = float(lam)
        if lam > 0.0:
            out -= lam * math.log2(min(1.0, lam))
    return max(0.0, out)


def _avg_conditional_entropy(blocks, rho_b, theta, phi):
    """Average conditional entropy after measuring side A along (theta, phi).

    Vectorized over equally-shaped ``theta``/``phi`` arrays; ``blocks``
    holds the four 2x2 B-side blocks of rho, ``rho_b`` their partial
    trace. The conditional state of branch m is
    sum_ik Pi_m[k, i] blocks[i, k] / p_m; branch 1 follows from branch 0
    by Pi_1 = I - Pi_0.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    s = np.sin(2.0 * theta)
    nx = s * np.cos(phi)
    ny = s * np.sin(phi)
    nz = np.cos(2.0 * theta)
    pi00 = 0.5 * (1.0 + nz)
    pi11 = 0.5 * (1.0 - nz)
    pi01 = 0.5 * (nx - 1j * ny)
    pi10 = 0.5 * (nx + 1j * ny)
    m0 = (
        pi00[..., None, None] * blocks[0, 0]
        + pi10[..., None, None] * blocks[0, 1]
        + pi01[..., None, None] * blocks[1, 0]
        + pi11[..., None, None] * blocks[1, 1]
    )
    m1 = rho_b - m0
    return _branch_entropy(m0) + _branch_entropy(m1)


def _branch_entropy(m):
    # p_m * S(conditional) for a stack of unnormalized 2x2 branch states
    tr = np.real(m[..., 0, 0] + m[..., 1, 1])
    det = np.real(m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0])
    disc = np.sqrt(np.clip(tr * tr - 4.0 * det, 0.0, None))
    safe_tr = np.maximum(tr, BRANCH_EPS)
    mu = np.clip(0.5 * (tr + disc) / safe_tr, 0.0, 1.0)
    ent = np.zeros_like(mu)
    inner = (mu > 0.0) & (mu < 1.0)
    mu_in = mu[inner]
    ent[inner] = -(mu_in * np.log2(mu_in) + (1.0 - mu_in) * np.log2(1.0 - mu_in))
    return np.where(tr > BRANCH_EPS, tr * ent, 0.0)


def qd_numeric(rho, partition="A", grid_n=64, refine_iters=500, tol=None):
    """Brute-force quantum discord by measurement minimization.

    A deterministic (theta, phi) grid of grid_n x 2 grid_n points over
    [0, pi/2] x [0, 2 pi) seeds a compass search whose steps halve until
    both fall below 1e-9 radians. Rank-1 projective measurements only;
    no closed-form shortcuts anywhere on this path.

    Parameters
    ----------
    rho : array_like
        4x4 density matrix (Hermitian, unit trace within tolerance).
    partition : {"A", "B"}
        The measured side.
    grid_n : int
        Polar grid count, at least 8.
    refine_iters : int
        Cap on refinement polls; exceeding it raises NumericError with
        the best value found attached as ``best_value``.
    """
    t = resolve_tolerance(tol)
    grid_n = int(grid_n)
    if grid_n < 8:
        raise DomainError("grid_n must be at least 8, got %d" % grid_n)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError("expected a 4x4 density matrix, got shape %r" % (rho.shape,))
    if not is_hermitian(rho, t):
        raise DomainError("density matrix is not Hermitian within tolerance")
    tr = float(np.real(np.trace(rho)))
    if abs(tr - 1.0) > t:
        raise DomainError("density matrix trace %g differs from 1 beyond tolerance" % tr)
    if partition == "B":
        rho = swap_qubits(rho)
    elif partition != "A":
        raise DomainError("partition must be 'A' or 'B', got %r" % (partition,))

    s_total = _entropy_from_eigenvalues(np.clip(np.linalg.eigvalsh(rho), 0.0, 1.0))
    rho_meas = partial_trace(rho, "B")
    s_meas = _entropy_from_eigenvalues(np.clip(np.linalg.eigvalsh(rho_meas), 0.0, 1.0))

    blocks = rho.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3)
    rho_b = blocks[0, 0] + blocks[1, 1]

    thetas = np.linspace(0.0, math.pi / 2.0, grid_n)
    phis = np.linspace(0.0, 2.0 * math.pi, 2 * grid_n, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = _avg_conditional_entropy(blocks, rho_b, tt.ravel(), pp.ravel())
    k = int(np.argmin(vals))
    best = float(vals[k])
    bt = float(tt.ravel()[k])
    bp = float(pp.ravel()[k])

    h_t = float(thetas[1] - thetas[0])
    h_p = float(phis[1] - phis[0])
    polls = 0
    while h_t >= REFINE_TARGET or h_p >= REFINE_TARGET:
        if polls >= refine_iters:
            result = s_meas - s_total + best
            err = NumericError(
                "measurement minimization did not reach %g rad in %d polls; "
                "best value %r" % (REFINE_TARGET, refine_iters, result)
            )
            err.best_value = result
            raise err
        moves = ((bt + h_t, bp), (bt - h_t, bp), (bt, bp + h_p), (bt, bp - h_p))
        mvals = [float(_avg_conditional_entropy(blocks, rho_b, ct, cp)) for ct, cp in moves]
        j = int(np.argmin(mvals))
        if mvals[j] < best:
            best = mvals[j]
            bt, bp = moves[j]
        else:
            h_t *= 0.5
            h_p *= 0.5
        polls += 1

    return s_meas - s_total + best
