"""Time stepping for the chemotaxis system and its tensor-sensitivity variant.

The system couples cell density u and signal concentration v:

    u_t = Lap u - div(u S . grad v),   v_t = Lap v - v + u,

with zero-flux boundaries on the rectangle.  S is either a scalar chi or a
bounded 2x2 tensor, optionally multiplied by a boundary cutoff rho_eta so the
flux boundary condition reduces to pure Neumann.

The default scheme is Strang splitting with the linear flow treated exactly
per cosine mode (no stiffness from the Laplacian): a half step of the heat
and damped-heat semigroups with the v source integrated exactly against a
frozen u, a full step of the nonlinear advection by two-stage explicit
midpoint, then the mirrored linear half step.  The advective step guards a
CFL bound and halves dt locally (up to 10 times) when violated; repeated
halving failure, non-finite values, or an L-infinity threshold crossing emit
a BlowupSuspected event.  Mass of u is conserved exactly by construction
(the discrete divergence has a zero mean mode), and u is never clipped: a
tolerance-level negative undershoot is accepted, anything larger triggers
the same substepping path.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .grid import Grid, ScalarField, VectorField
from .norms import NormRecord
from .spectral import plan_for

__all__ = [
    "ScalarSensitivity",
    "TensorSensitivity",
    "Sensitivity",
    "rotation_tensor",
    "SimConfig",
    "State",
    "EventKind",
    "Event",
    "Trajectory",
    "cutoff_rho",
    "chemotactic_flux",
    "step",
    "run",
    "energy_inequality_report",
    "dual_derivative_reports",
    "InequalityReport",
]

_MAX_HALVINGS = 10
_NEG_TOL = 1e-10          # relative negative-undershoot tolerance on u
_MASS_DRIFT_TOL = 1e-8    # relative per-step mass drift threshold


@dataclass(frozen=True)
class ScalarSensitivity:
    """Classical scalar sensitivity: flux u * chi * grad v."""

    chi: float


@dataclass(frozen=True)
class TensorSensitivity:
    """Bounded 2x2 sensitivity S(u, v, x, y) with boundary cutoff width eta.

    ``entries`` holds (s11, s12, s21, s22), each a callable of
    (u, v, x, y) -> array or scalar, evaluated pointwise on the grid.  The
    operator norm of S must stay below c_s everywhere along the run (the
    bound the flux evaluation enforces).  eta > 0 multiplies S by the
    boundary-vanishing cutoff rho_eta; eta = 0 runs are permitted but
    flagged, since the boundary condition no longer reduces to pure Neumann.
    """

    entries: tuple[Callable, Callable, Callable, Callable]
    c_s: float
    eta: float = 0.0

    def __post_init__(self):
        if len(self.entries) != 4:
            raise ValueError("tensor needs exactly 4 entry functions")
        if not (self.c_s > 0):
            raise ValueError(f"c_s must be positive, got {self.c_s}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")


Sensitivity = Union[ScalarSensitivity, TensorSensitivity]


def rotation_tensor(angle: float, c_s: float = 1.0, eta: float = 0.0) -> TensorSensitivity:
    """Counterclockwise rotation by ``angle`` scaled to operator norm c_s."""
    ca, sa = np.cos(angle), np.sin(angle)
    e11 = c_s * ca
    e12 = -c_s * sa
    e21 = c_s * sa
    e22 = c_s * ca
    return TensorSensitivity(
        entries=(
            lambda u, v, x, y: e11,
            lambda u, v, x, y: e12,
            lambda u, v, x, y: e21,
            lambda u, v, x, y: e22,
        ),
        c_s=c_s,
        eta=eta,
    )


@dataclass(frozen=True)
class SimConfig:
    """Run parameters; theta selects the extra L^theta norms recorded."""

    dt: float
    t_end: float
    record_every: int = 10
    blowup_linf: float = 1e6
    dealias: bool = True
    scheme: str = "strang"      # "strang" | "lie-trotter"
    theta: float = 2.0

    def __post_init__(self):
        if not (self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (self.t_end > 0):
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")
        if not (self.blowup_linf > 0):
            raise ValueError("blowup_linf must be positive")
        if self.scheme not in ("strang", "lie-trotter"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not (self.theta >= 1):
            raise ValueError("theta must be >= 1")


@dataclass(frozen=True)
class State:
    """Snapshot (u, v) at time t."""

    t: float
    u: ScalarField
    v: ScalarField

    def __post_init__(self):
        if self.u.grid != self.v.grid:
            raise ValueError("u and v must live on the same grid")

    @property
    def grid(self) -> Grid:
        return self.u.grid


class EventKind(enum.Enum):
    BLOWUP_SUSPECTED = "BlowupSuspected"
    COMPLETED = "CompletedT"
    MASS_DRIFT = "MassDrift"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    t: float
    detail: str
    value: float | None = None


@dataclass
class Trajectory:
    """Norm records plus the per-step series the integral checks need."""

    records: list[NormRecord]
    final_state: State
    event: Event
    theta: float
    ubar0: float
    u0_l2_sq: float
    step_times: np.ndarray     # time nodes, length n_steps + 1
    dts: np.ndarray            # outer step sizes, length n_steps
    grad_u_sq: np.ndarray      # int |grad u|^2 at the nodes
    grad_v_sq: np.ndarray
    uv_l2: np.ndarray          # ||u - v||_2 at the nodes
    linf_u: np.ndarray         # ||u||_inf at the nodes
    dual_ut: np.ndarray        # dual norm of the discrete du/dt per step
    dual_vt: np.ndarray
    eta_flagged: bool = False

    @property
    def completed(self) -> bool:
        return self.event.kind is EventKind.COMPLETED

    @property
    def sup_linf_u(self) -> float:
        return float(np.max(self.linf_u)) if self.linf_u.size else 0.0


def _smoothstep(s: np.ndarray) -> np.ndarray:
    s = np.clip(s, 0.0, 1.0)
    return s * s * (3.0 - 2.0 * s)


def cutoff_rho(grid: Grid, eta: float) -> ScalarField:
    """Boundary cutoff rho_eta = q(d(x)/eta) q(d(y)/eta), smoothstep q.

    eta = 0 disables the cutoff (all ones); rho_eta is 1 at distance >= eta
    from the boundary and tends to 1 at every interior node as eta -> 0.
    """
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}")
    X, Y = grid.meshes()
    if eta == 0.0:
        return ScalarField(grid, np.ones_like(X))
    dx = np.minimum(X, grid.lx - X)
    dy = np.minimum(Y, grid.ly - Y)
    return ScalarField(grid, _smoothstep(dx / eta) * _smoothstep(dy / eta))


def _tensor_entries_on_grid(s: TensorSensitivity, u2d, v2d, X, Y):
    shape = u2d.shape
    evs = []
    for fn in s.entries:
        val = np.asarray(fn(u2d, v2d, X, Y), dtype=float)
        evs.append(np.broadcast_to(val, shape))
    return evs


def _check_tensor_bound(s: TensorSensitivity, e11, e12, e21, e22, grid: Grid):
    # operator (spectral) norm of a 2x2, closed form
    fro2 = e11 * e11 + e12 * e12 + e21 * e21 + e22 * e22
    det = e11 * e22 - e12 * e21
    disc = np.maximum(fro2 * fro2 - 4.0 * det * det, 0.0)
    smax2 = 0.5 * (fro2 + np.sqrt(disc))
    limit = (s.c_s * (1.0 + 1e-12)) ** 2
    if np.any(smax2 > limit):
        flat = int(np.argmax(smax2))
        j, i = divmod(flat, grid.nx)
        x = (i + 0.5) * grid.hx
        y = (j + 0.5) * grid.hy
        raise ValueError(
            f"tensor sensitivity bound violated: |S| = "
            f"{float(np.sqrt(smax2.ravel()[flat])):.6g} > c_s = {s.c_s:.6g} "
            f"at node (i={i}, j={j}), (x, y)=({x:.6g}, {y:.6g})"
        )


class _Stepper:
    """Shared machinery behind step() and run(); works on raw 2-D arrays."""

    def __init__(self, grid: Grid, sens: Sensitivity, cfg: SimConfig):
        self.grid = grid
        self.plan = plan_for(grid)
        self.sens = sens
        self.cfg = cfg
        self.hmin = min(grid.hx, grid.hy)
        self.mask = self.plan.dealias_mask
        if isinstance(sens, TensorSensitivity) and sens.eta > 0:
            self.rho = cutoff_rho(grid, sens.eta).values2d
        else:
            self.rho = None
        self._mult_cache: dict[float, tuple] = {}

    def _mults(self, tau: float):
        got = self._mult_cache.get(tau)
        if got is None:
            mu = self.plan.mu
            e_u = np.exp(-mu * tau)
            e_v = np.exp(-(mu + 1.0) * tau)
            phi = (1.0 - e_v) / (mu + 1.0)
            # g = e_v + phi equals exactly 1 on the mean mode, which keeps
            # the constant steady state bit-exact
            g = e_v + phi
            got = (e_u, e_v, phi, g)
            self._mult_cache[tau] = got
        return got

    def _velocity(self, u2d, v2d, gx, gy):
        """Advective velocity (rho S) . grad v, with the tensor bound check."""
        s = self.sens
        if isinstance(s, ScalarSensitivity):
            return s.chi * gx, s.chi * gy
        e11, e12, e21, e22 = _tensor_entries_on_grid(s, u2d, v2d, self.plan.X, self.plan.Y)
        _check_tensor_bound(s, e11, e12, e21, e22, self.grid)
        rx = e11 * gx + e12 * gy
        ry = e21 * gx + e22 * gy
        if self.rho is not None:
            rx = rx * self.rho
            ry = ry * self.rho
        return rx, ry

    def _linear_half(self, uc, vc, tau):
        e_u, e_v, _phi, g = self._mults(tau)
        uc_new = uc * e_u
        vc_new = uc * g + (vc - uc) * e_v
        return uc_new, vc_new

    def _advect(self, u1, uc_h, vc_h, dt):
        """Full advection step of u by two-stage explicit midpoint; v frozen."""
        plan = self.plan
        dealias = self.cfg.dealias
        if dealias:
            vcf = vc_h * self.mask
            v_f = plan.inv(vcf)
            gx, gy = plan.grad(v_f)
            u_f = plan.inv(uc_h * self.mask)
        else:
            v_f = plan.inv(vc_h)
            gx, gy = plan.grad(v_f)
            u_f = u1

        rx, ry = self._velocity(u_f, v_f, gx, gy)
        vel_max = float(np.max(np.hypot(rx, ry)))

        def rhs(uu_f, rrx, rry):
            wx = uu_f * rrx
            wy = uu_f * rry
            if dealias:
                d = plan.div_coeffs(wx, wy)
                d *= self.mask
                return -plan.inv(d)
            return -plan.div(wx, wy)

        k1 = rhs(u_f, rx, ry)
        um = u1 + (0.5 * dt) * k1
        um_f = plan.inv(plan.fwd(um) * self.mask) if dealias else um
        rx2, ry2 = self._velocity(um_f, v_f, gx, gy)
        k2 = rhs(um_f, rx2, ry2)
        return u1 + dt * k2, vel_max

    def advance(self, uc, vc, dt, depth=0):
        """Advance the carried spectra by dt; returns (uc, vc, u2d, v2d).

        Raises _StepFailure on blow-up signatures.  Substeps recursively on
        CFL violation or on a beyond-tolerance negative undershoot of u.
        """
        plan = self.plan
        tau = 0.5 * dt
        if self.cfg.scheme == "strang":
            uc_h, vc_h = self._linear_half(uc, vc, tau)
        else:  # lie-trotter: full linear step, then full advection
            uc_h, vc_h = self._linear_half(uc, vc, dt)
        u1 = plan.inv(uc_h)

        u2, vel_max = self._advect(u1, uc_h, vc_h, dt)

        cfl_dt = 0.5 * self.hmin / (1.0 + vel_max)
        if not (dt <= cfl_dt):
            if depth >= _MAX_HALVINGS:
                raise _StepFailure(
                    EventKind.BLOWUP_SUSPECTED,
                    f"CFL bound {cfl_dt:.3e} still below dt after "
                    f"{_MAX_HALVINGS} halvings (advective speed {vel_max:.3e})",
                    vel_max,
                )
            return self._two_halves(uc, vc, dt, depth)

        uc2 = plan.fwd(u2)
        if self.cfg.scheme == "strang":
            uc_n, vc_n = self._linear_half(uc2, vc_h, tau)
        else:
            uc_n, vc_n = uc2, vc_h
        u_n = plan.inv(uc_n)
        v_n = plan.inv(vc_n)

        if not (np.all(np.isfinite(u_n)) and np.all(np.isfinite(v_n))):
            raise _StepFailure(
                EventKind.BLOWUP_SUSPECTED, "non-finite value in the state", float("nan")
            )
        umin = float(u_n.min())
        umax = float(np.abs(u_n).max())
        if umin < -_NEG_TOL * umax:
            if depth >= _MAX_HALVINGS:
                raise _StepFailure(
                    EventKind.BLOWUP_SUSPECTED,
                    f"negative undershoot {umin:.3e} (tolerance "
                    f"{-_NEG_TOL * umax:.3e}) persisted after {_MAX_HALVINGS} halvings",
                    umin,
                )
            return self._two_halves(uc, vc, dt, depth)
        return uc_n, vc_n, u_n, v_n

    def _two_halves(self, uc, vc, dt, depth):
        uc1, vc1, _u, _v = self.advance(uc, vc, 0.5 * dt, depth + 1)
        return self.advance(uc1, vc1, 0.5 * dt, depth + 1)


class _StepFailure(Exception):
    def __init__(self, kind: EventKind, detail: str, value: float):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail
        self.value = value


def chemotactic_flux(
    u: ScalarField, v: ScalarField, s: Sensitivity, dealias: bool = False
) -> VectorField:
    """Flux u (rho_eta S)(u, v, x) . grad v at the cell centers.

    With dealias=True the inputs and the product are low-pass filtered by
    the 2/3 rule.  Tensor entries exceeding the declared bound c_s raise
    with the offending node named.
    """
    if u.grid != v.grid:
        raise ValueError("u and v must live on the same grid")
    cfg = SimConfig(dt=1.0, t_end=1.0, dealias=dealias)
    stepper = _Stepper(u.grid, s, cfg)
    plan = stepper.plan
    if dealias:
        u2d = plan.inv(plan.fwd(u.values2d) * plan.dealias_mask)
        vc = plan.fwd(v.values2d) * plan.dealias_mask
        v2d = plan.inv(vc)
        gx, gy = plan.grad(v2d)
    else:
        u2d = u.values2d
        v2d = v.values2d
        gx, gy = plan.grad(v2d)
    rx, ry = stepper._velocity(u2d, v2d, gx, gy)
    wx = u2d * rx
    wy = u2d * ry
    if dealias:
        wx = plan.inv(plan.fwd(wx) * plan.dealias_mask)
        wy = plan.inv(plan.fwd(wy) * plan.dealias_mask)
    return VectorField(u.grid, wx, wy)


def step(state: State, s: Sensitivity, cfg: SimConfig) -> State | Event:
    """One outer step of size cfg.dt from the given state."""
    stepper = _Stepper(state.grid, s, cfg)
    plan = stepper.plan
    uc = plan.fwd(state.u.values2d)
    vc = plan.fwd(state.v.values2d)
    mass_old = uc[0, 0] * state.grid.area
    try:
        uc_n, vc_n, u_n, v_n = stepper.advance(uc, vc, cfg.dt)
    except _StepFailure as fail:
        return Event(fail.kind, state.t, fail.detail, fail.value)
    t_new = state.t + cfg.dt
    ev = _post_step_event(stepper, uc_n, u_n, mass_old, mass_old, t_new, cfg)
    if ev is not None:
        return ev
    return State(t_new, ScalarField(state.grid, u_n), ScalarField(state.grid, v_n))


def _post_step_event(stepper, uc_n, u_n, mass_old, mass_ref, t, cfg) -> Event | None:
    linf = float(np.abs(u_n).max())
    if linf > cfg.blowup_linf:
        return Event(
            EventKind.BLOWUP_SUSPECTED,
            t,
            f"||u||_inf = {linf:.6e} crossed the threshold {cfg.blowup_linf:.6e}",
            linf,
        )
    mass_new = uc_n[0, 0] * stepper.grid.area
    denom = max(abs(mass_ref), 1e-300)
    drift = abs(mass_new - mass_old) / denom
    if drift > _MASS_DRIFT_TOL:
        return Event(
            EventKind.MASS_DRIFT,
            t,
            f"relative mass drift {drift:.3e} in one step exceeds {_MASS_DRIFT_TOL:.0e}",
            drift,
        )
    return None


def run(u0: ScalarField, v0: ScalarField, s: Sensitivity, cfg: SimConfig) -> Trajectory:
    """Integrate from (u0, v0) to t_end, recording norms along the way.

    The run either completes t_end or ends at the first terminal event;
    dynamics failures become events, never exceptions.
    """
    if u0.grid != v0.grid:
        raise ValueError("u0 and v0 must live on the same grid")
    for name, f in (("u0", u0), ("v0", v0)):
        if float(f.values.min()) < -1e-12 * (float(np.abs(f.values).max()) + 1.0):
            raise ValueError(f"{name} must be nonnegative pointwise")
    grid = u0.grid
    plan = plan_for(grid)
    stepper = _Stepper(grid, s, cfg)

    eta_flagged = isinstance(s, TensorSensitivity) and s.eta == 0.0
    if eta_flagged:
        warnings.warn(
            "tensor sensitivity without boundary cutoff (eta = 0): the flux "
            "boundary condition does not reduce to pure Neumann",
            RuntimeWarning,
            stacklevel=2,
        )

    # outer step sizes: uniform dt plus one short remainder step if needed
    n_full = int(np.floor(cfg.t_end / cfg.dt + 1e-9))
    rem = cfg.t_end - n_full * cfg.dt
    dts = [cfg.dt] * n_full
    if rem > 1e-12 * cfg.dt:
        dts.append(rem)
    dts = np.asarray(dts)
    n_steps = len(dts)

    uc = plan.fwd(u0.values2d)
    vc = plan.fwd(v0.values2d)
    u2d = u0.values2d.copy()
    v2d = v0.values2d.copy()
    ubar0 = float(uc[0, 0])
    mass0 = ubar0 * grid.area
    u0_l2_sq = grid.hx * grid.hy * float(np.sum(u2d * u2d))

    w = plan.weight
    mu = plan.mu
    wmu = w * mu
    wdual = w / (1.0 + mu)
    cell = grid.hx * grid.hy

    times = np.empty(n_steps + 1)
    grad_u_sq = np.empty(n_steps + 1)
    grad_v_sq = np.empty(n_steps + 1)
    uv_l2 = np.empty(n_steps + 1)
    linf_u = np.empty(n_steps + 1)
    dual_ut = np.zeros(n_steps)
    dual_vt = np.zeros(n_steps)

    def node_stats(i, t):
        times[i] = t
        grad_u_sq[i] = float(np.sum(uc * uc * wmu))
        grad_v_sq[i] = float(np.sum(vc * vc * wmu))
        diff = u2d - v2d
        uv_l2[i] = float(np.sqrt(cell * np.sum(diff * diff)))
        linf_u[i] = float(np.abs(u2d).max())

    records: list[NormRecord] = []
    energy_u = 0.0
    energy_v = 0.0

    def make_record(t, dual_u_last, dual_v_last):
        dev_u = u2d - ubar0
        dev_v = v2d - ubar0
        gvx, gvy = plan.grad(v2d)
        gmag = np.hypot(gvx, gvy)
        theta = cfg.theta
        l2_grad_v = float(np.sqrt(np.sum(vc * vc * wmu)))
        if theta == 2.0:
            ltheta_u = float(np.sqrt(cell * np.sum(u2d * u2d)))
            ltheta_dev_u = float(np.sqrt(cell * np.sum(dev_u * dev_u)))
            ltheta_grad_v = l2_grad_v
        else:
            ltheta_u = float((cell * np.sum(np.abs(u2d) ** theta)) ** (1.0 / theta))
            ltheta_dev_u = float((cell * np.sum(np.abs(dev_u) ** theta)) ** (1.0 / theta))
            ltheta_grad_v = float((cell * np.sum(gmag**theta)) ** (1.0 / theta))
        records.append(
            NormRecord(
                t=t,
                mass=float(uc[0, 0]) * grid.area,
                linf_dev_u=float(np.abs(dev_u).max()),
                l1_u=float(cell * np.sum(np.abs(u2d))),
                l2_u=float(np.sqrt(cell * np.sum(u2d * u2d))),
                ltheta_u=ltheta_u,
                l2_grad_v=l2_grad_v,
                ln_grad_v=l2_grad_v,
                linf_dev_v=float(np.abs(dev_v).max()),
                energy_u=energy_u,
                energy_v=energy_v,
                dual_ut=dual_u_last,
                dual_vt=dual_v_last,
                ltheta_dev_u=ltheta_dev_u,
                ltheta_grad_v=ltheta_grad_v,
            )
        )

    node_stats(0, 0.0)
    make_record(0.0, 0.0, 0.0)

    t = 0.0
    event: Event | None = None
    steps_done = 0
    for i, dt_i in enumerate(dts):
        uc_old = uc
        vc_old = vc
        mass_old = float(uc[0, 0]) * grid.area
        try:
            uc, vc, u2d, v2d = stepper.advance(uc, vc, float(dt_i))
        except _StepFailure as fail:
            event = Event(fail.kind, t, fail.detail, fail.value)
            break
        t += float(dt_i)
        steps_done = i + 1
        du = (uc - uc_old) / dt_i
        dv = (vc - vc_old) / dt_i
        dual_ut[i] = float(np.sqrt(np.sum(du * du * wdual)))
        dual_vt[i] = float(np.sqrt(np.sum(dv * dv * wdual)))
        node_stats(i + 1, t)
        energy_u += 0.5 * dt_i * (grad_u_sq[i] + grad_u_sq[i + 1])
        energy_v += 0.5 * dt_i * (grad_v_sq[i] + grad_v_sq[i + 1])
        ev = _post_step_event(stepper, uc, u2d, mass_old, mass0, t, cfg)
        if ev is not None:
            event = ev
            break
        if (i + 1) % cfg.record_every == 0 or i + 1 == n_steps:
            make_record(t, dual_ut[i], dual_vt[i])

    if event is None:
        event = Event(EventKind.COMPLETED, t, f"completed t_end = {cfg.t_end:g}")
    blowup = event.kind is EventKind.BLOWUP_SUSPECTED
    final = State(
        t,
        ScalarField(grid, u2d, blowup_witness=blowup),
        ScalarField(grid, v2d, blowup_witness=blowup),
    )
    n_done = steps_done
    return Trajectory(
        records=records,
        final_state=final,
        event=event,
        theta=cfg.theta,
        ubar0=ubar0,
        u0_l2_sq=u0_l2_sq,
        step_times=times[: n_done + 1],
        dts=dts[:n_done],
        grad_u_sq=grad_u_sq[: n_done + 1],
        grad_v_sq=grad_v_sq[: n_done + 1],
        uv_l2=uv_l2[: n_done + 1],
        linf_u=linf_u[: n_done + 1],
        dual_ut=dual_ut[:n_done],
        dual_vt=dual_vt[:n_done],
        eta_flagged=eta_flagged,
    )


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    slack: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs != 0 else float("inf")

    @property
    def satisfied(self) -> bool:
        return self.lhs <= (1.0 + self.slack) * self.rhs


def _sensitivity_bound(s: Sensitivity) -> float:
    return abs(s.chi) if isinstance(s, ScalarSensitivity) else s.c_s


def energy_inequality_report(traj: Trajectory, s: Sensitivity, slack: float = 0.05) -> InequalityReport:
    """Gradient-energy bound along the run:

        int_0^T int |grad u|^2  <=  int u0^2 + C_S^2 M^2 int_0^T int |grad v|^2

    with M = sup_t ||u||_inf, checked with the given relative slack.
    """
    lhs = float(np.trapezoid(traj.grad_u_sq, traj.step_times))
    m_sup = traj.sup_linf_u
    c_s = _sensitivity_bound(s)
    rhs = traj.u0_l2_sq + (c_s * m_sup) ** 2 * float(np.trapezoid(traj.grad_v_sq, traj.step_times))
    return InequalityReport("energy_u", lhs, rhs, slack)


def dual_derivative_reports(
    traj: Trajectory, s: Sensitivity, slack: float = 0.05
) -> tuple[InequalityReport, InequalityReport]:
    """Time-integrated squared dual norms of the discrete time derivatives
    against the assembled right sides

        ||du/dt||_* <= (int |grad u|^2)^(1/2) + M C_S (int |grad v|^2)^(1/2)
        ||dv/dt||_* <= (int |grad v|^2)^(1/2) + ||u - v||_2
    """
    m_sup = traj.sup_linf_u
    c_s = _sensitivity_bound(s)
    lhs_u = float(np.sum(traj.dual_ut**2 * traj.dts))
    lhs_v = float(np.sum(traj.dual_vt**2 * traj.dts))
    bound_u = (np.sqrt(traj.grad_u_sq) + m_sup * c_s * np.sqrt(traj.grad_v_sq)) ** 2
    bound_v = (np.sqrt(traj.grad_v_sq) + traj.uv_l2) ** 2
    rhs_u = float(np.trapezoid(bound_u, traj.step_times))
    rhs_v = float(np.trapezoid(bound_v, traj.step_times))
    return (
        InequalityReport("dual_ut", lhs_u, rhs_u, slack),
        InequalityReport("dual_vt", lhs_v, rhs_v, slack),
    )
