"""Explicit Runge-Kutta drivers and step-size control."""

from dataclasses import dataclass

import numpy as np


class BlowUpError(RuntimeError):
    """Integration produced a non-finite state."""

    def __init__(self, message, step=None):
        super().__init__(message if step is None else f"{message} (step {step})")
        self.step = step


@dataclass(frozen=True)
class StepControl:
    """Fixed-step or CFL-based time step selection.

    mode  'fixed' (use dt) or 'cfl' (use the CFL number)
    re    Reynolds number for the viscous restriction; inf drops it
    """

    mode: str
    dt: float = None
    cfl: float = None
    re: float = np.inf

    def __post_init__(self):
        if self.mode not in ("fixed", "cfl"):
            raise ValueError(f"unknown step mode {self.mode!r}")
        if self.mode == "fixed" and not (self.dt and self.dt > 0):
            raise ValueError("fixed mode needs dt > 0")
        if self.mode == "cfl" and not (self.cfl and 0 < self.cfl <= 1):
            raise ValueError("cfl mode needs 0 < cfl <= 1")


def _check_finite(state, step):
    if not np.all(np.isfinite(state)):
        raise BlowUpError("non-finite state after time step", step=step)


def rk4_step(state, rhs_fn, dt, step=None):
    """Classic four-stage fourth-order Runge-Kutta update."""
    k1 = rhs_fn(state)
    k2 = rhs_fn(state + 0.5 * dt * k1)
    k3 = rhs_fn(state + 0.5 * dt * k2)
    k4 = rhs_fn(state + dt * k3)
    out = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    _check_finite(out, step)
    return out


def rk3_projection_step(state, rhs_fn, project_fn, dt, step=None):
    """Three-stage SSP Runge-Kutta with a projection after every stage."""
    s1 = project_fn(state + dt * rhs_fn(state))
    s2 = project_fn(0.75 * state + 0.25 * (s1 + dt * rhs_fn(s1)))
    out = project_fn(state / 3.0 + (2.0 / 3.0) * (s2 + dt * rhs_fn(s2)))
    _check_finite(out, step)
    return out


def compute_dt(state, control, dx, dy=None):
    """Time step from the CFL restriction (or the fixed dt).

    Incompressible (state = (u, v) velocities): dt = cfl / [max(|u|/dx +
    |v|/dy) + (2/Re)(1/dx^2 + 1/dy^2)].  Compressible (state carries a
    sound speed): the advective speeds become |u| + c per axis.
    """
    if control.mode == "fixed":
        return control.dt

    from .euler import EulerState, primitive_from_conservative

    if isinstance(state, EulerState):
        prim = primitive_from_conservative(state)
        rho, p = prim[0], prim[-1]
        c = np.sqrt(state.gamma * p / rho)
        speed = (np.abs(prim[1]) + c) / dx
        if state.dim == 2:
            speed = speed + (np.abs(prim[2]) + c) / dy
        denom = float(speed.max())
    else:
        u, v = state
        denom = float((np.abs(u) / dx + np.abs(v) / dy).max())
        if np.isfinite(control.re):
            denom += (2.0 / control.re) * (1.0 / dx**2 + 1.0 / dy**2)
    if denom <= 0.0:
        raise ValueError("CFL denominator is zero; state is quiescent")
    return control.cfl / denom
