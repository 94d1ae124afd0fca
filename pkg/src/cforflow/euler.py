"""Compressible and incompressible Euler right-hand sides and projection.

Flux derivatives use the central DSC stencils directly (no upwinding or
flux splitting); oscillation control is left to the conjugate low-pass
filter driven by the solver.  The incompressible pressure projection
solves the potential Poisson problem with the composition of first
derivative stencils per axis, so every discrete gradient is annihilated
exactly and the post-projection divergence is bounded by the linear-solve
residual.
"""

from dataclasses import dataclass, replace

import numpy as np

from .fields import Field
from .kernels import stencil
from .filters import apply_stencil_array


class PositivityError(RuntimeError):
    """Density or pressure lost positivity."""


class PoissonError(RuntimeError):
    """Iterative Poisson solve failed to reach the residual target."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = list(residuals or [])


@dataclass
class EulerState:
    """Conservative variables stacked as U[c] = (rho, mom_x[, mom_y], energy)."""

    U: np.ndarray
    gamma: float
    spacing: tuple = None

    def __post_init__(self):
        self.U = np.asarray(self.U, dtype=float)
        if self.U.shape[0] not in (3, 4):
            raise ValueError(f"expected 3 or 4 conservative components, got {self.U.shape[0]}")
        if self.spacing is not None and np.isscalar(self.spacing):
            self.spacing = (float(self.spacing),)

    @property
    def dim(self):
        return self.U.ndim - 1

    @property
    def rho(self):
        return self.U[0]

    @property
    def mom_x(self):
        return self.U[1]

    @property
    def mom_y(self):
        if self.dim != 2:
            raise AttributeError("mom_y only exists for 2-d states")
        return self.U[2]

    @property
    def energy(self):
        return self.U[-1]

    def copy(self):
        return replace(self, U=self.U.copy())

    @classmethod
    def from_primitive(cls, rho, u, v=None, p=None, gamma=1.4, spacing=None):
        rho = np.asarray(rho, dtype=float)
        u = np.asarray(u, dtype=float)
        p = np.asarray(p, dtype=float)
        if v is None:
            ke = 0.5 * rho * u**2
            U = np.stack([rho, rho * u, p / (gamma - 1.0) + ke])
        else:
            v = np.asarray(v, dtype=float)
            ke = 0.5 * rho * (u**2 + v**2)
            U = np.stack([rho, rho * u, rho * v, p / (gamma - 1.0) + ke])
        return cls(U, float(gamma), spacing)


def primitive_from_conservative(state, check=True):
    """(rho, u[, v], p) from conservative variables.

    With ``check`` the positivity invariants are enforced.  Runge-Kutta
    stage evaluations disable it: the flux algebra is polynomial in the
    conservative variables, and transient stage undershoots next to a
    fresh discontinuity are benign as long as completed steps stay
    physical.
    """
    U, gamma = state.U, state.gamma
    rho = U[0]
    if check and (np.any(rho <= 0.0) or not np.all(np.isfinite(rho))):
        idx = np.unravel_index(int(np.argmin(rho)), rho.shape)
        raise PositivityError(f"non-positive density at index {idx}: {rho[idx]}")
    if state.dim == 1:
        u = U[1] / rho
        p = (gamma - 1.0) * (U[2] - 0.5 * rho * u**2)
        prims = (rho, u, p)
    else:
        u = U[1] / rho
        v = U[2] / rho
        p = (gamma - 1.0) * (U[3] - 0.5 * rho * (u**2 + v**2))
        prims = (rho, u, v, p)
    p = prims[-1]
    if check and np.any(p <= 0.0):
        idx = np.unravel_index(int(np.argmin(p)), p.shape)
        raise PositivityError(f"non-positive pressure at index {idx}: {p[idx]}")
    return prims


def sound_speed(state):
    prim = primitive_from_conservative(state)
    return np.sqrt(state.gamma * prim[-1] / prim[0])


def euler_rhs_1d(state, spec, check_positivity=True):
    """-dF/dx of the 1-d Euler fluxes, stacked like the state array."""
    with np.errstate(over="ignore", invalid="ignore"):
        rho, u, p = primitive_from_conservative(state, check=check_positivity)
        E = state.U[2]
        F = np.stack([state.U[1], state.U[1] * u + p, u * (E + p)])
    sw = stencil(spec, 1)
    return -apply_stencil_array(F, sw, axis=-1, delta=spec.delta)


def euler_rhs_2d(state, spec_x, spec_y=None, check_positivity=True):
    """-dF/dx - dG/dy of the 2-d Euler fluxes, dimension by dimension."""
    spec_y = spec_y or spec_x
    rho, u, v, p = primitive_from_conservative(state, check=check_positivity)
    mx, my, E = state.U[1], state.U[2], state.U[3]
    F = np.stack([mx, mx * u + p, my * u, u * (E + p)])
    G = np.stack([my, mx * v, my * v + p, v * (E + p)])
    sw_x = stencil(spec_x, 1)
    sw_y = stencil(spec_y, 1)
    out = -apply_stencil_array(F, sw_x, axis=1, delta=spec_x.delta)
    out -= apply_stencil_array(G, sw_y, axis=2, delta=spec_y.delta)
    return out


@dataclass
class IncompressibleState:
    """Velocity components plus the projection potential as a pressure proxy."""

    u: Field
    v: Field
    p: Field = None


def incompressible_rhs(uv, spec_x, spec_y=None):
    """Advective-form tendency -(u du/dx + v du/dy, u dv/dx + v dv/dy)."""
    spec_y = spec_y or spec_x
    sw_x = stencil(spec_x, 1)
    sw_y = stencil(spec_y, 1)
    dx_uv = apply_stencil_array(uv, sw_x, axis=1, delta=spec_x.delta)
    dy_uv = apply_stencil_array(uv, sw_y, axis=2, delta=spec_y.delta)
    return -(uv[0] * dx_uv + uv[1] * dy_uv)


@dataclass
class ProjectionInfo:
    iterations: int
    residuals: list

    @property
    def residual(self):
        return self.residuals[-1] if self.residuals else 0.0


class ProjectionOperator:
    """Pressure projection on a periodic grid built from one derivative stencil.

    The Poisson operator is div(grad(.)) with the same first-derivative
    stencil on both sides, solved by preconditioned BiCG.  The
    preconditioner inverts the operator's own circulant symbol by FFT, so
    the iteration typically converges in one or two steps while the
    stencil-space residual certifies the result.
    """

    def __init__(self, spec, shape, spacing):
        self.spec = spec
        self.shape = tuple(shape)
        self.spacing = tuple(float(s) for s in spacing)
        self.sw = stencil(spec, 1)
        self._build_symbol()

    def _axis_symbol(self, n, dx):
        theta = 2.0 * np.pi * np.arange(n) / n
        offs = self.sw.offsets
        beta = np.sin(np.outer(theta, offs)) @ self.sw.weights
        return -((beta / dx) ** 2)

    def _build_symbol(self):
        if len(self.shape) == 1:
            lam = self._axis_symbol(self.shape[0], self.spacing[0])
        else:
            nx, ny = self.shape
            sx = self._axis_symbol(nx, self.spacing[0])
            # rfft along the last axis only needs ny//2+1 modes
            sy = self._axis_symbol(ny, self.spacing[1])[: ny // 2 + 1]
            lam = sx[:, None] + sy[None, :]
        cutoff = 1e-13 * np.abs(lam).max()
        inv = np.zeros_like(lam)
        mask = np.abs(lam) > cutoff
        inv[mask] = 1.0 / lam[mask]
        if len(self.shape) == 1:
            inv = inv[: self.shape[0] // 2 + 1]
            mask = mask[: self.shape[0] // 2 + 1]
        self._inv_symbol = inv
        self._mode_mask = mask.astype(float)

    def _spectral_apply(self, r, multiplier):
        if len(self.shape) == 1:
            return np.fft.irfft(np.fft.rfft(r) * multiplier, n=self.shape[0])
        return np.fft.irfft2(np.fft.rfft2(r) * multiplier, s=self.shape)

    def _precondition(self, r):
        return self._spectral_apply(r, self._inv_symbol)

    def _solvable_part(self, r):
        """Drop the symbol's null modes (mean and checkerboard combinations)."""
        return self._spectral_apply(r, self._mode_mask)

    def d_axis(self, arr, axis):
        return apply_stencil_array(arr, self.sw, axis=axis, delta=self.spacing[axis])

    def divergence(self, u, v):
        return self.d_axis(u, 0) + self.d_axis(v, 1)

    def laplacian(self, phi):
        out = self.d_axis(self.d_axis(phi, 0), 0)
        if len(self.shape) == 2:
            out += self.d_axis(self.d_axis(phi, 1), 1)
        return out

    def solve(self, rhs, tol=1e-12, maxiter=None):
        """BiCG solve of laplacian(phi) = rhs with zero-mean gauge.

        The right-hand side is restricted to the operator's range first
        (periodic compatibility); a compatible divergence only carries
        rounding noise outside it.
        """
        b = self._solvable_part(rhs - rhs.mean())
        bnorm = float(np.linalg.norm(b))
        if bnorm == 0.0:
            return np.zeros_like(b), ProjectionInfo(0, [0.0])
        if maxiter is None:
            maxiter = 10 * b.size
        x = np.zeros_like(b)
        r = b.copy()
        r_sh = b.copy()  # shadow residual (operator and preconditioner are symmetric)
        rho_prev = 1.0
        p = np.zeros_like(b)
        p_sh = np.zeros_like(b)
        residuals = []
        for it in range(1, maxiter + 1):
            z = self._precondition(r)
            z_sh = self._precondition(r_sh)
            rho = float((z * r_sh).sum())
            if rho == 0.0:
                if residuals and residuals[-1] <= np.sqrt(np.finfo(float).eps):
                    break  # stagnated at rounding level on a noise-scale system
                raise PoissonError("BiCG breakdown (rho = 0)", residuals)
            beta = rho / rho_prev
            p = z + beta * p
            p_sh = z_sh + beta * p_sh
            q = self.laplacian(p)
            q_sh = self.laplacian(p_sh)
            alpha = rho / float((p_sh * q).sum())
            x += alpha * p
            r -= alpha * q
            r_sh -= alpha * q_sh
            rho_prev = rho
            res = float(np.linalg.norm(r)) / bnorm
            residuals.append(res)
            if res <= tol:
                x -= x.mean()
                return x, ProjectionInfo(it, residuals)
        else:
            last = f"{residuals[-1]:.3e}" if residuals else "n/a"
            raise PoissonError(
                f"BiCG did not reach tol={tol} in {maxiter} iterations (last residual {last})",
                residuals,
            )
        x -= x.mean()
        return x, ProjectionInfo(len(residuals), residuals)

    def project(self, u, v, tol=1e-12, maxiter=None):
        """Remove the discrete-gradient part: returns (u, v, phi, info)."""
        div = self.divergence(u, v)
        phi, info = self.solve(div, tol=tol, maxiter=maxiter)
        return u - self.d_axis(phi, 0), v - self.d_axis(phi, 1), phi, info


def project(u, v, spec, tol=1e-12, maxiter=None):
    """One-shot projection of a velocity pair to divergence-free form."""
    op = ProjectionOperator(spec, u.shape, (spec.delta,) * u.ndim)
    return op.project(u, v, tol=tol, maxiter=maxiter)
