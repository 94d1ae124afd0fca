"""Discrete singular convolution (DSC) kernels and stencil generation.

Two kernel families are supported: a Hermite-expansion kernel (Gaussian
envelope times a truncated even-Hermite series) and the regularized
Shannon kernel (sinc times a Gaussian envelope).  Both yield banded
stencils for derivatives (q = 1, 2), on-grid filtering (q = 0) and
half-grid interpolation used by the prediction/restoration low-pass.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

HERMITE = "hermite"
RSK = "rsk"

_SQRT2 = np.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


class KernelError(ValueError):
    """Invalid kernel parameters or unsupported derivative order."""


@dataclass(frozen=True)
class KernelSpec:
    """Parameters of a DSC kernel on a uniform grid.

    family  'hermite' or 'rsk'
    W       half-width; on-grid stencils use 2W+1 samples
    r       Gaussian width in units of the grid spacing (sigma = r * delta)
    n       Hermite expansion order, even (ignored for 'rsk')
    delta   grid spacing
    """

    family: str
    W: int
    r: float
    n: int = 88
    delta: float = 1.0

    def __post_init__(self):
        if self.family not in (HERMITE, RSK):
            raise KernelError(f"unknown kernel family: {self.family!r}")
        if self.W < 1:
            raise KernelError(f"half-width W must be >= 1, got {self.W}")
        if not self.r > 0:
            raise KernelError(f"width ratio r must be positive, got {self.r}")
        if not self.delta > 0:
            raise KernelError(f"grid spacing must be positive, got {self.delta}")
        if self.family == HERMITE and (self.n < 2 or self.n % 2 != 0):
            raise KernelError(f"Hermite order n must be even and >= 2, got {self.n}")

    @property
    def sigma(self):
        return self.r * self.delta

    def with_delta(self, delta):
        return replace(self, delta=float(delta))

    def with_r(self, r):
        return replace(self, r=float(r))


@dataclass(frozen=True)
class StencilWeights:
    """Banded convolution weights for a derivative or interpolation.

    Weights are dimensionless; the 1/delta^q factor is applied at use time
    unless ``includes_delta_scaling`` is set.  ``offsets`` are integers for
    on-grid stencils and half-integers (j + 1/2) for half-grid ones, and a
    weight at offset o multiplies the sample at x + o*delta.
    """

    q: int
    offsets: np.ndarray
    weights: np.ndarray
    includes_delta_scaling: bool = False
    max_asymmetry: float = 0.0

    def __post_init__(self):
        self.offsets.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def half_grid(self):
        return self.offsets.dtype.kind == "f"

    @property
    def half_width(self):
        return int(np.ceil(self.offsets[-1]))

    def fold_delta(self, delta):
        """Return a copy with the 1/delta^q factor folded into the weights."""
        if self.includes_delta_scaling:
            raise KernelError("delta scaling already folded in")
        return replace(
            self,
            weights=self.weights / float(delta) ** self.q,
            includes_delta_scaling=True,
        )

    def as_table(self):
        """Plain-text table (offset, weight) at 17 significant digits."""
        lines = ["# offset  weight"]
        for o, w in zip(self.offsets, self.weights):
            lines.append(f"{o:+.1f} {w:+.17e}" if self.half_grid else f"{int(o):+d} {w:+.17e}")
        return "\n".join(lines) + "\n"


def _hermite_upto(y, kmax):
    """H_0..H_kmax at y (physicists' convention), stable upward recursion."""
    H = np.empty(kmax + 1)
    H[0] = 1.0
    if kmax >= 1:
        H[1] = 2.0 * y
    for k in range(1, kmax):
        H[k + 1] = 2.0 * y * H[k] - 2.0 * k * H[k - 1]
    return H


def _hermite_deriv_value(x, n, sigma, q):
    """q-th derivative of the Hermite kernel at offset x.

    Differentiating the Gaussian-times-Hermite product q times raises each
    series term H_{2m} to H_{2m+q} with a (-1)^q sign, so one polynomial
    recursion covers all supported orders.  The series coefficient
    (-1/4)^m / m! is accumulated incrementally to stay finite at large n.
    """
    y = x / (_SQRT2 * sigma)
    H = _hermite_upto(y, n + q)
    total = 0.0
    coeff = _INV_SQRT_2PI
    for m in range(n // 2 + 1):
        total += coeff * H[2 * m + q]
        coeff *= -0.25 / (m + 1)
    prefactor = (-1.0) ** q / (sigma * (_SQRT2 * sigma) ** q)
    value = prefactor * np.exp(-y * y) * total
    if not np.isfinite(value):
        raise KernelError(
            f"non-finite Hermite kernel value at x={x} (n={n}, sigma={sigma}, q={q})"
        )
    return value


def _rsk_deriv_value(x, sigma, delta, q):
    """q-th derivative of the regularized Shannon kernel at offset x."""
    a = np.pi / delta
    if x == 0.0:
        if q == 0:
            return 1.0
        if q == 1:
            return 0.0
        return -a * a / 3.0 - 1.0 / sigma**2
    s = np.sin(a * x) / (a * x)
    g = np.exp(-x * x / (2.0 * sigma**2))
    if q == 0:
        return s * g
    sp = (np.cos(a * x) - s) / x
    gp = -(x / sigma**2) * g
    if q == 1:
        return sp * g + s * gp
    spp = (-a * x * np.sin(a * x) - 2.0 * np.cos(a * x) + 2.0 * s) / (x * x)
    gpp = (x * x / sigma**4 - 1.0 / sigma**2) * g
    return spp * g + 2.0 * sp * gp + s * gpp


def hermite_kernel_value(x, spec):
    """Hermite delta-approximation kernel at offset x (units 1/length)."""
    if spec.family != HERMITE:
        raise KernelError(f"spec family is {spec.family!r}, expected {HERMITE!r}")
    return _hermite_deriv_value(float(x), spec.n, spec.sigma, 0)


def rsk_kernel_value(x, spec):
    """Regularized Shannon kernel at offset x (dimensionless, 1 at x=0)."""
    if spec.family != RSK:
        raise KernelError(f"spec family is {spec.family!r}, expected {RSK!r}")
    x = float(x)
    if not np.isfinite(x):
        raise KernelError(f"non-finite offset {x}")
    return _rsk_deriv_value(x, spec.sigma, spec.delta, 0)


def _kernel_deriv(x, spec, q):
    """Dimensionless stencil-weight contribution of the sample at x + x_off.

    The Hermite kernel carries density units, so its values are multiplied
    by the quadrature factor delta; the RSK is already a cardinal function.
    Both become independent of delta after the delta^q derivative scaling.
    """
    if spec.family == HERMITE:
        return spec.delta ** (q + 1) * _hermite_deriv_value(x, spec.n, spec.sigma, q)
    return spec.delta**q * _rsk_deriv_value(x, spec.sigma, spec.delta, q)


def _symmetrize(weights, parity):
    """Enforce exact even/odd parity; return (weights, max asymmetry removed)."""
    mirrored = parity * weights[::-1]
    asym = float(np.max(np.abs(weights - mirrored)))
    return 0.5 * (weights + mirrored), asym


@lru_cache(maxsize=128)
def _stencil_cached(family, W, r, n, q):
    spec = KernelSpec(family, W, r, n, 1.0)
    offsets = np.arange(-W, W + 1)
    weights = np.array([_kernel_deriv(-float(j), spec, q) for j in offsets])
    parity = -1.0 if q == 1 else 1.0
    weights, asym = _symmetrize(weights, parity)
    if q == 1:
        weights[W] = 0.0
    if not np.all(np.isfinite(weights)):
        raise KernelError("non-finite stencil weights; kernel evaluation overflowed")
    return StencilWeights(q, offsets, weights, max_asymmetry=asym)


def stencil(spec, q):
    """Derivative/filter stencil weights w_j so f^(q)(x_i) ~ sum_j w_j f_{i+j} / delta^q.

    q=1 weights are exactly antisymmetric with w_0 = 0; q=0 and q=2 are
    exactly symmetric (parity enforced after analytic evaluation).  The
    weights depend only on (family, W, r, n, q), not on the spacing.
    """
    if q not in (0, 1, 2):
        raise KernelError(f"unsupported derivative order q={q}")
    return _stencil_cached(spec.family, spec.W, float(spec.r), spec.n, q)


@lru_cache(maxsize=128)
def _halfgrid_cached(family, W, r, n):
    spec = KernelSpec(family, W, r, n, 1.0)
    offsets = np.arange(-W, W) + 0.5
    weights = np.array([_kernel_deriv(float(o), spec, 0) for o in offsets])
    weights, asym = _symmetrize(weights, 1.0)
    total = weights.sum()
    if not np.isfinite(total) or total == 0.0:
        raise KernelError("degenerate half-grid weights")
    # unit sum makes the prediction/restoration pair preserve constants exactly
    weights = weights / total
    return StencilWeights(0, offsets, weights, max_asymmetry=asym)


def halfgrid_stencil(spec):
    """Midpoint interpolation weights at offsets (j + 1/2), normalized to unit sum."""
    return _halfgrid_cached(spec.family, spec.W, float(spec.r), spec.n)
