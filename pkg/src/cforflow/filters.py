"""High-pass (derivative) and conjugate low-pass filtering of periodic fields.

The low-pass is realized as interpolation to half-grid midpoints
(prediction) followed by interpolation back (restoration) with a smaller
Gaussian width, so both filters share the kernel family, support and
effective band of the derivative stencils.  A total-variation switch
decides when the driving solver should activate the low-pass.
"""

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .fields import Field
from .kernels import KernelSpec, StencilWeights, halfgrid_stencil, stencil


class GridTooSmallError(ValueError):
    """Grid has too few points along an axis to carry a periodic stencil."""


def _apply_offsets(arr, weights, offsets, axis):
    """out_i = sum_k weights[k] * arr[(i + offsets[k]) mod n] along an axis.

    When the stencil is wider than the grid the weights are folded onto
    their periodic residues first, which is exactly what evaluating the
    convolution on the periodic function means (offsets -W and +W on an
    N = 2W grid alias to one point, so the antisymmetric q=1 endpoint
    weights cancel there).
    """
    n = arr.shape[axis]
    if n < 4:
        raise GridTooSmallError(f"periodic stencil needs at least 4 points, got {n}")
    if n >= len(weights):
        origin = -(len(weights) // 2) - int(offsets[0])
        return ndimage.correlate1d(arr, weights, axis=axis, mode="wrap", origin=origin)
    folded = np.zeros(n)
    np.add.at(folded, np.mod(offsets, n), weights)
    kern = folded[np.mod(np.arange(n) - n // 2, n)]
    return ndimage.correlate1d(arr, kern, axis=axis, mode="wrap", origin=0)


def apply_stencil_array(arr, sw, axis=-1, delta=1.0):
    """out_i = (1/delta^q) * sum_j w_j * arr_{i+j} with periodic wrap."""
    if sw.half_grid:
        raise ValueError("half-grid weights cannot be applied on-grid")
    out = _apply_offsets(arr, sw.weights, sw.offsets.astype(int), axis)
    if sw.q and not sw.includes_delta_scaling:
        out = out / float(delta) ** sw.q
    return out


def predict_midpoints(arr, predict_sw, axis=-1):
    """Interpolate on-grid samples to the staggered midpoints x_{i+1/2}.

    The weight at half-integer offset j + 1/2 multiplies the sample at
    x_{i+j+1} when the target is x_{i+1/2}.
    """
    offsets = np.round(predict_sw.offsets + 0.5).astype(int)
    return _apply_offsets(arr, predict_sw.weights, offsets, axis)


def restore_from_midpoints(mid, restore_sw, axis=-1):
    """Interpolate midpoint samples m_{i+1/2} back to the grid points x_i."""
    offsets = np.round(restore_sw.offsets - 0.5).astype(int)
    return _apply_offsets(mid, restore_sw.weights, offsets, axis)


@dataclass(frozen=True)
class ConjugateFilterBank:
    """Derivative stencil plus the matching prediction/restoration low-pass."""

    highpass_q1: StencilWeights
    predict: StencilWeights
    restore: StencilWeights
    r_hp: float
    r_lp: float
    eps_tv: float = 0.01

    def __post_init__(self):
        if self.r_lp > self.r_hp:
            raise ValueError(f"restoration r={self.r_lp} must not exceed prediction r={self.r_hp}")

    @classmethod
    def build(cls, family, W, r_hp, r_lp, n=88, eps_tv=0.01):
        hp = KernelSpec(family, W, float(r_hp), n)
        lp = KernelSpec(family, W, float(r_lp), n)
        return cls(
            highpass_q1=stencil(hp, 1),
            predict=halfgrid_stencil(hp),
            restore=halfgrid_stencil(lp),
            r_hp=float(r_hp),
            r_lp=float(r_lp),
            eps_tv=float(eps_tv),
        )


def apply_derivative(fld, sw, axis=0):
    """First/second derivative of a periodic field; exact periodic wrap."""
    out = apply_stencil_array(fld.data, sw, axis=axis, delta=fld.spacing[axis])
    return fld.like(out)


def lowpass_array(arr, bank, axis=-1):
    """One prediction/restoration pass along an axis of a raw array."""
    mid = predict_midpoints(arr, bank.predict, axis=axis)
    return restore_from_midpoints(mid, bank.restore, axis=axis)


def lowpass_all_axes(arr, bank):
    """Dimension-by-dimension low-pass (x-pass then y-pass for 2-d arrays)."""
    out = arr
    for axis in range(arr.ndim):
        out = lowpass_array(out, bank, axis=axis)
    return out


def apply_conjugate_lowpass(fld, bank, axis=0):
    """Low-pass a periodic field along one axis via prediction/restoration."""
    return fld.like(lowpass_array(fld.data, bank, axis=axis))


def total_variation(fld):
    """Sum of |successive differences| with periodic closure; 2-d sums both axes."""
    arr = fld.data if isinstance(fld, Field) else np.asarray(fld, dtype=float)
    tv = 0.0
    for axis in range(arr.ndim):
        tv += float(np.abs(np.diff(arr, axis=axis, append=np.take(arr, [0], axis=axis))).sum())
    return tv


def tv_switch_decide(tv_current, tv_reference, eps_tv):
    """True when total variation grew beyond the relative threshold."""
    return tv_current > (1.0 + eps_tv) * tv_reference
