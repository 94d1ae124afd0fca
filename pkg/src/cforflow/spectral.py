"""Frequency responses of DSC filter stencils and effective-band location.

The response of a stencil is R(w) = (1/delta^q) * sum_j w_j exp(i w o_j delta)
over w in [0, pi/delta]; the effective band is the largest wavenumber below
which R stays within a tolerance of the ideal response ((i w)^q for
derivatives, 1 for interpolation/low-pass filters).
"""

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TIERS = (1e-10, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3)


@dataclass(frozen=True)
class FrequencyResponse:
    """Sampled complex response of a stencil over [0, pi/delta]."""

    omegas: np.ndarray
    values: np.ndarray
    q: int
    delta: float
    weights: "object" = field(repr=False, default=None)

    def __post_init__(self):
        self.omegas.setflags(write=False)
        self.values.setflags(write=False)

    def ideal(self, omegas=None):
        om = self.omegas if omegas is None else np.asarray(omegas)
        return (1j * om) ** self.q if self.q else np.ones_like(om, dtype=complex)

    def error(self):
        return np.abs(self.values - self.ideal())


def _evaluate(sw, omegas, delta):
    phases = np.exp(1j * np.outer(omegas, sw.offsets * delta))
    vals = phases @ sw.weights
    if sw.q and not sw.includes_delta_scaling:
        vals = vals / delta**sw.q
    return vals


def frequency_response(sw, samples=4097, delta=1.0, normalize=False):
    """Sample a stencil's response on [0, pi/delta].

    ``normalize`` rescales to unit maximum amplitude; it is meant for plot
    output only and must not feed band-edge computations.
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    omegas = np.linspace(0.0, np.pi / delta, samples)
    values = _evaluate(sw, omegas, delta)
    if normalize:
        peak = np.abs(values).max()
        if peak > 0:
            values = values / peak
    return FrequencyResponse(omegas, values, sw.q, float(delta), sw)


@dataclass(frozen=True)
class BandEdge:
    omega: float
    bracketed: bool


def effective_band(resp, tol):
    """Largest wavenumber below which |R - ideal| <= tol everywhere.

    Scans the sampled response, then bisects between the last compliant and
    first non-compliant samples using direct evaluation.  Returns omega = 0
    with bracketed=False when even the first interval fails.
    """
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    err = resp.error()
    bad = np.nonzero(err > tol)[0]
    if len(bad) == 0:
        return BandEdge(float(resp.omegas[-1]), True)
    first_bad = int(bad[0])
    if first_bad == 0:
        return BandEdge(0.0, False)
    lo = float(resp.omegas[first_bad - 1])
    hi = float(resp.omegas[first_bad])
    if resp.weights is not None:
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if hi - lo <= 1e-12 * max(hi, 1.0):
                break
            val = _evaluate(resp.weights, np.array([mid]), resp.delta)[0]
            ideal = (1j * mid) ** resp.q if resp.q else 1.0
            if abs(val - ideal) <= tol:
                lo = mid
            else:
                hi = mid
    return BandEdge(lo, True)


@dataclass(frozen=True)
class FeasibilityTier:
    tol: float
    band_edge: float
    margin: float
    clearance_widths: float
    contained: bool


def case_feasibility(resp, signal_peak, tolerances=DEFAULT_TIERS, signal_width=0.0):
    """Margin of a signal's peak wavenumber against each tolerance tier.

    ``signal_width`` is the spectral spread of the signal (same 1/delta
    units); a tier counts as containing the signal when the band edge
    clears the peak by at least three widths.
    """
    tiers = []
    for tol in sorted(tolerances):
        edge = effective_band(resp, tol)
        margin = edge.omega - signal_peak
        clearance = margin / signal_width if signal_width > 0 else np.inf * np.sign(margin or 1)
        tiers.append(
            FeasibilityTier(
                tol=float(tol),
                band_edge=edge.omega,
                margin=float(margin),
                clearance_widths=float(clearance),
                contained=bool(margin >= 3.0 * signal_width),
            )
        )
    return tiers


def response_table(resp, path, normalize=False):
    """CSV with columns omega, |R|, Re, Im, ideal, |R - ideal|."""
    vals = resp.values
    if normalize:
        peak = np.abs(vals).max()
        if peak > 0:
            vals = vals / peak
    ideal = resp.ideal()
    err = np.abs(resp.values - ideal)
    with open(path, "w") as fh:
        fh.write("omega,abs_R,re_R,im_R,abs_ideal,abs_err\n")
        for om, v, idl, e in zip(resp.omegas, vals, ideal, err):
            fh.write(f"{om:.17e},{abs(v):.17e},{v.real:.17e},{v.imag:.17e},{abs(idl):.17e},{e:.17e}\n")
