"""Periodic grid fields, error norms, and snapshot I/O."""

from dataclasses import dataclass, field

import numpy as np

STANDARD = "standard"
VORTEX_PAPER = "vortex"

_NORM_CONVENTIONS = (STANDARD, VORTEX_PAPER)


class FieldError(ValueError):
    """Malformed field data or mismatched shapes."""


@dataclass
class Field:
    """Scalar samples on a uniform periodic grid (1D or 2D)."""

    data: np.ndarray
    spacing: tuple
    origin: tuple = None

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if np.isscalar(self.spacing):
            self.spacing = (float(self.spacing),)
        else:
            self.spacing = tuple(float(s) for s in self.spacing)
        if self.origin is None:
            self.origin = (0.0,) * self.data.ndim
        else:
            self.origin = tuple(float(o) for o in self.origin)
        if self.data.ndim != len(self.spacing):
            raise FieldError(
                f"{self.data.ndim}-d data needs {self.data.ndim} spacings, got {len(self.spacing)}"
            )
        if any(s <= 0 for s in self.spacing):
            raise FieldError(f"spacings must be positive, got {self.spacing}")
        if not np.all(np.isfinite(self.data)):
            raise FieldError("field contains non-finite entries")

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    def axis_coords(self, axis=0):
        n = self.data.shape[axis]
        return self.origin[axis] + self.spacing[axis] * np.arange(n)

    def copy(self):
        return Field(self.data.copy(), self.spacing, self.origin)

    def like(self, data):
        """New field with the same grid metadata."""
        return Field(np.asarray(data, dtype=float), self.spacing, self.origin)


@dataclass(frozen=True)
class ErrorReport:
    l1: float
    l2: float
    linf: float
    norm_convention: str = STANDARD


def norms(numeric, exact, convention=STANDARD):
    """Error norms between two same-shape fields.

    'standard': L1 = mean |e|, L2 = sqrt(mean e^2), Linf = max |e|.
    'vortex':   L1 = sum |e| / (N+1)^2 and L2 = sqrt(sum e^2) / (N+1) on an
                (N+1) x (N+1) grid that duplicates the periodic edge.
    """
    a = numeric.data if isinstance(numeric, Field) else np.asarray(numeric, dtype=float)
    b = exact.data if isinstance(exact, Field) else np.asarray(exact, dtype=float)
    if a.shape != b.shape:
        raise FieldError(f"shape mismatch: {a.shape} vs {b.shape}")
    if convention not in _NORM_CONVENTIONS:
        raise FieldError(f"unknown norm convention {convention!r}")
    e = np.abs(a - b)
    if convention == STANDARD:
        return ErrorReport(float(e.mean()), float(np.sqrt((e**2).mean())), float(e.max()))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise FieldError("vortex norm convention expects a square 2-d grid")
    npts = a.shape[0]  # N+1 samples per direction
    l1 = float(e.sum() / npts**2)
    l2 = float(np.sqrt((e**2).sum()) / npts)
    return ErrorReport(l1, l2, float(e.max()), VORTEX_PAPER)


def deriv(fld, axis, q, spec):
    """q-th derivative of a periodic field along an axis with a cached DSC stencil."""
    from . import filters
    from .kernels import stencil

    return filters.apply_derivative(fld, stencil(spec, q), axis=axis)


def save_field_csv(fld, path):
    """Write (x[, y], value) rows at 17 significant digits."""
    with open(path, "w") as fh:
        if fld.ndim == 1:
            fh.write("x,value\n")
            x = fld.axis_coords(0)
            for xi, vi in zip(x, fld.data):
                fh.write(f"{xi:.17e},{vi:.17e}\n")
        else:
            fh.write("x,y,value\n")
            x = fld.axis_coords(0)
            y = fld.axis_coords(1)
            for i, xi in enumerate(x):
                for j, yj in enumerate(y):
                    fh.write(f"{xi:.17e},{yj:.17e},{fld.data[i, j]:.17e}\n")


def load_field_csv(path):
    """Read a snapshot written by save_field_csv back into a Field."""
    raw = np.genfromtxt(path, delimiter=",", names=True)
    if "y" not in (raw.dtype.names or ()):
        x = raw["x"]
        dx = x[1] - x[0]
        return Field(raw["value"], (dx,), (x[0],))
    x = np.unique(raw["x"])
    y = np.unique(raw["y"])
    data = raw["value"].reshape(len(x), len(y))
    return Field(data, (x[1] - x[0], y[1] - y[0]), (x[0], y[0]))
