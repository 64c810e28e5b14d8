"""Edge potentials on [0, 1].

The model assumes the potential is even about t = 1/2; this symmetry is
what makes the cosine- and sine-type fundamental solutions satisfy
c(1) = s'(1) and is checked at construction time.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError

_EVEN_TOL = 1e-12
_SYMMETRIZE_WARN = 1e-8


@dataclass(frozen=True)
class PotentialSpec:
    """Even potential V on [0,1]: zero, a cosine well, or tabulated samples."""

    kind: str  # "zero" | "mathieu" | "tabulated"
    amplitude: float = 0.0
    samples: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in ("zero", "mathieu", "tabulated"):
            raise DomainError(f"unknown potential kind {self.kind!r}")
        if self.kind == "tabulated":
            arr = np.asarray(self.samples, dtype=float)
            if arr.size < 2:
                raise DomainError("tabulated potential needs >= 2 samples")
            if not np.all(np.isfinite(arr)):
                raise DomainError("tabulated potential has non-finite values")
            dev = np.max(np.abs(arr - arr[::-1]))
            if dev > _SYMMETRIZE_WARN:
                warnings.warn(
                    f"tabulated potential deviates from evenness by {dev:.3g}; "
                    "symmetrizing",
                    stacklevel=2,
                )
            sym = 0.5 * (arr + arr[::-1])
            object.__setattr__(self, "samples", tuple(sym))
        self._check_even()

    @staticmethod
    def zero() -> "PotentialSpec":
        return PotentialSpec("zero")

    @staticmethod
    def mathieu(amplitude: float) -> "PotentialSpec":
        return PotentialSpec("mathieu", amplitude=float(amplitude))

    @staticmethod
    def tabulated(samples) -> "PotentialSpec":
        return PotentialSpec("tabulated", samples=tuple(float(s) for s in samples))

    def _spline(self) -> CubicSpline:
        arr = np.asarray(self.samples)
        t = np.linspace(0.0, 1.0, arr.size)
        return CubicSpline(t, arr)

    def __call__(self, t):
        """Evaluate V at t (scalar or array) in [0, 1]."""
        t = np.asarray(t, dtype=float)
        if self.kind == "zero":
            return np.zeros_like(t)
        if self.kind == "mathieu":
            return self.amplitude * np.cos(2.0 * np.pi * t)
        return self._spline()(t)

    def _check_even(self):
        t = np.linspace(0.0, 1.0, 257)
        dev = np.max(np.abs(self(t) - self(1.0 - t)))
        if dev > max(_EVEN_TOL, _SYMMETRIZE_WARN):
            raise DomainError(f"potential is not even about 1/2 (deviation {dev:.3g})")

    @property
    def min_value(self) -> float:
        return float(np.min(self(np.linspace(0.0, 1.0, 1025))))

    def describe(self) -> str:
        if self.kind == "zero":
            return "zero"
        if self.kind == "mathieu":
            return f"mathieu:{self.amplitude:g}"
        return f"tabulated[{len(self.samples)}]"


def parse_potential(spec: str) -> PotentialSpec:
    """Parse a CLI potential string: "zero", "mathieu:<amp>", "file:<path>"."""
    spec = spec.strip()
    if spec == "zero":
        return PotentialSpec.zero()
    if spec.startswith("mathieu:"):
        try:
            amp = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise DomainError(f"bad mathieu amplitude in {spec!r}") from exc
        return PotentialSpec.mathieu(amp)
    if spec.startswith("file:"):
        path = Path(spec.split(":", 1)[1])
        if not path.is_file():
            raise DomainError(f"potential file not found: {path}")
        values = [float(line) for line in path.read_text().split()]
        return PotentialSpec.tabulated(values)
    raise DomainError(f"cannot parse potential {spec!r}")
