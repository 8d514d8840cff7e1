"""Multiplier sequences {eta_n} and their generators.

Three sources are supported natively:

* the classical Cesaro weights 1/(n+1),
* moment sequences of finite positive radial measures on [0, 1)
  (point masses plus a density c (1-t)^gamma dt),
* a power-log test family (n+1)^(-s) log(n+2)^(-r) for probing the
  criterion boundaries.

Arbitrary complex sequences enter through :func:`explicit_eta`; the
operator depends on a measure only through its moments, so no richer
measure class is needed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np


@dataclass(frozen=True)
class EtaSeq:
    """Multiplier sequence eta_0 .. eta_N with a provenance tag.

    ``params`` carries the generating parameters (decay exponents, atom
    locations, ...) so criterion code can bound the tail beyond the
    stored length in closed form.
    """

    eta: np.ndarray = field(repr=False)
    provenance_tag: str = "custom"
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        arr = np.asarray(self.eta, dtype=complex).reshape(-1)
        if arr.size < 1:
            raise ValueError("eta must have length >= 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("eta entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "eta", arr)
        object.__setattr__(self, "params", dict(self.params))

    def __len__(self) -> int:
        return self.eta.size


@dataclass(frozen=True)
class MeasureSpec:
    """Finite positive radial measure on [0, 1).

    ``atoms`` is a sequence of (location, mass) pairs with locations in
    [0, 1) and positive masses.  ``density`` is an optional (gamma, scale)
    pair representing scale * (1-t)^gamma dt with gamma > -1, scale >= 0.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        atoms = tuple((float(t), float(m)) for t, m in self.atoms)
        for t, m in atoms:
            if not (0.0 <= t < 1.0):
                raise ValueError(f"atom location {t} outside [0, 1)")
            if not (m > 0.0 and math.isfinite(m)):
                raise ValueError(f"atom mass {m} must be positive and finite")
        object.__setattr__(self, "atoms", atoms)
        if self.density is not None:
            gamma, scale = (float(x) for x in self.density)
            if gamma <= -1.0:
                raise ValueError("density exponent gamma must be > -1 (finite measure)")
            if scale < 0.0 or not math.isfinite(scale):
                raise ValueError("density scale must be finite and >= 0")
            object.__setattr__(self, "density", (gamma, scale))
        if self.total_mass() <= 0.0:
            raise ValueError("measure must have positive total mass")

    def total_mass(self) -> float:
        mass = math.fsum(m for _, m in self.atoms)
        if self.density is not None:
            gamma, scale = self.density
            mass += scale / (gamma + 1.0)
        return mass

    def tail_mass(self, t: float) -> float:
        """mu([t, 1)), computed exactly from atoms and the density."""
        if not (0.0 <= t < 1.0):
            raise ValueError("t must lie in [0, 1)")
        mass = math.fsum(m for loc, m in self.atoms if loc >= t)
        if self.density is not None:
            gamma, scale = self.density
            mass += scale * (1.0 - t) ** (gamma + 1.0) / (gamma + 1.0)
        return mass


def measure_from_json(doc: str | Mapping[str, Any]) -> MeasureSpec:
    """Parse a measure from its JSON document.

    Schema: {"atoms": [{"t": 0.9, "mass": 1.0}, ...],
             "density": {"gamma": 0.5, "scale": 1.0}}
    Both keys are optional but at least one must contribute mass.
    """
    data = json.loads(doc) if isinstance(doc, str) else doc
    if not isinstance(data, Mapping):
        raise ValueError("measure document must be a JSON object")
    unknown = set(data) - {"atoms", "density"}
    if unknown:
        raise ValueError(f"unknown measure fields: {sorted(unknown)}")
    atoms = tuple((a["t"], a["mass"]) for a in data.get("atoms", []))
    density = None
    if data.get("density") is not None:
        d = data["density"]
        density = (d["gamma"], d["scale"])
    return MeasureSpec(atoms=atoms, density=density)


def beta_function(a: float, b: float) -> float:
    """Euler Beta function B(a, b) for positive arguments.

    Goes through log-Gamma to avoid overflow; the first argument being a
    positive integer (the moment case B(n+1, gamma+1) with integer gamma)
    is NOT special-cased here, but integer b is, to keep moments of
    polynomial densities exact.
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError("Beta function arguments must be positive")
    if b == int(b) and b <= 32 and a == int(a):
        # rational closed form: B(a, b) = (b-1)! / (a (a+1) ... (a+b-1))
        denom = 1.0
        for j in range(int(b)):
            denom *= a + j
        return math.factorial(int(b) - 1) / denom
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def classical_cesaro(n_max: int) -> EtaSeq:
    """eta_n = 1/(n+1), the classical Cesaro multiplier sequence."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    eta = 1.0 / (np.arange(n_max + 1, dtype=float) + 1.0)
    return EtaSeq(eta, "classical-cesaro", {"s": 1.0, "r": 0.0})


def measure_moments(mu: MeasureSpec, n_max: int) -> EtaSeq:
    """Moments eta_n = integral of t^n d mu(t), n = 0 .. n_max.

    Atom contributions are exact powers; the density contributes
    scale * B(n+1, gamma+1) in closed form.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    n = np.arange(n_max + 1, dtype=float)
    eta = np.zeros(n_max + 1)
    for t, mass in mu.atoms:
        if t == 0.0:
            eta[0] += mass
        else:
            eta += mass * t**n
    if mu.density is not None:
        gamma, scale = mu.density
        if scale > 0.0:
            eta += scale * np.array(
                [beta_function(k + 1.0, gamma + 1.0) for k in range(n_max + 1)]
            )
    params: dict[str, Any] = {
        "atom_mass": math.fsum(m for _, m in mu.atoms),
        "atom_max_t": max((t for t, _ in mu.atoms), default=0.0),
    }
    if mu.density is not None:
        params["gamma"], params["scale"] = mu.density
    return EtaSeq(eta, "measure-moments", params)


def power_log_family(s: float, r: float, n_max: int) -> EtaSeq:
    """eta_n = (n+1)^(-s) * log(n+2)^(-r); decreasing for s, r >= 0."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    n = np.arange(n_max + 1, dtype=float)
    eta = (n + 1.0) ** (-s) * np.log(n + 2.0) ** (-r)
    return EtaSeq(eta, "power-log", {"s": float(s), "r": float(r)})


def explicit_eta(values: Sequence[complex] | np.ndarray) -> EtaSeq:
    """Wrap a user-supplied sequence.

    An explicit sequence is taken to be the whole sequence (zero beyond
    its stored length), so criterion tails beyond it vanish exactly.
    """
    return EtaSeq(np.asarray(values, dtype=complex), "custom", {})
