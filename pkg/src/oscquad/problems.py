"""Built-in test integrals, already reduced to a linear phase.

Each builder returns a list of :class:`OscillatoryProblem` pieces whose sum is
the original integral, together with the convergence order the method is
expected to reach for extension order ``r`` (with ``q = r``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import DomainError
from .moments import WeightSpec
from .quadrature import OscillatoryProblem


@dataclass(frozen=True)
class BuiltinProblem:
    name: str
    pieces: tuple[OscillatoryProblem, ...]
    description: str
    rate: Callable[[int], float] | None = None  # expected order as a function of r

    @property
    def k(self) -> float:
        return self.pieces[0].k


def _eg1_envelope(x):
    root = np.sqrt(4.0 * np.asarray(x) + 1.0)
    return np.sin((root - 1.0) / 2.0) / root


def eg1(k: float) -> BuiltinProblem:
    """int_0^1 sin(t) exp(i k (t + t^2)) dt with x = t + t^2."""
    piece = OscillatoryProblem(0.0, 2.0, k, WeightSpec("unit"), _eg1_envelope)
    return BuiltinProblem("eg1", (piece,), "sin(t) exp(ik(t+t^2)) on [0,1]", lambda r: r + 2.0)


def eg2(k: float) -> BuiltinProblem:
    """int_0^1 sin(cos t) sin t exp(i k cos t) dt with x = cos t."""
    piece = OscillatoryProblem(math.cos(1.0), 1.0, k, WeightSpec("unit"), np.sin)
    return BuiltinProblem("eg2", (piece,), "sin(cos t) sin t exp(ik cos t) on [0,1]", lambda r: r + 2.0)


def eg3(k: float, p: float) -> BuiltinProblem:
    """int_0^1 exp(i k t^p) dt = (1/p) int_0^1 x^((1-p)/p) exp(i k x) dx."""
    if not p > 0:
        raise DomainError(f"eg3 needs p > 0, got {p}")
    weight = WeightSpec("algL", beta=(1.0 - p) / p)
    piece = OscillatoryProblem(0.0, 1.0, k, weight, lambda x: 1.0 / p)
    return BuiltinProblem("eg3", (piece,), f"exp(ik t^{p:g}) on [0,1]", None)


def eg3_exact(k: float, p: float, dps: int = 40) -> complex:
    """High-precision closed form (1/p) (-ik)^(-1/p) gamma(1/p, -ik)."""
    import mpmath

    with mpmath.workdps(dps):
        s = mpmath.mpf(1) / mpmath.mpf(p)
        z = mpmath.mpc(0, -k)
        return complex(s * z ** (-s) * (mpmath.gamma(s) - mpmath.gammainc(s, z)))


def eg4(k: float) -> BuiltinProblem:
    """int_0^pi exp(i k |e^{it} - 1|) dt with x = 2 sin(t/2)."""
    piece = OscillatoryProblem(
        0.0, 2.0, k, WeightSpec("algR", beta=-0.5), lambda x: 2.0 / np.sqrt(2.0 + np.asarray(x))
    )
    return BuiltinProblem("eg4", (piece,), "exp(ik sqrt((cos t-1)^2+sin^2 t)) on [0,pi]", lambda r: r + 1.5)


def eg5(k: float, beta: float = -0.5) -> BuiltinProblem:
    """int_0^1 x^beta |x - 1/2| exp(i k x) dx split at the kink.

    On [0, 1/2] the weight is x^beta with envelope 1/2 - x; on [1/2, 1] the
    weight is 1 and x^beta (x - 1/2) is taken as the (smooth) envelope.
    """
    left = OscillatoryProblem(0.0, 0.5, k, WeightSpec("algL", beta=beta), lambda x: 0.5 - np.asarray(x))
    right = OscillatoryProblem(
        0.5, 1.0, k, WeightSpec("unit"), lambda x: np.asarray(x) ** beta * (np.asarray(x) - 0.5)
    )
    return BuiltinProblem("eg5", (left, right), f"x^{beta:g} |x-1/2| exp(ikx) on [0,1]", lambda r: r + 2.0 + beta)


def eg6a(k: float) -> BuiltinProblem:
    """int_0^1 x^(-1/2) (1-x)^(-1/3) e^x exp(i k x) dx."""
    piece = OscillatoryProblem(0.0, 1.0, k, WeightSpec("alg2", alpha=-0.5, beta=-1.0 / 3.0), np.exp)
    return BuiltinProblem("eg6a", (piece,), "x^-1/2 (1-x)^-1/3 e^x exp(ikx) on [0,1]", lambda r: r + 1.5)


def eg6b(k: float) -> BuiltinProblem:
    """int_2^3 (x-2)^(-1/4) (3-x)^(-2/3) sin(x) exp(i k x) dx."""
    piece = OscillatoryProblem(2.0, 3.0, k, WeightSpec("alg2", alpha=-0.25, beta=-2.0 / 3.0), np.sin)
    return BuiltinProblem("eg6b", (piece,), "(x-2)^-1/4 (3-x)^-2/3 sin x exp(ikx) on [2,3]", lambda r: r + 2.0 - 2.0 / 3.0)


def eg10(k: float) -> BuiltinProblem:
    """int_0^{pi/2} log|e^{it} - 1| exp(i k |e^{it} - 1|) dt with x = 2 sin(t/2)."""
    piece = OscillatoryProblem(
        0.0, math.sqrt(2.0), k, WeightSpec("logL"), lambda x: 2.0 / np.sqrt(4.0 - np.asarray(x) ** 2)
    )
    return BuiltinProblem("eg10", (piece,), "log-singular version of eg4 on [0,pi/2]", lambda r: r + 2.0)


BUILTINS = {
    "eg1": eg1,
    "eg2": eg2,
    "eg3": eg3,
    "eg4": eg4,
    "eg5": eg5,
    "eg6a": eg6a,
    "eg6b": eg6b,
    "eg10": eg10,
}


def builtin(name: str, k: float, p: float | None = None, beta: float | None = None) -> BuiltinProblem:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    if name == "eg3":
        return eg3(k, 2.0 if p is None else p)
    if name == "eg5":
        return eg5(k, -0.5 if beta is None else beta)
    return BUILTINS[name](k)
