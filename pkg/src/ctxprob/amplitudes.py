"""Two-term wave representations of context transitions.

A trigonometric transition is carried by the complex wave

    phi = sqrt(p1_prime) + sqrt(p2_prime) * e^{i*theta}

whose squared modulus reproduces the transformed probability
``p1' + p2' + 2*sqrt(p1'*p2')*cos(theta)``.  The hyperbolic analog uses
split-complex numbers (unit j with j**2 = +1): the modulus form
``re**2 - hy**2`` plays the role the complex modulus plays in the
trigonometric case and reproduces ``p1' + p2' +/- 2*sqrt(p1'*p2')*cosh(theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .calculus import (
    Degenerate,
    Hyperbolic,
    TransitionAnalysis,
    Trigonometric,
    _prob,
    reconstruct_probability,
)
from .errors import DegenerateRegime, NonFinite

__all__ = [
    "ComplexAmplitude",
    "SplitComplexAmplitude",
    "trig_wave",
    "hyper_wave",
    "wave_from_analysis",
]

_PHASE_SLACK = 1e-12


@dataclass(frozen=True)
class ComplexAmplitude:
    """A complex number split into components; modulus is re**2 + im**2."""

    re: float
    im: float

    @property
    def squared_modulus(self) -> float:
        return self.re * self.re + self.im * self.im

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class SplitComplexAmplitude:
    """A split-complex number ``re + hy*j`` with j**2 = +1.

    The modulus form ``re**2 - hy**2`` may be any real; waves built by
    :func:`hyper_wave` from admissible inputs have it in [0, 1].
    """

    re: float
    hy: float

    @property
    def hyperbolic_modulus(self) -> float:
        return self.re * self.re - self.hy * self.hy


def trig_wave(p1_prime, p2_prime, theta: float) -> ComplexAmplitude:
    """Complex wave of a trigonometric transition.

    Returns ``sqrt(p1') + sqrt(p2') * (cos(theta) + i*sin(theta))`` for a
    phase in [0, pi].  Its squared modulus equals
    ``p1' + p2' + 2*sqrt(p1'*p2')*cos(theta)`` identically, with no
    admissibility restriction.
    """
    a = _prob(p1_prime, "p1_prime")
    b = _prob(p2_prime, "p2_prime")
    t = float(theta)
    if not (-_PHASE_SLACK <= t <= math.pi + _PHASE_SLACK):
        raise ValueError(f"trigonometric phase must lie in [0, pi], got {theta!r}")
    t = min(max(t, 0.0), math.pi)
    ra = math.sqrt(a)
    rb = math.sqrt(b)
    return ComplexAmplitude(re=ra + rb * math.cos(t), im=rb * math.sin(t))


def hyper_wave(p1_prime, p2_prime, theta: float, sign: int) -> SplitComplexAmplitude:
    """Split-complex wave of a hyperbolic transition.

    For sign = +1 returns ``sqrt(p1') + sqrt(p2')*(cosh(theta) + j*sinh(theta))``;
    for sign = -1 the second term enters with a relative minus sign, which
    keeps both components real while flipping the interference term.  The
    hyperbolic modulus equals ``p1' + p2' + sign*2*sqrt(p1'*p2')*cosh(theta)``
    and must land in [0, 1]; otherwise :class:`InadmissibleLambda` is raised,
    exactly as in the probability reconstruction with lambda = sign*cosh(theta).
    """
    a = _prob(p1_prime, "p1_prime")
    b = _prob(p2_prime, "p2_prime")
    t = float(theta)
    if not (t >= 0.0 and math.isfinite(t)):
        raise NonFinite(f"hyperbolic phase must be finite and >= 0, got {theta!r}")
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    ch = math.cosh(t)
    sh = math.sinh(t)
    reconstruct_probability(a, b, sign * ch)  # admissibility gate
    ra = math.sqrt(a)
    rb = math.sqrt(b)
    if sign == 1:
        return SplitComplexAmplitude(re=ra + rb * ch, hy=rb * sh)
    return SplitComplexAmplitude(re=ra - rb * ch, hy=-rb * sh)


def wave_from_analysis(
    p1_prime, p2_prime, analysis: TransitionAnalysis
) -> Union[ComplexAmplitude, SplitComplexAmplitude]:
    """Wave carrying an analyzed transition.

    Dispatches on the regime: trigonometric analyses yield a complex wave,
    hyperbolic ones a split-complex wave; the wave's (squared or hyperbolic)
    modulus reproduces the probability the analysis came from.  Degenerate
    analyses have no phase and raise :class:`DegenerateRegime`.
    """
    regime = analysis.regime
    if isinstance(regime, Degenerate):
        raise DegenerateRegime(f"no wave exists for a degenerate analysis ({regime.reason.value})")
    if isinstance(regime, Trigonometric):
        return trig_wave(p1_prime, p2_prime, regime.theta)
    if isinstance(regime, Hyperbolic):
        return hyper_wave(p1_prime, p2_prime, regime.theta, regime.sign)
    raise TypeError(f"unknown regime type: {regime!r}")
