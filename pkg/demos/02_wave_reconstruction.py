"""
Wave reconstruction
===================

Every non-degenerate transition can be carried by a two-term wave whose
modulus reproduces the transformed probability.  Trigonometric transitions
use an ordinary complex wave; hyperbolic ones use a split-complex wave
(unit j with j**2 = +1), whose modulus form re**2 - hy**2 takes over the
role of the complex modulus.
"""

import math

from ctxprob import ContextTriple, analyze, hyper_wave, trig_wave, wave_from_analysis

# Trigonometric case: phase pi/3 over references (0.3, 0.2).
wave = trig_wave(0.3, 0.2, math.pi / 3)
target = 0.3 + 0.2 + 2 * math.sqrt(0.06) * math.cos(math.pi / 3)
print("complex wave at theta = pi/3")
print(f"  phi               = {wave.re:.6f} + {wave.im:.6f} i")
print(f"  |phi|^2           = {wave.squared_modulus:.10f}")
print(f"  closed form       = {target:.10f}")
print()

# Hyperbolic case: lambda = 3.5 corresponds to theta = arccosh(3.5).
theta = math.acosh(3.5)
split = hyper_wave(0.1, 0.1, theta, sign=+1)
print("split-complex wave at theta = arccosh(3.5)")
print(f"  phi               = {split.re:.6f} + {split.hy:.6f} j")
print(f"  re^2 - hy^2       = {split.hyperbolic_modulus:.10f}")
print(f"  closed form       = {0.2 + 0.2 * math.cosh(theta):.10f}")
print()

# Round trip: analyze a triple, rebuild its wave, recover the probability.
print("analysis -> wave -> probability round trip")
for p_s, a, b in [(0.7449489742783177, 0.3, 0.2), (0.9, 0.1, 0.1), (0.02, 0.2, 0.2)]:
    analysis = analyze(ContextTriple(p_s, a, b))
    wave = wave_from_analysis(a, b, analysis)
    modulus = getattr(wave, "squared_modulus", None)
    if modulus is None:
        modulus = wave.hyperbolic_modulus
    kind = type(wave).__name__
    print(f"  p_s = {p_s:.6f}  {kind:>22}  modulus = {modulus:.12f}")
