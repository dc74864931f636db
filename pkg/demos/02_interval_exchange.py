"""The dyadic interval exchange map, bit for bit.

At level n the map rotates the 2**n equal subintervals of [1/2, 1) and
fixes [0, 1/2).  Because every endpoint is a dyadic fraction with a 64-bit
numerator, each application is pure integer arithmetic: the period
T**(2**n) = identity holds exactly, not just to rounding.
"""

import numpy as np

from rmflab import (DyadicFraction, IetSpec, apply_T, apply_T_power,
                    apply_T_power_numerators, interval_index)

spec = IetSpec(2)  # threshold beta = 1 - 1/2**3 = 7/8
print(f"level {spec.level}: beta = {spec.beta.as_fraction_string()}, "
      f"{spec.intervals} intervals of width {float(spec.step)}")

x = DyadicFraction.from_fraction(9, 4)  # 9/16 = 0.5625, inside I_1
orbit = [x]
for _ in range(spec.intervals):
    orbit.append(apply_T(spec, orbit[-1]))
print("orbit of 9/16:", [f"{float(v):.4f} (I_{interval_index(spec, v)})"
                         for v in orbit])
assert orbit[-1] == orbit[0], "period 2**n is exact"

# a point below 1/2 never moves
y = DyadicFraction.from_fraction(1, 2)
assert apply_T_power(spec, y, 12345) == y

# bulk check: one million random grid points return exactly after 2**n steps
rng = np.random.default_rng(1)
nums = rng.integers(0, 2**64, size=10**6, dtype=np.uint64)
back = apply_T_power_numerators(spec, nums, spec.intervals)
print("10^6 random points, T^(2^n) bitwise identity:",
      bool(np.array_equal(back, nums)))
