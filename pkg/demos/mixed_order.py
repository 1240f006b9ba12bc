"""Risk-averse, risk-loving and mixed power orders on a small pair.

X is uniform on {1, 2, 4} and Y uniform on {0, 2.5, 3}.  Neither dominates the
other at first order, yet X wins both the risk-averse and the risk-loving power
comparisons for k up to log2(3).
"""

import math

from distorted_sd import Power, check_fsd, check_mixed, discrete, find_kstar

x, y = discrete([1, 2, 4]), discrete([0, 2.5, 3])
print("FSD holds:", check_fsd(x, y).holds)

for side in ("averse", "loving", "mixed"):
    r = find_kstar(x, y, side)
    print(f"{side:7} k* = {r.k_star:.6f}  order = {r.order:.4f}")
print(f"log2(3) = {math.log2(3):.6f}")

for k in (1.5, 1.58, 1.59, 1.7):
    print(f"mixed with H1 = H2 = t^{k}: {check_mixed(x, y, Power(k), Power(k)).holds}")
