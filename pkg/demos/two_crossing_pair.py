"""A discrete pair where SSD fails but a weaker power order holds.

X pays 1, 3, 6 with probabilities 1/2, 1/4, 1/4 and Y is uniform on
{0, 2, 4, 5}.  Both have mean 2.75 and their quantile functions cross twice,
so second-order dominance fails.  Lowering k below 1 puts less weight on the
low quantiles, and the relation is recovered once k <= ln 2 / ln 3.
"""

import math

from distorted_sd import Power, check_hdsd, check_ssd, discrete, find_kstar

x = discrete([1, 3, 6], [0.5, 0.25, 0.25])
y = discrete([0, 2, 4, 5])

ssd = check_ssd(x, y)
print(f"SSD holds: {ssd.holds}  (worst gap {ssd.min_gap:+.4f} at u = {ssd.witness:.2f})")

for k in (0.5, 0.63, 0.64, 1.0):
    v = check_hdsd(x, y, Power(k))
    print(f"  H(t) = t^{k:<4}  holds={v.holds!s:5}  min gap {v.min_gap:+.3e}")

r = find_kstar(x, y)
print(f"k* = {r.k_star:.10f}   ln2/ln3 = {math.log(2) / math.log(3):.10f}")
print(f"strongest power order: 1 + 1/k* = {r.order:.4f}")
