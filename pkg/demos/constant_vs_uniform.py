"""Gap curves of a sure amount c against Uniform[0, 1].

For X = c and Y ~ U[0, 1] the gap curve has the closed form
D(u) = c u^k - k u^(k+1) / (k + 1), which stays non-negative iff k <= c / (1 - c).
Writes gap_curves.csv (one column per k) next to this script.
"""

import csv
import os

import numpy as np

from distorted_sd import Power, constant, find_kstar, gap_curve, uniform

c = 0.8
x, y = constant(c), uniform()
us = np.linspace(0.0, 1.0, 201)
ks = (1, 2, 3, 4, 4.5, 5)

columns = {}
for k in ks:
    ds = gap_curve(x, y, Power(k), us).ds
    columns[k] = ds
    print(f"k = {k:<4} min D = {ds.min():+.5f}")

path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "gap_curves.csv")
with open(path, "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["u"] + [f"k={k}" for k in ks])
    for i, u in enumerate(us):
        w.writerow([f"{u:.4f}"] + [f"{columns[k][i]:.8f}" for k in ks])
print(f"wrote {path}")

for c in (0.2, 0.5, 0.8):
    r = find_kstar(constant(c), y)
    print(f"c = {c}: k* = {r.k_star:.6f} (closed form {c / (1 - c):.6f}), order {r.order:.4f}")
