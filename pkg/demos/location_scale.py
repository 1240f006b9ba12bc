"""k* for location-scale pairs.

X ~ F((x - 0.1) / 1) against Y ~ F(x / 1.1).  The quantile difference changes
sign once, so the verdict reduces to comparing distorted means.  For the
logistic family the standard distorted mean is gamma + digamma(k); for the normal
it is computed by quadrature.
"""

from distorted_sd import distorted_standard_mean, find_kstar, logistic, normal

for name, fam in (("logistic", logistic), ("normal", normal)):
    for mu in (0.0, 0.1, 1.0):
        r = find_kstar(fam(mu, 1.0), fam(0.0, 1.1))
        note = "  (still holds at k_max)" if r.at_boundary else ""
        print(f"{name:8} mu={mu:<4} k* = {r.k_star:12.4f}  order = {r.order:.5f}  via {r.method}{note}")

# The boundary solves mu_X + sigma_X E_k(Z) = sigma_Y E_k(Z), i.e. E_k(Z) = 1 here.
for k in (3.80, 3.8143, 3.82):
    print(f"normal E_k(Z) at k = {k}: {distorted_standard_mean('normal', k):.6f}")
