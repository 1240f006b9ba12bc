"""Distorted expectations, generalized Gini indices and isotonicity.

rho_phi(X) integrates the quantile function against the dual of phi.  With
phi(t) = t^n and X >= 0 it gives Xi_n, the expected minimum of n draws.
"""

from distorted_sd import (
    GP,
    PhiM,
    Power,
    discrete,
    distorted_expectation,
    expectation,
    generalized_gini,
    isotonicity_check,
    order_statistic_extreme,
    uniform,
)

income = discrete([5, 12, 20, 45, 120], [0.3, 0.3, 0.2, 0.15, 0.05])
print(f"mean income {expectation(income):.3f}")
for n in range(1, 6):
    rep = generalized_gini(income, n)
    e_min = expectation(order_statistic_extreme(income, n, "min"))
    print(f"  Xi_{n} = {rep.xi_n:8.4f}   E min of {n} draws = {e_min:8.4f}")
print(f"classic Gini {generalized_gini(income, 2).classic_gini:.4f}")
print(f"uniform: Xi_2 = {generalized_gini(uniform(), 2).xi_n:.6f}")

# GP(p) picks out the lower tail integral int_0^p Q
for p in (0.1, 0.5, 0.9):
    print(f"rho_GP({p}) on U[0,1] = {distorted_expectation(uniform(), GP(p)):.6f}  (p^2/2 = {p * p / 2:.6f})")

# if X beats Y under t^k then every phi_m with m < k ranks them the same way
x, y = discrete([1, 2, 4]), discrete([0, 1.5, 3.5])
for m, k in ((1.5, 2.0), (2.0, 3.0)):
    rep = isotonicity_check(x, y, Power(k), PhiM(m))
    print(f"k={k} m={m}: dominance {rep.dominance_holds}, rho_X = {rep.value_x:.4f} >= rho_Y = {rep.value_y:.4f}")
