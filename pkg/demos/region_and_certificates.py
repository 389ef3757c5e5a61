#!/usr/bin/env python3
"""Build stability certificates and inspect the invariant-region geometry.

Walks the unit-gain golden case, the two gain-penalty variants, the best
input bound over all region shapes at each gain, and the feasibility
cutoffs where the guarantees run out.
"""
import numpy as np

from sdlab import (
    InfeasibleError,
    RegionSpec,
    VARIANT_EQ5,
    VARIANT_REMARK,
    b1_eval,
    beta_bound,
    corner_u0,
    feasible_alpha_interval,
    max_beta_theoretical,
    thm1_certificate,
    thm2_certificate,
    yilmaz_gamma_range,
)

print("== the unit-gain certificate at alpha = 1/2 ==")
cert = thm1_certificate(0.5, 1.0)
print("beta  =", cert.beta, " (inputs up to half scale are safe)")
print("C     =", cert.C, "  gamma =", cert.gamma)
print("sup|v| guaranteed <=", cert.v_max_bound)
print("region corners at |u| =", cert.u0)

print()
print("== the region it certifies ==")
spec = RegionSpec(alpha=0.5, C=6.0)
for u in (-3.0, -1.5, 0.0, 1.5, 3.0):
    print("  u=%5.2f  B1=%7.3f" % (u, b1_eval(spec, u)))
print("corner u0 =", corner_u0(spec), " multiplier range =", yilmaz_gamma_range(spec))

print()
print("== raising the gain shrinks the guaranteed input bound ==")
for lam in (1.0, 1.01, 1.03, 1.05):
    row = []
    for variant in (VARIANT_REMARK, VARIANT_EQ5):
        try:
            row.append("%s beta=%.4f" % (variant, beta_bound(0.5, lam, variant)))
        except InfeasibleError:
            row.append("%s infeasible" % variant)
    print("  lambda=%.2f  %s" % (lam, "   ".join(row)))

print()
print("== the best bound over all region shapes ==")
for lam in (1.0, 1.02, 1.04, 1.06, 1.08, 1.09):
    beta_max, alpha_star = max_beta_theoretical(lam)
    iv = feasible_alpha_interval(lam)
    print("  lambda=%.2f  beta_max=%.4f at alpha*=%s  feasible alpha in %s"
          % (lam, beta_max, "%.4f" % alpha_star if beta_max else "none",
             "(%.4f, %.4f)" % iv if iv else "empty"))

print()
print("== a certificate with a hand-picked tradeoff ==")
cert = thm2_certificate(0.5, 1.01, epsilon=0.2)
print("epsilon=0.2 gives C=%.4f, gamma in [%.4f, %.4f], beta=%.4f"
      % (cert.C, cert.gamma_lo, cert.gamma_hi, cert.beta))

print()
print("== past the cutoff the chain fails loudly ==")
try:
    thm1_certificate(0.5, 1.09)
except InfeasibleError as e:
    print("bound tag:", e.bound)
    print(e)
