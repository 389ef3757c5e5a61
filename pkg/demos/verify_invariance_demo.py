#!/usr/bin/env python3
"""Probe certified regions with random one-step transitions.

A certificate is only as good as the region it names: this samples
thousands of in-region states, applies every admissible error offset,
and checks that no image point escapes.  An inadmissible gain applied to
the same region is falsified by the same machinery.
"""
from sdlab import thm1_certificate, unchecked_certificate, verify_invariance

print("== a certified gain holds ==")
cert = thm1_certificate(0.45, 1.02)
report = verify_invariance(cert, n_points=2000, n_deltas=50, seed=42)
print("lambda=%.2f gamma=%.4f beta=%.4f" % (cert.lam, cert.gamma, cert.beta))
print("checked %d transitions: %d violations" % (report.n_checked, len(report.violations)))
print("ok =", report.ok)

print()
print("== worker count never changes the verdict ==")
for workers in (1, 2, 8):
    r = verify_invariance(cert, n_points=2000, n_deltas=50, seed=42, workers=workers)
    print("workers=%d -> n_checked=%d max_excess=%r" % (workers, r.n_checked, r.max_excess))

print()
print("== an inadmissible gain on the same region is caught ==")
bad = unchecked_certificate(0.45, 1.2, epsilon=0.2)
report = verify_invariance(bad, n_points=2000, n_deltas=50, seed=42)
print("lambda=1.2 forced onto the alpha=0.45 region:")
print("checked %d transitions: %d escapes, worst excess %.3e"
      % (report.n_checked, len(report.violations), report.max_excess))
first = report.violations[0]
print("first escape: point %d, offset %d, (%.3f, %.3f) -> (%.3f, %.3f)"
      % (first.point_index, first.delta_index,
         first.u, first.v, first.u_next, first.v_next))
