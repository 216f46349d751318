"""Independent evaluation of the frozen expected values used by the C++ tests.

Run: python3 tests/oracles/unit_values.py
Needs mpmath (arbitrary precision) for the reliability factor.
"""
import itertools
import mpmath

mpmath.mp.dps = 40

# Reliability factor e^(-lambda t) for lambda = 0.1/day, t = 7 days.
print("reliability(0.1, 7) =", mpmath.nstr(mpmath.exp(-mpmath.mpf("0.7")), 25))

# 1-1-1-1 unit instance: every unit cost / rate / distance / emission factor 1,
# lambda = 0 (reliability 1), fixed costs 100, flows Ya=10 Yb=10 Yc=2 Yd=1.
Ya, Yb, Yc, Yd = 10, 10, 2, 1
rho = 1
tfc = 100 + 100 + 100
tvc = 1 * Ya + rho * 1 * Yb + 1 * Yc + 1 * Yc + 1 * Yd       # Ma, Mb, Mc, Md, Mr
ttc = 1 * Ya + rho * 1 * Yb + 1 * Yc + 1 * Yd               # Ta, Tb, Tc, Td (no distance)
print("cost:", tfc, tvc, ttc, tfc + tvc + ttc)

ep, ea, eh, ed, er = 1 * Ya, 1 * Ya, rho * 1 * Yb, 1 * Yc, 1 * Yd
et = 1 * Ya * 1 * 1 + rho * 1 * Yb * 1 * 1 + 1 * Yc * 1 * 1 + 1 * Yd * 1 * 1
print("emissions:", ep, ea, eh, ed, er, et, ep + eh + ed + er + et, ep + ea + eh + ed + er + et)

# Trade-off variant: two factory->warehouse options, (Ta, Gta) = (1, 10) and (10, 1).
for ta, gta in [(1, 10), (10, 1)]:
    cost = tfc + tvc + (ta * Ya + Yb + Yc + Yd)
    emis = ep + eh + ed + er + (gta * Ya + Yb + Yc + Yd)
    print("pure option (Ta=%d, Gta=%d): cost=%d emissions=%d" % (ta, gta, cost, emis))

# Hypervolume of {(1,2),(2,1)} w.r.t. (3,3) by inclusion-exclusion.
print("hv:", (3 - 1) * (3 - 2) + (3 - 2) * (3 - 1) - (3 - 2) * (3 - 2))

# Crowding distance of the middle of three evenly spaced collinear points.
pts = [(0, 2), (1, 1), (2, 0)]
d = 0.0
for m in range(2):
    s = sorted(pts, key=lambda p: p[m])
    rng = s[-1][m] - s[0][m]
    d += (s[2][m] - s[0][m]) / rng
print("crowding(middle):", d)
