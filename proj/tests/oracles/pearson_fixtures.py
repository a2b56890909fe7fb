"""Reference values for the Pearson fixture vectors.

Run with scipy installed; the printed C++ initializer is pasted into
tests/support/pearson_fixtures.hpp. Vectors are generated from a fixed
numpy seed so the fixture is reproducible.
"""
import numpy as np
from scipy import stats

rng = np.random.default_rng(20200201)
cases = [([1, 2, 3, 4, 5], [2, 1, 4, 3, 5])]
for i in range(19):
    n = int(rng.integers(3, 40))
    x = np.round(rng.normal(0.0, 1.0, n), 6)
    rho = rng.uniform(-0.95, 0.95)
    y = np.round(rho * x + np.sqrt(1 - rho * rho) * rng.normal(0.0, 1.0, n), 6)
    cases.append((x.tolist(), y.tolist()))

print("// Generated by tests/oracles/pearson_fixtures.py (scipy %s)." % __import__("scipy").__version__)
print("inline const std::vector<PearsonFixture> kPearsonFixtures = {")
for x, y in cases:
    r, p = stats.pearsonr(x, y)
    xs = ", ".join(repr(float(v)) for v in x)
    ys = ", ".join(repr(float(v)) for v in y)
    print("    {{%s},\n     {%s},\n     %r, %r}," % (xs, ys, float(r), float(p)))
print("};")
