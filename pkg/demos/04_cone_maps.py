"""The exp/log conjugation: monomial maps, boundary extension, periods.

For a nonnegative matrix A the map f = exp . A . log acts on positive
vectors by componentwise monomials; its periodic points are exactly the
exponentials of the periodic points of the linear dynamics.
"""

import numpy as np

from matword import ConeMap, Word, cone_limit, cone_point_period, \
    homogeneity_report, word_cone_apply
from matword.corpus import build_corpus

corpus = build_corpus()
entry = corpus["example8"]
coll = entry.collection

fA = ConeMap(coll["A"])
x = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
print("f_A(1..6) =", fA.apply(x))
print("  (a cyclic shift of the first four coordinates and cube-root "
      "mixes of the last two)")

print("\nhomogeneity exponents (row sums):")
for name in coll.names:
    report = homogeneity_report(ConeMap(coll[name]))
    print(f"  f_{name}: exponents {np.round(report.exponents, 4)}, "
          f"subhomogeneous: {report.subhomogeneous_certified}, "
          f"degree one: {report.homogeneous_degree_one}")

print("\nboundary extension: zero coordinates stay zero under positive "
      "exponents")
boundary = np.array([1.0, 2.0, 3.0, 4.0, 0.0, 6.0])
print("f_A at a boundary point:", fA.apply(boundary))

print("\nperiodic interior point")
y = entry.data["point"]
w = Word.from_names("ABB", coll)
result = cone_limit(coll, w, y, q=4)
print("cone limit status:", result.status,
      "| cross-path agreement:", f"{result.path_agreement:.2e}")
print("period of eta under f_(ABB):",
      cone_point_period(coll, w, result.eta, 4))
z = word_cone_apply(coll, w, result.eta)
print("one application moves the point; two return it:",
      np.max(np.abs(word_cone_apply(coll, w, z) - result.eta)) < 1e-9)
