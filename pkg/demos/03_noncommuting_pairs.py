"""Non-commuting pairs: partial commuting, Laffey pairs, and failure modes.

Three stories:
  * a pair with five common eigenvectors still has well-behaved word
    dynamics on their span;
  * a product of two well-behaved matrices can have spectral radius
    above one, so orbits off the common eigenvectors may blow up;
  * a rank-one-commutator pair has word-DEPENDENT limits off the common
    eigenvector line.
"""

import numpy as np

from matword import Word, classify_pair, common_eigenvectors, mat_mul, \
    orbit_bounded, shemesh_subspace, spectral_radius
from matword.corpus import build_corpus
from matword.spectral import eigendecompose

corpus = build_corpus()

print("=== five common eigenvectors without commuting ===")
coll4 = corpus["example4"].collection
cls = classify_pair(coll4["A"], coll4["B"])
print("commuting:", cls.commuting, "/ shemesh dimension:", cls.shemesh_dimension)
system = common_eigenvectors(coll4)
print("common eigenvectors found:", system.d, "with kappa =", system.kappa)

print("\n=== a product with spectral radius above one ===")
coll6 = corpus["example6"].collection
product = mat_mul(coll6["A"], coll6["B"])
rho = spectral_radius(product)
print("rho(A) = rho(B) = 1, but rho(AB) =", rho)
perron = max(eigendecompose(product), key=lambda p: abs(p.eigenvalue))
v = np.real(perron.eigenvector)
report = orbit_bounded(coll6, Word.from_names("BA", coll6), v, horizon=200,
                       bound=1e12)
print(f"orbit of the Perron vector exceeds 1e12 at step {report.exceeded_at}")

print("\n=== a Laffey pair: limits depend on the word ===")
coll7 = corpus["example7"].collection
cls7 = classify_pair(coll7["A"], coll7["B"])
print("commutator rank:", cls7.commutator_rank, "-> Laffey pair:", cls7.laffey)
print("shemesh line:", shemesh_subspace(coll7["A"], coll7["B"])[:, 0])
AB = np.linalg.matrix_power(np.asarray(mat_mul(coll7["A"], coll7["B"])), 200)
BA = np.linalg.matrix_power(np.asarray(mat_mul(coll7["B"], coll7["A"])), 200)
for x in (np.array([1.0, 1.0]), np.array([2.0, -1.0]), np.array([1.0, -1.0])):
    gap = np.max(np.abs(AB @ x - BA @ x))
    print(f"x = {x}: sup-gap between the AB- and BA-limits = {gap:.6f}")
