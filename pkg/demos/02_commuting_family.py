"""A commuting 6x6 pair: common eigenvectors, kappa, and word limits.

The pair is simultaneously diagonalizable.  Only two of the six common
eigenvectors keep modulus-one eigenvalues for BOTH matrices (kappa = 2),
so every word limit lands in their span: the word period collapses to 2
even though the least common multiple of the single-matrix periods is 4.
"""

import numpy as np

from matword import Word, common_eigenvectors, global_period, lc_membership, \
    limit_point, point_period, spectral_limit, word_product
from matword.corpus import build_corpus

entry = build_corpus()["example2"]
coll = entry.collection

system = common_eigenvectors(coll)
print(f"common eigenvectors: d = {system.d}, kappa = {system.kappa}")
print("eigenvalue table (rows = vectors, columns = A, B):")
for s in range(system.d):
    row = ", ".join(f"{lam:.4g}" for lam in system.lambda_table[s])
    marker = "modulus-one block" if s < system.kappa else ""
    print(f"  v{s + 1}: {row}   {marker}")

cert = global_period(coll)
print(f"\nper-matrix periods: q_A = {cert.q_r[0]}, q_B = {cert.q_r[1]}, q = {cert.q}")

x = np.array([2.0, 0.0, 2.0, 0.0, 0.0, 0.0])  # v1 + v2
coeffs = lc_membership(x, system)
print("\nx = v1 + v2 lies in LC(E'):", coeffs is not None)
print("closed-form limit:", spectral_limit(system, coeffs))

for text in ("ABB", "AB"):
    w = Word.from_names(text, coll)
    limit = limit_point(coll, w, x, cert.q)
    period = point_period(word_product(coll, w), limit.xi, cert.q)
    note = " (an even-length word cancels the two -1 factors)" if period == 1 else ""
    print(f"word {text}: limit {limit.xi}, period {period}{note}")
