"""A single nonnegative matrix: peripheral spectrum, q, and orbit limits.

The 2x2 swap matrix has spectral radius one with peripheral eigenvalues
{1, -1}, so q = 2: every bounded orbit converges along q-blocks to a
periodic point whose period divides 2.
"""

import numpy as np

from matword import MatrixCollection, Word, global_period, limit_point, \
    peripheral_period, point_period, word_product

J2 = np.array([[0.0, 1.0], [1.0, 0.0]])
coll = MatrixCollection(names=("A",), matrices=(J2,))

report = peripheral_period(J2)
print("spectral radius:", report.rho)
print("peripheral eigenvalues:", [p.eigenvalue for p in report.peripheral])
print("root-of-unity orders:", report.orders)
print("q =", report.q_r)

cert = global_period(coll)
x = np.array([0.0, 1.0])
print("\norbit of e2:")
z = x.copy()
for k in range(5):
    print(f"  A^{k} x = {z}")
    z = J2 @ z

limit = limit_point(coll, Word((0,)), x, cert.q)
print("\nlimit of A^(2k) x:", limit.xi, f"({limit.status} in {limit.iterations} blocks)")
period = point_period(word_product(coll, Word((0,))), limit.xi, cert.q)
print("period of the limit point:", period)
