"""Infinite words: prefix orbit tuples and the congruence certificate.

Along an infinite word over a commuting diagonalizable family, the orbit
tuples of the prefix products can only take finitely many values, so some
set of prefix lengths shares one tuple.  On that set the letter-count
differences satisfy integer congruences mod q, which the certificate
records and re-verifies in exact arithmetic.
"""

import numpy as np

from matword import InfiniteWord, phi, q2_certificate, \
    tuple_first_component_stability
from matword.corpus import build_corpus

entry = build_corpus()["example2"]
coll = entry.collection

tau = InfiniteWord.periodic((0, 1), N=2)   # A B A B ...
print("infinite word:", tau.description(), "| first coverage at m =", tau.m)
print("letter counts Phi(p) for p = 1..8:")
for p in range(1, 9):
    print(f"  Phi({p}) = {phi(tau, p)}")

x = np.real(entry.vectors["v1"] + entry.vectors["v2"])
print("\nfirst tuple component is xi for every p:",
      tuple_first_component_stability(coll, tau, x, range(2, 10)))

cert = q2_certificate(coll, tau, x)
print("\ncertificate:")
print("  q =", cert.q, "| kappa =", cert.kappa, "| m =", cert.m)
print("  selected prefix lengths:", cert.p_gammas)
print("  exponent table Lambda[r, j]:")
for r, name in enumerate(coll.names):
    print(f"    {name}: {[int(v) for v in cert.lambdas[r]]}")
print("  residues all zero:", bool(np.all(cert.residues == 0)))
print("  exact integer re-verification:", cert.verify(tau))

rng_word = InfiniteWord.from_seed(2024, N=2)
cert2 = q2_certificate(coll, rng_word, x)
print("\nsame story along a seeded random word", rng_word.description() + ":")
print("  selected prefixes:", cert2.p_gammas[:10], "...")
print("  residues all zero:", bool(np.all(cert2.residues == 0)))
