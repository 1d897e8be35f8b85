"""Higher-order photon statistics: g^(N)(0) and the generalised Mandel parameter.

Deformation makes the light more sub-Poissonian. Note the N = 4 baseline: a
Poisson law has fourth central moment <M> + 3<M>^2, so Q_4 of an undeformed
coherent state is 3<M> rather than zero.
"""

import numpy as np

from qpacs.photon_stats import correlation, mandel

print("Q_2 against |alpha|, m = 1")
for a in np.linspace(0.25, 2.0, 8):
    d, c = mandel(2, a, 1, 0.9), mandel(2, a, 1, 1.0)
    print(f"|alpha| = {a:4.2f}: q=0.9 {d.Q:8.4f} ({d.classification})   q=1 {c.Q:8.4f}")

print("\ng^(N)(0) at |alpha| = 1.5, m = 1, q = 0.9")
for N in (2, 4, 6):
    print(f"N = {N}: g = {correlation(N, 1.5, 1, 0.9).g:.6f}")

print("\nQ_2 against q, alpha = 1.5, m = 1")
for q in (0.76, 0.8, 0.85, 0.9, 0.95, 0.999):
    print(f"q = {q:5.3f}: Q_2 = {mandel(2, 1.5, 1, q).Q:.5f}")

print("\nPoisson baseline at N = 4:", mandel(4, 1.2, 0, 1.0).Q, "= 3 * 1.44")
