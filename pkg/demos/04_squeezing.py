"""Higher-order squeezing of the deformed photon-added coherent state.

Hillery-type squeezing looks at the variance of Y_N(phi); Hong-Mandel-type
squeezing at the 2N-th central moment of Y(phi). Negative coefficients mean
squeezing. The q = 1 column is the ordinary harmonic oscillator.
"""

import numpy as np

from qpacs.squeezing import hillery, hong_mandel

print("Hillery S_H, N = 1, alpha = 2.1")
print("   phi     m=1 q=0.9  m=1 q=1    m=3 q=0.9  m=3 q=1")
for phi in np.linspace(0, np.pi / 2, 6):
    vals = [hillery(2.1, m, q, 1, phi).value for m in (1, 3) for q in (0.9, 1.0)]
    print(f"{phi:6.3f}  " + "  ".join(f"{v:9.4f}" for v in vals))

print("\nHong-Mandel S_HM, alpha = 1.0+1.2i, m = 3, phi = 0.87")
for N in (1, 2, 3, 4):
    d = hong_mandel(1 + 1.2j, 3, 0.9, N, 0.87)
    c = hong_mandel(1 + 1.2j, 3, 1.0, N, 0.87)
    print(f"order 2N = {2 * N}: q=0.9 {d.value:10.4f}   q=1 {c.value:10.4f}")

# a coherent state (m = 0) sits exactly on the squeezing boundary
print("\ncoherent state check:", hillery(1.5, 0, 0.9, 1, 0.3).value, hong_mandel(1.5, 0, 0.9, 1, 0.3).value)
