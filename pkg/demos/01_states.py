"""Build photon-added coherent states of the deformed oscillator and look at them.

Adding photons pushes the number distribution away from the vacuum and narrows
it. The deformation caps how far out the coherent amplitude may go: beyond
1/sqrt(1 - q^2) the coherent series stops converging.
"""

import numpy as np

from qpacs.qalgebra import DeformationParam
from qpacs.states import ln_normalizations, pacs_state

dp = DeformationParam(0.9)
print(f"q = {dp.q}: coherent amplitudes must satisfy |alpha| < {dp.radius:.4f}")

for m in (0, 1, 3):
    st = pacs_state(2.1, m, dp)
    p = st.probabilities
    levels = np.arange(len(p))
    mean = np.sum(levels * p)
    print(f"m={m}: {len(p)} levels kept, tail bound {st.tail_bound:.1e}, "
          f"most likely level {np.argmax(p)}, mean level {mean:.3f}")

# the normalisation constants are computed in log space, so large amplitudes are safe
pair = ln_normalizations(2.1, 3, dp)
print(f"ln N(alpha, q) = {pair.ln_N_coh:.6f}, ln N(alpha, m, q) = {pair.ln_N_pacs:.6f}")

# the undeformed limit recovers the Poisson distribution for m = 0
st = pacs_state(1.0, 0, DeformationParam.limit())
print("q -> 1, m = 0, first probabilities:", np.round(st.probabilities[:5], 6))
