"""Separation between private and coherent information on q = 3p.

The two-member plus/minus ensemble transmits classical bits privately
at a rate strictly above the coherent information for p up to about
0.12145 on the diagonal.  As a second curiosity, the complementary
channel's coherent information is positive for every (p, q) in the
open square, exhibited by an X-polarized witness state whose mixing
weight can be astronomically small.
"""

import numpy as np

from dephrasure.channel import single_letter_ci
from dephrasure.compci import positivity_witness
from dephrasure.private_info import private_lower_bound

print(f"{'p':>7} {'q':>7} {'I_c':>12} {'I_p':>12} {'gap':>12}")
for p in np.linspace(0.09, 0.125, 8):
    q = 3 * p
    ci, _ = single_letter_ci(p, q)
    priv, lam = private_lower_bound(p, q)
    print(f"{p:7.4f} {q:7.4f} {ci:12.3e} {priv:12.3e} {priv - ci:12.3e}")

print()
print("complementary-channel positivity witnesses:")
for p, q in ((0.05, 0.05), (0.25, 0.25), (0.45, 0.45)):
    w = positivity_witness(p, q)
    print(f"  (p, q) = ({p}, {q}): eps = {w.epsilon:.3e}, "
          f"I_c(N^c) = {w.ci_value:.3e} > 0")
