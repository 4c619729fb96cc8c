"""Highest ℓ-weights of the oscillator modules for sl_3.

Prints the closed rational form of each θ_a and θ̄_a highest ℓ-weight and
whether the φ⁺ series computed on the Fock vacuum agrees with it.
"""

import json

from qloop.lweights import check_closed_vs_computed, closed_lweight, spectral_x

L = 2
x = spectral_x(L + 1)

for kind in ("theta", "theta_bar"):
    for a in range(1, L + 2):
        rep = check_closed_vs_computed(L, a, kind, N=5, n_max=3)
        print(f"{kind}_{a}: computed series {'agrees' if rep.passed else 'DISAGREES'} up to u^3")
        print("   ", json.dumps(closed_lweight(kind, L, a=a, x=x).to_json()))
