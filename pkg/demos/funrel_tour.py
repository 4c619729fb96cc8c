"""Functional relations at l = 1 as identities of rational ℓ-weights.

Prints the prefundamental factorization of θ_a, a reverse relation and the
TQ factorization for λ = (1, 0), then shows that a shifted right-hand side
is caught.
"""

from qloop.funrel import check_osc_prefund, check_reverse, check_tq_factorization

for rep in (check_osc_prefund(1), check_reverse(1), check_tq_factorization((1, 0))):
    print(rep.to_text())
    print()

bad = check_tq_factorization((1, 0), corrupt="shift")
print("with u -> q u in the first factor:", "passed (unexpected)" if bad.passed else "fails as expected")
