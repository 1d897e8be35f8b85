"""Normal ordering under A A+ = 1 + q^2 A+ A, with exact integer coefficients.

The rewriter expands any word in the ladder operators, and quadrature powers
Y(phi)^j, into sums of A+^d A^l weighted by polynomials in q. Hand-derived
reference expansions of <Y^j> for j = 2..6 are kept as golden data and
compared term by term.
"""

from qpacs.operator_words import golden_check, hillery_quadrature_square, normal_order, quadrature_power

print("A A A+ A+ =")
print(normal_order("A A Ad Ad"))

y4 = quadrature_power(4)
print(f"\nY^4 = {y4.prefactor} * sum over phase weights; weight 0 slot:")
print(y4[0])

print("\nY_2(phi)^2, weight 0 slot:")
print(hillery_quadrature_square(2)[0])

report = golden_check()
print(f"\ngolden comparison: {len(report.entries)} coefficients, {len(report.mismatches())} mismatches")
print(report.lookup(6, 0, 1, 1).describe())

# orders past the reference ones come for free
y8 = quadrature_power(8)
print(f"\nY^8 has {sum(len(nf) for nf in y8.phase_terms.values())} normal-ordered terms; "
      f"Hermitian: {y8.is_hermitian()}")
