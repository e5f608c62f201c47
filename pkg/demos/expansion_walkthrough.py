"""
Exact digit expansions and convergents
--------------------------------------

Walk a few rationals through the map x -> {N/x}, recover them exactly from
their digits, and watch the unreduced convergents obey their integer
identities.
"""

from fractions import Fraction

from ncfrac import (
    convergent_sequence,
    determinant_check,
    evaluate,
    expand,
    fixed_point,
    gauss_map,
    orbit,
)

x = Fraction(355, 1130)
for N in (1, 2, 3):
    exp = expand(x, N)
    print(f"N={N}: digits of {x} -> {list(exp.coeffs)} (terminated={exp.terminated})")
    assert evaluate(exp.coeffs, N) == x  # round trip is exact, always

print("\norbit of 2/3 under the classical map:", list(orbit(Fraction(2, 3), 1)))
print("one step of the index-7 map at 3/5:", gauss_map(Fraction(3, 5), 7))

print("\nconvergent table for x = 355/1130, N = 2")
trace = convergent_sequence(expand(x, 2).coeffs, 2)
print(f"{'n':>3} {'A_n':>12} {'B_n':>12} {'A_n/B_n':>16} {'|x - A/B|':>12}")
for conv in trace.convergents[1:]:
    err = float(abs(x - conv.ratio()))
    print(f"{conv.n:>3} {conv.A:>12} {conv.B:>12} {str(conv.ratio()):>16} {err:>12.3e}")
print("cross-product identity (-N)^n holds exactly:", determinant_check(trace))

# the fixed point [p, p, p, ...] has closed form (sqrt(p^2+4N) - p)/2
z = fixed_point(1, 1, digits=60)
print(f"\ngolden fixed point to 15 digits: {float(z):.15f}")
print("its first digits under N=1:", list(expand(z, 1, max_terms=12).coeffs), "...")
print(f"|T(z) - z| = {float(abs(gauss_map(z, 1) - z)):.2e}  (limited only by the 60-digit input)")
