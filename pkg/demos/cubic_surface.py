"""Rational cubics through 8 points: complex, real and refined counts.

The refined count of degree-3 rational curves in the plane interpolates the
complex count 12 (at q = 1) and the Welschinger count 8 (at q = -1). The
same numbers come out of the blow-up of the plane at six points, where the
class 3H is just another absolute class.
"""
from refloor import CurveClass, abv_absolute, gw_expansion_absolute, pad_class, pt_series

result = abv_absolute(pad_class(CurveClass(3), 6))
print(f"BPS(q)  = {result.poly}")
print(f"complex = {result.gw_at_1}, real = {result.welschinger_at_minus_1}")

m_beta = result.beta.m_beta
print(f"PT series (m_beta = {m_beta}, a polynomial here): {pt_series(result.poly, m_beta, 4)}")

for genus, value in enumerate(gw_expansion_absolute(result.poly, m_beta, 3)):
    print(f"GW_{genus} = {value}")
