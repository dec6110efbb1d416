"""KKV refined K3 counts against real counts on a real K3 surface.

For each h the KKV coefficient is a palindromic Laurent polynomial in q.
Its value at q = -1 matches the coefficient of the real product formula
with real Euler characteristic -16.
"""
import sys

from refloor import check_k3_welschinger, kkv_coefficients

h_max = int(sys.argv[1]) if len(sys.argv) > 1 else 6
coefficients = kkv_coefficients(h_max)
for row in check_k3_welschinger(h_max):
    h = row["h"]
    print(f"h={h:<2} at q=-1: {row['kkv_at_minus_1']:>12}  real: {row['real_count']:>12}  {'ok' if row['equal'] else 'MISMATCH'}")
    print(f"      {coefficients[h]}")
