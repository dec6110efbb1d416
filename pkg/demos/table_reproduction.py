"""Per-diagram tallies for two relative problems.

Prints one row per leg-coloured floor diagram for the quartic class through
six blown-up points with two transverse contacts, then for the sextic class
6H - 2(E_1 + ... + E_6) with no contact conditions. Each refined entry
evaluates to the complex column at q = 1 and to the real column at q = -1.
"""
from refloor import CurveClass, Tangency, evaluate_at_sign, tally


def show(beta, t):
    rows = tally(beta, t)
    print(f"\nclass {beta}, mu={list(t.mu)}, nu={list(t.nu)}: {len(rows)} rows")
    print(f"{'#':>3} {'complex':>8} {'real':>6}  refined")
    for i, row in enumerate(rows, 1):
        print(f"{i:>3} {row.complex:>8} {row.real:>6}  {row.refined}")
    total = sum((row.refined for row in rows[1:]), rows[0].refined)
    print(f"sum: {total}  ->  {evaluate_at_sign(total, 1)} / {evaluate_at_sign(total, -1)}")


show(CurveClass(4, (1,) * 6), Tangency((), (1, 1)))
show(CurveClass(6, (2,) * 6), Tangency())
