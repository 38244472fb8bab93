"""Compare the computed conjugate pages with the E_1 table HH_{n+2k}.

The filtration index i of the truncations is reported as the column
k = 1 - i; this script prints both tables side by side so the matching can
be checked by eye, for the ground field and the dual numbers.
"""

from cyclohom.conjugate_frobenius import conjugate_e1, conjugate_pages
from cyclohom.cyclic_objects import ground_field, truncated_poly

rows = 6
for A in (ground_field(3), truncated_poly(2, 3)):
    e1 = conjugate_e1(A, 3, range(-2, 3), (-1, 2))
    P = conjugate_pages(A, 3, 1, range(-2, 3), rows=rows, step=2)
    print(A.name, f"(rows {rows}, stable in rows: {P.stabilized})")
    print("   k   n   E_1 table   computed E_1   E_inf")
    for (k, n), v in sorted(e1.table.items()):
        if n + 2 * k <= rows - 2:
            print(f"{k:>4}{n:>4}{v:>12}{P.pages[1].get((k, n), 0):>15}{P.infinity.get((k, n), 0):>8}")
