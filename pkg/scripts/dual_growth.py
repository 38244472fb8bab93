"""Co-periodic homology of F_3[x]/x^2 does not stabilize.

The lower bound (the image of an early stage in a later one) keeps growing
with the stage budget, and so does the lower bound of the raw window
computation of the oracle.  Each resolved column of the conjugate pages
carries one class, so the E_infinity sum in degree 0 grows with the rows.
"""

from cyclohom.conjugate_frobenius import conjugate_pages
from cyclohom.cyclic_objects import truncated_poly
from cyclohom.oracle import direct_hpbar_window
from cyclohom.periodic_homology import PERIODIC_POLICY, hpbar_dims

A = truncated_poly(2, 3)
print("stages  HP-bar_0 bounds")
for s in (4, 6, 8, 10):
    print(f"{s:>6}  {hpbar_dims(A, [0], PERIODIC_POLICY.with_max_stages(s)).value(0)}")
print("rows  direct window bounds (gap 2)")
for rows in (4, 6, 8):
    print(f"{rows:>4}  {direct_hpbar_window(A, 0, rows=rows, gap=2)}")
print("rows  resolved E_inf total in degree 0")
for rows in (4, 6, 8):
    print(f"{rows:>4}  {conjugate_pages(A, 3, 1, [0], rows=rows).total(0)}")
