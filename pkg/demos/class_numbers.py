"""Compare class numbers found by closing small primes with the value f_inf * L(0).

Run with: python3 demos/class_numbers.py
"""

from ffeisen.ideals import class_group
from ffeisen.lfunc import L_value0, dirichlet_L
from ffeisen.poly import ring
from ffeisen.quad import QuadExt

FIELDS = [(3, "t"), (3, "t^3-t-1"), (3, "2*t^4+t+1"), (3, "t^5+t^2+2"), (5, "t^3+t+1"), (5, "2*t^4+t^3+1")]

print(f"{'q':>2}  {'D':<14}{'genus':>6}{'f_inf':>6}{'h':>6}{'f_inf*L(0)':>12}")
for q, D in FIELDS:
    R = ring(q)
    K = QuadExt(R, R.parse(D))
    h = class_group(K, bound=K.genus + 2).h
    print(f"{q:>2}  {D:<14}{K.genus:>6}{K.f_inf:>6}{h:>6}{str(K.f_inf * L_value0(dirichlet_L(K))):>12}")
