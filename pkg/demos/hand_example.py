"""Walk through one coefficient by hand: q = 3, K = k(sqrt t), y = t at (t), beta = 1.

Run with: python3 demos/hand_example.py
"""

from ffeisen.cycles import eta_from_cycle, z_cycle
from ffeisen.eisenstein import Request, eta_coeff_closed, eta_coeff_whittaker, whittaker_product
from ffeisen.places import parse_idele
from ffeisen.poly import parse_fn
from ffeisen.sweep import FieldSetup

R, K, C, prof = FieldSetup(3, "t", "1").build()
req = Request(C, prof, parse_idele(R, "(t)=t"), parse_fn(R, "1"))

print("field        : k(sqrt t) over F_3(t), genus", K.genus)
print("Diff places  :", [v.label(R) for v in req.diff])
print("vanishing    : the Whittaker product vanishes to order", whittaker_product(req).vanishing_order())

# The single Diff place is infinity, so the coefficient comes from one local derivative.
print("closed form  :", eta_coeff_closed(req).total.c, "ln q")
print("derivative   :", eta_coeff_whittaker(req).total.c, "ln q")

# On the geometric side: deg z counts the two norm-one units with multiplicity 1.
z = z_cycle(req)
print("deg z        :", z.lnq.c, "ln q")
print("chi(y)       :", req.chi_y)
print("cycle path   :", eta_from_cycle(req).total.c, "ln q")
