"""The antipode of GL_v(n) and what survives the transport from the Dipper-Donkin side.

Run: python3 demos/antipode_twist.py
"""

from qgl import qalgebra as qa
from qgl import suites
from qgl.qalgebra import FRT, LocalizedElement, NCPoly
from qgl.scalars import V

n = 2

print("S(E_ij) in the localized FRT algebra:")
for i in (1, 2):
    for j in (1, 2):
        print(f"  S(E{i}{j}) = {qa.antipode_generator(i, j, n)}")

count, failures = suites.hopf(n)
print(f"\nsum_k S(E_ik) E_kj = delta_ij and the mirror identity: {count - len(failures)}/{count} hold")

# S is not an involution: it squares to a diagonal rescaling
for i, j in [(1, 2), (2, 1)]:
    s2 = qa.antipode(qa.antipode_generator(i, j, n))
    assert s2 == LocalizedElement.from_poly(NCPoly.gen(FRT, n, i, j).scale(V ** (2 * (j - i))))
    print(f"S^2(E{i}{j}) = v^{2 * (j - i)} E{i}{j}")

print("\nCompare S(Xi c_ij) with Xi(S^DD c_ij), Xi: c_ij -> E_ji:")
for i in (1, 2):
    for j in (1, 2):
        lhs = qa.antipode_generator(j, i, n)
        rhs = qa.antipode_dd_via_xi(i, j, n)
        mark = "equal" if lhs == rhs else "differ"
        print(f"  (i,j)=({i},{j}): {mark}")
        if lhs != rhs:
            print(f"      S Xi     = {lhs}")
            print(f"      Xi S^DD  = {rhs}")

# Xi reverses coproducts, so it intertwines S^DD with the inverse antipode instead
inv = suites.antipode_inverse(n)
tw = suites.transported_antipode(n)
print(f"\nS(Xi S^DD c_ij) = Xi c_ij for all (i,j): {not inv[1]}")
print(f"Xi S^DD is an antipode for the twisted product: {not tw[1]}")
