"""PBW monomials land on scaled characteristic functions; counted constants persist on disk.

Run: python3 demos/pbw_and_cache.py [cache-dir]
"""

import sys
import tempfile
import time

from qgl import convolution as cv
from qgl import flaggeo as fg
from qgl import qalgebra as qa
from qgl.cache import ConstantCache, set_default_cache

directory = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="qgl-")
q, n = 2, 2

for phase in ("cold", "warm"):
    cache = set_default_cache(ConstantCache(directory))
    start = time.perf_counter()
    lines = []
    for M in fg.theta(n, 3):
        image = cv.embed_symbolic(qa.pbw_monomial(M, divided=True), q, "Phi")
        (only, coeff), = image.terms.items()
        assert only == M
        lines.append(f"  E^({M}) -> {coeff} * 1_M   (d(M) = {fg.orbit_dim(M)})")
    took = time.perf_counter() - start
    if phase == "cold":
        print(f"divided PBW monomials of degree 3 under circ, q = {q}:")
        print("\n".join(lines))
    print(f"{phase}: {took:.2f}s, {cache.enumerations} enumerations, {cache.loaded} records loaded from {directory}")
    cache.close()
