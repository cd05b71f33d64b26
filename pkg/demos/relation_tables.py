"""Count the two-letter products of generators in K and watch the quantum relations appear.

Run: python3 demos/relation_tables.py [q]
"""

import sys

from qgl import convolution as cv
from qgl import qalgebra as qa


def show(kind, q):
    print(f"== product {kind}, q = {q} ==")
    for pattern in "abcd":
        table = cv.relation_table(pattern, q, kind)
        heads = [f"1_{a}*1_{b}" for a, b in table["columns"]]
        print(f"pattern {pattern}: " + "  ".join(f"{h:>14}" for h in heads))
        print(f"{'shift':>11}: " + "  ".join(f"{s:>14}" for s in table["shifts"]))
        for orbit, counts in table["rows"].items():
            print(f"{str(orbit):>11}: " + "  ".join(f"{c:>14}" for c in counts))
    print()


def main():
    q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    show("circ", q)
    show("dot", q)
    # the counts above are exactly what makes every FRT relation vanish in K
    for model in ("Phi", "Psi"):
        bad = [
            label
            for label, lhs, rhs in qa.defining_relations(qa.FRT, 2)
            if not cv.embed_symbolic(qa.NCPoly.word(qa.FRT, 2, lhs) - rhs, q, model).is_zero()
        ]
        print(f"{model}: relations that fail in K: {bad or 'none'}")
    lhs, rhs = cv.divided_power_check(1, 2, 2, q)
    print(f"1_e12 o 1_2e12 = {lhs}   ([3]_v 1_3e12 = {rhs})")


if __name__ == "__main__":
    main()
