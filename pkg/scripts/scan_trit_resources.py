#!/usr/bin/env python3
"""Map the classical/nonclassical boundary for bonus effects on a trit.

Sweeps bonus effect vectors b = (t, s, 1 - t - s) over a rational grid and
classifies each against the classical trit.  Inside the order interval the
element is a classical resource (the extension stays simplicial); once any
coordinate leaves [0, 1] the extension truncates the state simplex, gains
extra pure states, and the element becomes nonclassical.  The printout is
a small map of that boundary.
"""

from fractions import Fraction

from gptlab import BonusElement, bundled, classify_bonus

GRID = [Fraction(n, 4) for n in range(-2, 7)]  # -1/2 .. 3/2 in quarter steps


def scan():
    trit = bundled("classical_trit")
    print("bonus effect b = (t, s, 1 - t - s) against the classical trit")
    print("rows: t, columns: s; C = classical, N = nonclassical")
    header = "      " + " ".join(f"{str(s):>5}" for s in GRID)
    print(header)
    for t in GRID:
        cells = []
        for s in GRID:
            b = BonusElement("effect", "b", (t, s, 1 - t - s))
            verdict = classify_bonus(trit, b)
            cells.append("C" if verdict.classification == "classical" else "N")
        print(f"{str(t):>5} " + " ".join(f"{c:>5}" for c in cells))


if __name__ == "__main__":
    scan()
