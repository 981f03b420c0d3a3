"""Camacho-Sad bookkeeping for lambda*y dx - x dy under one point blow-up."""
import argparse
from fractions import Fraction

from radialfol.algebra import format_rational
from radialfol.forms import OneForm
from radialfol.surfaces import blowup_index_audit, camacho_sad_index


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lams", nargs="*", default=["1", "2", "3", "5/2", "-1/2", "7"])
    args = ap.parse_args()

    print("lambda\tindex\tstrict\texceptional_sum\tdicritical")
    for lam in args.lams:
        lam = Fraction(lam)
        w = OneForm.parse([f"{format_rational(lam)}*y", "-x"], ("x", "y"))
        a = blowup_index_audit(w, "y")
        total = "-" if a.index_sum is None else format_rational(a.index_sum)
        print(f"{format_rational(lam)}\t{format_rational(camacho_sad_index(w, 'y'))}\t"
              f"{format_rational(a.strict_index)}\t{total}\t{'yes' if a.dicritical else 'no'}")


if __name__ == "__main__":
    main()
