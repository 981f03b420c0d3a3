"""Tabulate radial solutions of the Baum-Bott equation on S_delta."""
import argparse

from radialfol.projective import brute_force_solutions, milnor_count, solve_radial_diophantine


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-delta", type=int, default=25)
    ap.add_argument("--bound", type=int, default=50, help="brute-force search box |d1|,|d2| <= bound")
    args = ap.parse_args()

    print("delta\td1\td2\tsituation\trealizable\tmilnor\tbrute_force_agrees")
    for delta in range(args.max_delta + 1):
        sols = solve_radial_diophantine(delta)
        agrees = brute_force_solutions(delta, args.bound) == {(s.d1, s.d2) for s in sols}
        for s in sols:
            print(f"{delta}\t{s.row()}\t{milnor_count(s.d1, s.d2, delta)}\t{'yes' if agrees else 'no'}")


if __name__ == "__main__":
    main()
