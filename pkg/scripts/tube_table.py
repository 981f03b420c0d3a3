"""Blow up Hirzebruch tubes along their core curve and report the new
exceptional surface and the two child tubes."""
import argparse

from radialfol.projective import TubeSpec, s_delta_atlas_check, tube_transition_audit


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-alpha", type=int, default=6)
    ap.add_argument("--max-beta", type=int, default=6)
    args = ap.parse_args()

    print("alpha\tbeta\tsurface\tl0_child\tgeneric_child\tatlas_ok\tok")
    for a in range(args.max_alpha + 1):
        for b in range(1, args.max_beta + 1):
            r = tube_transition_audit(TubeSpec(a, b))
            atlas = s_delta_atlas_check(r.surface_index) if r.surface_index is not None else False
            print(f"{a}\t{b}\tS{r.surface_index}\t{r.l0_order}\t{r.generic_order}\t"
                  f"{'yes' if atlas else 'no'}\t{'yes' if r.ok else 'no'}")


if __name__ == "__main__":
    main()
