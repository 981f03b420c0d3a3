"""Run every registry germ through its scripts and print a verdict table."""
import argparse
import json

from radialfol import registry
from radialfol.driver import apply_script, classify_foliated_germ


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="print full reports as JSON")
    ap.add_argument("--lambda", dest="lams", default="1,2,3,5/2",
                    help="parameters for the linear_lambda family")
    args = ap.parse_args()

    names = [n for n in registry.REGISTRY if n != "linear_lambda"]
    names += [f"linear_lambda:{lam}" for lam in args.lams.split(",")]
    reports = {}
    print("germ\tscript\tsteps\tleaves\tresolved\tcontrolled\tverdict")
    for name in names:
        ex = registry.get(name)
        for label, script in ex.scripts.items():
            g = classify_foliated_germ(ex.root, script)
            st = apply_script(ex.root, script)
            print(f"{ex.name}\t{label}\t{len(script)}\t{len(st.leaves)}\t"
                  f"{g.report.resolved}\t{g.report.controlled}\t{g.kind}")
            reports[f"{ex.name}/{label}"] = g.report.to_json()
    if args.json:
        print(json.dumps(reports, sort_keys=True, indent=2))


if __name__ == "__main__":
    main()
