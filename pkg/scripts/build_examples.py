"""Build one artifact of every kind, then re-verify the stored claims.

Artifacts land in --out (default ./artifacts) as hex-float JSON; the
cylinder is chained from the inverted hyperbolic path it stores next to.
"""

import argparse
import sys
from pathlib import Path

from sl2rotor.cli import entry


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("artifacts"))
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--res", type=int, default=128,
                    help="path/grid resolution passed to the builders")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    common = ["--res", str(args.res)]
    if args.seed is not None:
        common += ["--seed", str(args.seed)]

    hyp = args.out / "hyperbolic-path.json"
    jobs = [
        ("spiral-path", ["r=2"], args.out / "spiral-path.json"),
        ("elliptic-path", [], args.out / "elliptic-path.json"),
        ("hyperbolic-path", ["invert=true"], hyp),
        ("unit-path", ["lam_target=2.0", "lam=2.6"],
         args.out / "unit-path.json"),
        ("cylinder", [f"src={hyp}"], args.out / "cylinder.json"),
        ("cover", ["mu=3"], args.out / "cover.json"),
    ]

    bad = 0
    for kind, params, path in jobs:
        code = entry(["build", kind, *params, *common, "--out", str(path)])
        if code == 0:
            code = entry(["verify", "--artifact", str(path), "--out",
                          str(path.with_suffix(".verify.json"))])
        status = "ok" if code == 0 else f"FAILED (exit {code})"
        print(f"{kind:<16} -> {path}  {status}")
        bad += code != 0
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
