"""Write the locus figure, the construction scene and the sample file into a directory."""
import argparse
from pathlib import Path

from cevian_locus.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="figures")
    ap.add_argument("-n", type=int, default=100, help="number of arc samples")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    codes = [
        main(["trace", "-n", str(args.n), "-o", str(out / "locus.jsonl"), "--svg", str(out / "locus.svg")]),
        main(["scene", "--svg", str(out / "scene.svg")]),
    ]
    raise SystemExit(max(codes))
