"""Exact P_e of the optimal M=3,4 codes next to the SGB and PPV bounds, one CSV per M."""

import argparse
from pathlib import Path

from weakflip.cli import main


def parse_args():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--delta", type=float, default=0.3)
    p.add_argument("--n-range", default="2:40")
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    return p.parse_args()


if __name__ == "__main__":
    args = parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for m in (3, 4):
        out = args.out_dir / f"sweep_m{m}_delta{args.delta}.csv"
        rc = main(["sweep", "--m", str(m), "--delta", str(args.delta), "--n-range", args.n_range, "--out", str(out)])
        if rc:
            raise SystemExit(rc)
        print(f"wrote {out}")
