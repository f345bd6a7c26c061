"""Run every CLI mode over a common eta grid and collect the CSVs in one
directory (one manifest per CSV)."""
import argparse
import sys
from dataclasses import replace
from pathlib import Path

from noisent.cli import MODES, EtaGrid, ExperimentConfig, run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--restarts", type=int, default=32)
    ap.add_argument("--shots", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    base = ExperimentConfig(
        mode="sweep2q",
        eta_grid=EtaGrid(0.0, 1.0, args.steps),
        restarts=args.restarts,
        shots=args.shots,
        seed=args.seed,
        workers=args.workers,
    )
    jobs = [(m, False) for m in MODES] + [("sweep2q", True), ("sweep4q", True), ("shots4q", True)]
    for mode, imperfect in jobs:
        name = f"{mode}_imperfect.csv" if imperfect else f"{mode}.csv"
        cfg = replace(base, mode=mode, imperfect=imperfect, output_path=str(args.out_dir / name))
        print(f"{name:<28}", end="", flush=True)
        status = run(cfg)
        print("ok" if status == 0 else f"exit {status}")
        if status:
            return status
    return 0


if __name__ == "__main__":
    sys.exit(main())
