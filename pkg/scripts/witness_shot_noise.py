"""How the witness error bar shrinks with the number of shots per setting.

For each shot count, repeat the finite-shot experiment and report the mean
bootstrap sigma next to the empirical spread of the estimates. Both should
scale like shots**-0.5.
"""
import argparse

import numpy as np

from noisent import DiagonalInputParams, four_qubit_protocol
from noisent.measurement import (
    WITNESS_SETTINGS,
    derive_seed,
    outcome_probabilities,
    sample_counts,
    witness_estimate,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eta", type=float, default=0.6)
    ap.add_argument("--repeats", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rho = four_qubit_protocol(DiagonalInputParams(), args.eta).rho_out
    probs = {s: outcome_probabilities(rho, s) for s in WITNESS_SETTINGS}
    print(f"true <W> = {-args.eta / 2:.6f}")
    print(f"{'shots':>8} {'mean':>10} {'boot_sigma':>11} {'spread':>10}")
    for j, shots in enumerate([10**k for k in range(2, 7)]):
        values, sigmas = [], []
        for t in range(args.repeats):
            recs = [
                sample_counts(probs[s], shots, derive_seed(args.seed, j, t, k), s)
                for k, s in enumerate(WITNESS_SETTINGS)
            ]
            v, sig = witness_estimate(recs, resamples=200, seed=derive_seed(args.seed, j, t, 99))
            values.append(v)
            sigmas.append(sig)
        print(f"{shots:8d} {np.mean(values):10.6f} {np.mean(sigmas):11.2e} {np.std(values, ddof=1):10.2e}")


if __name__ == "__main__":
    main()
