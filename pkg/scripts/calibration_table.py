"""Filter transmissions for the optical damping channel and a numerical
check that the post-selected output matches amplitude damping."""
import argparse

import numpy as np

from noisent import amplitude_damping, apply_channel
from noisent.quantum_objects import random_density_matrix
from noisent.optics import DEFAULT_R, DEFAULT_T, OpticalParams, physical_channel, survival_probability


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--T", type=float, default=DEFAULT_T)
    ap.add_argument("--R", type=float, default=DEFAULT_R)
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--trials", type=int, default=200)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    states = [random_density_matrix(1, rng) for _ in range(args.trials)]
    print(f"T={args.T} R={args.R}")
    print(f"{'eta':>5} {'alpha0':>8} {'alpha1':>8} {'alpha2':>8} {'P_surv':>8} {'max_dev':>9}")
    for eta in np.linspace(0, 1, args.steps):
        params = OpticalParams.calibrated(eta, args.T, args.R)
        ch = amplitude_damping(eta)
        dev = max(
            np.abs(physical_channel(s, params).mat - apply_channel(ch, s, 0).mat).max() for s in states
        )
        surv = survival_probability(np.eye(2) / 2, params)
        print(
            f"{eta:5.2f} {params.alpha0:8.5f} {params.alpha1:8.5f} {params.alpha2:8.5f} "
            f"{surv:8.5f} {dev:9.1e}"
        )


if __name__ == "__main__":
    main()
