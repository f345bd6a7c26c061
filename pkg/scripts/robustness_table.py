"""Side-by-side table of output negativity with and without an adversary.

Columns: ideal two- and four-qubit negativity, the minimum an adversary
reaches with local unitaries before the CNOTs, and the four-qubit value in
the unbalanced beam-splitter model.
"""
import argparse

import numpy as np

from noisent import DiagonalInputParams, four_qubit_protocol, two_qubit_protocol
from noisent.adversary import minimize_negativity_2q, minimize_negativity_4q
from noisent.optics import DEFAULT_R, DEFAULT_T, imperfect_protocol


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--T", type=float, default=DEFAULT_T)
    ap.add_argument("--R", type=float, default=DEFAULT_R)
    args = ap.parse_args()

    params = DiagonalInputParams(args.p, 1.0, 0.0)
    print(f"{'eta':>5} {'N_2q':>9} {'N_4q':>9} {'Eve_2q':>9} {'Eve_4q':>9} {'N_4q_bs':>9}")
    for i, eta in enumerate(np.linspace(0, 1, args.steps)):
        n2 = two_qubit_protocol(eta).negativity
        n4 = four_qubit_protocol(params, eta).negativity
        e2 = minimize_negativity_2q(eta, args.restarts, seed=i).min_negativity
        e4 = minimize_negativity_4q(params, eta, args.restarts, seed=i).min_negativity
        nb = imperfect_protocol(params, eta, args.T, args.R).negativity
        print(f"{eta:5.2f} {n2:9.5f} {n4:9.5f} {e2:9.2e} {e4:9.5f} {nb:9.5f}")


if __name__ == "__main__":
    main()
