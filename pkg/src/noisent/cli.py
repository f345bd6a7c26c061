"""Batch front-end: protocol sweeps, adversary searches, calibration tables
and shot-noise simulations written as CSV plus a JSON run manifest.

Option precedence is command-line flag > JSON config file > built-in default.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from functools import partial
from pathlib import Path

import numpy as np

from . import __version__
from .adversary import minimize_negativity_2q, minimize_negativity_4q
from .entanglement import negativity
from .errors import NoisentError
from .measurement import (
    DEFAULT_RESAMPLES,
    WITNESS_SETTINGS,
    bootstrap_sigma,
    derive_seed,
    outcome_probabilities,
    sample_counts,
    tomography_2q,
    witness_estimate,
)
from .optics import (
    MODEL_LABEL,
    DEFAULT_R,
    DEFAULT_T,
    OpticalParams,
    calibrate_filters,
    imperfect_protocol,
    survival_probability,
)
from .protocols import CUT_A_C, DiagonalInputParams, four_qubit_protocol, two_qubit_protocol
from .quantum_objects import DensityMatrix

log = logging.getLogger("noisent")

MODES = ("sweep2q", "sweep4q", "adversary2q", "adversary4q", "calibrate", "shots2q", "shots4q")

COLUMNS = {
    "sweep2q": ("eta", "negativity", "witness_expectation", "analytic_prediction"),
    "sweep4q": ("eta", "negativity", "witness_expectation", "analytic_prediction"),
    "adversary2q": ("eta", "min_negativity", "converged", "restarts_used"),
    "adversary4q": ("eta", "min_negativity", "converged", "restarts_used"),
    "calibrate": ("eta", "alpha0", "alpha1", "alpha2", "survival_probability_at_beta_half"),
    "shots2q": ("eta", "estimate", "sigma", "true_value", "shots"),
    "shots4q": ("eta", "estimate", "sigma", "true_value", "shots"),
}

UNITS = {
    "eta": "damping probability",
    "negativity": "dimensionless",
    "min_negativity": "dimensionless",
    "witness_expectation": "<W>, dimensionless",
    "analytic_prediction": "eta/2",
    "converged": "bool",
    "restarts_used": "count",
    "alpha0": "intensity transmission",
    "alpha1": "intensity transmission",
    "alpha2": "intensity transmission",
    "survival_probability_at_beta_half": "probability",
    "estimate": "shots2q: negativity of tomographic estimate; shots4q: <W>",
    "sigma": "bootstrap standard error",
    "true_value": "exact value for the simulated state",
    "shots": "counts per setting",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class EtaGrid:
    min: float = 0.0
    max: float = 1.0
    steps: int = 21

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.min])
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    eta_grid: EtaGrid = field(default_factory=EtaGrid)
    input: DiagonalInputParams = field(default_factory=DiagonalInputParams)
    T: float = DEFAULT_T
    R: float = DEFAULT_R
    shots: int = 100_000
    seed: int = 0
    restarts: int = 32
    resamples: int = DEFAULT_RESAMPLES
    output_path: str = "results.csv"
    imperfect: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        g = self.eta_grid
        if g.steps < 1:
            raise ConfigError("steps must be >= 1")
        if not (0.0 <= g.min <= 1.0 and 0.0 <= g.max <= 1.0) or g.min > g.max:
            raise ConfigError(f"eta grid [{g.min}, {g.max}] must lie within [0, 1] with min <= max")
        if self.shots < 1:
            raise ConfigError("shots must be positive")
        if self.restarts < 1:
            raise ConfigError("restarts must be positive")
        if self.resamples < 100:
            raise ConfigError("resamples must be >= 100")
        if self.workers < 1:
            raise ConfigError("workers must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        try:
            OpticalParams(self.T, self.R)
        except NoisentError as exc:
            raise ConfigError(str(exc)) from exc

    def to_json(self) -> dict:
        return asdict(self)


# flat key -> (section, field); section None means a top-level field
_FLAT_KEYS = {
    "mode": (None, "mode"),
    "eta_min": ("eta_grid", "min"),
    "eta_max": ("eta_grid", "max"),
    "steps": ("eta_grid", "steps"),
    "p": ("input", "p"),
    "q": ("input", "q"),
    "r": ("input", "r"),
    "T": (None, "T"),
    "R": (None, "R"),
    "shots": (None, "shots"),
    "seed": (None, "seed"),
    "restarts": (None, "restarts"),
    "resamples": (None, "resamples"),
    "out": (None, "output_path"),
    "imperfect": (None, "imperfect"),
    "workers": (None, "workers"),
}


def config_from_flat(values: dict) -> ExperimentConfig:
    """Build a config from flat keys (as used in JSON files and CLI flags)."""
    unknown = set(values) - set(_FLAT_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "mode" not in values:
        raise ConfigError("mode is required")
    top, grid, inp = {}, {}, {}
    for key, val in values.items():
        section, name = _FLAT_KEYS[key]
        {None: top, "eta_grid": grid, "input": inp}[section][name] = val
    try:
        cfg = ExperimentConfig(eta_grid=EtaGrid(**grid), input=DiagonalInputParams(**inp), **top)
    except (TypeError, NoisentError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    cfg.validate()
    return cfg


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _row_sweep(cfg: ExperimentConfig, n_qubits: int, eta: float) -> tuple:
    if cfg.imperfect:
        res = imperfect_protocol(cfg.input, eta, cfg.T, cfg.R, n_qubits=n_qubits)
    elif n_qubits == 2:
        res = two_qubit_protocol(eta)
    else:
        res = four_qubit_protocol(cfg.input, eta)
    wit = res.witness_expectation if res.witness_expectation is not None else float("nan")
    return (eta, res.negativity, wit, eta / 2)


def _row_adversary(cfg: ExperimentConfig, n_qubits: int, index: int, eta: float) -> tuple:
    seed = derive_seed(cfg.seed, index)
    if n_qubits == 2:
        out = minimize_negativity_2q(eta, cfg.restarts, seed)
    else:
        out = minimize_negativity_4q(cfg.input, eta, cfg.restarts, seed)
    return (eta, out.min_negativity, out.converged, out.restarts_used)


def _row_calibrate(cfg: ExperimentConfig, eta: float) -> tuple:
    a0, a1, a2 = calibrate_filters(eta, cfg.T, cfg.R)
    surv = survival_probability(DensityMatrix.maximally_mixed(1), OpticalParams(cfg.T, cfg.R, a0, a1, a2))
    return (eta, a0, a1, a2, surv)


def _row_shots(cfg: ExperimentConfig, n_qubits: int, index: int, eta: float) -> tuple:
    if cfg.imperfect:
        res = imperfect_protocol(cfg.input, eta, cfg.T, cfg.R, n_qubits=n_qubits)
    elif n_qubits == 2:
        res = two_qubit_protocol(eta)
    else:
        res = four_qubit_protocol(cfg.input, eta)
    rho = res.rho_out
    settings = [a + b for a in "XYZ" for b in "XYZ"] if n_qubits == 2 else list(WITNESS_SETTINGS)
    records = [
        sample_counts(outcome_probabilities(rho, s), cfg.shots, derive_seed(cfg.seed, index, k), s)
        for k, s in enumerate(settings)
    ]
    boot_seed = derive_seed(cfg.seed, index, len(settings))
    if n_qubits == 2:
        est = negativity(tomography_2q(records), CUT_A_C)
        sigma = bootstrap_sigma(records, "negativity_2q", cfg.resamples, boot_seed)
        truth = res.negativity
    else:
        est, sigma = witness_estimate(records, cfg.resamples, boot_seed)
        truth = res.witness_expectation
    return (eta, est, sigma, truth, cfg.shots)


def _row_function(cfg: ExperimentConfig):
    m = cfg.mode
    if m.startswith("sweep"):
        return lambda i, eta: _row_sweep(cfg, int(m[-2]), eta)
    if m == "calibrate":
        return lambda i, eta: _row_calibrate(cfg, eta)
    if m.startswith("adversary"):
        return partial(_row_adversary, cfg, int(m[-2]))
    return partial(_row_shots, cfg, int(m[-2]))


def _call_row(cfg: ExperimentConfig, args: tuple) -> tuple:
    return _row_function(cfg)(*args)


def compute_rows(cfg: ExperimentConfig) -> list[tuple]:
    """Evaluate every grid point; output order always follows the grid."""
    tasks = [(i, float(eta)) for i, eta in enumerate(cfg.eta_grid.values())]
    if cfg.workers == 1 or len(tasks) == 1:
        return [_call_row(cfg, t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(partial(_call_row, cfg), tasks))


def write_csv(cfg: ExperimentConfig, rows: list[tuple], path: Path) -> None:
    cols = COLUMNS[cfg.mode]
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(f"# noisent {cfg.mode}\n")
        if cfg.imperfect and cfg.mode not in ("calibrate",) and not cfg.mode.startswith("adversary"):
            fh.write(f"# {MODEL_LABEL} T={cfg.T!r} R={cfg.R!r}\n")
        for c in cols:
            fh.write(f"# {c}: {UNITS[c]}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def manifest_path(csv_path: Path) -> Path:
    return csv_path.with_name(csv_path.stem + ".manifest.json")


def write_manifest(cfg: ExperimentConfig, path: Path, n_rows: int) -> None:
    doc = {
        "tool": "noisent",
        "version": __version__,
        "numpy": np.__version__,
        "created": datetime.now(timezone.utc).isoformat(),
        "config": cfg.to_json(),
        "rows": n_rows,
        "results": str(path.name),
    }
    manifest_path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def run(cfg: ExperimentConfig) -> int:
    """Execute one configured run. Returns 0 on success, 1 on bad config,
    2 on numerical failure."""
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        rows = compute_rows(cfg)
    except NoisentError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    out = Path(cfg.output_path)
    write_csv(cfg, rows, out)
    write_manifest(cfg, out, len(rows))
    log.info("wrote %d rows to %s", len(rows), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="noisent", description=__doc__.splitlines()[0])
    ap.add_argument("mode", nargs="?", choices=MODES, help="what to run (may also come from --config)")
    ap.add_argument("--eta-min", type=float, dest="eta_min")
    ap.add_argument("--eta-max", type=float, dest="eta_max")
    ap.add_argument("--steps", type=int)
    ap.add_argument("--p", type=float)
    ap.add_argument("--q", type=float)
    ap.add_argument("--r", type=float)
    ap.add_argument("--T", type=float, help="beam-splitter intensity transmission")
    ap.add_argument("--R", type=float, help="beam-splitter intensity reflection")
    ap.add_argument("--shots", type=int, help="counts per measurement setting")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--restarts", type=int, help="optimizer restarts per grid point")
    ap.add_argument("--resamples", type=int, help="bootstrap resamples")
    ap.add_argument("--workers", type=int, help="parallel grid workers")
    ap.add_argument("--imperfect", action="store_true", default=None, help="use the unbalanced-splitter model")
    ap.add_argument("--config", type=Path, help="flat JSON config file")
    ap.add_argument("--out", help="output CSV path")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    flat: dict = {}
    if args.config is not None:
        try:
            loaded = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"config error: cannot read {args.config}: {exc}", file=sys.stderr)
            return 1
        if not isinstance(loaded, dict):
            print("config error: config file must hold a JSON object", file=sys.stderr)
            return 1
        flat.update(loaded)
    for key in _FLAT_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            flat[key] = val
    try:
        cfg = config_from_flat(flat)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
