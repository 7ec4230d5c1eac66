"""Experiment runner: adaptive-VQE traces, FCI references, comparisons.

Subcommands
-----------
run <config.json> [--out DIR] [--criterion parameter|gradient|both]
    Run the adaptive loop per config; write a JSON trace and a flat CSV.
fci <FCIDUMP> [--json]
    Print the Hartree-Fock energy and both independent FCI routes.
compare <a.json> <b.json> --target-error E
    First iteration reaching the target error and cost at that point,
    plus percentage reductions of trace B versus trace A.
sweep <config.json> [--out DIR]
    Run over a list of FCIDUMP fixtures (a geometry grid).

Config keys: fcidump (or fcidumps for sweep), criterion, start, epsilon,
grad_norm_tol, k_max, pool, eta, optimizer{gtol,max_evals}, compute_fci.
Exit codes: 2 invalid config, 3 missing/unparseable fixture.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import asdict

from .adapt import (
    GRADIENT,
    HI_UCCSD,
    PARAMETER,
    UCCSD,
    WARM,
    AdaptConfig,
    AdaptTrace,
    run_adapt,
)
from .chem import ParseError, assemble_hamiltonian, load_fcidump, sub_hamiltonian
from .opt import OptimizerConfig
from .oracle import fci_energy_determinant, fci_energy_qubit, slater_condon_hf
from .pool import hi_uccsd_filter, uccsd_pool

EXIT_BAD_CONFIG = 2
EXIT_BAD_FIXTURE = 3


class ConfigError(ValueError):
    pass


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _adapt_config(cfg: dict, criterion: str) -> AdaptConfig:
    opt = cfg.get("optimizer", {})
    if not isinstance(opt, dict):
        raise ConfigError("optimizer must be an object")
    # the config's start strategy applies to the parameter criterion; the
    # gradient baseline is always warm-started
    start = cfg.get("start", "hot") if criterion == PARAMETER else WARM
    try:
        return AdaptConfig(
            criterion=criterion,
            start=start,
            epsilon=float(cfg.get("epsilon", 1e-4)),
            grad_norm_tol=float(cfg.get("grad_norm_tol", 1e-3)),
            k_max=int(cfg.get("k_max", 120)),
            optimizer=OptimizerConfig(
                gtol=float(opt.get("gtol", 1e-6)),
                max_evals=int(opt.get("max_evals", 10_000)),
            ),
            pool_kind=cfg.get("pool", HI_UCCSD),
            eta=float(cfg.get("eta", 1e-10)),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def _trace_json(trace: AdaptTrace, cfg_echo: dict, fcidump: str, e_fci: float | None) -> dict:
    return {
        "schema": "adaptlab-trace-v1",
        "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "config": cfg_echo,
        "fcidump": fcidump,
        "conventions": trace.conventions,
        "criterion": trace.criterion,
        "start": trace.start,
        "pool_kind": trace.pool_kind,
        "pool_size": trace.pool_size,
        "n_qubits": trace.n_qubits,
        "e_hf": trace.e_hf,
        "e_fci": e_fci,
        "final_energy": trace.final_energy,
        "termination_reason": trace.termination_reason,
        "cumulative_cost": trace.ledger.cumulative,
        "records": [asdict(r) for r in trace.records],
    }


def _write_trace(doc: dict, out_dir: str, stem: str) -> tuple[str, str]:
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, f"{stem}.trace.json")
    with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(
            ["k", "energy", "error_vs_fci", "cumulative_cost", "chosen_op", "score", "initial_param"]
        )
        for r in doc["records"]:
            w.writerow(
                [
                    r["k"],
                    repr(r["energy_after_global"]),
                    "" if r["error_vs_fci"] is None else repr(r["error_vs_fci"]),
                    r["cumulative_cost"],
                    r["chosen_pool_index"],
                    repr(r["selection_score"]),
                    repr(r["initial_param"]),
                ]
            )
    return json_path, csv_path


def _run_one(cfg: dict, fcidump: str, criterion: str, out_dir: str, verbose: bool) -> str:
    try:
        mol = load_fcidump(fcidump)
    except FileNotFoundError:
        print(f"error: fixture not found: {fcidump}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_FIXTURE)
    except ParseError as exc:
        print(f"error: {fcidump}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_FIXTURE)

    acfg = _adapt_config(cfg, criterion)
    h = assemble_hamiltonian(mol)
    pool = uccsd_pool(mol)
    if acfg.pool_kind == HI_UCCSD:
        pool = hi_uccsd_filter(pool, h, acfg.eta)
    if not pool:
        print("error: operator pool is empty", file=sys.stderr)
        raise SystemExit(EXIT_BAD_CONFIG)
    e_fci = fci_energy_determinant(mol) if cfg.get("compute_fci", True) else None
    subs = [sub_hamiltonian(h, op) for op in pool]
    trace = run_adapt(h, mol, pool, acfg, e_fci=e_fci, sub_hamiltonians=subs, verbose=verbose)

    cfg_echo = {
        "fcidump": fcidump,
        "criterion": criterion,
        "start": acfg.start,
        "epsilon": acfg.epsilon,
        "grad_norm_tol": acfg.grad_norm_tol,
        "k_max": acfg.k_max,
        "pool": acfg.pool_kind,
        "eta": acfg.eta,
        "optimizer": {"gtol": acfg.optimizer.gtol, "max_evals": acfg.optimizer.max_evals},
    }
    doc = _trace_json(trace, cfg_echo, fcidump, e_fci)
    stem = os.path.splitext(os.path.basename(fcidump))[0] + f"__{criterion}"
    json_path, csv_path = _write_trace(doc, out_dir, stem)
    print(f"wrote {json_path} and {csv_path}")
    return json_path


def cmd_run(args) -> int:
    try:
        cfg = _load_config(args.config)
        fcidump = cfg.get("fcidump")
        if not isinstance(fcidump, str):
            raise ConfigError("config must name a single 'fcidump'")
        criteria = (
            [PARAMETER, GRADIENT]
            if args.criterion == "both"
            else [args.criterion or cfg.get("criterion", PARAMETER)]
        )
        for c in criteria:
            if c not in (PARAMETER, GRADIENT):
                raise ConfigError(f"unknown criterion {c!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    out_dir = args.out or "."
    try:
        for c in criteria:
            _run_one(cfg, fcidump, c, out_dir, args.verbose)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    return 0


def cmd_fci(args) -> int:
    try:
        mol = load_fcidump(args.fcidump)
    except FileNotFoundError:
        print(f"error: fixture not found: {args.fcidump}", file=sys.stderr)
        return EXIT_BAD_FIXTURE
    except ParseError as exc:
        print(f"error: {args.fcidump}: {exc}", file=sys.stderr)
        return EXIT_BAD_FIXTURE
    h = assemble_hamiltonian(mol)
    e_hf = slater_condon_hf(mol)
    e_q = fci_energy_qubit(h, mol)
    e_d = fci_energy_determinant(mol)
    if args.json:
        print(
            json.dumps(
                {
                    "fcidump": args.fcidump,
                    "n_qubits": h.n_qubits,
                    "n_electrons": mol.n_electrons,
                    "e_hf": e_hf,
                    "e_fci_qubit": e_q,
                    "e_fci_determinant": e_d,
                    "route_difference": abs(e_q - e_d),
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print(f"E_HF               = {e_hf:.12f}")
        print(f"E_FCI (qubit)      = {e_q:.12f}")
        print(f"E_FCI (determinant)= {e_d:.12f}")
        print(f"route difference   = {abs(e_q - e_d):.3e}")
    return 0


def _first_hit(doc: dict, target: float):
    for r in doc["records"]:
        err = r["error_vs_fci"]
        if err is not None and err <= target:
            return r["k"], r["cumulative_cost"]
    return None


def cmd_compare(args) -> int:
    docs = []
    for path in (args.trace_a, args.trace_b):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                docs.append(json.load(fh))
        except (FileNotFoundError, json.JSONDecodeError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_BAD_FIXTURE
    target = args.target_error
    hits = [_first_hit(d, target) for d in docs]
    names = [args.trace_a, args.trace_b]
    for name, hit in zip(names, hits):
        if hit is None:
            print(f"{name}: target error {target:g} not reached")
        else:
            print(f"{name}: k={hit[0]} cumulative_cost={hit[1]} at error<={target:g}")
    if all(hits):
        (ka, ca), (kb, cb) = hits
        op_red = 100.0 * (ka - kb) / ka if ka else 0.0
        cost_red = 100.0 * (ca - cb) / ca if ca else 0.0
        print(f"operator-count reduction of B vs A: {op_red:.2f}%")
        print(f"measurement-cost reduction of B vs A: {cost_red:.2f}%")
    return 0


def cmd_sweep(args) -> int:
    try:
        cfg = _load_config(args.config)
        fixtures = cfg.get("fcidumps")
        if not isinstance(fixtures, list) or not fixtures:
            raise ConfigError("sweep config must provide a non-empty 'fcidumps' list")
        criterion = cfg.get("criterion", PARAMETER)
        if criterion not in (PARAMETER, GRADIENT):
            raise ConfigError(f"unknown criterion {criterion!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    out_dir = args.out or "."
    failures = 0
    for fx in fixtures:
        try:
            _run_one(cfg, fx, criterion, out_dir, args.verbose)
        except ConfigError as exc:
            print(f"sweep: fixture {fx} failed ({exc}); continuing", file=sys.stderr)
            failures += 1
        except SystemExit as exc:
            print(f"sweep: fixture {fx} failed (exit {exc.code}); continuing", file=sys.stderr)
            failures += 1
    if failures:
        print(f"sweep finished with {failures} failed fixture(s)", file=sys.stderr)
        return EXIT_BAD_FIXTURE
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="adaptlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the adaptive loop from a JSON config")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (default: cwd)")
    p_run.add_argument(
        "--criterion", choices=[PARAMETER, GRADIENT, "both"], default=None,
        help="override the config criterion; 'both' emits two traces",
    )
    p_run.add_argument("--verbose", action="store_true")
    p_run.set_defaults(func=cmd_run)

    p_fci = sub.add_parser("fci", help="print HF and dual-route FCI energies")
    p_fci.add_argument("fcidump")
    p_fci.add_argument("--json", action="store_true")
    p_fci.set_defaults(func=cmd_fci)

    p_cmp = sub.add_parser("compare", help="compare two traces at a target error")
    p_cmp.add_argument("trace_a")
    p_cmp.add_argument("trace_b")
    p_cmp.add_argument("--target-error", type=float, required=True)
    p_cmp.set_defaults(func=cmd_compare)

    p_sweep = sub.add_parser("sweep", help="run a geometry grid of fixtures")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--out", help="output directory (default: cwd)")
    p_sweep.add_argument("--verbose", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
