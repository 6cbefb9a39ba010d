"""Command-line driver: ``smallgaps <command> [options]``.

Commands
--------
constants   closed-form constants for one beta
sample      run seeded Metropolis chains and write sample files
gaps        per-sample smallest gaps, rescaled gaps and counts as CSV
kstest      KS distance of a rescaled-gap column against its limit law
verify      run a named verification suite
intensity   empirical mean of the neighbour count against its limit

Exit status is 0 when the command's pass criterion holds, 1 when a check
fails, 2 for usage errors and 3 for unreadable or inconsistent input files.
Any option may also come from a JSON file given with ``--config``; options
on the command line take precedence over the file.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import constants as ck
from . import gaps as gs
from . import io as sio
from .common import DomainError, Interval
from .sampler import ChainConfig, run_chain
from .verify import SUITES, render_text, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_KS_THRESHOLD = 0.08
DEFAULT_A = (0.0, 2.0)


class InputError(Exception):
    """Input files are missing, malformed or disagree with the flags."""


# --- argument types ------------------------------------------------------------


def _int_at_least(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return parse


def _seed(text):
    value = _int_at_least(0)(text)
    if value >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _sigma(text):
    value = float(text)
    if not 0.0 < value < math.pi:
        raise argparse.ArgumentTypeError("sigma0 must lie in (0, pi)")
    return value


# --- output helpers ------------------------------------------------------------


def _flat_rows(doc: dict):
    for key, value in doc.items():
        if isinstance(value, dict):
            for sub, v in _flat_rows(value):
                yield f"{key}.{sub}", v
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                for sub, v in _flat_rows(item):
                    yield f"{key}[{i}].{sub}", v
        elif isinstance(value, list):
            for i, v in enumerate(value):
                yield f"{key}[{i}]", v
        else:
            yield key, value


def _format_doc(doc: dict, fmt: str, text_renderer=None) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = _stdio.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in _flat_rows(doc):
            writer.writerow([key, format(value, ".17g") if isinstance(value, float) else value])
        return buf.getvalue()
    if text_renderer is not None:
        return text_renderer(doc) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in _flat_rows(doc))


def _emit(text: str, out) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _document(**fields) -> dict:
    return {"format_version": sio.FORMAT_VERSION, **fields}


def _parse_windows(args):
    try:
        A = Interval(*args.A, role="gap")
        I = Interval(*args.I, role="position")
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return A, I


def _load(args):
    try:
        return sio.load_runs(args.inputs, beta=args.beta, n=args.n)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc


# --- commands ------------------------------------------------------------------


def cmd_constants(args) -> int:
    beta = args.beta
    doc = _document(
        beta=beta,
        A_beta=ck.a_beta(beta),
        A_beta_k=[ck.a_beta_k(beta, k) for k in range(1, args.k_max + 1)],
        log_C_beta_n={str(n): ck.log_c_beta_n(beta, n) for n in args.n_values},
        lemma5_residual=ck.lemma5_residual(beta),
    )
    _emit(_format_doc(doc, args.format), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    out_dir = Path(args.out or "samples")
    chains = []
    for index in range(args.chains):
        cfg = ChainConfig(
            args.beta, args.n, seed=args.seed, chain_index=index, sigma=args.sigma0,
            burnin_sweeps=args.burnin, thin_sweeps=args.thin,
        )
        result = run_chain(cfg, args.num_samples)
        path = sio.sample_path(out_dir, index)
        meta = {
            "beta": cfg.beta, "n": cfg.n, "seed": cfg.seed, "chain_index": index,
            "sigma_final": result.sigma_final, "burnin_sweeps": cfg.burnin_sweeps,
            "thin_sweeps": cfg.thin_sweeps, "num_samples": args.num_samples,
        }
        try:
            sio.write_samples(path, result.samples, meta)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc}") from exc
        chains.append({"file": str(path), "sigma_final": result.sigma_final,
                       "acceptance_rate": result.acceptance_rate})
    doc = _document(beta=args.beta, n=args.n, seed=args.seed, chains=chains)
    _emit(_format_doc(doc, args.format), None)
    return EXIT_OK


def gap_rows(samples: np.ndarray, k: int, beta: int, A, I, gamma: float):
    n = samples.shape[1]
    scale = gs.tau_scale(n, beta)
    for index, config in enumerate(samples):
        m = gs.smallest_gaps(gs.cyclic_gaps(config), k)
        yield (index, m, scale * m,
               gs.chi_count(config, A, I, gamma), gs.chi_tilde_count(config, A, I, gamma))


def cmd_gaps(args) -> int:
    samples, metas = _load(args)
    n, beta = metas[0]["n"], metas[0]["beta"]
    if args.k > n:
        raise argparse.ArgumentTypeError(f"k={args.k} exceeds n={n}")
    A, I = _parse_windows(args)
    gamma = args.gamma if args.gamma is not None else gs.default_gamma(beta)
    rows = gap_rows(samples, args.k, beta, A, I, gamma)
    if args.out is None or args.out == "-":
        sio.write_gap_csv(sys.stdout, args.k, rows)
    else:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            sio.write_gap_csv(fh, args.k, rows)
    return EXIT_OK


def cmd_kstest(args) -> int:
    column = f"tau{args.k}"
    try:
        values = sio.read_csv_column(args.csv, column)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if values.size == 0:
        raise InputError(f"{args.csv} has no rows")
    ks = gs.ks_statistic(values, lambda x: gs.limit_tau_cdf(args.beta, args.k, x))
    passed = ks <= args.threshold
    doc = _document(beta=args.beta, k=args.k, ks=ks, n_samples=int(values.size),
                    threshold=args.threshold, **{"pass": passed})
    _emit(_format_doc(doc, args.format), args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args) -> int:
    report = run_suite(args.suite).as_dict()
    report = {"format_version": sio.FORMAT_VERSION, **report}
    _emit(_format_doc(report, args.format, render_text), args.out)
    return EXIT_OK if report["overall"] == "pass" else EXIT_FAIL


def cmd_intensity(args) -> int:
    A, I = _parse_windows(args)
    predicted = gs.expected_intensity(args.beta, A, I)
    samples, metas = _load(args)
    if samples.shape[0] == 0:
        raise InputError("no samples in input")
    n = metas[0]["n"]
    gamma = args.gamma if args.gamma is not None else gs.default_gamma(args.beta)
    mean, stderr = gs.factorial_moment_estimate(samples, A, I, 1, gamma=gamma)
    if stderr > 0:
        z = (mean - predicted) / stderr
    else:
        z = 0.0 if mean == predicted else math.copysign(math.inf, mean - predicted)
    passed = abs(z) <= args.z_max
    doc = _document(beta=args.beta, n=n, n_samples=int(samples.shape[0]), A=[A.lo, A.hi],
                    I=[I.lo, I.hi], empirical_mean=mean, stderr=stderr, predicted=predicted,
                    z_score=z, z_max=args.z_max, **{"pass": passed})
    _emit(_format_doc(doc, args.format), args.out)
    return EXIT_OK if passed else EXIT_FAIL


# --- parser --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file of option defaults")
    common.add_argument("--seed", type=_seed, default=0, help="64-bit seed (default 0)")
    common.add_argument("--out", help="output path; '-' or omitted writes to stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def _beta_required() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--beta", type=_int_at_least(1), required=True)
    return p


def _windows() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--A", nargs=2, type=float, default=DEFAULT_A, metavar=("LO", "HI"),
                   help="rescaled-gap window [LO, HI) (default 0 2)")
    p.add_argument("--I", nargs=2, type=float, default=(-math.pi, math.pi), metavar=("LO", "HI"),
                   help="position window [LO, HI) (default the full circle)")
    p.add_argument("--gamma", type=float, help="rescaling exponent (default (beta+2)/(beta+1))")
    return p


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    """The top-level parser and a map from command name to its subparser.

    Parent parsers are rebuilt for every subcommand so that no argparse
    action object is shared between two subcommands.
    """
    parser = argparse.ArgumentParser(prog="smallgaps", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("constants", parents=[_common(), _beta_required()], help="closed-form constants")
    p.add_argument("--k-max", type=_int_at_least(1), default=4)
    p.add_argument("--n-values", type=_int_at_least(1), nargs="+", default=[1, 2, 4, 8, 16, 64, 256, 1024])
    p.set_defaults(func=cmd_constants)
    subs["constants"] = p

    p = sub.add_parser("sample", parents=[_common(), _beta_required()], help="run Metropolis chains")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--num-samples", type=_int_at_least(0), default=1000, help="samples per chain")
    p.add_argument("--chains", type=_int_at_least(1), default=1)
    p.add_argument("--sigma0", type=_sigma, help="initial proposal half-width (default 2.5*2pi/n)")
    p.add_argument("--burnin", type=_int_at_least(0), help="burn-in sweeps (default 50 n)")
    p.add_argument("--thin", type=_int_at_least(1), default=10, help="sweeps between samples")
    p.set_defaults(func=cmd_sample)
    subs["sample"] = p

    p = sub.add_parser("gaps", parents=[_common(), _windows()], help="gap statistics CSV (always CSV)")
    p.add_argument("inputs", nargs="+", help="sample files or directories")
    p.add_argument("--k", type=_int_at_least(1), default=3, help="number of smallest gaps")
    p.add_argument("--beta", type=_int_at_least(1), help="expected beta (checked against sidecars)")
    p.add_argument("--n", type=_int_at_least(1), help="expected n (checked against sidecars)")
    p.set_defaults(func=cmd_gaps)
    subs["gaps"] = p

    p = sub.add_parser("kstest", parents=[_common(), _beta_required()], help="KS test of tau_k")
    p.add_argument("--csv", required=True, type=Path, help="CSV written by 'gaps'")
    p.add_argument("--k", type=_int_at_least(1), default=1)
    p.add_argument("--threshold", type=float, default=DEFAULT_KS_THRESHOLD)
    p.set_defaults(func=cmd_kstest)
    subs["kstest"] = p

    p = sub.add_parser("verify", parents=[_common()], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.set_defaults(func=cmd_verify)
    subs["verify"] = p

    p = sub.add_parser("intensity", parents=[_common(), _beta_required(), _windows()], help="mean count vs limit")
    p.add_argument("inputs", nargs="+", help="sample files or directories")
    p.add_argument("--n", type=_int_at_least(1), help="expected n (checked against sidecars)")
    p.add_argument("--z-max", type=float, default=3.0)
    p.set_defaults(func=cmd_intensity)
    subs["intensity"] = p
    return parser, subs


def _apply_config(parser, subs, argv) -> None:
    """Install values from ``--config`` as subparser defaults.

    The file is read before the real parse, so it can supply options that
    are otherwise required. Anything given on the command line wins.
    """
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    command = next((tok for tok in argv if tok in subs), None)
    if command is None:
        return
    try:
        overrides = json.loads(Path(known.config).read_text())
    except (OSError, ValueError) as exc:
        parser.error(f"cannot read config {known.config}: {exc}")
    if not isinstance(overrides, dict):
        parser.error("config file must hold a JSON object")
    overrides = {k.replace("-", "_"): v for k, v in overrides.items()}
    sp = subs[command]
    actions = {a.dest: a for a in sp._actions}
    unknown = sorted(set(overrides) - set(actions) - {"help"})
    if unknown:
        parser.error(f"unknown config keys: {', '.join(unknown)}")
    for dest, value in overrides.items():
        action = actions[dest]
        # run file values through the same validation as command-line text
        if action.type is not None and value is not None:
            try:
                value = [action.type(str(v)) for v in value] if isinstance(value, list) else action.type(str(value))
            except (argparse.ArgumentTypeError, ValueError) as exc:
                parser.error(f"config key {dest}: {exc}")
        if action.choices is not None and value not in action.choices:
            parser.error(f"config key {dest}: {value!r} not in {sorted(action.choices)}")
        action.required = False
        sp.set_defaults(**{dest: value})


def parse_args(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    _apply_config(parser, subs, argv)
    return parser, parser.parse_args(argv)


def main(argv=None) -> int:
    parser, args = parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (argparse.ArgumentTypeError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"smallgaps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"smallgaps {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
