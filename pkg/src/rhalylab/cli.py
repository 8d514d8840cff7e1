"""Batch experiment driver.

Subcommands: ``run`` (one JSON config), ``sweep`` (list of configs),
``moments``, ``section-norm``, ``criterion``, ``certify``.  All numeric
CSV output uses 17 significant digits ('.' decimal, no locale) so runs
with identical config and seed are byte-identical.

Exit codes: 0 success, 2 validation failure, 3 numerical failure
(non-convergence where convergence is required).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from . import cesaro, criteria, etagen, normest, testfuncs
from .coeffspace import CoeffSeq, monomial

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

TASKS = (
    "criterion",
    "partial_sum",
    "shortcut",
    "sections",
    "residuals",
    "lower_bounds",
    "carleson",
)


class ValidationError(ValueError):
    pass


class NumericalError(RuntimeError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# eta sources


def _eta_from_source(source: Mapping[str, Any], n_max: int) -> tuple[etagen.EtaSeq, str]:
    """Build an EtaSeq from a config eta_source; returns (eta, label)."""
    if not isinstance(source, Mapping) or "kind" not in source:
        raise ValidationError("eta_source must be an object with a 'kind' field")
    kind = source["kind"]
    if kind == "classical":
        return etagen.classical_cesaro(n_max), "classical"
    if kind == "power_log":
        s = float(source.get("s", 1.0))
        r = float(source.get("r", 0.0))
        return etagen.power_log_family(s, r, n_max), f"power_log(s={s:g},r={r:g})"
    if kind == "measure":
        mu = etagen.measure_from_json(
            {k: v for k, v in source.items() if k in ("atoms", "density")}
        )
        return etagen.measure_moments(mu, n_max), "measure"
    if kind == "explicit":
        values = source.get("values")
        if values is None:
            raise ValidationError("explicit eta_source needs a 'values' array")
        vals = [complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in values]
        return etagen.explicit_eta(np.asarray(vals)), "explicit"
    raise ValidationError(f"unknown eta_source kind: {kind!r}")


def _measure_from_source(source: Mapping[str, Any]) -> etagen.MeasureSpec:
    if source.get("kind") != "measure":
        raise ValidationError("carleson task needs a measure eta_source")
    return etagen.measure_from_json(
        {k: v for k, v in source.items() if k in ("atoms", "density")}
    )


# ---------------------------------------------------------------------------
# experiment config


def _parse_config(doc: Mapping[str, Any]) -> dict:
    if not isinstance(doc, Mapping):
        raise ValidationError("config must be a JSON object")
    cfg: dict[str, Any] = {}
    cfg["eta_source"] = doc.get("eta_source", {"kind": "classical"})
    cfg["alpha"] = float(doc.get("alpha", 1.0))
    cfg["beta"] = float(doc.get("beta", 1.0))
    grid = doc.get("n_grid", {})
    cfg["min_exp"] = int(grid.get("min_exp", 4))
    cfg["max_exp"] = int(grid.get("max_exp", 14))
    cfg["n_max_exp"] = int(grid.get("n_max_exp", 20))
    if not (0 <= cfg["min_exp"] <= cfg["max_exp"] <= cfg["n_max_exp"]):
        raise ValidationError("inconsistent n_grid exponents")
    tasks = doc.get("tasks", [])
    if not tasks:
        raise ValidationError("config needs at least one task")
    for t in tasks:
        if t not in TASKS:
            raise ValidationError(f"unknown task {t!r}")
    cfg["tasks"] = list(tasks)
    cfg["seed"] = int(doc.get("seed", 42))
    out = doc.get("output", {})
    cfg["out_dir"] = Path(out.get("dir", "."))
    cfg["format"] = out.get("format", "csv")
    if cfg["format"] not in ("csv",):
        raise ValidationError("output format must be 'csv'")
    return cfg


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _report_summary(report: criteria.CriterionReport) -> dict:
    return {
        "verdict_bounded": report.verdict_bounded,
        "verdict_compact": report.verdict_compact,
        "sup_S": report.sup_s,
        "slope": report.slope,
        "tail_majorant": report.tail_majorant,
    }


def run_experiment(cfg: dict) -> dict:
    """Execute every task of a parsed config; returns the summary dict."""
    n_max = 2 ** cfg["n_max_exp"]
    eta, label = _eta_from_source(cfg["eta_source"], n_max)
    grid = criteria.dyadic_grid(cfg["min_exp"], cfg["max_exp"])
    alpha, beta, seed = cfg["alpha"], cfg["beta"], cfg["seed"]
    out = cfg["out_dir"]
    summary: dict[str, Any] = {
        "eta_source": label,
        "alpha": alpha,
        "beta": beta,
        "seed": seed,
        "tasks": {},
    }

    for task in cfg["tasks"]:
        if task == "criterion":
            rep = criteria.criterion(eta, alpha, beta, grid)
            _write(out / "criterion.csv", rep.to_csv())
            summary["tasks"]["criterion"] = _report_summary(rep)
        elif task == "partial_sum":
            rep = criteria.partial_sum_form(eta, alpha, beta, grid)
            _write(out / "partial_sum.csv", rep.to_csv())
            summary["tasks"]["partial_sum"] = _report_summary(rep)
        elif task == "shortcut":
            rep = criteria.decreasing_shortcut(eta, alpha, beta, grid)
            _write(out / "shortcut.csv", rep.to_csv())
            summary["tasks"]["shortcut"] = _report_summary(rep)
        elif task == "sections":
            lines = ["N,sigma_max,iterations,converged"]
            norms = []
            for n in grid:
                est = normest.section_norm(
                    cesaro.section(eta, alpha, beta, n), seed=seed
                )
                if not est.converged:
                    raise NumericalError(f"section norm at N={n} did not converge")
                norms.append(est.value)
                lines.append(
                    f"{n},{_fmt(est.value)},{est.iterations},{str(est.converged).lower()}"
                )
            _write(out / "sections.csv", "\n".join(lines) + "\n")
            summary["tasks"]["sections"] = {"sigma_max": norms[-1], "grid_norms": norms}
        elif task == "residuals":
            n_big = min(len(eta) - 1, 8 * grid[-1])
            lines = ["N_cut,residual"]
            vals = []
            for n in grid:
                if n >= n_big:
                    break
                est = normest.residual_norm(eta, alpha, beta, n, n_big, seed=seed)
                if not est.converged:
                    raise NumericalError(f"residual norm at N_cut={n} did not converge")
                vals.append(est.value)
                lines.append(f"{n},{_fmt(est.value)}")
            _write(out / "residuals.csv", "\n".join(lines) + "\n")
            summary["tasks"]["residuals"] = {"values": vals, "n_big": n_big}
        elif task == "lower_bounds":
            lines = ["param,value"]
            values = []
            if alpha > 0.0:
                for b in testfuncs.b_grid(cfg["max_exp"]):
                    n = min(testfuncs.default_truncation(b), len(eta) - 1)
                    f = testfuncs.g_b_alpha(b, alpha, n)
                    cert = testfuncs.lower_bound(_truncate(eta, n), alpha, beta, f)
                    values.append(cert.value)
                    lines.append(f"{_fmt(b)},{_fmt(cert.value)}")
            elif alpha == 0.0:
                for b in testfuncs.b_grid(cfg["max_exp"]):
                    n = min(testfuncs.default_truncation(b), len(eta) - 1)
                    f = testfuncs.h_b(b, n)
                    cert = testfuncs.lower_bound(_truncate(eta, n), alpha, beta, f)
                    values.append(cert.value)
                    lines.append(f"{_fmt(b)},{_fmt(cert.value)}")
            else:
                for n in grid:
                    cert = testfuncs.lower_bound(
                        _truncate(eta, n), alpha, beta, monomial(n)
                    )
                    values.append(cert.value)
                    lines.append(f"{n},{_fmt(cert.value)}")
            _write(out / "lower_bounds.csv", "\n".join(lines) + "\n")
            summary["tasks"]["lower_bounds"] = {"max": max(values), "values": values}
        elif task == "carleson":
            mu = _measure_from_source(cfg["eta_source"])
            s = 1.0 + (alpha - beta) / 2.0
            rep = criteria.carleson_statistic(mu, s)
            _write(out / "carleson.csv", rep.to_csv())
            summary["tasks"]["carleson"] = {
                "s": rep.s,
                "sup_ratio": rep.sup_ratio,
                "slope": rep.slope,
                "verdict": rep.verdict,
            }
    return summary


def _truncate(eta: etagen.EtaSeq, n: int) -> etagen.EtaSeq:
    """Leading n+1 entries with provenance preserved."""
    return etagen.EtaSeq(eta.eta[: n + 1], eta.provenance_tag, eta.params)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_run(args: argparse.Namespace) -> int:
    doc = json.loads(Path(args.config).read_text())
    cfg = _parse_config(doc)
    if args.out_dir is not None:
        cfg["out_dir"] = Path(args.out_dir)
    summary = run_experiment(cfg)
    _write(cfg["out_dir"] / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    docs = json.loads(Path(args.configs).read_text())
    if not isinstance(docs, list):
        raise ValidationError("sweep input must be a JSON array of configs")
    out_root = Path(args.out_dir)
    rows = []
    for i, doc in enumerate(docs):
        cfg = _parse_config(doc)
        cfg["out_dir"] = out_root / f"config_{i:03d}"
        summary = run_experiment(cfg)
        _write(cfg["out_dir"] / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
        crit = summary["tasks"].get("criterion", {})
        sect = summary["tasks"].get("sections", {})
        rows.append(
            (
                summary["eta_source"],
                summary["alpha"],
                summary["beta"],
                crit.get("verdict_bounded", ""),
                crit.get("verdict_compact", ""),
                crit.get("sup_S"),
                crit.get("slope"),
                sect.get("sigma_max"),
            )
        )
    lines = ["eta_source,alpha,beta,verdict_bounded,verdict_compact,sup_S,slope,sigma_max"]
    for row in rows:
        cells = [
            row[0],
            _fmt(row[1]),
            _fmt(row[2]),
            row[3],
            row[4],
            "" if row[5] is None else _fmt(row[5]),
            "" if row[6] is None else _fmt(row[6]),
            "" if row[7] is None else _fmt(row[7]),
        ]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    _write(out_root / "sweep.csv", text)
    print(text, end="")
    return EXIT_OK


def _cmd_moments(args: argparse.Namespace) -> int:
    mu = etagen.measure_from_json(Path(args.measure).read_text())
    eta = etagen.measure_moments(mu, args.n_max)
    lines = ["n,eta"]
    for n, v in enumerate(eta.eta.real):
        lines.append(f"{n},{_fmt(v)}")
    text = "\n".join(lines) + "\n"
    if args.output:
        _write(Path(args.output), text)
    else:
        print(text, end="")
    return EXIT_OK


def _eta_from_flags(args: argparse.Namespace) -> etagen.EtaSeq:
    source: dict[str, Any] = {"kind": args.eta}
    if args.eta == "power_log":
        source["s"] = args.s
        source["r"] = args.r
    elif args.eta == "measure":
        if not args.measure:
            raise ValidationError("--measure FILE required for measure eta")
        source.update(json.loads(Path(args.measure).read_text()))
    elif args.eta == "explicit":
        if not args.values:
            raise ValidationError("--values FILE required for explicit eta")
        source["values"] = json.loads(Path(args.values).read_text())
    eta, _ = _eta_from_source(source, args.n_max)
    return eta


def _add_eta_flags(p: argparse.ArgumentParser, n_max_default: int = 2**20) -> None:
    p.add_argument(
        "--eta",
        choices=["classical", "power_log", "measure", "explicit"],
        default="classical",
    )
    p.add_argument("--s", type=float, default=1.0, help="power_log decay exponent")
    p.add_argument("--r", type=float, default=0.0, help="power_log log exponent")
    p.add_argument("--measure", help="measure JSON file (for --eta measure)")
    p.add_argument("--values", help="JSON file with explicit eta values")
    p.add_argument("--n-max", type=int, default=n_max_default)


def _cmd_section_norm(args: argparse.Namespace) -> int:
    eta = _eta_from_flags(args)
    m = cesaro.section(eta, args.alpha, args.beta, args.n)
    est = normest.section_norm(m, tol=args.tol, max_iter=args.max_iter, seed=args.seed)
    print("N,sigma_max,iterations,converged")
    print(f"{args.n},{_fmt(est.value)},{est.iterations},{str(est.converged).lower()}")
    return EXIT_OK if est.converged else EXIT_NUMERICAL


def _cmd_criterion(args: argparse.Namespace) -> int:
    eta = _eta_from_flags(args)
    grid = criteria.dyadic_grid(args.min_exp, args.max_exp)
    if args.form == "tail":
        rep = criteria.criterion(eta, args.alpha, args.beta, grid)
    elif args.form == "partial_sum":
        rep = criteria.partial_sum_form(eta, args.alpha, args.beta, grid)
    else:
        rep = criteria.decreasing_shortcut(eta, args.alpha, args.beta, grid)
    if args.output:
        _write(Path(args.output), rep.to_csv())
    print(json.dumps(rep.to_json_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    if args.kind == "schur-log":
        idx = np.arange(1, args.n + 1, dtype=float)
        cert = testfuncs.schur_certify(
            testfuncs.log_kernel, testfuncs.log_schur_weight(idx), args.n
        )
    elif args.kind == "bennett-uvw":
        eta = _eta_from_flags(args)
        n_top = 2**args.max_exp
        if n_top >= len(eta):
            raise ValidationError("grid exceeds eta length")
        k = np.arange(1, n_top + 1, dtype=float)
        u = k ** (1.0 - args.beta) * np.abs(eta.eta[1 : n_top + 1]) ** 2
        if np.any(u == 0.0):
            raise ValidationError("bennett-uvw needs nonvanishing eta entries")
        v = k ** (args.alpha - 1.0)
        a = 1.0 / k
        w = a / v
        cert = testfuncs.bennett_check(
            u, v, w, criteria.dyadic_grid(args.min_exp, args.max_exp)
        )
    elif args.kind == "lower-bound":
        eta = _eta_from_flags(args)
        n = len(eta) - 1
        if args.test_fn == "one":
            f: CoeffSeq = CoeffSeq(np.ones(1))
        elif args.test_fn == "monomial":
            f = monomial(min(int(args.param), n))
        elif args.test_fn == "h":
            b = float(args.param)
            f = testfuncs.h_b(b, min(testfuncs.default_truncation(b), n))
        else:  # g
            b = float(args.param)
            f = testfuncs.g_b_alpha(b, args.alpha, min(testfuncs.default_truncation(b), n))
        cert = testfuncs.lower_bound(eta, args.alpha, args.beta, f)
    else:
        raise ValidationError(f"unknown certificate kind {args.kind!r}")
    print(json.dumps(cert.to_json_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rhalylab",
        description="Generalized Cesaro operator experiments on weighted "
        "Dirichlet-type coefficient spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a single experiment config")
    p.add_argument("--config", required=True, help="experiment JSON config")
    p.add_argument("--out-dir", help="override the config output directory")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="run a list of configs, merge summaries")
    p.add_argument("--configs", required=True, help="JSON array of configs")
    p.add_argument("--out-dir", default="sweep_out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("moments", help="dump moments of a radial measure")
    p.add_argument("--measure", required=True)
    p.add_argument("--n-max", type=int, default=1024)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("section-norm", help="power-iteration section norm")
    _add_eta_flags(p, n_max_default=2**14)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=normest.DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=normest.DEFAULT_MAX_ITER)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=_cmd_section_norm)

    p = sub.add_parser("criterion", help="criterion scan with verdicts")
    _add_eta_flags(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--min-exp", type=int, default=4)
    p.add_argument("--max-exp", type=int, default=16)
    p.add_argument(
        "--form", choices=["tail", "partial_sum", "shortcut"], default="tail"
    )
    p.add_argument("--output", help="CSV output path")
    p.set_defaults(func=_cmd_criterion)

    p = sub.add_parser("certify", help="lower bound / Schur / Bennett certificates")
    p.add_argument(
        "--kind", choices=["lower-bound", "schur-log", "bennett-uvw"], required=True
    )
    _add_eta_flags(p, n_max_default=2**16)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2**12, help="truncation for schur-log")
    p.add_argument("--min-exp", type=int, default=4)
    p.add_argument("--max-exp", type=int, default=14)
    p.add_argument(
        "--test-fn", choices=["one", "monomial", "h", "g"], default="one"
    )
    p.add_argument("--param", type=float, default=0.0, help="monomial degree or b")
    p.set_defaults(func=_cmd_certify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
