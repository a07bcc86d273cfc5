"""Command-line interface: one subcommand per computation, JSON reports out.

Every option can also be set from the environment as ``LOOPALG_<OPTION>``
(for example ``LOOPALG_FIELD=fp:2`` or ``LOOPALG_MAX_MF=24``); an explicit
flag wins over the environment.
"""

import argparse
import json
import os
import sys
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from ._parallel import parallel_map
from .bar import ORACLE_CAP, verify
from .berglund import MAX_MF, bb_table, reflect
from .bounds import anick_prime_set, bound_report
from .complex import MAX_VERTICES, parse_complex, popcount, vertices_of
from .errors import CapExceeded, InternalAssertion, InvalidInput, LoopAlgError, OracleMismatch
from .linalg import QQ, FieldSpec
from .series import (
    DEFAULT_TRUNC,
    TruncatedSeries,
    extract_zk_exponents,
    general_pp_inverse,
    inv_poincare_rk,
    inv_poincare_zk,
    poincare_dj,
    poincare_zk,
)
from .toric import (
    NotSimplyConnected,
    is_smooth,
    orbifold_report,
    parse_fan,
    partial_quotient_report,
    stabiliser_primes,
)

ENV_PREFIX = "LOOPALG_"
SCHEMA = 1
BATCH_COMMANDS = ("bb", "series", "decompose", "oracle", "bounds", "fan", "quotient")


@dataclass(frozen=True)
class RunConfig:
    field: FieldSpec = QQ
    trunc: int = DEFAULT_TRUNC
    jobs: int = 1
    max_vertices: int = MAX_VERTICES
    max_mf: int = MAX_MF
    oracle_cap: int = ORACLE_CAP
    out: str = None
    format: str = "json"
    timing: bool = False

    def __post_init__(self):
        if self.trunc < 0:
            raise InvalidInput("--trunc must be non-negative")
        for name in ("jobs", "max_vertices", "max_mf", "oracle_cap"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"--{name.replace('_', '-')} must be positive")
        if self.format not in ("json", "text"):
            raise InvalidInput("--format must be json or text")

    def to_json(self):
        # jobs, output path and format never change the computed content
        return {
            "field": str(self.field),
            "trunc": self.trunc,
            "max_vertices": self.max_vertices,
            "max_mf": self.max_mf,
            "oracle_cap": self.oracle_cap,
        }


# -- rendering helpers -------------------------------------------------------


def coeffs(poly):
    return poly.to_list(0) if poly else []


def poly_text(c, var="t"):
    terms = []
    for d, v in enumerate(c):
        if not v:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        mag = abs(v)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        sign = "-" if v < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def series_json(s):
    out = s.to_json()
    out["text"] = poly_text(s.coeffs) + f" + O(t^{s.trunc + 1})"
    return out


def exponents_json(exps):
    return {
        "D": {str(n): d for n, d in sorted(exps.D.items()) if d},
        "determined_for_n_up_to": exps.trunc + 1,
    }


def pi_line(D):
    terms = " ⊕ ".join(f"π_N(S^{n})^{{⊕{d}}}" for n, d in sorted(D.items()) if d)
    return f"π_N(Z_K) ⊗ Z[1/P] ≅ {terms or '0'} ⊗ Z[1/P]"


def table_json(table):
    rows = []
    for J, b in table.items():
        if J and not b:
            continue
        rows.append({"J": vertices_of(J), "b": coeffs(b), "b_hat": coeffs(reflect(b, popcount(J)))})
    return rows


# -- input -------------------------------------------------------------------


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def load_complex(path, cfg):
    return parse_complex(_read_text(path), max_vertices=cfg.max_vertices)


def load_fan(path, cfg):
    return parse_fan(_read_text(path), max_vertices=cfg.max_vertices)


def load_series_list(path, m, cfg):
    try:
        raw = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(raw, list) or len(raw) != m:
        raise InvalidInput(f"{path}: expected a list of {m} series")
    out = []
    for i, item in enumerate(raw, 1):
        c = item.get("coeffs") if isinstance(item, dict) else item
        if not isinstance(c, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
            raise InvalidInput(f"{path}: series {i} must be a list of integer coefficients")
        out.append(TruncatedSeries(c, cfg.trunc))
    return out


# -- commands ----------------------------------------------------------------
# Each returns (input echo, payload, exit code).


def cmd_bb(args, cfg):
    K = load_complex(args.input, cfg)
    table = bb_table(K, cfg.field, jobs=cfg.jobs, max_mf=cfg.max_mf)
    return K.to_json(), {"bb_table": table_json(table)}, 0


def cmd_series(args, cfg):
    K = load_complex(args.input, cfg)
    table = bb_table(K, cfg.field, jobs=cfg.jobs, max_mf=cfg.max_mf)
    inv = inv_poincare_zk(K, cfg.field, table)
    rk = inv_poincare_rk(K, cfg.field, table)
    payload = {
        "inv_poincare_zk": {"coeffs": coeffs(inv), "text": poly_text(coeffs(inv))},
        "poincare_zk": series_json(poincare_zk(K, cfg.field, cfg.trunc, table)),
        "poincare_dj": series_json(poincare_dj(K, cfg.field, cfg.trunc, table)),
        "inv_poincare_rk": {"coeffs": coeffs(rk), "text": poly_text(coeffs(rk))},
    }
    return K.to_json(), payload, 0


def cmd_decompose(args, cfg):
    K = load_complex(args.input, cfg)
    table = bb_table(K, cfg.field, jobs=cfg.jobs, max_mf=cfg.max_mf)
    inv = inv_poincare_zk(K, cfg.field, table)
    payload = {"inv_poincare_zk": {"coeffs": coeffs(inv), "text": poly_text(coeffs(inv))}}
    if cfg.field.is_rational:
        exps = extract_zk_exponents(inv, cfg.trunc)
        payload["exponents"] = exponents_json(exps)
        payload["homotopy_groups"] = pi_line(exps.D) + " for N ≥ 3"
    else:
        payload["exponents"] = None
        warnings.warn("exponents D_n are extracted over Q only; the series is reported unfactorised")
    payload["anick_primes"] = anick_prime_set(K, jobs=cfg.jobs, max_mf=cfg.max_mf).to_json()
    return K.to_json(), payload, 0


def cmd_oracle(args, cfg):
    K = load_complex(args.input, cfg)
    if K.m > cfg.oracle_cap:
        raise CapExceeded(f"the bar oracle is capped at m={cfg.oracle_cap}, got m={K.m}")
    table = bb_table(K, cfg.field, jobs=cfg.jobs, max_mf=cfg.max_mf)
    result = verify(K, cfg.field, table, max_m=cfg.oracle_cap)
    payload = {"agree": result.ok, "detail": result.describe()}
    if not result.ok:
        payload["mismatch"] = {
            "J": result.subset,
            "degree": result.degree,
            "berglund": result.berglund,
            "oracle": result.oracle,
        }
    return K.to_json(), payload, 0 if result.ok else OracleMismatch.exit_code


def cmd_pp(args, cfg):
    K = load_complex(args.input, cfg)
    G = load_series_list(args.g_series, K.m, cfg)
    X = load_series_list(args.x_series, K.m, cfg)
    table = bb_table(K, cfg.field, jobs=cfg.jobs, max_mf=cfg.max_mf)
    inv = general_pp_inverse(K, G, X, cfg.field, cfg.trunc, table)
    payload = {"inv_poincare": series_json(inv), "poincare": series_json(inv.inverse())}
    return K.to_json(), payload, 0


def cmd_fan(args, cfg):
    F = load_fan(args.input, cfg)
    try:
        report = orbifold_report(
            F, cfg.trunc, allow_smooth_cover=args.smooth_cover, jobs=cfg.jobs, max_mf=cfg.max_mf
        )
    except NotSimplyConnected as exc:
        warnings.warn(f"{exc}; decomposition withheld")
        payload = {
            "simply_connected": False,
            "pi1_invariants": exc.invariants,
            "P_sigma": stabiliser_primes(F),
            "smooth": is_smooth(F),
            "decomposition": None,
        }
        return F.to_json(), payload, 0
    return F.to_json(), report.to_json(), 0


def cmd_quotient(args, cfg):
    K = load_complex(args.input, cfg)
    report = partial_quotient_report(K, args.rank, cfg.trunc, jobs=cfg.jobs, max_mf=cfg.max_mf)
    return K.to_json(), report.to_json(), 0


def cmd_bounds(args, cfg):
    target = args.input
    if target.isdigit():
        m = int(target)
        echo = {"m": m}
        payload = {"bounds": bound_report(m).to_json()}
    else:
        K = load_complex(target, cfg)
        echo = K.to_json()
        payload = {
            "bounds": bound_report(K.m).to_json(),
            "anick_primes": anick_prime_set(K, jobs=cfg.jobs, max_mf=cfg.max_mf).to_json(),
        }
    return echo, payload, 0


COMMANDS = {
    "bb": cmd_bb,
    "series": cmd_series,
    "decompose": cmd_decompose,
    "oracle": cmd_oracle,
    "pp": cmd_pp,
    "fan": cmd_fan,
    "quotient": cmd_quotient,
    "bounds": cmd_bounds,
}


def build_report(name, args, cfg):
    """Run one command; returns ``(report dict, exit code)``.  May raise."""
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        echo, payload, code = COMMANDS[name](args, cfg)
    messages = []
    for w in caught:
        text = str(w.message)
        if text not in messages:
            messages.append(text)
    report = {
        "schema": SCHEMA,
        "tool": "loopalg",
        "version": __version__,
        "command": name,
        "config": cfg.to_json(),
        "input": echo,
    }
    report.update(payload)
    report["warnings"] = messages
    if cfg.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    lines = []
    for key, value in report.items():
        if isinstance(value, dict) and "text" in value:
            lines.append(f"{key}: {value['text']}")
        elif isinstance(value, (dict, list)):
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _exit_code(exc):
    if isinstance(exc, LoopAlgError):
        return exc.exit_code
    if isinstance(exc, (ValueError, OSError)):
        return InvalidInput.exit_code
    return InternalAssertion.exit_code


# -- batch -------------------------------------------------------------------


def _batch_one(job):
    path, name, cfg, extra = job
    args = argparse.Namespace(input=str(path), **extra)
    try:
        report, code = build_report(name, args, cfg)
        return code, render(report, cfg.format), None
    except Exception as exc:  # isolate each input
        return _exit_code(exc), None, f"{type(exc).__name__}: {exc}"


def batch_inputs(directory):
    d = Path(directory)
    if not d.is_dir():
        raise InvalidInput(f"{directory} is not a directory")
    return sorted(p for p in d.iterdir() if p.is_file() and not p.name.startswith("."))


def cmd_batch(args, cfg):
    inputs = batch_inputs(args.directory)
    out_dir = Path(cfg.out) if cfg.out else Path(args.directory) / "reports"
    out_dir.mkdir(parents=True, exist_ok=True)
    extra = {"smooth_cover": args.smooth_cover, "rank": args.rank}
    worker_cfg = RunConfig(**{**cfg.__dict__, "jobs": 1, "out": None})
    results = parallel_map(_batch_one, [(p, args.command, worker_cfg, extra) for p in inputs], cfg.jobs)
    suffix = "json" if cfg.format == "json" else "txt"
    rows = []
    for path, (code, text, error) in zip(inputs, results):
        row = {"input": path.name, "exit_code": code, "status": "ok" if code == 0 else "error"}
        if text is not None:
            name = f"{path.stem}.{args.command}.{suffix}"
            (out_dir / name).write_text(text)
            row["report"] = name
        else:
            row["report"] = None
        if error:
            row["error"] = error
        rows.append(row)
    index = {
        "schema": SCHEMA,
        "tool": "loopalg",
        "version": __version__,
        "command": args.command,
        "config": cfg.to_json(),
        "inputs": rows,
    }
    (out_dir / "index.json").write_text(json.dumps(index, indent=2, ensure_ascii=False) + "\n")
    ok = sum(1 for r in rows if r["exit_code"] == 0)
    sys.stdout.write(f"{ok}/{len(rows)} inputs succeeded; index at {out_dir / 'index.json'}\n")
    return max((r["exit_code"] for r in rows), default=0)


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are invalid input (exit 1), not "cap exceeded"
        self.print_usage(sys.stderr)
        self.exit(InvalidInput.exit_code, f"{self.prog}: error: {message}\n")


def _env(dest, default):
    return os.environ.get(ENV_PREFIX + dest.upper(), default)


def _common_options():
    p = _Parser(add_help=False)
    p.add_argument("--field", type=FieldSpec.parse, default=_env("field", "q"), help="q or fp:<p> (default q)")
    p.add_argument("--trunc", type=int, default=_env("trunc", str(DEFAULT_TRUNC)), help="series truncation degree")
    p.add_argument("--jobs", type=int, default=_env("jobs", "1"), help="worker processes")
    p.add_argument("--max-vertices", type=int, default=_env("max_vertices", str(MAX_VERTICES)))
    p.add_argument("--max-mf", type=int, default=_env("max_mf", str(MAX_MF)), help="cap on missing faces")
    p.add_argument("--oracle-cap", type=int, default=_env("oracle_cap", str(ORACLE_CAP)))
    p.add_argument("--out", default=_env("out", None), help="output file (batch: output directory)")
    p.add_argument("--format", choices=("json", "text"), default=_env("format", "json"))
    p.add_argument("--timing", action="store_true", default=bool(_env("timing", "")),
                   help="add wall-clock timing (output is then not reproducible)")
    return p


def build_parser():
    common = _common_options()
    parser = _Parser(prog="loopalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"loopalg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def complex_cmd(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="complex file (JSON or one facet per line), '-' for stdin")
        return p

    complex_cmd("bb", "Backelin-Berglund polynomials of all full subcomplexes")
    complex_cmd("series", "Poincaré series of ΩZ_K, ΩDJ(K) and ΩR_K")
    complex_cmd("decompose", "loops-on-spheres exponents D_n and the prime set")
    complex_cmd("oracle", "cross-check against the bar-construction oracle")
    p = complex_cmd("pp", "Poincaré series of the loops on a polyhedral product (X, A)^K")
    p.add_argument("--g-series", required=True, help="JSON list of m fibre series F(H̃(G_i))")
    p.add_argument("--x-series", required=True, help="JSON list of m series F(H(ΩX_i))")
    p = sub.add_parser("fan", parents=[common], help="toric orbifold report from a fan")
    p.add_argument("input", help="fan JSON {n, rays, cones}")
    p.add_argument("--smooth-cover", action="store_true",
                   help="for smooth fans with π₁ ≠ 0, decompose via the universal cover")
    p = complex_cmd("quotient", "partial quotient Z_K / T^r")
    p.add_argument("--rank", type=int, required=True)
    p = sub.add_parser("bounds", parents=[common], help="torsion bounds for m, or for a complex file")
    p.add_argument("input", help="an integer m or a complex file")
    p = sub.add_parser("batch", parents=[common], help="run a command over every file in a directory")
    p.add_argument("directory")
    p.add_argument("--command", dest="batch_command", choices=BATCH_COMMANDS, required=True)
    p.add_argument("--smooth-cover", action="store_true")
    p.add_argument("--rank", type=int, default=0)
    return parser


def config_from_args(args):
    return RunConfig(
        field=args.field,
        trunc=args.trunc,
        jobs=args.jobs,
        max_vertices=args.max_vertices,
        max_mf=args.max_mf,
        oracle_cap=args.oracle_cap,
        out=args.out,
        format=args.format,
        timing=args.timing,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "batch":
            args.command = args.batch_command
            return cmd_batch(args, cfg)
        report, code = build_report(args.command, args, cfg)
        _emit(render(report, cfg.format), cfg.out)
        return code
    except Exception as exc:
        code = _exit_code(exc)
        sys.stderr.write(f"loopalg: {type(exc).__name__}: {exc}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
