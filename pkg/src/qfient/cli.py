"""Command-line front end: compute QFI/GME, audit bounds, sweep schedules, emit figure data."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .bounds import audit_pair, audit_state
from .entanglement import GME_QUBIT_CAP, gme_pure, gme_werner
from .errors import CapacityError, ValidationError
from .linalg import DIM_CAP_ENV, check_capacity, default_dim_cap
from .qfi import qfi_eigen, qfi_pure
from .sampling import ginibre_density, rng_from_seed
from .scaling import default_n_grid, fit_exponent, sweep
from .states import (
    KINDS,
    MAXIMALLY_MIXED,
    NON_MAX_ENTANGLED,
    PRODUCT_ZERO,
    PURE_KINDS,
    TAILORED_PURE,
    WERNER_GHZ,
    ScheduleSpec,
    StateFamilySpec,
    analytic_gme,
    analytic_qfi,
    build_state,
    build_state_vector,
    local_hamiltonian,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_VIOLATION = 3

SCHEMA_VERSION = 1

FAMILY_ALIASES = {
    "werner": WERNER_GHZ,
    "non-max": NON_MAX_ENTANGLED,
    "tailored": TAILORED_PURE,
    "product": PRODUCT_ZERO,
    "mixed": MAXIMALLY_MIXED,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    return f"{float(x):.17g}"


def _family_kind(name: str) -> str:
    kind = FAMILY_ALIASES.get(name, name)
    if kind not in KINDS:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(KINDS)}")
    return kind


def _load_config(path: str) -> dict[str, str]:
    config: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line {raw.strip()!r} is not key=value")
            key, value = line.split("=", 1)
            config[key.strip()] = value.strip()
    return config


def _resolve(args, config: dict[str, str], key: str, conv, default):
    """Option precedence: command-line flag, then config file, then built-in default."""
    value = getattr(args, key.replace("-", "_"), None)
    if value is None:
        value = config.get(key)
    if value is None:
        return default
    try:
        return conv(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value for {key}: {value!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    items = tuple(int(round(float(part))) for part in str(text).split(",") if part.strip())
    if not items:
        raise ValueError("empty list")
    return items


def _as_int(text) -> int:
    return int(round(float(text)))


@contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _header_comment(seed) -> str:
    return f"# qfient {__version__} seed={seed}"


def _emit_csv(fh, seed, columns, rows, extra_comments=()):
    fh.write(_header_comment(seed) + "\n")
    for comment in extra_comments:
        fh.write(f"# {comment}\n")
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(_fmt(v) for v in row) + "\n")


def _emit_json(fh, seed, payload: dict):
    document = {"schema_version": SCHEMA_VERSION, "tool": "qfient", "version": __version__, "seed": seed}
    document.update(payload)
    json.dump(document, fh, indent=2, sort_keys=True)
    fh.write("\n")


def _spec_from_args(args, config) -> StateFamilySpec:
    family = _resolve(args, config, "family", str, None)
    if family is None:
        raise UsageError("--family is required")
    kind = _family_kind(family)
    p = _resolve(args, config, "p", float, None)
    l = _resolve(args, config, "l", _as_int, None)
    try:
        return StateFamilySpec(kind, p=p, l=l)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="qfient", description="QFI, entanglement quantifiers, and certified bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="key=value config file (flags take precedence)")
        sp.add_argument("--seed", help="RNG seed (default 0)")
        sp.add_argument("--format", choices=("csv", "json"), dest="format")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--dense-cap", dest="dense_cap", help=f"dense dimension cap (default {DIM_CAP_ENV} or {default_dim_cap()})")

    def add_family(sp):
        sp.add_argument("--family", help="state family kind")
        sp.add_argument("--p", help="mixing/superposition weight")
        sp.add_argument("--l", help="entangled block size")

    sp = sub.add_parser("qfi", help="QFI of a family member under the local sigma_z/2 generator")
    add_family(sp)
    sp.add_argument("--n", help="register size")
    sp.add_argument("--state-file", dest="state_file",
                    help=".npy density matrix or amplitude vector on a qubit register")
    add_common(sp)

    sp = sub.add_parser("gme", help="geometric entanglement of a family member")
    add_family(sp)
    sp.add_argument("--n", help="register size")
    sp.add_argument("--restarts", help="restarts for the pure-state search (default 32)")
    add_common(sp)

    sp = sub.add_parser("audit", help="evaluate every applicable bound; nonzero exit on violation")
    add_family(sp)
    sp.add_argument("--n", help="register size")
    sp.add_argument("--k", help="producibility block size for the caps (default 1)")
    sp.add_argument("--pairs", help="audit this many random pairs instead of one family member")
    add_common(sp)

    sp = sub.add_parser("scaling", help="sweep a decay schedule over register sizes and fit the exponent")
    sp.add_argument("--family", help="state family kind (default tailored-pure)")
    sp.add_argument("--eps1", help="entanglement decay exponent (default 0.1)")
    sp.add_argument("--eps2", help="block-fraction decay exponent (default 0.1)")
    sp.add_argument("--n-grid", dest="n_grid", help="comma-separated register sizes")
    add_common(sp)

    sp = sub.add_parser("figure-eg", help="GHZ-plus-noise entanglement curves as CSV")
    sp.add_argument("--n", help="comma-separated register sizes (default 3,4,10)")
    add_common(sp)

    return parser


def _register_size(dim: int) -> int:
    n = dim.bit_length() - 1
    if 2**n != dim:
        raise UsageError(f"state dimension {dim} is not a power of two; no per-site generator exists")
    return n


def _cmd_qfi(args, config) -> int:
    seed = _resolve(args, config, "seed", _as_int, 0)
    cap = _resolve(args, config, "dense-cap", _as_int, default_dim_cap())
    fmt = _resolve(args, config, "format", str, "csv")
    out = _resolve(args, config, "out", str, None)
    state_file = _resolve(args, config, "state-file", str, None)
    if state_file is not None:
        state = np.load(state_file)
        n = _register_size(state.shape[0])
        check_capacity(state.shape[0], cap)
        h = local_hamiltonian(n, dim_cap=cap)
        result = qfi_pure(state, h) if state.ndim == 1 else qfi_eigen(state, h)
        label, p, l, value, method = f"file:{state_file}", None, None, result.value, result.method
    else:
        spec = _spec_from_args(args, config)
        n = _resolve(args, config, "n", _as_int, None)
        if n is None:
            raise UsageError("--n is required")
        if 2**n <= cap:
            result = qfi_eigen(build_state(spec, n, dim_cap=cap), local_hamiltonian(n, dim_cap=cap))
            value, method = result.value, result.method
        else:
            value, method = analytic_qfi(spec, n), "analytic"
        label, p, l = spec.kind, spec.p, spec.l
    with _open_out(out) as fh:
        if fmt == "json":
            _emit_json(fh, seed, {"family": label, "n": n, "p": p, "l": l,
                                  "qfi": value, "method": method})
        else:
            _emit_csv(fh, seed, ("family", "n", "p", "l", "qfi", "method"),
                      [(label, n, p, l, value, method)])
    return EXIT_OK


def _cmd_gme(args, config) -> int:
    spec = _spec_from_args(args, config)
    n = _resolve(args, config, "n", _as_int, None)
    if n is None:
        raise UsageError("--n is required")
    seed = _resolve(args, config, "seed", _as_int, 0)
    cap = _resolve(args, config, "dense-cap", _as_int, default_dim_cap())
    restarts = _resolve(args, config, "restarts", _as_int, 32)
    fmt = _resolve(args, config, "format", str, "csv")
    out = _resolve(args, config, "out", str, None)
    mu_star = None
    if spec.kind == WERNER_GHZ:
        if n < 3:
            print("N=2 is unsupported for the GHZ-plus-noise curve: the closed-form "
                  "search endpoint is undefined there", file=sys.stderr)
            return EXIT_USAGE
        point = gme_werner(n, spec.p)
        value, method, mu_star = point.value, "curve-maximization", point.mu_star
    elif spec.kind in PURE_KINDS and n <= GME_QUBIT_CAP and 2**n <= cap:
        result = gme_pure(build_state_vector(spec, n, dim_cap=cap), restarts=restarts, seed=seed)
        value, method = result.value, "alternating-search"
    else:
        bound = analytic_gme(spec, n)
        value, method = bound.value, "closed-form" if bound.is_exact else "upper-bound"
    with _open_out(out) as fh:
        if fmt == "json":
            _emit_json(fh, seed, {"family": spec.kind, "n": n, "p": spec.p, "l": spec.l,
                                  "e_g": value, "method": method, "mu_star": mu_star})
        else:
            _emit_csv(fh, seed, ("family", "n", "p", "l", "e_g", "method", "mu_star"),
                      [(spec.kind, n, spec.p, spec.l, value, method, mu_star)])
    return EXIT_OK


def _report_payload(report) -> dict:
    return dataclasses.asdict(report)


def _cmd_audit(args, config) -> int:
    n = _resolve(args, config, "n", _as_int, None)
    seed = _resolve(args, config, "seed", _as_int, 0)
    cap = _resolve(args, config, "dense-cap", _as_int, default_dim_cap())
    pairs = _resolve(args, config, "pairs", _as_int, None)
    out = _resolve(args, config, "out", str, None)
    if pairs is not None:
        n = 3 if n is None else n
        check_capacity(2**n, cap)
        rng = rng_from_seed(seed)
        reports = []
        for i in range(pairs):
            rho = ginibre_density(2**n, rng)
            sigma = ginibre_density(2**n, rng)
            reports.append(audit_pair(rho, sigma, n=n, labels=(f"random-{i}-a", f"random-{i}-b")))
        payload = {"mode": "random-pairs", "n": n, "pairs": pairs,
                   "reports": [_report_payload(r) for r in reports]}
        ok = all(r.passed for r in reports)
    else:
        spec = _spec_from_args(args, config)
        if n is None:
            raise UsageError("--n is required")
        k = _resolve(args, config, "k", _as_int, 1)
        report = audit_state(spec, n, k, dim_cap=cap)
        payload = {"mode": "state", "report": _report_payload(report)}
        ok = report.passed
    with _open_out(out) as fh:
        _emit_json(fh, seed, payload)
    return EXIT_OK if ok else EXIT_VIOLATION


def _cmd_scaling(args, config) -> int:
    family = _resolve(args, config, "family", str, TAILORED_PURE)
    kind = _family_kind(family)
    eps1 = _resolve(args, config, "eps1", float, 0.1)
    eps2 = _resolve(args, config, "eps2", float, 0.1)
    seed = _resolve(args, config, "seed", _as_int, 0)
    cap = _resolve(args, config, "dense-cap", _as_int, default_dim_cap())
    grid = _resolve(args, config, "n-grid", _int_list, default_n_grid())
    fmt = _resolve(args, config, "format", str, "csv")
    out = _resolve(args, config, "out", str, None)
    schedule = ScheduleSpec(eps1=eps1, eps2=eps2)
    records = sweep(kind, schedule, grid, dim_cap=cap)
    fit = fit_exponent(records)
    target = 2.0 - eps1 - 2.0 * eps2
    with _open_out(out) as fh:
        if fmt == "json":
            _emit_json(fh, seed, {
                "family": kind, "eps1": eps1, "eps2": eps2, "target_exponent": target,
                "fit": dataclasses.asdict(fit),
                "records": [dataclasses.asdict(r) for r in records],
            })
        else:
            fit_line = (f"fit: exponent={_fmt(fit.exponent)} target={_fmt(target)} "
                        f"residual_rms={_fmt(fit.residual_rms)} points={fit.points_used}")
            rows = [
                (r.n, r.p, r.l, r.qfi, r.e_g, r.r_leb, target, fit.exponent)
                for r in records
            ]
            _emit_csv(fh, seed,
                      ("N", "p", "l", "qfi", "e_g", "r_leb", "target_exponent", "fitted_exponent"),
                      rows, extra_comments=(fit_line,))
    return EXIT_OK


def _cmd_figure_eg(args, config) -> int:
    n_list = _resolve(args, config, "n", _int_list, (3, 4, 10))
    seed = _resolve(args, config, "seed", _as_int, 0)
    fmt = _resolve(args, config, "format", str, "csv")
    out = _resolve(args, config, "out", str, None)
    for n in n_list:
        if n < 3:
            print(f"N={n} is unsupported for the GHZ-plus-noise curve: the closed-form "
                  "search endpoint is undefined below N=3", file=sys.stderr)
            return EXIT_USAGE
    rows = []
    for n in n_list:
        for i in range(101):
            p = i / 100
            point = gme_werner(n, p)
            rows.append((n, p, point.value, point.mu_star, p / 2))
    with _open_out(out) as fh:
        if fmt == "json":
            _emit_json(fh, seed, {"columns": ["N", "p", "e_g", "mu_star", "upper_bound_half_p"],
                                  "rows": [list(r) for r in rows]})
        else:
            _emit_csv(fh, seed, ("N", "p", "e_g", "mu_star", "upper_bound_half_p"), rows)
    return EXIT_OK


_DISPATCH = {
    "qfi": _cmd_qfi,
    "gme": _cmd_gme,
    "audit": _cmd_audit,
    "scaling": _cmd_scaling,
    "figure-eg": _cmd_figure_eg,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        config = _load_config(args.config) if args.config else {}
        return _DISPATCH[args.command](args, config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
