"""Command-line front end.

Exit status: 0 verified, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .ds import MAX_WEIGHT, MIN_WEIGHT, ds_basis, is_ds
from .formats import (
    Certificate,
    ParseError,
    format_certificate,
    format_poly,
    parse_certificate,
    parse_poly,
    poly_from_json,
    poly_to_json,
)
from .krv import TangentialDerivation, ds_to_krv, is_krv, is_special
from .lie import is_lie, lie_bracket, lyndon_basis, poisson_bracket
from .ncpoly import Poly, substitute, trace
from .verify import Report, check_certificate, verify_chain, verify_morphism, verify_t_identity, verify_triangle

DEFAULT_MAX_WEIGHT = 8
DEFAULT_DEGREE = 12

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    min_weight: int = MIN_WEIGHT
    max_weight: int = DEFAULT_MAX_WEIGHT
    degree: int = DEFAULT_DEGREE
    fmt: str = "text"
    out: Path | None = None

    def __post_init__(self):
        if not MIN_WEIGHT <= self.min_weight <= self.max_weight <= MAX_WEIGHT:
            raise UsageError(f"weights must satisfy {MIN_WEIGHT} <= min <= max <= {MAX_WEIGHT}")
        if self.degree < 2:
            raise UsageError("--degree must be >= 2")
        if self.fmt not in ("text", "structured"):
            raise UsageError("--format must be 'text' or 'structured'")

    def check_weight(self, n: int) -> int:
        if n > self.max_weight and n <= MAX_WEIGHT:
            raise UsageError(f"weight {n} needs --allow-large (default cap is {self.max_weight})")
        if not self.min_weight <= n <= self.max_weight:
            raise UsageError(f"weight {n} out of range {self.min_weight}..{self.max_weight}")
        return n


def _config(args) -> RunConfig:
    fmt = getattr(args, "format", "text")
    return RunConfig(
        max_weight=MAX_WEIGHT if getattr(args, "allow_large", False) else DEFAULT_MAX_WEIGHT,
        degree=getattr(args, "degree", None) or DEFAULT_DEGREE,
        fmt="structured" if fmt == "json" else fmt,
        out=Path(args.out) if getattr(args, "out", None) else None,
    )


def _weights(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--weights expects a comma-separated list of integers, got {text!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_poly(path: str) -> Poly:
    text = _read(path)
    if text.lstrip().startswith("{"):
        return poly_from_json(text)
    return parse_poly(text)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out is not None:
        cfg.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_poly(p: Poly, cfg: RunConfig) -> None:
    if cfg.fmt == "structured":
        _emit(json.dumps(poly_to_json(p), sort_keys=True) + "\n", cfg)
    else:
        _emit(format_poly(p), cfg)


def _emit_report(report: Report, cfg: RunConfig) -> int:
    _emit(report.to_json() if cfg.fmt == "structured" else report.to_text(), cfg)
    for c in report.failures():
        print(f"failed check: {c.name}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


# -- ds ---------------------------------------------------------------------------


def cmd_ds_basis(args) -> int:
    cfg = _config(args)
    n = cfg.check_weight(args.weight)
    basis = ds_basis(n)
    cert = Certificate(n, "leading-coefficient" if any(f.leading_coeff for f in basis) else "rref",
                       tuple(f.poly for f in basis))
    if cfg.fmt == "structured":
        text = json.dumps({"weight": n, "dimension": cert.dimension, "normalization": cert.normalization,
                           "elements": [poly_to_json(p) for p in cert.elements]}, indent=2, sort_keys=True) + "\n"
    else:
        text = format_certificate(cert)
    _emit(text, cfg)
    print(f"weight {n}: dimension {cert.dimension}", file=sys.stderr if cfg.out is None else sys.stdout)
    return EXIT_OK


def cmd_ds_check(args) -> int:
    cfg = _config(args)
    cert = parse_certificate(_read(args.file))
    if not MIN_WEIGHT <= cert.weight <= MAX_WEIGHT:
        raise UsageError(f"certificate weight {cert.weight} outside {MIN_WEIGHT}..{MAX_WEIGHT}")
    return _emit_report(check_certificate(cert), cfg)


# -- krv --------------------------------------------------------------------------


def _krv_report(p: Poly, name: str) -> Report:
    report = Report(f"krv image of {name}")
    if not is_ds(p):
        report.add("input in ds", "the input must be a double shuffle element", False)
        return report
    image = ds_to_krv(p)
    report.add("special", "D_{g,h}(x+y) = 0", image.special)
    report.add("divergence", "proportional to tr((x+y)^n - x^n - y^n)", image.in_krv,
               lam=image.divergence_scalar)
    return report


def cmd_krv_map(args) -> int:
    cfg = _config(args)
    if args.file:
        sources = [(args.file, _read_poly(args.file))]
    elif args.weight is not None:
        n = cfg.check_weight(args.weight)
        sources = [(f"w{n}.{i}", f.poly) for i, f in enumerate(ds_basis(n), start=1)]
    else:
        raise UsageError("krv map needs --weight or a polynomial file")
    chunks, ok = [], True
    for name, p in sources:
        report = _krv_report(p, name)
        ok &= report.passed
        if not report.passed:
            chunks.append(report.to_text())
            continue
        image = ds_to_krv(p)
        if cfg.fmt == "structured":
            chunks.append(json.dumps({"name": name, "weight": image.weight, "g": poly_to_json(image.g),
                                      "h": poly_to_json(image.h), "lambda": str(image.divergence_scalar)},
                                     sort_keys=True) + "\n")
        else:
            chunks.append(f"# {name}: weight {image.weight}, lambda {image.divergence_scalar}\n"
                          f"# g\n{format_poly(image.g)}# h\n{format_poly(image.h, header=False)}")
    _emit("".join(chunks), cfg)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_krv_check(args) -> int:
    cfg = _config(args)
    g, h = _read_poly(args.g), _read_poly(args.h)
    D = TangentialDerivation(g, h)
    report = Report("krv membership")
    if not (is_lie(g) and is_lie(h)):
        report.add("Lie inputs", "g and h are Lie elements", False)
        return _emit_report(report, cfg)
    try:
        ok, lam = is_krv(D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report.add("special", "D(x+y) = 0", is_special(D))
    report.add("divergence", "proportional to tr((x+y)^n - x^n - y^n)", lam is not None, lam=lam)
    return _emit_report(report, cfg)


# -- verify -----------------------------------------------------------------------


def cmd_verify_chain(args) -> int:
    cfg = _config(args)
    if args.file:
        cert = parse_certificate(_read(args.file))
        report = verify_chain(cert.weight, cert.elements)
        return _emit_report(report, cfg)
    if args.weight is not None:
        weights = [args.weight]
    elif args.weights:
        weights = _weights(args.weights)
    else:
        weights = list(range(MIN_WEIGHT, cfg.max_weight + 1))
    report = Report("chain checks")
    for n in weights:
        report.extend(verify_chain(cfg.check_weight(n)))
    return _emit_report(report, cfg)


def cmd_verify_triangle(args) -> int:
    cfg = _config(args)
    weights = _weights(args.weights) if args.weights else [3, 5, 7]
    return _emit_report(verify_triangle([cfg.check_weight(n) for n in weights]), cfg)


def cmd_verify_morphism(args) -> int:
    cfg = _config(args)
    weights = _weights(args.weights) if args.weights else [3, 5]
    return _emit_report(verify_morphism([cfg.check_weight(n) for n in weights]), cfg)


def cmd_verify_all(args) -> int:
    """Triangle at 3, 5, 7; morphism on the requested weights; t-identity through ``--degree``."""
    cfg = _config(args)
    weights = _weights(args.weights) if args.weights else [3, 5]
    report = Report("triangle, morphism and t-identity")
    report.extend(verify_triangle([3, 5, 7]))
    report.extend(verify_morphism([cfg.check_weight(n) for n in weights]))
    report.extend(verify_t_identity(cfg.degree))
    return _emit_report(report, cfg)


def cmd_t_identity(args) -> int:
    cfg = _config(args)
    return _emit_report(verify_t_identity(cfg.degree), cfg)


# -- poly tools -------------------------------------------------------------------


def cmd_poly(args) -> int:
    cfg = _config(args)
    action = args.action
    files = args.files
    arity = {"parse": 1, "bracket": 2, "poisson": 2, "substitute": 3, "trace": 1, "is-lie": 1, "lyndon": 0}
    if len(files) != arity[action]:
        raise UsageError(f"poly {action} takes {arity[action]} file argument(s)")
    if action == "lyndon":
        if not args.degree:
            raise UsageError("poly lyndon needs --degree")
        _emit(lyndon_basis(args.degree).to_table(), cfg)
        return EXIT_OK
    polys = [_read_poly(f) for f in files]
    if action == "parse":
        _emit_poly(polys[0], cfg)
    elif action == "bracket":
        _emit_poly(lie_bracket(*polys), cfg)
    elif action == "poisson":
        try:
            _emit_poly(poisson_bracket(*polys), cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif action == "substitute":
        p, img_x, img_y = polys
        try:
            _emit_poly(substitute(p, img_x, img_y), cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif action == "trace":
        _emit(str(trace(polys[0])) + "\n", cfg)
    elif action == "is-lie":
        ok = is_lie(polys[0])
        _emit(f"{'true' if ok else 'false'}\n", cfg)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured", "json"), default="text")
    common.add_argument("--out", help="write output to this path instead of standard output")
    common.add_argument("--allow-large", action="store_true",
                        help=f"admit weights {DEFAULT_MAX_WEIGHT + 1}..{MAX_WEIGHT} (slow exact linear algebra)")

    parser = argparse.ArgumentParser(prog="dskrv", description="Double shuffle and Kashiwara-Vergne computations.")
    groups = parser.add_subparsers(dest="group", required=True)

    ds = groups.add_parser("ds", help="double shuffle bases").add_subparsers(dest="cmd", required=True)
    p = ds.add_parser("basis", parents=[common], help="solve for a basis and write its certificate")
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_ds_basis)
    p = ds.add_parser("check", parents=[common], help="re-verify a certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_ds_check)

    krv = groups.add_parser("krv", help="the map into special derivations").add_subparsers(dest="cmd", required=True)
    p = krv.add_parser("map", parents=[common], help="compute (g, h) for basis elements or a file")
    p.add_argument("file", nargs="?")
    p.add_argument("--weight", type=int)
    p.set_defaults(func=cmd_krv_map)
    p = krv.add_parser("check", parents=[common], help="test a pair (g, h) for krv membership")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_krv_check)

    verify = groups.add_parser("verify", help="verification suites").add_subparsers(dest="cmd", required=True)
    p = verify.add_parser("chain", parents=[common], help="per-element checks at given weights or on a certificate")
    p.add_argument("file", nargs="?", help="certificate to check instead of the solver output")
    p.add_argument("--weight", type=int)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_verify_chain)
    for name, func, help_ in (("triangle", cmd_verify_triangle, "commutative triangle"),
                              ("morphism", cmd_verify_morphism, "bracket compatibility")):
        p = verify.add_parser(name, parents=[common], help=help_)
        p.add_argument("--weights")
        p.set_defaults(func=func)
    p = verify.add_parser("all", parents=[common], help="triangle, morphism and t-identity together")
    p.add_argument("--weights")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_verify_all)

    poly = groups.add_parser("poly", parents=[common], help="polynomial utilities")
    poly.add_argument("action", choices=("parse", "bracket", "poisson", "substitute", "trace", "is-lie", "lyndon"))
    poly.add_argument("files", nargs="*")
    poly.add_argument("--degree", type=int)
    poly.set_defaults(func=cmd_poly)

    t = groups.add_parser("t", help="Bernoulli-series elements").add_subparsers(dest="cmd", required=True)
    p = t.add_parser("identity", parents=[common], help="check t01 + t02 + t12 = 0 through --degree")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_t_identity)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"dskrv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
