"""Command-line front end.

    python -m toricke analyze catalog:BlP2 --json
    python -m toricke verify-weights catalog:BlP2 --c 1,0 --kmax 40
    python -m toricke catalog list

Polytopes are given as a path to a JSON document or as ``catalog:NAME``.
Exit codes: 0 success, 2 bad input, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import catalog
from .integrals import ExponentRangeError, mc_exp_moments
from .lattice import boundary_weight_series, inttheta_target, verify_inttheta_asymptotics
from .polytope import FanoPolytope, PolytopeError, load_polytope, volume
from .soliton import (SolitonConvergenceError, futaki_basis_values, is_kahler_einstein,
                      modified_futaki, solve_soliton)
from .stability import greatest_ricci_lower_bound, twisted_futaki

EXIT_INPUT = 2
EXIT_SOLVER = 3


class InputError(Exception):
    pass


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_float(x: float) -> str:
    return f"{float(x):.12g}"


def _float12(x: float) -> float:
    return float(fmt_float(x))


def parse_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse rational vector {text!r}") from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse rational {text!r}") from None


def resolve_polytope(ref: str) -> FanoPolytope:
    if ref.startswith("catalog:"):
        return catalog.get(ref.split(":", 1)[1])
    try:
        return load_polytope(ref)
    except OSError as exc:
        raise InputError(f"cannot read polytope file {ref!r}: {exc.strerror}") from None
    except PolytopeError as exc:
        raise InputError(f"{ref}: {exc}") from None


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class AnalysisReport:
    name: str | None
    dim: int
    volume: Fraction
    barycenter: tuple[Fraction, ...]
    is_KE: bool
    R: Fraction
    critical_facet: int | None
    destabilizer: tuple[int, ...] | None
    soliton_vector: tuple[float, ...]
    soliton_grad_norm: float
    futaki_basis_values: tuple[Fraction, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.dim,
            "volume": fmt_rational(self.volume),
            "volume_float": _float12(self.volume),
            "barycenter": [fmt_rational(x) for x in self.barycenter],
            "is_KE": self.is_KE,
            "R": fmt_rational(self.R),
            "critical_facet": self.critical_facet,
            "destabilizer": None if self.destabilizer is None else list(self.destabilizer),
            "soliton_vector": [_float12(x) for x in self.soliton_vector],
            "soliton_grad_norm": _float12(self.soliton_grad_norm),
            "futaki_basis_values": [fmt_rational(x) for x in self.futaki_basis_values],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AnalysisReport":
        return cls(
            name=d["name"],
            dim=d["dim"],
            volume=Fraction(d["volume"]),
            barycenter=tuple(Fraction(x) for x in d["barycenter"]),
            is_KE=d["is_KE"],
            R=Fraction(d["R"]),
            critical_facet=d["critical_facet"],
            destabilizer=None if d["destabilizer"] is None else tuple(d["destabilizer"]),
            soliton_vector=tuple(float(x) for x in d["soliton_vector"]),
            soliton_grad_norm=float(d["soliton_grad_norm"]),
            futaki_basis_values=tuple(Fraction(x) for x in d["futaki_basis_values"]),
        )

    def to_text(self) -> str:
        def vec(v, f):
            return "(" + ", ".join(f(x) for x in v) + ")"

        lines = [
            f"name: {self.name}",
            f"dim: {self.dim}",
            f"volume: {fmt_rational(self.volume)} ({fmt_float(self.volume)})",
            f"barycenter: {vec(self.barycenter, fmt_rational)}",
            f"is_KE: {str(self.is_KE).lower()}",
            f"R: {fmt_rational(self.R)}",
            f"critical_facet: {self.critical_facet}",
            f"destabilizer: {None if self.destabilizer is None else vec(self.destabilizer, str)}",
            f"soliton_vector: {vec(self.soliton_vector, fmt_float)}",
            f"soliton_grad_norm: {fmt_float(self.soliton_grad_norm)}",
            f"futaki_basis_values: {vec(self.futaki_basis_values, fmt_rational)}",
        ]
        return "\n".join(lines)


def analyze(P: FanoPolytope, tol: float = 1e-10) -> AnalysisReport:
    ke, bc = is_kahler_einstein(P)
    stab = greatest_ricci_lower_bound(P)
    sol = solve_soliton(P, tol)
    return AnalysisReport(
        name=P.name,
        dim=P.dim,
        volume=volume(P),
        barycenter=bc,
        is_KE=ke,
        R=stab.R,
        critical_facet=stab.critical_facet,
        destabilizer=stab.destabilizer,
        soliton_vector=tuple(float(x) for x in sol.a_star),
        soliton_grad_norm=sol.grad_norm,
        futaki_basis_values=futaki_basis_values(P),
    )


# ---------------------------------------------------------------------------
# subcommands


def _text(payload: dict) -> str:
    def show(v):
        if isinstance(v, list):
            return "(" + ", ".join(str(x) for x in v) + ")"
        return str(v)

    return "\n".join(f"{k}: {show(v)}" for k, v in payload.items())


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_analyze(args) -> int:
    P = resolve_polytope(args.polytope)
    report = analyze(P, args.tol)
    payload = report.to_dict()
    text = report.to_text()
    if args.mc_samples:
        est, err = mc_exp_moments(P, [0.0] * P.dim, args.mc_samples, args.seed)
        mc = {
            "samples": args.mc_samples,
            "seed": args.seed,
            "volume": _float12(est[0]),
            "volume_stderr": _float12(err[0]),
            "barycenter": [_float12(x / est[0]) for x in est[1:]],
        }
        payload["monte_carlo"] = mc
        text += f"\nmonte_carlo: volume {fmt_float(est[0])} +- {fmt_float(err[0])}"
    _emit(args, payload, text)
    return 0


def cmd_soliton(args) -> int:
    P = resolve_polytope(args.polytope)
    sol = solve_soliton(P, args.tol)
    payload = {
        "name": P.name,
        "a_star": [_float12(x) for x in sol.a_star],
        "grad_norm": _float12(sol.grad_norm),
        "iterations": sol.iterations,
        "hessian_condition": _float12(sol.hessian_condition),
        "gradient_fallback": sol.gradient_fallback,
    }
    _emit(args, payload, _text(payload))
    return 0


def cmd_rbound(args) -> int:
    P = resolve_polytope(args.polytope)
    rep = greatest_ricci_lower_bound(P)
    payload = {
        "name": P.name,
        "R": fmt_rational(rep.R),
        "R_float": _float12(rep.R),
        "barycenter": [fmt_rational(x) for x in rep.barycenter],
        "critical_facet": rep.critical_facet,
        "critical_normal": None if rep.critical_facet is None else list(P.facets[rep.critical_facet]),
        "Q": None if rep.Q is None else [fmt_rational(x) for x in rep.Q],
        "destabilizer": None if rep.destabilizer is None else list(rep.destabilizer),
        "tied_facets": list(rep.tied_facets),
    }
    _emit(args, payload, _text(payload))
    return 0


def cmd_futaki(args) -> int:
    P = resolve_polytope(args.polytope)
    c = parse_vector(args.c)
    if len(c) != P.dim:
        raise InputError(f"--c has {len(c)} entries, polytope has dim {P.dim}")
    if args.t is None:
        value = modified_futaki(P, [0] * P.dim, c)
        payload = {"name": P.name, "c": [fmt_rational(x) for x in c], "futaki": fmt_rational(value)}
    else:
        t = parse_rational(args.t)
        value = twisted_futaki(P, t, c)
        payload = {"name": P.name, "c": [fmt_rational(x) for x in c], "t": fmt_rational(t),
                   "twisted_futaki": fmt_rational(value)}
    _emit(args, payload, _text(payload))
    return 0


def cmd_verify_weights(args) -> int:
    P = resolve_polytope(args.polytope)
    c = parse_vector(args.c)
    if len(c) != P.dim:
        raise InputError(f"--c has {len(c)} entries, polytope has dim {P.dim}")
    if args.kmax < 2:
        raise InputError("--kmax must be at least 2")
    if args.kmax < 10:
        print(f"warning: k_max={args.kmax} is too small for an asymptotic fit (need >= 10)",
              file=sys.stderr)
    series = boundary_weight_series(P, c, args.kmax)
    target = inttheta_target(P, c, series.mu_max)
    n = P.dim
    rows = []
    for k in range(1, args.kmax + 1):
        wp = series.boundary_weights[k]
        ratio = wp / Fraction(k) ** n
        rows.append({
            "k": k,
            "dim_R_k": series.dims[k],
            "w_k": fmt_rational(series.weights[k]),
            "w_prime_k": fmt_rational(wp),
            "w_prime_over_k_n": _float12(ratio),
            "target": fmt_rational(target),
            "gap": _float12(abs(ratio - target)),
        })
    payload: dict[str, Any] = {"name": P.name, "c": [fmt_rational(x) for x in c],
                               "mu_max": fmt_rational(series.mu_max),
                               "target": fmt_rational(target), "rows": rows}
    if args.kmax >= 10:
        fit = verify_inttheta_asymptotics(P, c, args.kmax, series=series)
        payload["fit"] = {"leading": _float12(fit.leading), "subleading": _float12(fit.subleading),
                          "rel_gap": _float12(fit.rel_gap), "k_range": list(fit.k_range)}
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    cols = ["k", "dim_R_k", "w_k", "w_prime_k", "w_prime_over_k_n", "target", "gap"]
    print(f"# {P.name or args.polytope}  c={args.c}  mu_max={fmt_rational(series.mu_max)}")
    print("\t".join(cols))
    for r in rows:
        print("\t".join(str(r[col]) for col in cols))
    if "fit" in payload:
        f = payload["fit"]
        print(f"# fit on k in [{f['k_range'][0]}, {f['k_range'][1]}]: leading {f['leading']}, "
              f"target {fmt_rational(target)} ({fmt_float(target)}), rel_gap {f['rel_gap']}")
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        if args.json:
            print(json.dumps(catalog.catalog_names()))
        else:
            for name in catalog.catalog_names():
                print(f"{name}\t{catalog.DESCRIPTIONS[name]}")
        return 0
    if not args.name:
        raise InputError("catalog show needs a polytope name")
    print(json.dumps(catalog.catalog_document(args.name)))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=1e-10, help="soliton tolerance on |grad F|/F")
    common.add_argument("--seed", type=int, default=0, help="seed for Monte Carlo checks")

    parser = argparse.ArgumentParser(prog="toricke", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for a polytope")
    p.add_argument("polytope")
    p.add_argument("--mc-samples", type=int, default=0,
                   help="add a Monte Carlo volume/barycenter cross-check")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("soliton", parents=[common], help="soliton vector field")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_soliton)

    p = sub.add_parser("rbound", parents=[common], help="greatest Ricci lower bound R(M)")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_rbound)

    p = sub.add_parser("futaki", parents=[common], help="Futaki or twisted Futaki invariant")
    p.add_argument("polytope")
    p.add_argument("--c", required=True, help="comma-separated rational vector")
    p.add_argument("--t", default=None, help="twisting parameter (rational)")
    p.set_defaults(func=cmd_futaki)

    p = sub.add_parser("verify-weights", parents=[common], help="degeneration weight asymptotics")
    p.add_argument("polytope")
    p.add_argument("--c", required=True, help="comma-separated rational vector")
    p.add_argument("--kmax", type=int, default=40)
    p.set_defaults(func=cmd_verify_weights)

    p = sub.add_parser("catalog", parents=[common], help="built-in polytopes")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except (InputError, PolytopeError, ExponentRangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolitonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
