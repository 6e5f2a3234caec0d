"""Command-line interface: catalog ingestion, partition functions,
thresholds, figure data, equilibrium states, and presentation tools.

Scalar results are printed as one deterministic JSON object (keys
sorted, complex numbers as {"re": .., "im": ..}); grid-producing
subcommands (``figures``, and ``ingest`` in table mode) emit CSV with a
header row.  Every flag has an environment-variable override with the
``KNOTSTAT_`` prefix (``KNOTSTAT_Q``, ``KNOTSTAT_BETA``, ...).  Exit
codes: 0 on success, 1 on domain or divergence errors (reported with a
machine-readable ``error`` field), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import catalog as _catalog
from . import kms as _kms
from . import knotgroups as _kg
from . import partition as _pt
from . import semigroup as _sg
from .crossed import QmodZ, bc_normalize, parse_bc_word
from .errors import KnotstatError

ENV_PREFIX = "KNOTSTAT_"


def _env(name: str, fallback: Optional[str] = None) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + name, fallback)


@dataclass
class Config:
    """Resolved common options shared by the subcommands."""

    q: int
    catalog_path: Optional[str]
    filter: str
    multiplicity_c: float
    n_rho: int
    tolerance: float
    output: str

    def load_catalog(self) -> _catalog.Catalog:
        if self.catalog_path:
            return _catalog.load_catalog(self.catalog_path, self.filter)
        return _catalog.load_catalog(
            _catalog.builtin_catalog_path(), self.filter
        )

    def model(self) -> _catalog.MultiplicityModel:
        return _catalog.MultiplicityModel(C=self.multiplicity_c)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--q", type=int, default=int(_env("Q", "2")),
        help="weight base q >= 2 (default 2)",
    )
    parser.add_argument(
        "--catalog", default=_env("CATALOG"),
        help="knot catalog CSV path (default: bundled table)",
    )
    parser.add_argument(
        "--filter", default=_env("FILTER", "all"),
        choices=["all", "alternating", "torus-free"],
        help="catalog row filter",
    )
    parser.add_argument(
        "--multiplicity-c", type=float,
        default=float(_env("MULTIPLICITY_C", repr(_catalog.DEFAULT_C))),
        help="growth constant C of the multiplicity model",
    )
    parser.add_argument(
        "--n-rho", type=int, default=int(_env("N_RHO", "1")),
        help="order of the restricting root of unity (default 1)",
    )
    parser.add_argument(
        "--tolerance", type=float, default=float(_env("TOLERANCE", "1e-12")),
        help="series tolerance (default 1e-12)",
    )
    parser.add_argument(
        "--output", default=_env("OUTPUT", "json"), choices=["json", "csv"],
        help="output format for commands that support both",
    )


def _config(args: argparse.Namespace) -> Config:
    if args.q < 2:
        raise KnotstatError(f"q must be >= 2, got {args.q}")
    if args.tolerance <= 0:
        raise KnotstatError(f"tolerance must be positive, got {args.tolerance}")
    return Config(
        q=args.q,
        catalog_path=args.catalog,
        filter=args.filter,
        multiplicity_c=args.multiplicity_c,
        n_rho=args.n_rho,
        tolerance=args.tolerance,
        output=args.output,
    )


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(_jsonable(obj), sort_keys=True) + "\n")


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    sys.stdout.write(buf.getvalue())


def _emit_error(message: str, output: str) -> None:
    if output == "csv":
        _emit_csv(["error"], [[message]])
    else:
        _emit_json({"error": message})


def _series_payload(result: _pt.SeriesResult, **extra) -> dict:
    payload = {
        "value": result.value,
        "terms_used": result.terms_used,
        "tail_bound": result.tail_bound,
        "converged": result.converged,
        "status": result.status,
        "details": dict(result.details),
    }
    payload.update(extra)
    return payload


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_ingest(args, cfg: Config) -> None:
    cat = cfg.load_catalog()
    if cfg.output == "csv":
        rows = [
            [
                rec.name,
                rec.crossing_number,
                rec.genus,
                int(rec.alternating),
                int(rec.torus),
                rec.weight,
                " ".join(str(c) for c in rec.alexander_coeffs),
            ]
            for rec in cat
        ]
        _emit_csv(
            ["name", "crossings", "genus", "alternating", "torus", "weight",
             "alexander"],
            rows,
        )
        return
    _emit_json(
        {
            "rows": len(cat),
            "filter": cfg.filter,
            "alternating": sum(1 for r in cat if r.alternating),
            "torus": sum(1 for r in cat if r.torus),
            "weights": [list(pair) for pair in _catalog.weights_with_counts(cat)],
        }
    )


def _source(args, cfg: Config):
    if args.source == "model":
        return cfg.model()
    return cfg.load_catalog()


def _cmd_z_alt(args, cfg: Config) -> None:
    result = _pt.z_alternating(
        args.beta, cfg.q, _source(args, cfg), tol=cfg.tolerance,
        mode=args.mode, max_weight=args.max_weight,
    )
    _emit_json(_series_payload(
        result, beta=args.beta, q=cfg.q, source=args.source, mode=args.mode,
    ))


def _cmd_z_groth(args, cfg: Config) -> None:
    result = _pt.z_grothendieck(
        args.beta, cfg.q, _source(args, cfg), tol=cfg.tolerance,
        max_weight=args.max_weight,
    )
    _emit_json(_series_payload(
        result, beta=args.beta, q=cfg.q, source=args.source,
    ))


def _cmd_z_qstar(args, cfg: Config) -> None:
    result = _pt.qstar_partition(
        args.beta, n_max=args.n_max, mode=args.mode, tol=cfg.tolerance
    )
    _emit_json(_series_payload(
        result, beta=args.beta, mode=args.mode, n_max=args.n_max,
    ))


def _cmd_z_tau(args, cfg: Config) -> None:
    cat = cfg.load_catalog()
    w = _sg.WeightFunction(q=cfg.q)
    elements = _sg.enumerate_group_elements(cat, args.max_weight)
    f_values = [_sg.f_weight(g, w, cat) for g, _ in elements]
    result = _pt.z_tau(args.beta, f_values, n_rho=cfg.n_rho, tol=cfg.tolerance)
    _emit_json(_series_payload(
        result, beta=args.beta, q=cfg.q, n_rho=cfg.n_rho,
        max_weight=args.max_weight, group_elements=len(f_values),
    ))


def _cmd_thresholds(args, cfg: Config) -> None:
    report = _pt.threshold_report(cfg.q)
    _emit_json(
        {
            "q": report.q,
            "beta_plus": report.beta_plus,
            "beta_minus": report.beta_minus,
            "beta_tilde_minus": report.beta_tilde_minus,
            "rhs_constant": _pt.beta_minus_rhs_constant(),
            "F": _pt.bound_gap_F(cfg.q),
            "crossover_x": _pt.crossover_x(),
        }
    )


def _cmd_figures(args, cfg: Config) -> None:
    if args.which == "f":
        beta_min = None if args.beta_min == "auto" else float(args.beta_min)
        rows = _pt.figure_f_grid(
            cfg.q, beta_min=beta_min, beta_max=args.beta_max,
            n_points=args.n_points,
        )
        header = ["beta", "f"]
    else:
        if args.n_points > 1:
            step = (args.q_max - args.q_min) / (args.n_points - 1)
            grid = [args.q_min + i * step for i in range(args.n_points)]
        else:
            grid = [args.q_min]
        rows = _pt.figure_H_grid(grid, C=args.figure_c)
        header = ["q", "H"]
    if cfg.output == "json":
        _emit_json({"columns": header, "rows": [list(r) for r in rows]})
        return
    _emit_csv(header, [[f"{a!r}", f"{b!r}"] for a, b in rows])


def _cmd_kms_toeplitz(args, cfg: Config) -> None:
    cat = cfg.load_catalog()
    knot = _sg.parse_knot(args.knot)
    ev = _kms.toeplitz_eigenlist(knot, args.beta, cfg.q, cat)
    n = args.entries
    _emit_json(
        {
            "knot": args.knot,
            "beta": args.beta,
            "q": cfg.q,
            "lambda1": ev.lambda1,
            "generator_ratio": ev.generator_ratio,
            "entries": [ev.entries(k) for k in range(n)],
            "partial_sum": ev.partial_sum(n),
            "tail": ev.tail(n),
        }
    )


def _parse_unit(text: Optional[str]) -> _kms.AdelicUnit:
    if not text:
        return _kms.AdelicUnit.one()
    mapping = {}
    for part in text.split(","):
        modulus, _, residue = part.partition(":")
        if not residue:
            raise KnotstatError(
                f"bad unit component {part!r}; expected modulus:residue"
            )
        mapping[int(modulus)] = int(residue)
    return _kms.AdelicUnit.of(mapping)


def _cmd_kms_bc(args, cfg: Config) -> None:
    r = QmodZ.parse(args.r)
    beta = math.inf if args.beta.lower() in ("inf", "infinity") else float(args.beta)
    u = _parse_unit(args.u)
    if beta <= 1.0:
        value: complex = complex(_kms.bc_high_temperature(r, beta))
        regime = "high"
    else:
        value = _kms.bc_low_temperature(r, beta, u)
        regime = "ground" if beta == math.inf else "low"
    _emit_json({"r": args.r, "beta": _jsonable(beta), "regime": regime,
                "value": value})


def _parse_monomial(text: str) -> _kms.Monomial:
    parts = text.split(":")
    if parts[0] == "e" and len(parts) >= 2:
        return _kms.Monomial.e(QmodZ.parse(":".join(parts[1:])))
    if parts[0] == "mu" and len(parts) in (2, 3):
        n = int(parts[1])
        a = int(parts[2]) if len(parts) == 3 else 1
        return _kms.Monomial.mu(n, a)
    raise KnotstatError(
        f"bad monomial {text!r}; expected e:A/B, mu:N, or mu:N:A"
    )


def _parse_entry(text: str) -> tuple[_sg.GroupElement, _kms.Monomial]:
    group_part, sep, mono_part = text.partition("::")
    if not sep:
        raise KnotstatError(
            f"bad entry {text!r}; expected GROUP::MONOMIAL"
        )
    return (
        _sg.parse_group_element(group_part.strip()),
        _parse_monomial(mono_part.strip()),
    )


def _cmd_kms_psi(args, cfg: Config) -> None:
    cat = cfg.load_catalog()
    w = _sg.WeightFunction(q=cfg.q)
    u = _parse_unit(args.u)
    entries = tuple(_parse_entry(e) for e in args.entry or ())
    f = _kms.SupportedFunction(entries)
    if args.translate:
        h = _sg.parse_group_element(args.translate)
        lhs, rhs, diff = _kms.psi_pushforward(
            h, f, args.beta, u, w, cat, n_rho=cfg.n_rho
        )
        _emit_json(
            {
                "beta": args.beta,
                "n_rho": cfg.n_rho,
                "translate": args.translate,
                "lhs": lhs,
                "rhs": rhs,
                "difference": diff,
            }
        )
        return
    value = _kms.psi_product_state(f, args.beta, u, w, cat, n_rho=cfg.n_rho)
    _emit_json(
        {
            "beta": args.beta,
            "n_rho": cfg.n_rho,
            "entries": len(entries),
            "value": value,
        }
    )


def _cmd_ratio_witness(args, cfg: Config) -> None:
    ratio = _kms.ratio_witness(args.n, args.big_n, args.beta, cfg.q, cfg.model())
    _emit_json(
        {
            "n": args.n,
            "big_n": args.big_n,
            "beta": args.beta,
            "q": cfg.q,
            "ratio": ratio,
            "expected": float(cfg.q) ** (-args.beta),
        }
    )


def _presentation_from_args(args) -> _kg.Presentation:
    sources = [bool(args.knot), bool(args.braid), bool(getattr(args, "file", None))]
    if sum(sources) != 1:
        raise KnotstatError(
            "exactly one of --knot, --braid, --file must be given"
        )
    if args.knot:
        return _kg.builtin_presentation(args.knot)
    if args.braid:
        word = [int(tok) for tok in args.braid.replace(",", " ").split()]
        return _kg.braid_to_wirtinger(word)
    return _kg.load_presentation(args.file)


def _presentation_text(p: _kg.Presentation) -> str:
    import tempfile

    with tempfile.NamedTemporaryFile("r", suffix=".txt", delete=False) as handle:
        path = handle.name
    try:
        _kg.save_presentation(p, path)
        with open(path) as f:
            return f.read()
    finally:
        os.unlink(path)


def _cmd_wirtinger(args, cfg: Config) -> None:
    p = _presentation_from_args(args)
    if args.out:
        _kg.save_presentation(p, args.out)
    ab = _kg.abelianization(p)
    _emit_json(
        {
            "generators": list(p.generators),
            "relators": [list(w) for w in p.relators],
            "n_generators": p.n_generators,
            "n_relators": len(p.relators),
            "basepoint": p.basepoint,
            "wirtinger": p.is_wirtinger(),
            "abelianization": {
                "free_rank": ab.free_rank,
                "torsion": list(ab.torsion),
            },
            "text": _presentation_text(p),
            "saved_to": args.out,
        }
    )


def _cmd_alexander(args, cfg: Config) -> None:
    if args.seifert:
        rows = [
            [int(x) for x in row.split()]
            for row in args.seifert.split(";")
            if row.strip()
        ]
        poly = _kg.alexander_from_seifert(rows)
        _emit_json(
            {
                "method": "seifert",
                "coefficients": poly.as_list(),
                "string": str(poly),
            }
        )
        return
    p = _presentation_from_args(args)
    method = "fox"
    if args.sum:
        p = _kg.amalgamate(p, _kg.builtin_presentation(args.sum))
        method = "fox-amalgamated"
    poly = _kg.alexander_poly_fox(p)
    _emit_json(
        {
            "method": method,
            "coefficients": poly.as_list(),
            "string": str(poly),
            "determinant_at_minus_1": abs(poly.evaluate(-1.0)),
        }
    )


def _parse_complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def _alexander_roots(poly: _kg.LaurentPoly) -> list[complex]:
    import numpy as np

    dense = poly.as_list()
    roots = np.roots(list(reversed(dense)))
    ordered = sorted(
        (complex(z) for z in roots),
        key=lambda z: (round(z.real, 12), round(z.imag, 12)),
    )
    return ordered


def _cmd_derham(args, cfg: Config) -> None:
    p = _presentation_from_args(args)
    poly = _kg.alexander_poly_fox(p)
    if args.root is not None:
        root = _parse_complex(args.root)
    else:
        roots = _alexander_roots(poly)
        if not roots:
            raise KnotstatError("the Alexander polynomial has no roots")
        if not 0 <= args.root_index < len(roots):
            raise KnotstatError(
                f"root index {args.root_index} out of range; "
                f"{len(roots)} roots available"
            )
        root = roots[args.root_index]
    rep = _kg.derham_solve(p, root, branch=args.branch, alexander=poly)
    _emit_json(
        {
            "root": rep.root,
            "sqrt_root": rep.sqrt_root,
            "branch": args.branch,
            "x_values": list(rep.x_values),
            "residual": rep.residual,
            "kernel_dim": rep.kernel_dim,
            "alexander": poly.as_list(),
        }
    )


def _cmd_bc_normalize(args, cfg: Config) -> None:
    word = parse_bc_word(args.word.split())
    nf = bc_normalize(word)
    terms = {
        str(label): str(coeff) for label, coeff in sorted(
            nf.x.terms.items(), key=lambda kv: str(kv[0])
        )
    }
    _emit_json({"a": nf.a, "b": nf.b, "x": terms, "string": str(nf)})


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotstat",
        description=(
            "Statistical mechanics over the knot semigroup: partition "
            "functions, convergence thresholds, equilibrium states, and "
            "knot-group tools."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        return p

    add("ingest", "load and summarize a knot catalog CSV")

    p = add("z-alt", "partition function over alternating composites")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--source", choices=["catalog", "model"], default="catalog")
    p.add_argument("--mode", choices=["product", "direct", "both"],
                   default="product")
    p.add_argument("--max-weight", type=int, default=40)

    p = add("z-groth", "partition function of the Grothendieck group")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--source", choices=["catalog", "model"], default="catalog")
    p.add_argument("--max-weight", type=int, default=40)

    p = add("z-qstar", "multiplicative-integers partition function")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--mode", choices=["closed", "direct", "both"],
                   default="closed")
    p.add_argument("--n-max", type=int, default=1_000_000)

    p = add("z-tau", "weighted product partition function over group elements")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--max-weight", type=int, default=12)

    add("thresholds", "convergence thresholds and derived constants")

    p = add("figures", "emit figure data grids")
    p.add_argument("--which", choices=["f", "H"], required=True)
    p.add_argument("--beta-min", default="auto",
                   help="'auto' or a float (f-figure)")
    p.add_argument("--beta-max", type=float, default=20.0)
    p.add_argument("--n-points", type=int, default=200)
    p.add_argument("--q-min", type=float, default=2.0)
    p.add_argument("--q-max", type=float, default=100.0)
    p.add_argument("--figure-c", type=float, default=400.0,
                   help="growth constant used by the H-figure")

    p = add("kms-toeplitz", "eigenvalue list of a prime-knot Gibbs state")
    p.add_argument("--knot", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--entries", type=int, default=5)

    p = add("kms-bc", "arithmetic state value on e(r)")
    p.add_argument("--r", required=True, help="rational label a/b")
    p.add_argument("--beta", required=True,
                   help="inverse temperature; 'inf' for the ground state")
    p.add_argument("--u", default=None,
                   help="adelic unit as modulus:residue[,modulus:residue...]")

    p = add("kms-psi", "weighted product state on a supported function")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--entry", action="append",
                   help="support entry GROUP::MONOMIAL, repeatable "
                        "(e.g. '3_1 -- unknot::e:1/2' or 'unknot::mu:2')")
    p.add_argument("--u", default=None)
    p.add_argument("--translate", default=None,
                   help="group element h: report both sides of the "
                        "transformation law")

    p = add("ratio-witness", "eigenvalue-ratio witness for q^(-beta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--big-n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)

    p = add("wirtinger", "Wirtinger presentation of a knot or braid closure")
    p.add_argument("--knot", default=None, help="builtin knot name")
    p.add_argument("--braid", default=None,
                   help="braid word, e.g. '1,1,1' or '1 -2 1 -2'")
    p.add_argument("--file", default=None, help="presentation text file")
    p.add_argument("--out", default=None, help="write the presentation here")

    p = add("alexander", "Alexander polynomial via Fox calculus or Seifert")
    p.add_argument("--knot", default=None)
    p.add_argument("--braid", default=None)
    p.add_argument("--file", default=None)
    p.add_argument("--sum", default=None,
                   help="amalgamate with this builtin knot first")
    p.add_argument("--seifert", default=None,
                   help="Seifert matrix rows 'a b; c d'")

    p = add("derham", "triangular representation at an Alexander root")
    p.add_argument("--knot", default=None)
    p.add_argument("--braid", default=None)
    p.add_argument("--file", default=None)
    p.add_argument("--root", default=None,
                   help="complex root, e.g. '0.5+0.8660254i'")
    p.add_argument("--root-index", type=int, default=0,
                   help="pick the k-th Alexander root (deterministic order)")
    p.add_argument("--branch", type=int, choices=[1, -1], default=1)

    p = add("bc-normalize", "normal form of a word over mu_n, mu_n*, e(r)")
    p.add_argument("--word", required=True,
                   help="whitespace-separated tokens, e.g. 'mu:2 e:1/3 mu*:2'")

    return parser


_HANDLERS = {
    "ingest": _cmd_ingest,
    "z-alt": _cmd_z_alt,
    "z-groth": _cmd_z_groth,
    "z-qstar": _cmd_z_qstar,
    "z-tau": _cmd_z_tau,
    "thresholds": _cmd_thresholds,
    "figures": _cmd_figures,
    "kms-toeplitz": _cmd_kms_toeplitz,
    "kms-bc": _cmd_kms_bc,
    "kms-psi": _cmd_kms_psi,
    "ratio-witness": _cmd_ratio_witness,
    "wirtinger": _cmd_wirtinger,
    "alexander": _cmd_alexander,
    "derham": _cmd_derham,
    "bc-normalize": _cmd_bc_normalize,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch, and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    output = getattr(args, "output", "json")
    try:
        cfg = _config(args)
        _HANDLERS[args.command](args, cfg)
        return 0
    except KnotstatError as exc:
        _emit_error(str(exc), output)
        return 1
    except (ValueError, OSError) as exc:
        _emit_error(str(exc), output)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
