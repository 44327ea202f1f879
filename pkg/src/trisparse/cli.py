"""Command-line interface.

Subcommands: audit, exact, sample, bound, chif, certify, gen, experiment.
Exit codes: 0 ok, 1 inequality violation, 2 usage or input error,
3 cap or budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import bounds as _bounds
from . import generators as _gen
from .errors import (
    CapExceededError,
    CertificateError,
    DomainError,
    GenerationBudgetError,
    GraphFormatError,
)
from .fractional import certified_upper_bound, chif_exact, verify_certificate
from .graph import audit, load_graph, to_edge_list, to_json_obj
from .hardcore import exact_marginals, verify_genhcm
from .pipeline import ExperimentSpec, parse_fugacity, run_experiment
from .sampler import ChainConfig, estimate_marginal, glauber_run

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _read_graph(path: str, fmt: str | None):
    if path == "-":
        return load_graph(sys.stdin.read(), fmt)
    return load_graph(Path(path).read_text(encoding="utf-8"), fmt)


def _emit(payload, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_graph_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph file (edge-list or JSON), or - for stdin")
    p.add_argument("--input-format", choices=["edge-list", "json"], default=None)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="trisparse",
        description="Hard-core occupancy bounds and fractional colouring "
        "on locally triangle-sparse graphs.",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write JSON output to this file")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--deterministic", action="store_true",
                       help="omit wall-clock fields from reports")
        p.add_argument("--threads", type=int, default=1,
                       help="advisory only; execution is single-threaded")

    p = sub.add_parser("audit", help="degree/triangle audit and implied f")
    _add_graph_arg(p)
    common(p)

    p = sub.add_parser("exact", help="exact hard-core marginals and margins")
    _add_graph_arg(p)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="fugacity; decimals are floats, p/q is exact")
    p.add_argument("--cap", type=int, default=30)
    common(p)

    p = sub.add_parser("sample", help="Glauber-dynamics occupancy estimate")
    _add_graph_arg(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--burn-in", type=int, default=1000)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=8)
    p.add_argument("--marginal", type=int, default=None,
                   help="estimate Pr(v in I) for this vertex instead")
    common(p)

    p = sub.add_parser("bound", help="closed-form occupancy/colouring bounds")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    common(p)

    p = sub.add_parser("chif", help="exact fractional chromatic number")
    _add_graph_arg(p)
    p.add_argument("--coloring", action="store_true",
                   help="include the optimal weighted independent sets")
    p.add_argument("--cap", type=int, default=24)
    common(p)

    p = sub.add_parser("certify", help="verify an (alpha, beta) certificate")
    _add_graph_arg(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int, default=None,
                      help="sampled mode with this many random subgraphs")
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("gen", help="write a generated graph as edge list")
    p.add_argument("--kind", required=True,
                   choices=["random-regular", "triangle-free-regular", "blowup",
                            "cycle", "path", "complete", "star", "petersen",
                            "kneser", "erdos-renyi"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base", help="base graph file for --kind blowup")
    p.add_argument("--json", action="store_true", help="emit JSON graph format")
    common(p)

    p = sub.add_parser("experiment", help="run a JSON experiment spec")
    p.add_argument("spec", help="experiment spec file")
    common(p)
    return top


def _parse_number(text: str):
    """Fraction for 'p/q' or integer strings, float otherwise."""
    try:
        return parse_fugacity(text if "/" in text or text.isdigit() else float(text))
    except (ValueError, DomainError):
        raise DomainError(f"cannot parse number {text!r}") from None


def _cmd_audit(args) -> int:
    g = _read_graph(args.graph, args.input_format)
    aud = audit(g)
    _emit({"n": g.n, "m": g.m, **aud.to_json_dict()}, args)
    return EXIT_OK


def _cmd_exact(args) -> int:
    g = _read_graph(args.graph, args.input_format)
    lam = _parse_number(args.lam)
    hx = exact_marginals(g, lam, cap=args.cap)
    rep = verify_genhcm(g, lam, cap=args.cap)
    payload = hx.to_json_dict()
    payload["occupancy_fraction"] = (
        str(hx.occupancy_fraction) if isinstance(hx.occupancy_fraction, Fraction)
        else hx.occupancy_fraction
    )
    payload["genhcm_ok"] = rep.ok
    payload["genhcm_min_margin"] = (
        min(min(rep.vertex_margins), rep.occupancy_margin) if g.n else 0.0
    )
    _emit(payload, args)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def _cmd_sample(args) -> int:
    g = _read_graph(args.graph, args.input_format)
    lam = float(_parse_number(args.lam))
    cfg = ChainConfig(lam=lam, burn_in=args.burn_in, samples=args.samples,
                      thinning=args.thin, seed=args.seed, chains=args.chains)
    if args.marginal is not None:
        payload = estimate_marginal(g, cfg, args.marginal).to_json_dict()
    else:
        payload = glauber_run(g, cfg).to_json_dict()
    _emit(payload, args)
    return EXIT_OK


def _cmd_bound(args) -> int:
    lam = float(_parse_number(args.lam))
    report = _bounds.bound_report(args.delta, args.f, lam, eps=args.eps, n=args.n)
    _emit(report.to_json_dict(), args)
    return EXIT_OK


def _cmd_chif(args) -> int:
    g = _read_graph(args.graph, args.input_format)
    res = chif_exact(g, cap=args.cap)
    payload = {"chif": str(res.value), "n": g.n}
    if args.coloring:
        payload["coloring"] = [
            {"set": sorted(s), "weight": str(w)} for s, w in res.coloring.atoms
        ]
        payload["vertex_duals"] = [str(y) for y in res.vertex_duals]
    _emit(payload, args)
    return EXIT_OK


def _cmd_certify(args) -> int:
    g = _read_graph(args.graph, args.input_format)
    lam = _parse_number(args.lam)
    alpha = _parse_number(args.alpha)
    beta = _parse_number(args.beta)
    exhaustive = True if args.exhaustive else (None if args.samples is None else False)
    cert = verify_certificate(
        g, alpha, beta, lam,
        exhaustive=exhaustive,
        samples=args.samples if args.samples is not None else 64,
        seed=args.seed,
    )
    payload = {
        "alpha": str(alpha) if isinstance(alpha, Fraction) else alpha,
        "beta": str(beta) if isinstance(beta, Fraction) else beta,
        "lambda": str(lam) if isinstance(lam, Fraction) else lam,
        "verified": cert.verified,
        "exhaustive": cert.exhaustive,
        "checked_subgraphs": cert.checked_subgraphs,
        "worst_margin": (
            str(cert.worst_margin) if isinstance(cert.worst_margin, Fraction)
            else cert.worst_margin
        ),
    }
    if cert.witness is not None:
        payload["witness"] = {"subgraph": list(cert.witness[0]), "vertex": cert.witness[1]}
    if cert.verified and cert.exhaustive:
        ub = certified_upper_bound(g, cert)
        payload["certified_upper_bound"] = str(ub) if isinstance(ub, Fraction) else ub
    _emit(payload, args)
    return EXIT_OK if cert.verified else EXIT_VIOLATION


def _cmd_gen(args) -> int:
    if args.kind == "blowup":
        if not args.base or args.b is None:
            raise DomainError("--kind blowup needs --base FILE and --b")
        base = _read_graph(args.base, None)
        g = _gen.clique_blowup(base, args.b)
    else:
        params = {}
        for key in ("n", "d", "b", "k", "p"):
            val = getattr(args, key)
            if val is not None:
                params[key] = val
        params["seed"] = args.seed
        g = _gen.named_graph(args.kind, **params)
    if args.json:
        text = json.dumps(to_json_obj(g)) + "\n"
    else:
        text = to_edge_list(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    spec_path = Path(args.spec)
    if not spec_path.exists():
        raise DomainError(f"spec file not found: {spec_path}")
    spec = ExperimentSpec.from_dict(
        json.loads(spec_path.read_text(encoding="utf-8")),
        base_dir=spec_path.parent,
    )
    report = run_experiment(spec, deterministic=args.deterministic)
    text = report.to_csv() if args.format == "csv" else report.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.all_passed else EXIT_VIOLATION


_HANDLERS = {
    "audit": _cmd_audit,
    "exact": _cmd_exact,
    "sample": _cmd_sample,
    "bound": _cmd_bound,
    "chif": _cmd_chif,
    "certify": _cmd_certify,
    "gen": _cmd_gen,
    "experiment": _cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except (CapExceededError, GenerationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphFormatError, DomainError, CertificateError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
