"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence

from . import export
from .absorder import group, interval
from .cluster import ClusterData, build_GA, isomorphism_check
from .complexes import build_EX, build_X, build_X_sigma, first_facet
from .errors import CoxlatticeError, TypeParseError, VerificationError
from .rootsystem import build, parse_type
from .suite import BIG_TYPES, verify

class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    type_symbol: str
    command: str
    output_format: str = "json"
    sigma_word: list[int] | None = None
    extension: bool = False
    big: bool = False
    seed: int = 0
    ex: bool = False
    timing: bool = False
    samples: int = 1000
    out: str | None = None


def _parse_word(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"--sigma expects comma separated root indices, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxlattice", description="Noncrossing lattices of finite reflection groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default):
        sp.add_argument("type", help="type symbol such as A3, B4, H3, E6 or I2(7)")
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--big", action="store_true", help="allow E7 and E8")

    sp = sub.add_parser("tables", help="Steinberg roots, Petrie vertices and the mu.rho table")
    common(sp, ("csv", "json", "text"), "csv")
    sp = sub.add_parser("complex", help="export X(gamma), X(sigma) or EX(gamma)")
    common(sp, ("json", "dot", "off", "text"), "json")
    sp.add_argument("--sigma", help="word w1,...,wk in root indices; sigma = R(w_k)...R(w_1)")
    sp.add_argument("--ex", action="store_true", help="the extended complex EX(gamma)")
    sp = sub.add_parser("verify", help="run the invariant and lattice suite")
    common(sp, ("json", "text"), "json")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=1000, help="random subsets for the flag lemma check")
    sp.add_argument("--extension", action="store_true", help="also compare with GA for H and I2 types")
    sp.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical output)")
    sp = sub.add_parser("associahedron", help="compare EX(gamma) with the generalised associahedron")
    common(sp, ("json", "csv", "dot"), "json")
    sp.add_argument("--extension", action="store_true", help="allow non-crystallographic types")
    sp = sub.add_parser("interval", help="export the interval [I, gamma]")
    common(sp, ("json", "text"), "json")
    return p


def _check_type(cfg: RunConfig) -> None:
    datum = parse_type(cfg.type_symbol)
    if datum.type_label in BIG_TYPES and not cfg.big:
        raise UsageError(
            f"{datum.type_label} is gated: interval enumeration and the lattice check take a long time "
            "(tens of minutes for E7, far longer for E8); pass --big to run anyway"
        )


def cmd_tables(cfg: RunConfig) -> tuple[str, int]:
    sd = build(cfg.type_symbol)
    if cfg.output_format == "csv":
        return export.tables_csv(sd), 0
    if cfg.output_format == "json":
        return export.dumps(export.tables_dict(sd)), 0
    return export.tables_text(sd), 0


def _sigma(G, word: list[int]):
    for i in word:
        if not 1 <= i <= G.N:
            raise UsageError(f"root index {i} out of range 1..{G.N}")
    sigma = G.word(word)
    lg, ls, lr = G.length(G.gamma), G.length(sigma), G.length(sigma.inverse() * G.gamma)
    if lg != ls + lr:
        raise UsageError(
            f"sigma is not below gamma: l(gamma) = {lg} but l(sigma) + l(sigma^-1 gamma) = {ls} + {lr}"
        )
    return sigma


def cmd_complex(cfg: RunConfig) -> tuple[str, int]:
    sd = build(cfg.type_symbol)
    G = group(sd)
    extra = {}
    if cfg.ex:
        if cfg.sigma_word is not None:
            raise UsageError("--ex and --sigma cannot be combined")
        cx = build_EX(G)
    elif cfg.sigma_word is not None:
        sigma = _sigma(G, cfg.sigma_word)
        X = build_X(G)
        cx = build_X_sigma(G, sigma, X)
        ff = first_facet(G, sigma, X)
        extra = {"sigma_word": cfg.sigma_word, "length": G.length(sigma), "first_facet": list(ff)}
    else:
        cx = build_X(G)
    fmt = cfg.output_format
    if fmt == "dot":
        return cx.to_dot(), 0
    if fmt == "off":
        if sd.n != 3:
            raise UsageError("OFF output is only available for rank 3 types")
        return export.off(cx, sd), 0
    if fmt == "text":
        lines = [repr(cx)] + [" ".join(str(int(v)) for v in f) for f in cx.facets()]
        return "\n".join(lines) + "\n", 0
    d = cx.to_dict()
    d.update(extra)
    d["dimension"] = cx.dimension
    return export.dumps(d), 0


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    report = verify(cfg.type_symbol, seed=cfg.seed, extension=cfg.extension, samples=cfg.samples,
                    timing=cfg.timing)
    code = 0 if report["passed"] else 1
    if cfg.output_format == "text":
        lines = [f"{report['type']}: {'PASS' if report['passed'] else 'FAIL'}",
                 f"interval elements: {report['interval']['elements']}",
                 f"meet/join pairs: {report['lattice']['pairs_checked']}"]
        lines += [f"  {c['name']}: {'ok' if c['passed'] else 'FAILED'} ({c['checked']})" for c in report["checks"]]
        lines.append(f"  sphere: {'ok' if report['sphere']['passed'] else 'FAILED'}")
        lines.append(f"  associahedron: {'ok' if report['associahedron']['passed'] else 'FAILED'}")
        return "\n".join(lines) + "\n", code
    return export.dumps(report), code


def cmd_associahedron(cfg: RunConfig) -> tuple[str, int]:
    sd = build(cfg.type_symbol)
    if not sd.datum.is_crystallographic and not cfg.extension:
        raise UsageError(f"{sd.datum.type_label} is not crystallographic; pass --extension")
    G = group(sd)
    cd = ClusterData(G)
    if cfg.output_format == "csv":
        return cd.table_csv(), 0
    ga = build_GA(G, extension=True, data=cd)
    if cfg.output_format == "dot":
        return ga.to_dot(), 0
    report = isomorphism_check(build_EX(G), ga)
    report = {"type": sd.datum.type_label, "vertices": len(ga.vertices), "facets": len(ga.facets()), **report}
    return export.dumps(report), 0 if report["passed"] else 1


def cmd_interval(cfg: RunConfig) -> tuple[str, int]:
    G = group(cfg.type_symbol)
    poset = interval(G)
    if cfg.output_format == "text":
        return f"{G.label}: {len(poset)} elements, rank sizes {poset.rank_sizes()}\n", 0
    return poset.to_json() + "\n", 0


COMMANDS = {
    "tables": cmd_tables,
    "complex": cmd_complex,
    "verify": cmd_verify,
    "associahedron": cmd_associahedron,
    "interval": cmd_interval,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = RunConfig(
            type_symbol=args.type,
            command=args.command,
            output_format=args.format,
            sigma_word=_parse_word(getattr(args, "sigma", None)),
            extension=getattr(args, "extension", False),
            big=args.big,
            seed=getattr(args, "seed", 0),
            ex=getattr(args, "ex", False),
            timing=getattr(args, "timing", False),
            samples=getattr(args, "samples", 1000),
            out=args.out,
        )
        _check_type(cfg)
        text, code = COMMANDS[cfg.command](cfg)
    except (UsageError, TypeParseError) as exc:
        print(f"coxlattice: error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"coxlattice: verification failed: {exc}", file=sys.stderr)
        return 1
    except CoxlatticeError as exc:
        print(f"coxlattice: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
