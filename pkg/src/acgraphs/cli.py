"""Command-line front end: seeded, reproducible experiment runs with
machine-readable reports.

Subcommands: ``analyze`` (graph analytics), ``walk`` (samplers plus
diagnostics), ``stats`` (reference distributions and tests), ``scan``
(word-pair pipelines), ``verify`` (the theorem-check suite).

Every report embeds its manifest, the package version and all resolved
defaults; identical manifests produce byte-identical reports (there are
no timestamps, and all randomness is seeded).  Exact quantities are
emitted as numerator/denominator pairs.  Exit codes: 0 success, 1 usage
error, 2 failed verification, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .conjecture import (
    AK_PAIR,
    WordPair,
    distance_series,
    parse_pair,
    scan_quotient,
    transvection_base,
)
from .elements import (
    AbelianTuple,
    GroupElement,
    MatrixGF,
    Permutation,
    parse_cycles,
    parse_matrix,
    parse_residues,
)
from .errors import (
    GroupSpecError,
    PreconditionError,
    ResourceCapError,
    VerificationError,
)
from .graphs import GraphHandle, GraphMode, components, diameter, distance
from .groups import FiniteGroup, SymmetricAmbient, parse_group
from .stats import (
    chi_squared_test,
    cycle_distribution,
    point_action_uniformity,
    stirling_first,
)
from .subgroups import Subgroup, derived_subgroup, normal_closure
from .verify import run_all
from .walkers import (
    WalkConfig,
    acr_sample_many,
    cayley_class_walk,
    default_step_budget,
    mixing_diagnostic,
    pra_sample_many,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_RESOURCE = 3

_WALKER_CHUNK = 4096  # fixed, so reports do not depend on --threads


@dataclass
class RunManifest:
    command: str
    group_spec: str | None
    parameters: dict
    seed: int
    output_path: str

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "groupSpec": self.group_spec,
            "parameters": self.parameters,
            "seed": self.seed,
            "outputPath": self.output_path,
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return {"numerator": obj.numerator, "denominator": obj.denominator}
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON-serializable: {type(obj)!r}")


def emit_report(manifest: RunManifest, report: dict, out) -> None:
    doc = {
        "manifest": manifest.to_json(),
        "version": __version__,
        "report": report,
    }
    text = json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"
    if manifest.output_path == "-":
        out.write(text)
    else:
        with open(manifest.output_path, "w") as fh:
            fh.write(text)


def _emit_csv(manifest: RunManifest, rows: list[dict], out) -> None:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    text = buf.getvalue()
    if manifest.output_path == "-":
        out.write(text)
    else:
        with open(manifest.output_path, "w") as fh:
            fh.write(text)


# -- element / tuple parsing ------------------------------------------------------


def parse_element(group: FiniteGroup | SymmetricAmbient, text: str) -> GroupElement:
    text = text.strip()
    if isinstance(group, SymmetricAmbient):
        return parse_cycles(text, group.degree)
    sample = group.elements[0]
    if isinstance(sample, Permutation):
        return parse_cycles(text, sample.degree)
    if isinstance(sample, MatrixGF):
        return parse_matrix(text, sample.modulus)
    if isinstance(sample, AbelianTuple):
        return parse_residues(text, sample.moduli)
    raise GroupSpecError(f"cannot parse element {text!r}")


def parse_tuple(
    group: FiniteGroup | SymmetricAmbient, text: str, k: int
) -> tuple[GroupElement, ...]:
    """Semicolon-separated element literals, identity-padded up to k."""
    parts = [p for p in text.split(";") if p.strip()]
    if len(parts) > k:
        raise GroupSpecError(f"tuple literal has {len(parts)} components, k={k}")
    els = [parse_element(group, p) for p in parts]
    iden = group.identity_element
    els += [iden] * (k - len(els))
    return tuple(els)


def _resolve_normal(group: FiniteGroup, spec: str) -> Subgroup:
    spec = spec.strip()
    if spec in ("whole", "group", "all"):
        return Subgroup(group, tuple(range(group.order)), True)
    if spec == "derived":
        return derived_subgroup(group)
    if spec.startswith("ncl:"):
        seeds = [
            group.index_of(parse_element(group, part))
            for part in spec[4:].split(";")
            if part.strip()
        ]
        return normal_closure(group, seeds)
    raise GroupSpecError(f"unknown normal-subgroup spec {spec!r}")


def _graph_mode(name: str, *, directed: bool = False) -> GraphMode:
    name = name.strip().lower()
    if name == "full-ac":
        return GraphMode.full_ac()
    if name == "restricted-ac":
        return GraphMode.restricted_ac(directed=directed)
    if name == "nielsen":
        return GraphMode.nielsen()
    if name == "extended-nielsen":
        return GraphMode.extended_nielsen()
    raise GroupSpecError(f"unknown graph mode {name!r}")


# -- analyze ------------------------------------------------------------------------


def cmd_analyze(args, out) -> int:
    group = parse_group(args.group)
    mode = _graph_mode(args.mode, directed=args.directed_conjugators)
    normal = _resolve_normal(group, args.normal) if mode.is_ac else None
    handle = GraphHandle(group, args.k, mode, normal)
    parts = components(handle)
    report = {
        "graph": handle.describe(),
        "vertexCount": handle.vertex_count,
        **parts.to_json(),
    }
    if args.diameter:
        report["diameter"] = [
            {
                "component": lab,
                "value": diameter(
                    handle, parts.codes_of(lab), exact=args.diameter == "exact"
                ),
                "method": args.diameter,
            }
            for lab in range(parts.count)
        ]
    if args.distance:
        u_text, _, v_text = args.distance.partition("|")
        u = tuple(group.index_of(e) for e in parse_tuple(group, u_text, args.k))
        v = tuple(group.index_of(e) for e in parse_tuple(group, v_text, args.k))
        report["distances"] = [
            {
                "from": handle.format_tuple(u),
                "to": handle.format_tuple(v),
                "value": distance(handle, u, v),
            }
        ]
    manifest = RunManifest(
        "analyze",
        args.group,
        {
            "k": args.k,
            "mode": mode.describe(),
            "normal": args.normal,
            "diameter": args.diameter,
            "distance": args.distance,
            "format": args.format,
        },
        args.seed,
        args.output,
    )
    if args.format == "csv":
        rows = [
            {
                "vertexCode": int(code),
                "vertex": handle.format_tuple(handle.decode(int(code))),
                "component": int(parts.labels[code]),
            }
            for code in np.flatnonzero(handle.vertex_mask)
        ]
        _emit_csv(manifest, rows, out)
    else:
        emit_report(manifest, report, out)
    return EXIT_OK


# -- walk ---------------------------------------------------------------------------


_SYM_RE = re.compile(r"^sym:(\d+)$")


def _resolve_walk_group(spec: str):
    """Enumerated group, or a Sym_n ambient for large degrees.

    Walks over Sym_n with the Alt_n target never benefit from element
    enumeration (the vertex predicate is a parity check and conjugators
    are drawn by shuffle), so degrees beyond 6 go straight to the ambient
    arithmetic-only context."""
    m = _SYM_RE.match(spec.strip().lower())
    if m and int(m.group(1)) >= 7:
        return SymmetricAmbient(int(m.group(1)))
    return parse_group(spec)


def _run_walkers(kind, group, normal, init, cfg, seed, samples, threads):
    """Deterministic fan-out: fixed-size chunks with per-chunk spawned
    seeds, so the result is independent of the thread count."""
    chunks = [
        min(_WALKER_CHUNK, samples - start)
        for start in range(0, samples, _WALKER_CHUNK)
    ]
    seeds = np.random.SeedSequence(seed).spawn(len(chunks))

    def run_chunk(i: int):
        rng = np.random.default_rng(seeds[i])
        if kind == "acr":
            return acr_sample_many(group, normal, init, cfg, rng, chunks[i])
        return pra_sample_many(group, init, cfg, rng, chunks[i])

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, range(len(chunks))))
    else:
        results = [run_chunk(i) for i in range(len(chunks))]
    return [el for chunk in results for el in chunk]


def cmd_walk(args, out) -> int:
    group = _resolve_walk_group(args.group)
    ambient = isinstance(group, SymmetricAmbient)
    if ambient and args.normal != "derived":
        raise GroupSpecError("ambient symmetric walks support --normal derived only")
    normal = None if ambient else _resolve_normal(group, args.normal)
    init = parse_tuple(group, args.init, args.k)

    if args.budget == "auto":
        if ambient or isinstance(group.elements[0], Permutation):
            degree = group.degree if ambient else group.elements[0].degree
            budget = default_step_budget(args.k, degree=degree)
        else:
            budget = default_step_budget(args.k, subgroup_order=normal.order)
    else:
        budget = int(args.budget)

    if args.algorithm == "cayley":
        if ambient:
            raise GroupSpecError("the Cayley walk needs an enumerated group")
        seeds_idx = [group.index_of(e) for e in init]
        rng = np.random.default_rng(args.seed)
        samples = [
            cayley_class_walk(group, normal, seeds_idx, budget, rng)
            for _ in range(args.samples)
        ]
        config_json: dict = {"k": args.k, "stepBudget": budget}
    else:
        cfg = WalkConfig(
            k=args.k,
            step_budget=budget,
            use_cumulative=not args.no_cumulative,
            plain_move_probability=args.plain_prob,
            conjugator_word_length=args.conjugator_words,
            full_move_set=args.full_move_set,
        )
        samples = _run_walkers(
            args.algorithm, group, normal, init, cfg, args.seed, args.samples,
            args.threads,
        )
        config_json = cfg.to_json()

    report: dict = {
        "algorithm": args.algorithm,
        "config": config_json,
        "resolvedBudget": budget,
        "samples": args.samples,
    }
    if isinstance(samples[0], Permutation):
        degree = samples[0].degree
        hist: dict[int, int] = {}
        for s in samples:
            c = s.cycle_count()
            hist[c] = hist.get(c, 0) + 1
        report["cycleHistogram"] = {str(c): v for c, v in sorted(hist.items())}
        parity = "even" if all(s.sign() > 0 for s in samples) else "all"
        report["cycleChiSquared"] = chi_squared_test(
            hist, cycle_distribution(degree, parity)
        ).to_json()
        report["pointActionChiSquared"] = point_action_uniformity(
            samples, degree
        ).to_json()
    if not ambient and normal is not None and normal.order <= 10_000:
        report["mixing"] = mixing_diagnostic(samples, normal).to_json()

    manifest = RunManifest(
        "walk",
        args.group,
        {
            "algorithm": args.algorithm,
            "normal": args.normal,
            "k": args.k,
            "init": args.init,
            "budget": args.budget,
            "samples": args.samples,
            "threads": args.threads,
            "config": config_json,
        },
        args.seed,
        args.output,
    )
    emit_report(manifest, report, out)
    return EXIT_OK


# -- stats --------------------------------------------------------------------------


def cmd_stats(args, out) -> int:
    report: dict = {}
    rows: list[dict] = []
    if args.stirling is not None:
        n = args.stirling
        rows = [
            {"n": n, "cycles": c, "value": stirling_first(n, c)}
            for c in range(0, n + 1)
        ]
        report["stirling"] = rows
    elif args.cycle_distribution is not None:
        dist = cycle_distribution(args.cycle_distribution, args.parity)
        report["distribution"] = dist.to_json()
        rows = [
            {"cycles": c, "numerator": num, "denominator": den}
            for c, num, den in dist.to_csv_rows()
        ]
    elif args.observed is not None:
        with open(args.observed) as fh:
            observed = {int(k): int(v) for k, v in json.load(fh).items()}
        dist = cycle_distribution(args.n, args.parity)
        report["chiSquared"] = chi_squared_test(observed, dist).to_json()
    else:
        raise GroupSpecError(
            "stats needs one of --stirling, --cycle-distribution, --observed"
        )
    manifest = RunManifest(
        "stats",
        None,
        {
            "stirling": args.stirling,
            "cycleDistribution": args.cycle_distribution,
            "parity": args.parity,
            "observed": args.observed,
            "n": args.n,
            "format": args.format,
        },
        args.seed,
        args.output,
    )
    if args.format == "csv" and rows:
        _emit_csv(manifest, rows, out)
    else:
        emit_report(manifest, report, out)
    return EXIT_OK


# -- scan ---------------------------------------------------------------------------


def _resolve_pair(text: str) -> WordPair:
    if text.strip().lower() == "ak":
        return AK_PAIR
    u, sep, v = text.partition(";")
    if not sep:
        raise GroupSpecError("word pair must be 'ak' or 'U;V'")
    return parse_pair(u, v)


def cmd_scan(args, out) -> int:
    pair = _resolve_pair(args.pair)
    mode = _graph_mode(args.mode, directed=args.directed_conjugators)
    if args.series:
        rows = distance_series(
            [s.strip() for s in args.series.split(",") if s.strip()],
            pair,
            mode,
            want_geodesic=False,
        )
        report = {"series": [r.to_json() for r in rows], "pair": pair.to_json()}
    else:
        group = parse_group(args.group)
        if args.base:
            base = tuple(
                group.index_of(e) for e in parse_tuple(group, args.base, 2)
            )
        else:
            base = transvection_base(group)
        result = scan_quotient(
            group, base, pair, mode, want_geodesic=not args.no_geodesic
        )
        report = result.to_json()
    manifest = RunManifest(
        "scan",
        args.group,
        {
            "pair": args.pair,
            "mode": mode.describe(),
            "base": args.base,
            "series": args.series,
            "geodesic": not args.no_geodesic,
        },
        args.seed,
        args.output,
    )
    emit_report(manifest, report, out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    results = run_all(args.corpus, args.seed)
    failed = [r for r in results if r.passed is False]
    report = {
        "corpus": args.corpus,
        "checks": [
            {"name": r.name, "status": r.status, "detail": r.detail} for r in results
        ],
        "failed": len(failed),
    }
    manifest = RunManifest(
        "verify", None, {"corpus": args.corpus}, args.seed, args.output
    )
    emit_report(manifest, report, out)
    for r in results:
        print(f"{r.status:4s} {r.name}", file=sys.stderr)
    return EXIT_VERIFICATION if failed else EXIT_OK


# -- parser -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise GroupSpecError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="acgraphs", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=1, help="rng seed (recorded)")
        p.add_argument("--output", default="-", help="report path ('-' = stdout)")
        p.add_argument(
            "--threads", type=int, default=1, help="worker pool for walker fan-out"
        )

    p = sub.add_parser("analyze", help="graph analytics")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", default="full-ac")
    p.add_argument("--normal", default="whole")
    p.add_argument("--directed-conjugators", action="store_true")
    p.add_argument("--diameter", choices=["exact", "estimate"], default=None)
    p.add_argument("--distance", default=None, help="'TUPLE|TUPLE' literals")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("walk", help="sampler run + diagnostics")
    p.add_argument("--group", required=True)
    p.add_argument("--normal", default="derived")
    p.add_argument("--algorithm", choices=["acr", "pra", "cayley"], default="acr")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--init", default="", help="semicolon-separated element literals")
    p.add_argument("--budget", default="auto")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--no-cumulative", action="store_true")
    p.add_argument("--plain-prob", type=float, default=0.5)
    p.add_argument("--conjugator-words", type=int, default=None)
    p.add_argument("--full-move-set", action="store_true")
    common(p)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("stats", help="reference distributions and tests")
    p.add_argument("--stirling", type=int, default=None)
    p.add_argument("--cycle-distribution", type=int, default=None)
    p.add_argument("--parity", choices=["all", "even"], default="all")
    p.add_argument("--observed", default=None, help="JSON histogram file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("scan", help="word-pair scans")
    p.add_argument("--group", default=None)
    p.add_argument("--pair", default="ak")
    p.add_argument("--mode", default="full-ac")
    p.add_argument("--base", default=None)
    p.add_argument("--series", default=None, help="comma-separated group specs")
    p.add_argument("--no-geodesic", action="store_true")
    p.add_argument("--directed-conjugators", action="store_true")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the theorem-check suite")
    p.add_argument("--corpus", choices=["small", "full"], default="small")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "scan" and not args.series and not args.group:
            raise GroupSpecError("scan needs --group or --series")
        return args.func(args, sys.stdout)
    except (GroupSpecError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
