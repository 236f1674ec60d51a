"""Command-line interface: simplify | spectrum | verify | batch | hist | fuzz.

Reports are JSON (CSV for batch tables); every output carries a schema
string.  `--figures DIR` renders matplotlib PNGs alongside the data output.
The desk-scale eigensolver cap is configurable via TREEPLATEAUX_MAX_VERTICES.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict
from pathlib import Path

from .graph import GraphError, RootedTree
from .ingest import ParseError, make_random_tree
from .plateaux import (
    PlateauCertificate,
    check_conjecture,
    counterexample_text,
    faria_check,
    verify_theorem,
)
from .report import (
    SCHEMA_FUZZ,
    SCHEMA_HIST,
    SCHEMA_SIMPLIFY,
    SCHEMA_SPECTRUM,
    SCHEMA_VERIFY,
    batch_csv_text,
    cluster_aggregates,
    corpus_histograms,
    json_report,
    load_tree_file,
    run_batch,
    simplify_report,
)
from .simplify import simplify
from .spectral import (
    DEFAULT_HALF_WIDTH,
    SizeCapError,
    detect_plateaux,
    spectrum_of,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeplateaux",
        description="Simplify rooted trees and certify Laplacian eigenvalue plateaux.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", type=Path, help="tree file (SWC or edge list)")
        p.add_argument("--format", choices=("auto", "swc", "edgelist"), default="auto")
        p.add_argument("--output", type=Path, default=None,
                       help="write JSON here instead of stdout")
        p.add_argument("--figures", type=Path, default=None, metavar="DIR",
                       help="also render PNG figures into DIR")

    p = sub.add_parser("simplify", help="contract trivial chains of a rooted tree")
    add_input(p)

    p = sub.add_parser("spectrum", help="Laplacian eigenvalues and plateaux")
    add_input(p)
    p.add_argument("--vectors", action="store_true",
                   help="also compute (and embed) eigenvectors")
    p.add_argument("--window", type=float, default=DEFAULT_HALF_WIDTH,
                   help="plateau clustering half-width (default 1e-10)")

    p = sub.add_parser("verify", help="check the plateau multiplicity certificate")
    add_input(p)
    p.add_argument("--window", type=float, default=DEFAULT_HALF_WIDTH)
    p.add_argument("--dump", type=Path, default=None,
                   help="counterexample dump path on failure")

    p = sub.add_parser("batch", help="analyze every tree under a directory")
    p.add_argument("directory", type=Path)
    p.add_argument("--output", type=Path, required=True, help="CSV output path")
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    p.add_argument("--figures", type=Path, default=None, metavar="DIR")

    p = sub.add_parser("hist", help="degree histograms before/after simplification")
    p.add_argument("directory", type=Path)
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("--figures", type=Path, default=None, metavar="DIR")

    p = sub.add_parser("fuzz", help="randomized theorem/conjecture verification")
    p.add_argument("--trees", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spine-prob", type=float, default=0.3)
    p.add_argument("--dump-dir", type=Path, default=Path("."),
                   help="where to write counterexample dumps")

    return parser


def _emit(payload: dict, output: Path | None) -> None:
    text = json.dumps(payload, indent=2)
    if output is None:
        print(text)
    else:
        output.write_text(text + "\n")


def _load(args: argparse.Namespace):
    return load_tree_file(args.input, args.format)


def _figures_dir(args: argparse.Namespace) -> Path | None:
    if args.figures is None:
        return None
    args.figures.mkdir(parents=True, exist_ok=True)
    return args.figures


def cmd_simplify(args: argparse.Namespace) -> int:
    loaded = _load(args)
    if not isinstance(loaded, RootedTree):
        raise ParseError(f"{args.input}: input contains cycles; simplify needs a tree")
    result = simplify(loaded)
    payload = json_report(
        SCHEMA_SIMPLIFY,
        {"path": str(args.input), "format": args.format},
        simplify_report(loaded, result),
    )
    _emit(payload, args.output)
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import figures

        stem = args.input.stem
        figures.save_tree_plot(
            loaded, figdir / f"{stem}_tree.png",
            title=f"{stem}: original vs simplified", overlay=result.tree,
        )
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    if args.window <= 0:
        raise UsageError("--window must be positive")
    loaded = _load(args)
    g = loaded.graph if isinstance(loaded, RootedTree) else loaded
    spec = spectrum_of(g, want_vectors=args.vectors)
    plateaux = detect_plateaux(spec, half_width=args.window)
    result = {
        "eigenvalues": [float(x) for x in spec.eigenvalues],
        "plateaux": [asdict(p) for p in plateaux],
        "points": [[i, float(x)] for i, x in enumerate(spec.eigenvalues)],
    }
    if args.vectors:
        result["eigenvectors"] = spec.eigenvectors.T.tolist()
    payload = json_report(
        SCHEMA_SPECTRUM,
        {"path": str(args.input), "format": args.format, "window": args.window},
        result,
    )
    _emit(payload, args.output)
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import figures

        figures.save_eigenvalue_plot(
            spec.eigenvalues, plateaux,
            figdir / f"{args.input.stem}_eigenvalues.png",
            title=f"{args.input.stem}: eigenvalue distribution",
        )
    return 0


def _certificate_payload(cert: PlateauCertificate) -> dict:
    n_minus = len(cert.eigenvectors) // 2
    sparse = [
        [[int(i), float(x)] for i, x in enumerate(vec) if x != 0.0]
        for vec in cert.eigenvectors
    ]
    return {
        "lambda_minus": cert.lambda_minus,
        "lambda_plus": cert.lambda_plus,
        "m_minus": cert.m_minus,
        "m_plus": cert.m_plus,
        "m_exact": cert.m_exact,
        "tau_vi": cert.tau_vi,
        "independent_rank": cert.independent_rank,
        "max_residual": cert.max_residual,
        "eigenvectors": {
            "lambda_minus": sparse[:n_minus],
            "lambda_plus": sparse[n_minus:],
        },
        "warnings": list(cert.warnings),
        "violations": list(cert.violations),
        "holds": cert.holds,
    }


def cmd_verify(args: argparse.Namespace) -> int:
    if args.window <= 0:
        raise UsageError("--window must be positive")
    loaded = _load(args)
    g = loaded.graph if isinstance(loaded, RootedTree) else loaded
    root = loaded.root if isinstance(loaded, RootedTree) else None
    cert = verify_theorem(g, half_width=args.window)
    payload = json_report(
        SCHEMA_VERIFY,
        {"path": str(args.input), "format": args.format, "window": args.window},
        _certificate_payload(cert),
    )
    _emit(payload, args.output)
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import figures

        spec = spectrum_of(g)
        figures.save_eigenvalue_plot(
            spec.eigenvalues, detect_plateaux(spec, half_width=args.window),
            figdir / f"{args.input.stem}_eigenvalues.png",
            title=f"{args.input.stem}: certified plateaux",
        )
    if not cert.holds:
        dump = args.dump or Path(f"{args.input.stem}.counterexample")
        dump.write_text(counterexample_text(g, "; ".join(cert.violations), root))
        print(f"certificate failed; counterexample written to {dump}", file=sys.stderr)
        return 2
    return 0


def cmd_batch(args: argparse.Namespace) -> int:
    if args.parallel < 1:
        raise UsageError("--parallel must be >= 1")
    rows, failures = run_batch(args.directory, parallel=args.parallel)
    for failure in failures:
        print(f"warning: {failure}", file=sys.stderr)
    if not rows:
        print(f"error: no analyzable trees under {args.directory}", file=sys.stderr)
        return 1
    aggregates = cluster_aggregates(rows)
    args.output.write_text(batch_csv_text(rows, aggregates))
    print(f"{len(rows)} trees analyzed ({len(failures)} failures); wrote {args.output}")
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import figures

        figures.save_reduction_plot(
            [r.reduction_percent for r in rows],
            figdir / "reduction_percent.png",
        )
    return 0


def cmd_hist(args: argparse.Namespace) -> int:
    original, simplified, failures = corpus_histograms(args.directory)
    for failure in failures:
        print(f"warning: {failure}", file=sys.stderr)
    if not original:
        print(f"error: no analyzable trees under {args.directory}", file=sys.stderr)
        return 1
    payload = json_report(
        SCHEMA_HIST,
        {"directory": str(args.directory)},
        {
            "original": {str(d): c for d, c in original.items()},
            "simplified": {str(d): c for d, c in simplified.items()},
        },
    )
    _emit(payload, args.output)
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import figures

        figures.save_degree_histogram(
            original, simplified, figdir / "degree_histogram.png",
            title="Corpus degree histogram",
        )
    return 0


def cmd_fuzz(args: argparse.Namespace) -> int:
    if args.trees < 1:
        raise UsageError("--trees must be >= 1")
    if args.max_vertices < 2:
        raise UsageError("--max-vertices must be >= 2")
    if not (0.0 <= args.spine_prob <= 1.0):
        raise UsageError("--spine-prob must lie in [0, 1]")
    rng = random.Random(args.seed)
    violations = {"theorem": 0, "faria": 0, "conjecture": 0}
    slack_histogram: dict[int, int] = {}
    dumps: list[str] = []
    for index in range(args.trees):
        size = rng.randrange(2, args.max_vertices + 1)
        tree_seed = rng.randrange(2**32)
        tree = make_random_tree(size, tree_seed, args.spine_prob)
        simplified = simplify(tree).tree
        g = simplified.graph
        spec = spectrum_of(g)
        cert = verify_theorem(g, spectrum=spec)
        faria = faria_check(g, spectrum=spec)
        conjecture = check_conjecture(g, 2, spectrum=spec)
        slack = cert.m_exact - cert.tau_vi
        slack_histogram[slack] = slack_histogram.get(slack, 0) + 1
        for name, ok, detail in (
            ("theorem", cert.holds, "; ".join(cert.violations)),
            ("faria", faria.holds,
             f"p={faria.pendant_count} q={faria.pendant_neighbor_count} m(1)={faria.m_one}"),
            ("conjecture", conjecture.holds,
             f"p2={conjecture.p_j} q2={conjecture.q_j} max_mult={conjecture.max_multiplicity}"),
        ):
            if ok:
                continue
            violations[name] += 1
            args.dump_dir.mkdir(parents=True, exist_ok=True)
            dump = args.dump_dir / f"fuzz-{index}-{name}.counterexample"
            dump.write_text(
                counterexample_text(g, f"{name}: {detail}", simplified.root)
            )
            dumps.append(str(dump))
    total = sum(violations.values())
    payload = json_report(
        SCHEMA_FUZZ,
        {
            "trees": args.trees,
            "max_vertices": args.max_vertices,
            "seed": args.seed,
            "spine_prob": args.spine_prob,
        },
        {
            "violations": violations,
            "violation_total": total,
            "tau_vi_slack_histogram": {str(k): v for k, v in sorted(slack_histogram.items())},
            "counterexamples": dumps,
        },
    )
    print(json.dumps(payload, indent=2))
    return 0 if total == 0 else 2


class UsageError(ValueError):
    """Invalid flag values; reported as a usage error (exit 2)."""


_HANDLERS = {
    "simplify": cmd_simplify,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "batch": cmd_batch,
    "hist": cmd_hist,
    "fuzz": cmd_fuzz,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
        return 2
    except (ParseError, GraphError, SizeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
