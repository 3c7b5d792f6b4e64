#!/usr/bin/env python3
"""
Graph Counting - CLI Version

Generates random graphs, counts independent sets and kernels exactly with
binary decision diagrams, and runs seeded ensemble experiments that write
records, summary and fluctuation-curve CSVs.

Subcommands:
    gen         write a random graph file
    count       count solutions of a graph file
    experiment  run an ensemble and write the three CSVs
    curve       re-derive curves from a records CSV with another reference rate
    bethe       print the Bethe constants z and w
    presets     list experiment presets
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from counting import __version__
from counting.constraints import ConstraintMode, build_bdd
from counting.ensemble_stats import (
    bethe_constants,
    fluctuation_curve,
    format_summary_report,
    summary_rows,
)
from counting.experiment import (
    EnsembleConfig,
    ReferenceRate,
    apply_reference,
    run_ensemble,
)
from counting.graph import RNG_ALGORITHM, EnsembleKind, Strategy
from counting.io import (
    format_graph,
    read_graph,
    read_provenance,
    read_records_csv,
    write_curve_csv,
    write_graph,
    write_records_csv,
    write_summary_csv,
)
from counting.reference_data import get_preset_manager

logger = logging.getLogger('graph_counting')


def parse_sizes(text: str) -> List[int]:
    """
    Parse a size list: "6:40:2" (inclusive range with step), "6,8,10" or "6".

    Example:
        >>> parse_sizes("6:12:2")
        [6, 8, 10, 12]
    """
    sizes = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        if ':' in part:
            fields = part.split(':')
            if len(fields) not in (2, 3):
                raise ValueError(f"Size range must be start:stop[:step], got '{part}'")
            start, stop = int(fields[0]), int(fields[1])
            step = int(fields[2]) if len(fields) == 3 else 1
            if step < 1:
                raise ValueError(f"Size step must be positive, got {step}")
            sizes.extend(range(start, stop + 1, step))
        else:
            sizes.append(int(part))
    if not sizes:
        raise ValueError(f"No sizes in '{text}'")
    return sizes


def _ensemble_from_args(args, default: Optional[EnsembleKind] = None) -> Optional[EnsembleKind]:
    if args.regular is not None:
        return EnsembleKind.regular(args.regular)
    if args.avg_degree is not None:
        return EnsembleKind.average_degree(args.avg_degree)
    return default


def _resolved_config(cfg: EnsembleConfig, reference: ReferenceRate) -> dict:
    resolved = cfg.to_dict()
    resolved['reference_rate'] = reference.rate
    resolved['reference_source'] = reference.source
    resolved['version'] = __version__
    return resolved


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_gen(args) -> int:
    """Generate one random graph and write it in the graph text format."""
    ensemble = _ensemble_from_args(args)
    if ensemble is None:
        raise ValueError("gen needs --regular K or --avg-degree D")
    graph = ensemble.sample(args.n, args.seed, strategy=Strategy(args.strategy))

    comments = [
        f"ensemble: {ensemble.label()}",
        f"seed: {args.seed}",
        f"strategy: {args.strategy}",
        f"rng: {RNG_ALGORITHM}",
    ]
    if args.out:
        write_graph(graph, args.out, comments)
    else:
        sys.stdout.write(format_graph(graph, comments))

    histogram = ', '.join(f"{d}x{c}" for d, c in graph.degree_histogram().items())
    print(f"n={graph.n} m={graph.m} degrees: {histogram}",
          file=sys.stdout if args.out else sys.stderr)
    return 0


def cmd_count(args) -> int:
    """Count solutions of a graph file."""
    graph = read_graph(args.graph)
    mode = ConstraintMode.parse(args.mode)
    order = None
    if args.order == 'reverse':
        order = list(range(graph.n, 0, -1))
    f = build_bdd(graph, mode, order=order)
    print(f"count={f.count()} nodes={f.node_count()} accesses={f.manager.accesses}")
    return 0


def _experiment_config(args) -> EnsembleConfig:
    overrides = {
        'sizes': parse_sizes(args.sizes) if args.sizes else None,
        'samples_per_size': args.samples,
        'mode': ConstraintMode.parse(args.mode) if args.mode else None,
        'ensemble': _ensemble_from_args(args),
        'strategy': Strategy(args.strategy) if args.strategy else None,
        'master_seed': args.seed,
        'reference': args.reference,
    }
    if args.preset:
        preset = get_preset_manager().get_preset(args.preset)
        if preset is None:
            raise ValueError(f"Unknown preset '{args.preset}'")
        return EnsembleConfig.from_preset(preset, **overrides)
    if overrides['sizes'] is None:
        raise ValueError("experiment needs --sizes or --preset")
    return EnsembleConfig(**{k: v for k, v in overrides.items() if v is not None})


def cmd_experiment(args) -> int:
    """Run an ensemble and write records, summary and curve CSVs."""
    cfg = _experiment_config(args)
    cfg.validate()

    print("Resolved configuration:")
    for key, value in cfg.to_dict().items():
        print(f"  {key}: {value}")

    records = run_ensemble(cfg, jobs=args.jobs)
    reference = ReferenceRate.resolve(cfg.reference, records)
    provenance = _resolved_config(cfg, reference)

    rows = summary_rows(records, reference.rate)
    curves = [fluctuation_curve(records, n) for n in sorted({r.size for r in records})]

    os.makedirs(args.out_dir, exist_ok=True)
    prefix = os.path.join(args.out_dir, args.prefix)
    write_records_csv(records, f"{prefix}records.csv", provenance)
    write_summary_csv(rows, f"{prefix}summary.csv", provenance)
    write_curve_csv(curves, f"{prefix}curve.csv", provenance)

    print(f"  reference_rate: {reference.rate:.12g} ({reference.source})")
    print()
    print(format_summary_report(rows, cfg.mode if cfg.ensemble == EnsembleKind.regular(3) else None))
    print(f"\nWrote {prefix}records.csv, {prefix}summary.csv, {prefix}curve.csv")
    return 0


def cmd_curve(args) -> int:
    """Re-derive fluctuation curves from a records CSV."""
    records = read_records_csv(args.records)
    if not records:
        raise ValueError(f"No records in {args.records}")
    reference = ReferenceRate.resolve(args.reference, records)
    records = apply_reference(records, reference)
    curves = [fluctuation_curve(records, n) for n in sorted({r.size for r in records})]
    provenance = read_provenance(args.records)
    provenance.update({
        'records': args.records,
        'reference_rate': reference.rate,
        'reference_source': reference.source,
        'version': __version__,
    })
    write_curve_csv(curves, args.out, provenance)
    print(f"Wrote {len(curves)} curve(s) against r = {reference.rate:.12g} to {args.out}")
    return 0


def cmd_bethe(args) -> int:
    constants = bethe_constants()
    print(f"z = {constants.z:.15g}")
    print(f"w = {constants.w:.15g}")
    print(f"residual = {constants.residual:.3g}")
    return 0


def cmd_presets(args) -> int:
    for key, preset in get_preset_manager().list_presets():
        sizes = preset.sizes
        print(f"{key:18s} {preset.description}")
        print(f"{'':18s} sizes {sizes[0]}..{sizes[-1]}, {preset.samples} samples, "
              f"reference {preset.reference}")
    return 0


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def _add_ensemble_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--regular', type=int, metavar='K', help='k-regular ensemble')
    group.add_argument('--avg-degree', type=float, metavar='D', help='average-degree ensemble')
    parser.add_argument('--strategy', choices=[s.value for s in Strategy],
                        help='regular-graph generator (default: greedy)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='graph-counting',
        description='Exact counting of independent sets and kernels with BDDs'
    )
    parser.add_argument('--version', '-v', action='version',
                        version=f'Graph Counting {__version__}')
    parser.add_argument('--verbose', action='store_true', help='debug logging on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help='generate a random graph file')
    gen.add_argument('--n', type=int, required=True, help='vertex count')
    _add_ensemble_flags(gen)
    gen.add_argument('--seed', type=int, default=0, help='RNG seed (default: 0)')
    gen.add_argument('--out', '-o', metavar='PATH', help='output file (default: stdout)')
    gen.set_defaults(func=cmd_gen)

    count = sub.add_parser('count', help='count solutions of a graph file')
    count.add_argument('graph', metavar='GRAPH', help='graph file')
    count.add_argument('--mode', default='is', help="'is' or 'kernel' (default: is)")
    count.add_argument('--order', choices=['natural', 'reverse'], default='natural',
                       help='BDD variable order (default: natural)')
    count.set_defaults(func=cmd_count)

    exp = sub.add_parser('experiment', help='run a seeded ensemble experiment')
    exp.add_argument('--preset', help='start from a named preset (see: presets)')
    exp.add_argument('--sizes', help='sizes, e.g. 6:40:2 or 6,8,10')
    exp.add_argument('--samples', type=int, help='graphs per size (default: 1000)')
    exp.add_argument('--mode', help="'is' or 'kernel' (default: is)")
    _add_ensemble_flags(exp)
    exp.add_argument('--seed', type=int, default=0, help='master seed (default: 0)')
    exp.add_argument('--reference', help="bethe, kernel, average, calibrated or a number")
    exp.add_argument('--jobs', '-j', type=int, default=1, help='worker processes (default: 1)')
    exp.add_argument('--out-dir', default='.', help='output directory (default: .)')
    exp.add_argument('--prefix', default='', help='output file name prefix')
    exp.set_defaults(func=cmd_experiment)

    curve = sub.add_parser('curve', help='re-derive curves from a records CSV')
    curve.add_argument('records', metavar='RECORDS', help='records CSV')
    curve.add_argument('--reference', required=True,
                       help="bethe, kernel, average, calibrated or a number")
    curve.add_argument('--out', '-o', default='curve.csv', help='output CSV (default: curve.csv)')
    curve.set_defaults(func=cmd_curve)

    bethe = sub.add_parser('bethe', help='print the Bethe constants')
    bethe.set_defaults(func=cmd_bethe)

    presets = sub.add_parser('presets', help='list experiment presets')
    presets.set_defaults(func=cmd_presets)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main function for the CLI; returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    if args.command == 'gen' and args.strategy is None:
        args.strategy = Strategy.GREEDY.value

    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
