"""
I/O module - Graph files and experiment CSVs

Graph text format:
    line 1: "n m"; then m lines "u v" with 1 <= u < v <= n.
    Whitespace-separated, newline-terminated; lines starting with '#' are ignored.

CSV files start with '#'-prefixed provenance lines (the resolved
configuration, seed and RNG identifier) followed by a header row. Counts are
written in full decimal, floats with 12 significant digits, rows in a
deterministic order.

Example usage:
    from counting.io import write_graph, read_graph

    write_graph(g, 'prism.txt')
    g2 = read_graph('prism.txt')
"""

import csv
import json
import math
from typing import Dict, Iterable, List, Optional, Sequence

from counting.graph import Graph, GraphError

RECORD_FIELDS = ['size', 'sample', 'seed', 'count', 'ln_count', 'diff']
SUMMARY_FIELDS = ['size', 'samples', 'mean', 'rate_estimate', 'reference_rate']
CURVE_FIELDS = ['size', 'epsilon', 'f']


class GraphFormatError(ValueError):
    """Raised when a graph file does not follow the text format."""
    pass


def format_float(x: float) -> str:
    """Float with 12 significant digits."""
    return format(x, '.12g')


# ============================================================================
# GRAPH FILES
# ============================================================================

def format_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return '\n'.join(lines) + '\n'


def parse_graph(text: str) -> Graph:
    """
    Parse the graph text format.

    Raises:
        GraphFormatError: On malformed lines, wrong edge count, u >= v,
            or an edge rejected by Graph.from_edge_list()
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphFormatError(f"Line {lineno}: expected two integers, got '{stripped}'")
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"Line {lineno}: expected two integers, got '{stripped}'") from None

    if not rows:
        raise GraphFormatError("Missing 'n m' header line")
    _, n, m = rows[0]
    edges = rows[1:]
    if n < 0 or m < 0:
        raise GraphFormatError(f"Header must hold nonnegative 'n m', got '{n} {m}'")
    if len(edges) != m:
        raise GraphFormatError(f"Header announces {m} edges but {len(edges)} follow")

    for lineno, u, v in edges:
        if not u < v:
            raise GraphFormatError(f"Line {lineno}: edges must be written as 'u v' with u < v")
    try:
        return Graph.from_edge_list(n, [(u, v) for _, u, v in edges])
    except GraphError as e:
        raise GraphFormatError(str(e)) from e


def write_graph(g: Graph, filename: str, comments: Sequence[str] = ()) -> None:
    """Write g in the graph text format, with optional '#' comment lines."""
    with open(filename, 'w', newline='\n') as f:
        f.write(format_graph(g, comments))


def read_graph(filename: str) -> Graph:
    """
    Read a graph file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        GraphFormatError: If the content is malformed
    """
    with open(filename, 'r') as f:
        return parse_graph(f.read())


# ============================================================================
# CSV FILES
# ============================================================================

def provenance_lines(config: Dict) -> List[str]:
    """One '# key: value' line per configuration entry, keys sorted."""
    lines = []
    for key in sorted(config):
        value = config[key]
        if not isinstance(value, str):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"# {key}: {value}")
    return lines


def read_provenance(filename: str) -> Dict[str, str]:
    """
    Read the leading '# key: value' lines of a CSV written by this module.

    Values come back as the strings that were written, so passing the dict
    to provenance_lines() reproduces the same header.
    """
    config = {}
    with open(filename, 'r', newline='') as f:
        for line in f:
            if not line.startswith('#'):
                break
            key, sep, value = line[1:].partition(':')
            if sep:
                config[key.strip()] = value.strip()
    return config


def _write_csv(filename: str, fieldnames: List[str], rows: Iterable[Dict],
               config: Optional[Dict]) -> None:
    with open(filename, 'w', newline='') as f:
        for line in provenance_lines(config or {}):
            f.write(line + '\n')
        writer = csv.DictWriter(f, fieldnames=fieldnames, extrasaction='ignore',
                                lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_records_csv(records, filename: str, config: Optional[Dict] = None) -> None:
    """Write CountRecords as size,sample,seed,count,ln_count,diff."""
    rows = (
        {
            'size': r.size,
            'sample': r.sample,
            'seed': r.seed,
            'count': str(r.count),
            'ln_count': format_float(r.ln_count),
            'diff': format_float(r.diff),
        }
        for r in sorted(records, key=lambda r: (r.size, r.sample))
    )
    _write_csv(filename, RECORD_FIELDS, rows, config)


def write_summary_csv(summary_rows: Sequence[Dict], filename: str,
                      config: Optional[Dict] = None) -> None:
    """Write summary rows as size,samples,mean,rate_estimate,reference_rate."""
    rows = (
        {
            'size': row['size'],
            'samples': row['samples'],
            'mean': format_float(row['mean']),
            'rate_estimate': format_float(row['rate_estimate']),
            'reference_rate': format_float(row['reference_rate']),
        }
        for row in sorted(summary_rows, key=lambda row: row['size'])
    )
    _write_csv(filename, SUMMARY_FIELDS, rows, config)


def write_curve_csv(curves, filename: str, config: Optional[Dict] = None) -> None:
    """Write FluctuationCurves as size,epsilon,f sorted by size then epsilon."""
    rows = (
        {'size': curve.size, 'epsilon': format_float(eps), 'f': format_float(f)}
        for curve in sorted(curves, key=lambda c: c.size)
        for eps, f in curve.points
    )
    _write_csv(filename, CURVE_FIELDS, rows, config)


def _ln(count: int) -> float:
    # Recomputed from the exact count; the ln_count column is rounded.
    return math.log(count) if count > 0 else float('-inf')


def _data_lines(f) -> Iterable[str]:
    for line in f:
        if not line.startswith('#'):
            yield line


def read_records_csv(filename: str) -> list:
    """
    Read a records CSV back into CountRecords, skipping '#' lines.

    Raises:
        ValueError: If the header does not match the records schema
    """
    from counting.experiment import CountRecord

    with open(filename, 'r', newline='') as f:
        reader = csv.DictReader(_data_lines(f))
        if reader.fieldnames != RECORD_FIELDS:
            raise ValueError(
                f"Not a records CSV: header {reader.fieldnames}, expected {RECORD_FIELDS}"
            )
        records = []
        for i, row in enumerate(reader):
            try:
                records.append(CountRecord(
                    size=int(row['size']),
                    sample=int(row['sample']),
                    seed=int(row['seed']),
                    count=int(row['count']),
                    ln_count=_ln(int(row['count'])),
                    diff=float(row['diff']),
                ))
            except (TypeError, ValueError) as e:
                raise ValueError(f"Error reading record at row {i}: {e}") from e
    return records
