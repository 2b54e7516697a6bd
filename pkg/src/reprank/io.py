"""File formats and report serialization.

Two dataset formats are supported:

* Edge CSV — header ``rater,ratee,weight`` or ``rater,ratee,weight,seq``,
  one record per line, UTF-8. Without a seq column, events of the same pair
  are numbered in file order.
* Matrix — first line the node count M, then M rows of M space-separated
  integer ratings; cell (i, j) is node i's rating of node j and the diagonal
  must hold the unknown marker. Rows are raters (pass ``transpose=True`` for
  the opposite orientation). Nodes get canonical zero-padded labels; surveys
  are single-shot, so every record carries seq_index 0.

Reports are written as JSON with a fixed key order and all real numbers at
six decimal places, so identical runs produce identical bytes. Writes are
atomic (temp file + rename).
"""

import csv
import json
import os
import tempfile

from .errors import ParseError
from .evaluation import EvaluationReport
from .model import Dataset, RatingScale, node_label, validate_dataset

EDGE_HEADER = ("rater", "ratee", "weight")
EDGE_HEADER_SEQ = ("rater", "ratee", "weight", "seq")


def load_edge_csv(path, scale: RatingScale, nodes=None) -> Dataset:
    """Parse an edge CSV into a validated Dataset.

    The node set is the union of raters and ratees unless an explicit node
    manifest is supplied (required to represent isolated nodes).
    """
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(path, 1, "empty file, expected a header row")

    header = tuple(cell.strip().lower() for cell in rows[0])
    if header not in (EDGE_HEADER, EDGE_HEADER_SEQ):
        raise ParseError(
            path, 1, f"bad header {rows[0]!r}, expected rater,ratee,weight[,seq]"
        )
    has_seq = header == EDGE_HEADER_SEQ

    records = []
    pair_counter: dict[tuple[str, str], int] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(
                path, line_no, f"expected {len(header)} fields, got {len(row)}"
            )
        rater, ratee = row[0].strip(), row[1].strip()
        if not rater or not ratee:
            raise ParseError(path, line_no, "empty rater or ratee identifier")
        try:
            weight = int(row[2])
        except ValueError:
            raise ParseError(
                path, line_no, f"weight {row[2]!r} is not an integer"
            ) from None
        if has_seq:
            try:
                seq = int(row[3])
            except ValueError:
                raise ParseError(
                    path, line_no, f"seq {row[3]!r} is not an integer"
                ) from None
        else:
            seq = pair_counter.get((rater, ratee), 0)
            pair_counter[(rater, ratee)] = seq + 1
        records.append((rater, ratee, weight, seq))

    if nodes is None:
        nodes = sorted({r[0] for r in records} | {r[1] for r in records})
    return validate_dataset(nodes, records, scale)


def edge_csv_text(dataset: Dataset) -> str:
    """Render a dataset in edge CSV form (seq column always present)."""
    lines = [",".join(EDGE_HEADER_SEQ)]
    for rec in dataset.records:
        lines.append(f"{rec.rater},{rec.ratee},{rec.weight},{rec.seq_index}")
    return "\n".join(lines) + "\n"


def write_edge_csv(dataset: Dataset, path) -> None:
    atomic_write_text(path, edge_csv_text(dataset))


def load_matrix(path, scale: RatingScale, transpose: bool = False) -> Dataset:
    """Parse a sociometric matrix file into a validated Dataset."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    body = [(i + 1, line) for i, line in enumerate(lines) if line.strip()]
    if not body:
        raise ParseError(path, 1, "empty file, expected a node count")

    first_no, first = body[0]
    try:
        m = int(first.strip())
    except ValueError:
        raise ParseError(path, first_no, f"node count {first!r} is not an integer") from None
    if m < 1:
        raise ParseError(path, first_no, f"node count must be >= 1, got {m}")
    if len(body) - 1 != m:
        raise ParseError(
            path, first_no, f"expected {m} matrix rows, found {len(body) - 1}"
        )

    nodes = [node_label(i, m) for i in range(m)]
    records = []
    for i, (line_no, line) in enumerate(body[1:]):
        cells = line.split()
        if len(cells) != m:
            raise ParseError(
                path, line_no, f"row {i + 1}: expected {m} columns, got {len(cells)}"
            )
        for j, cell in enumerate(cells):
            try:
                weight = int(cell)
            except ValueError:
                raise ParseError(
                    path, line_no, f"row {i + 1}, column {j + 1}: {cell!r} is not an integer"
                ) from None
            if i == j:
                if weight != scale.unknown_value:
                    raise ParseError(
                        path,
                        line_no,
                        f"row {i + 1}: diagonal must be the unknown marker "
                        f"{scale.unknown_value}, got {weight}",
                    )
                continue
            if not scale.admits(weight):
                raise ParseError(
                    path,
                    line_no,
                    f"row {i + 1}, column {j + 1}: rating {weight} outside "
                    f"[{scale.min_valid}, {scale.max_valid}] and not the "
                    f"unknown marker {scale.unknown_value}",
                )
            if weight == scale.unknown_value:
                continue
            rater, ratee = (nodes[j], nodes[i]) if transpose else (nodes[i], nodes[j])
            records.append((rater, ratee, weight, 0))
    return validate_dataset(nodes, records, scale)


def matrix_text(dataset: Dataset) -> str:
    """Render a single-shot dataset as a matrix file.

    The format is positional: node names are dropped and rows follow the
    dataset's (sorted) node order, so a load/write/load cycle is exact only
    for datasets whose nodes carry the canonical labels the loader assigns.
    """
    pairs: dict[tuple[str, str], int] = {}
    for rec in dataset.records:
        key = (rec.rater, rec.ratee)
        if key in pairs:
            raise ValueError(
                f"pair {key} has multiple records; matrix files are single-shot"
            )
        pairs[key] = rec.weight

    unknown = dataset.scale.unknown_value
    lines = [str(len(dataset.nodes))]
    for rater in dataset.nodes:
        row = [
            str(unknown if rater == ratee else pairs.get((rater, ratee), unknown))
            for ratee in dataset.nodes
        ]
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"


def write_matrix(dataset: Dataset, path) -> None:
    atomic_write_text(path, matrix_text(dataset))


def report_document(reports: list[EvaluationReport]) -> dict:
    """Arrange reports into the serializable document structure."""
    if not reports:
        raise ValueError("need at least one report")
    first = reports[0]
    methods = []
    for rep in reports:
        method = {
            "name": rep.method,
            "mae": rep.mae,
            "precision_at_k": rep.precision_at_k,
            "overlap": rep.overlap_fraction,
            "top_k_variance": rep.top_k_variance,
            "converged": rep.converged,
            "degenerate": rep.degenerate,
        }
        if rep.argmax_before is not None:
            method["perturbation"] = {
                "argmax_before": rep.argmax_before,
                "argmax_after": rep.argmax_after,
            }
        if rep.dynamic is not None:
            method["dynamic"] = [
                {"window": window, "value": value} for window, value in rep.dynamic
            ]
        method["ranking"] = [
            {"node": node, "score": score} for node, score in rep.ranking
        ]
        methods.append(method)
    return {
        "run": {
            "dataset": first.dataset_id,
            "window": first.window,
            "threshold": first.threshold,
            "seed": first.seed,
        },
        "methods": methods,
    }


def report_text(reports: list[EvaluationReport]) -> str:
    return _to_json(report_document(reports)) + "\n"


def write_report(reports: list[EvaluationReport], path) -> None:
    """Serialize reports to a JSON file; repeat runs yield identical bytes."""
    atomic_write_text(path, report_text(reports))


def _to_json(value, indent: int = 0) -> str:
    """JSON with insertion-ordered keys and floats fixed at 6 decimals."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(key)}: {_to_json(val, indent + 1)}"
            for key, val in value.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, list):
        if not value:
            return "[]"
        items = [f"{inner}{_to_json(val, indent + 1)}" for val in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value + 0.0:.6f}" if value == 0.0 else f"{value:.6f}"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    return json.dumps(value)


def atomic_write_text(path, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".reprank-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
