"""Readers and writers for the edge list, coordinate, label and report files."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embed import Graph
from .geometry import InputError
from .significance import AsiReport

HIST_BINS = 20


class DataError(InputError):
    """A file could not be read or does not follow its format."""


def _open(path, mode="r"):
    try:
        return open(path, mode, newline="" if "b" not in mode else None, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc.strerror}") from exc


# edge lists -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EdgeList:
    """Graph on compact ids plus ``node_ids[k]``, the file id of compact node ``k``."""

    graph: Graph
    node_ids: np.ndarray


def read_edges(path) -> EdgeList:
    pairs = []
    with _open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 'u<TAB>v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise DataError(f"{path}:{lineno}: node ids must be integers") from None
            if u < 0 or v < 0:
                raise DataError(f"{path}:{lineno}: node ids must be nonnegative")
            if u == v:
                raise DataError(f"{path}:{lineno}: self-loop on node {u}")
            pairs.append((u, v))
    if not pairs:
        raise DataError(f"{path}: no edges")
    raw = np.array(pairs, dtype=np.int64)
    node_ids, compact = np.unique(raw, return_inverse=True)
    return EdgeList(Graph(len(node_ids), compact.reshape(-1, 2)), node_ids)


def write_edges(path, edges, node_ids=None) -> None:
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if node_ids is not None:
        edges = np.asarray(node_ids)[edges]
    with _open(path, "w") as fh:
        for u, v in edges.tolist():
            fh.write(f"{u}\t{v}\n")


# coordinates and labels -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoordsTable:
    nodes: list[str]
    theta: np.ndarray
    phi: np.ndarray | None = None
    r: np.ndarray | None = None

    @property
    def dims(self) -> int:
        return 2 if self.phi is None else 3


def _float(text: str, where: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise DataError(f"{where}: not a number: {text!r}") from None
    if not math.isfinite(x):
        raise DataError(f"{where}: non-finite value")
    return x


def _fmt(x: float) -> str:
    return repr(float(x))


def _check_unique(nodes, path) -> None:
    seen = set()
    for nd in nodes:
        if nd in seen:
            raise DataError(f"{path}: node {nd!r} listed twice")
        seen.add(nd)


def read_coords(path) -> CoordsTable:
    with _open(path) as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader, [])]
        if header[:2] != ["node", "theta"] or not set(header[2:]) <= {"phi", "r"}:
            raise DataError(
                f"{path}: header must be node,theta[,phi][,r], got {','.join(header)}"
            )
        cols = {name: k for k, name in enumerate(header)}
        nodes, theta, phi, r = [], [], [], []
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} fields")
            where = f"{path}:{lineno}"
            nodes.append(row[0].strip())
            theta.append(_float(row[cols["theta"]], where))
            if "phi" in cols:
                phi.append(_float(row[cols["phi"]], where))
            if "r" in cols:
                r.append(_float(row[cols["r"]], where))
    if not nodes:
        raise DataError(f"{path}: no rows")
    _check_unique(nodes, path)
    return CoordsTable(
        nodes,
        np.array(theta),
        np.array(phi) if "phi" in cols else None,
        np.array(r) if "r" in cols else None,
    )


def write_coords(path, table: CoordsTable) -> None:
    header = ["node", "theta"]
    if table.phi is not None:
        header.append("phi")
    if table.r is not None:
        header.append("r")
    with _open(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for k, node in enumerate(table.nodes):
            row = [node, _fmt(table.theta[k])]
            if table.phi is not None:
                row.append(_fmt(table.phi[k]))
            if table.r is not None:
                row.append(_fmt(table.r[k]))
            w.writerow(row)


def read_labels(path) -> dict[str, str]:
    out: dict[str, str] = {}
    with _open(path) as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader, [])]
        if header != ["node", "label"]:
            raise DataError(f"{path}: header must be node,label")
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != 2 or not row[1]:
                raise DataError(f"{path}:{lineno}: expected node,label with a non-empty label")
            node = row[0].strip()
            if node in out:
                raise DataError(f"{path}: node {node!r} listed twice")
            out[node] = row[1]
    if not out:
        raise DataError(f"{path}: no rows")
    return out


def write_labels(path, nodes, labels) -> None:
    with _open(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "label"])
        for node, lab in zip(nodes, labels):
            w.writerow([node, lab])


# reports --------------------------------------------------------------------

def null_histogram(null_asis, bins: int = HIST_BINS) -> dict:
    counts, edges = np.histogram(np.asarray(null_asis, dtype=float), bins=bins, range=(0.0, 1.0))
    return {"bin_edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


def report_to_dict(report: AsiReport, full_null: bool = False) -> dict:
    cfg = report.config
    out = {
        "asi": float(report.asi),
        "raw_asi": float(report.raw_asi),
        "p_value": float(report.p_value),
        "total_mistakes": int(report.total_mistakes),
        "worst_case": int(report.worst_case),
        "mode": cfg.worst_case_mode,
        "R": int(cfg.R),
        "seed": int(cfg.seed),
        "dims": int(cfg.dims),
        "per_group": {
            str(g): {"size": int(report.group_sizes[g]), "mistakes": int(w)}
            for g, w in report.per_group_mistakes.items()
        },
        "null_asi_histogram": null_histogram(report.null_asis),
    }
    if full_null:
        out["null_asis"] = [float(x) for x in report.null_asis]
    return out


def write_report(path, report: AsiReport | dict, full_null: bool = False) -> None:
    data = report if isinstance(report, dict) else report_to_dict(report, full_null)
    # json writes floats with repr(), i.e. shortest round-tripping form (<= 17 digits)
    text = json.dumps(data, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def read_report(path) -> dict:
    with _open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: invalid JSON: {exc}") from exc
