"""Reading datasets and writing depth profiles and regions.

Datasets are CSV files with ``d`` coordinate columns and an optional
trailing weight column (decimal or ``p/q``). A header row is optional and
lines starting with ``#`` are ignored. Rationals are written as numerator
and denominator columns next to a float convenience column.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .errors import AHDError, NonUnitRow, ParseError
from .regions import CentralRegion
from .sphere import SphericalDataset

UNIT_TOL = 1e-6


class IoError(AHDError):
    """Reading or writing a file failed."""


def _rows(path) -> List[List[str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return [[c.strip() for c in r] for r in csv.reader(lines)]


def _is_number(s: str) -> bool:
    try:
        Fraction(s)
        return True
    except (ValueError, ZeroDivisionError):
        try:
            float(s)
            return True
        except ValueError:
            return False


def _parse_table(path, dim: Optional[int], allow_weights: bool):
    rows = _rows(path)
    header = None
    if rows and not all(_is_number(c) for c in rows[0]):
        header, rows = [c.lower() for c in rows[0]], rows[1:]
    if not rows:
        raise ParseError(f"{path}: no data rows")
    width = len(rows[0])
    coords, weights = [], []
    for i, r in enumerate(rows, start=1):
        if len(r) != width:
            raise ParseError(f"{path}: {len(r)} columns, expected {width}", row=i, col=len(r))
        vals = []
        for j, c in enumerate(r, start=1):
            try:
                vals.append(float(c))
            except ValueError:
                try:
                    vals.append(float(Fraction(c)))
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"{path}: not a number: {c!r}", row=i, col=j)
            if not math.isfinite(vals[-1]):
                raise ParseError(f"{path}: not finite", row=i, col=j)
        coords.append(vals)
        weights.append(r[-1])
    A = np.array(coords)
    if dim is None:
        if header is not None and header[-1] in ("w", "weight", "weights", "mass"):
            dim = width - 1
        elif not allow_weights:
            dim = width
        else:
            full = np.abs(np.linalg.norm(A, axis=1) - 1.0) <= UNIT_TOL
            part = np.abs(np.linalg.norm(A[:, :-1], axis=1) - 1.0) <= UNIT_TOL if width > 2 else full & False
            dim = width if full.all() or not part.all() else width - 1
    if dim < 2 or dim > width:
        raise ParseError(f"{path}: cannot use {dim} coordinate columns out of {width}")
    W = None
    if dim == width - 1 and allow_weights:
        W = []
        for i, w in enumerate(weights, start=1):
            try:
                W.append(Fraction(w))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"{path}: bad weight {w!r}", row=i, col=width)
            if W[-1] <= 0:
                raise ParseError(f"{path}: weight must be positive", row=i, col=width)
    return A[:, :dim], W


def _check_unit(path, X: np.ndarray, normalize: bool) -> np.ndarray:
    norms = np.linalg.norm(X, axis=1)
    for i, nv in enumerate(norms, start=1):
        if nv == 0.0:
            raise NonUnitRow(f"{path}: zero vector", row=i)
        if abs(nv - 1.0) > UNIT_TOL and not normalize:
            raise NonUnitRow(f"{path}: norm {nv:.6g} is not 1 (use --normalize)", row=i)
    return X / norms[:, None]


def read_dataset(path, normalize: bool = False, dim: Optional[int] = None) -> SphericalDataset:
    """Parse a CSV dataset; weights default to uniform ``1/n``."""
    X, W = _parse_table(path, dim, allow_weights=True)
    X = _check_unit(path, X, normalize)
    return SphericalDataset.from_points(X, W)


def read_queries(path, dim: Optional[int] = None, normalize: bool = False) -> np.ndarray:
    X, _ = _parse_table(path, dim, allow_weights=False)
    return _check_unit(path, X, normalize)


def write_dataset(data: SphericalDataset, path=None, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow([f"x{i + 1}" for i in range(data.dim)] + ["weight"])
    for p, wt in zip(data.points, data.weights):
        w.writerow([repr(float(v)) for v in p] + [str(wt)])
    return _emit(buf.getvalue(), path)


def _emit(text: str, path) -> str:
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc
    return text


def depth_rows(queries: np.ndarray, depths: Sequence[Fraction]) -> List[list]:
    return [[repr(float(v)) for v in q] + [d.numerator, d.denominator, repr(float(d))]
            for q, d in zip(queries, depths)]


def write_depths(queries, depths: Sequence[Fraction], path=None, fmt: str = "csv",
                 meta: Optional[dict] = None) -> str:
    """Depth profile as CSV (``x1..xd, depth_num, depth_den, depth_float``) or JSON."""
    Q = np.atleast_2d(np.asarray(queries, dtype=float))
    d = Q.shape[1] if Q.size else 0
    if fmt == "json":
        out = {"meta": meta or {}, "depths": [
            {"x": [float(v) for v in q], "depth_num": r.numerator, "depth_den": r.denominator,
             "depth_float": float(r)} for q, r in zip(Q, depths)]}
        return _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", path)
    buf = io.StringIO()
    if meta:
        buf.write("# " + " ".join(f"{k}={meta[k]}" for k in sorted(meta)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i + 1}" for i in range(d)] + ["depth_num", "depth_den", "depth_float"])
    w.writerows(depth_rows(Q, depths))
    return _emit(buf.getvalue(), path)


def region_to_json(region: CentralRegion, meta: Optional[dict] = None, max_depth=None) -> str:
    out = region.to_dict()
    if meta:
        out["meta"] = meta
    if max_depth is not None:
        out["max_depth_num"] = max_depth.numerator
        out["max_depth_den"] = max_depth.denominator
        out["max_depth"] = float(max_depth)
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def write_region(region: CentralRegion, path=None, meta: Optional[dict] = None, max_depth=None) -> str:
    return _emit(region_to_json(region, meta, max_depth), path)


def region_from_dict(d: dict) -> CentralRegion:
    alpha = Fraction(int(d["alpha_num"]), int(d["alpha_den"]))
    kind = d["kind"]
    reg = CentralRegion(int(d["dim"]), alpha, kind, approximate=bool(d.get("approximate", False)))
    if kind == "arc_list":
        reg.arcs = [(float(a), float(b)) for a, b in d["arcs"]]
    elif kind == "spherical_polygon":
        reg.vertices = np.array(d["vertices"], dtype=float)
        reg.interior = None if d.get("interior") is None else np.array(d["interior"], dtype=float)
    elif kind == "grid_indicator":
        pts = np.array(d["inside"], dtype=float).reshape(-1, reg.dim)
        reg.grid, reg.mask, reg.resolution = pts, np.ones(len(pts), dtype=bool), int(d.get("resolution", 0))
    return reg


def read_region(path) -> CentralRegion:
    try:
        d = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}", row=exc.lineno, col=exc.colno)
    return region_from_dict(d)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}", row=exc.lineno, col=exc.colno)


def write_results(results, path=None, fmt: str = "csv", meta: Optional[dict] = None) -> str:
    """Serialize depths ``(queries, values)``, a region, a median or a convergence table."""
    from .lab import ConvergenceTable
    from .regions import MedianResult
    if isinstance(results, CentralRegion):
        return write_region(results, path, meta)
    if isinstance(results, MedianResult):
        return write_region(results.region, path, meta, max_depth=results.max_depth)
    if isinstance(results, ConvergenceTable):
        if meta:
            results.metadata.update(meta)
        text = results.to_json() + "\n" if fmt == "json" else results.to_csv()
        return _emit(text, path)
    queries, values = results
    return write_depths(queries, values, path, fmt, meta)


def fixture_path(name: str = "five_atoms.csv") -> Path:
    return Path(__file__).parent / "data" / name
