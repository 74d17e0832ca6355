"""Finite free resolutions as input data: loading, validation, defect ranks.

Orientation: ``maps[i - 1]`` is phi_i : F_i -> F_{i-1}, stored with
rank F_{i-1} rows and rank F_i columns, so column c is the image of the c-th
basis vector of F_i.

File format (JSON)::

    {"ring": {"variables": ["x", "y", "z"], "characteristic": 0},
     "minimal": true,
     "maps": [{"rows": 3, "cols": 2,
               "entries": [["-y*z", "-x*z^2"], ["x^2", "0"], ["0", "z"]]}]}

An optional top-level ``"description"`` string is carried through unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .matrix import PolyMatrix
from .poly import PolynomialError, RingConfig


class ResolutionFormatError(ValueError):
    """The document cannot be parsed into matrices."""


class ResolutionError(ValueError):
    """The matrices parse but do not form a valid (minimal) resolution."""

    def __init__(self, message: str, location: dict | None = None):
        super().__init__(message)
        self.location = location or {}


@dataclass(frozen=True)
class FreeResolution:
    ring: RingConfig
    maps: tuple
    minimal_claimed: bool = False
    description: str = field(default="", compare=False)

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def betti(self) -> tuple:
        return (self.maps[0].rows,) + tuple(m.cols for m in self.maps)

    def phi(self, i: int) -> PolyMatrix:
        return self.maps[i - 1]

    def is_minimal(self) -> bool:
        return first_unit_entry(self) is None


@dataclass(frozen=True)
class DefectRanks:
    """r_i = sum_{n >= i} (-1)^(n-i) beta_n for i = 1..p, plus the generic rank r_0."""

    r: tuple
    r0: int

    def __getitem__(self, i: int) -> int:
        if i == 0:
            return self.r0
        return self.r[i - 1]


def check_shapes(maps) -> None:
    if not maps:
        raise ResolutionError("a resolution needs at least one map")
    for i, m in enumerate(maps, start=1):
        if m.rows < 1 or m.cols < 1:
            raise ResolutionError(f"phi_{i} has an empty dimension {m.shape}", {"map": i})
        if i > 1 and maps[i - 2].cols != m.rows:
            raise ResolutionError(
                f"shape mismatch: phi_{i - 1} has {maps[i - 2].cols} columns but phi_{i} has {m.rows} rows",
                {"map": i},
            )


def first_nonzero_composite(maps):
    """Locate the first nonzero entry of some phi_i * phi_{i+1}, or None."""
    for i in range(1, len(maps)):
        prod = maps[i - 1] @ maps[i]
        for (r, c), v in prod.nonzero():
            return {"maps": (i, i + 1), "row": r, "col": c, "value": str(v)}
    return None


def first_unit_entry(res) -> dict | None:
    maps = res.maps if isinstance(res, FreeResolution) else res
    for i, m in enumerate(maps, start=1):
        for (r, c), v in m.nonzero():
            if v.constant_term() != 0:
                return {"map": i, "row": r, "col": c, "value": str(v)}
    return None


def make_resolution(ring: RingConfig, maps, minimal: bool = False, description: str = "") -> FreeResolution:
    maps = tuple(maps)
    check_shapes(maps)
    bad = first_nonzero_composite(maps)
    if bad is not None:
        i, k = bad["maps"]
        raise ResolutionError(
            f"phi_{i}*phi_{k} is nonzero at ({bad['row']}, {bad['col']}): {bad['value']}", bad
        )
    if minimal:
        unit = first_unit_entry(maps)
        if unit is not None:
            raise ResolutionError(
                f"claimed minimal, but phi_{unit['map']}[{unit['row']}, {unit['col']}] = {unit['value']} "
                "has a nonzero constant term",
                unit,
            )
    return FreeResolution(ring, maps, minimal, description)


def parse_resolution(data: dict) -> FreeResolution:
    try:
        ring_data = data["ring"]
        ring = RingConfig(tuple(ring_data["variables"]), int(ring_data.get("characteristic", 0)))
        maps = []
        for k, md in enumerate(data["maps"], start=1):
            entries = md["entries"]
            rows = int(md.get("rows", len(entries)))
            cols = int(md.get("cols", len(entries[0]) if entries else 0))
            if len(entries) != rows or any(len(row) != cols for row in entries):
                raise ResolutionError(f"phi_{k}: entries do not form a {rows}x{cols} grid", {"map": k})
            maps.append(PolyMatrix.from_rows(ring, entries))
    except ResolutionError:
        raise
    except (KeyError, TypeError, IndexError, PolynomialError, ValueError) as exc:
        raise ResolutionFormatError(f"malformed resolution document: {exc}") from exc
    return make_resolution(ring, maps, bool(data.get("minimal", False)), str(data.get("description", "")))


def load_resolution(document) -> FreeResolution:
    """Load from a path, a JSON string, or an already-decoded dict."""
    if isinstance(document, dict):
        return parse_resolution(document)
    if isinstance(document, Path) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        text = Path(document).read_text()
    else:
        text = document
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ResolutionFormatError(f"invalid JSON: {exc}") from exc
    return parse_resolution(data)


def matrix_record(m: PolyMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.to_strings()}


def resolution_to_dict(res: FreeResolution) -> dict:
    out = {}
    if res.description:
        out["description"] = res.description
    out["ring"] = {"variables": list(res.ring.variables), "characteristic": res.ring.characteristic}
    out["minimal"] = res.minimal_claimed
    out["maps"] = [matrix_record(m) for m in res.maps]
    return out


def dump_resolution(res: FreeResolution) -> str:
    return json.dumps(resolution_to_dict(res), indent=2) + "\n"


def save_resolution(res: FreeResolution, path) -> None:
    Path(path).write_text(dump_resolution(res))


def defect_ranks(res) -> DefectRanks:
    """Alternating tail sums of the ranks; accepts a resolution or a betti vector."""
    betti = res.betti if isinstance(res, FreeResolution) else tuple(res)
    p = len(betti) - 1
    r = [0] * (p + 2)
    for i in range(p, -1, -1):
        r[i] = betti[i] - r[i + 1]
    return DefectRanks(tuple(r[1:p + 1]), r[0])


def koszul_resolution(ring: RingConfig, variables=None) -> FreeResolution:
    """Koszul resolution of k = R/(x_1..x_n) on the given (default: all) variables."""
    from itertools import combinations

    names = tuple(variables) if variables is not None else ring.variables
    xs = [ring.var(v) for v in names]
    n = len(xs)
    maps = []
    for k in range(1, n + 1):
        rows = list(combinations(range(n), k - 1))
        cols = list(combinations(range(n), k))
        rindex = {s: i for i, s in enumerate(rows)}
        data = {}
        for c, s in enumerate(cols):
            for l, v in enumerate(s):
                face = s[:l] + s[l + 1:]
                data[(rindex[face], c)] = -xs[v] if l % 2 else xs[v]
        maps.append(PolyMatrix(ring, len(rows), len(cols), data))
    return make_resolution(ring, maps, minimal=True, description=f"Koszul complex on {', '.join(names)}")
