"""Matrices over a polynomial ring: determinants, minors ideals, generic rank."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .poly import Polynomial, PolynomialError, RingConfig, RingMismatchError, parse_polynomial

DEFAULT_MAX_MINOR_COUNT = 100_000
COFACTOR_LIMIT = 4


class ResourceGuardError(RuntimeError):
    """A configurable size or work budget was exceeded."""


class PolyMatrix:
    """A rows x cols matrix of polynomials, stored sparsely.

    Resolution matrices and the differentials built from them are mostly zero,
    so only nonzero entries are kept; ``entries`` materializes the full grid.
    """

    __slots__ = ("ring", "rows", "cols", "_data")

    def __init__(self, ring: RingConfig, rows: int, cols: int, data: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in (data or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            if v.ring != ring:
                raise RingMismatchError("matrix entry from a different ring")
            if not v.is_zero():
                clean[(r, c)] = v
        self._data = clean

    @classmethod
    def from_rows(cls, ring: RingConfig, grid: Sequence[Sequence]) -> "PolyMatrix":
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        data = {}
        for r, row in enumerate(grid):
            if len(row) != cols:
                raise ValueError(f"row {r} has {len(row)} entries, expected {cols}")
            for c, v in enumerate(row):
                if isinstance(v, str):
                    v = parse_polynomial(v, ring)
                elif not isinstance(v, Polynomial):
                    v = ring.constant(v)
                data[(r, c)] = v
        return cls(ring, rows, cols, data)

    @classmethod
    def identity(cls, ring: RingConfig, n: int) -> "PolyMatrix":
        one = ring.one()
        return cls(ring, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def zeros(cls, ring: RingConfig, rows: int, cols: int) -> "PolyMatrix":
        return cls(ring, rows, cols)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def entries(self) -> list:
        zero = self.ring.zero()
        return [[self._data.get((r, c), zero) for c in range(self.cols)] for r in range(self.rows)]

    def __getitem__(self, rc) -> Polynomial:
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        return self._data.get((r, c)) or self.ring.zero()

    def nonzero(self) -> Iterable:
        """Yield ((row, col), entry) for nonzero entries in row-major order."""
        for rc in sorted(self._data):
            yield rc, self._data[rc]

    def nnz(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: i for i, c in enumerate(cols)}
        data = {}
        for (r, c), v in self._data.items():
            if r in rpos and c in cpos:
                data[(rpos[r], cpos[c])] = v
        return PolyMatrix(self.ring, len(rows), len(cols), data)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.cols, self.rows, {(c, r): v for (r, c), v in self._data.items()})

    def scale(self, c) -> "PolyMatrix":
        k = self.ring.constant(c) if not isinstance(c, Polynomial) else c
        return PolyMatrix(self.ring, self.rows, self.cols, {rc: v * k for rc, v in self._data.items()})

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ring != other.ring:
            raise RingMismatchError("matrices live in different rings")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict = {}
        for (k, c), v in other._data.items():
            by_row.setdefault(k, []).append((c, v))
        acc: dict = {}
        for (r, k), a in self._data.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                prod = a * b
                acc[key] = acc[key] + prod if key in acc else prod
        return PolyMatrix(self.ring, self.rows, other.cols, acc)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        data = dict(self._data)
        for rc, v in other._data.items():
            data[rc] = data[rc] + v if rc in data else v
        return PolyMatrix(self.ring, self.rows, self.cols, data)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, frozenset(self._data.items())))

    def with_entry(self, r: int, c: int, value: Polynomial) -> "PolyMatrix":
        data = dict(self._data)
        data[(r, c)] = value
        return PolyMatrix(self.ring, self.rows, self.cols, data)

    def to_strings(self) -> list:
        return [[str(v) for v in row] for row in self.entries]

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, nnz={len(self._data)})"


class Ideal:
    """An ideal given by generators; ``unit_flag`` marks the whole ring."""

    __slots__ = ("ring", "generators", "unit_flag")

    def __init__(self, ring: RingConfig, generators: Iterable[Polynomial] = (), unit: bool = False):
        gens = [g for g in generators if not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
        if unit or any(g.is_constant() for g in gens):
            unit = True
            gens = [ring.one()]
        self.ring = ring
        self.generators = tuple(gens)
        self.unit_flag = unit

    @classmethod
    def unit(cls, ring: RingConfig) -> "Ideal":
        return cls(ring, unit=True)

    @classmethod
    def zero(cls, ring: RingConfig) -> "Ideal":
        return cls(ring)

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        if self.unit_flag:
            return "Ideal(1)"
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def _cofactor_det(m: dict, rows: list, cols: list, zero: Polynomial) -> Polynomial:
    n = len(rows)
    if n == 0:
        return zero + 1
    if n == 1:
        return m.get((rows[0], cols[0]), zero)
    # expand along the sparsest row or column
    best_row = min(range(n), key=lambda i: sum((rows[i], c) in m for c in cols))
    best_col = min(range(n), key=lambda j: sum((r, cols[j]) in m for r in rows))
    row_nnz = sum((rows[best_row], c) in m for c in cols)
    col_nnz = sum((r, cols[best_col]) in m for r in rows)
    total = zero
    if row_nnz <= col_nnz:
        i = best_row
        sub_rows = rows[:i] + rows[i + 1:]
        for j, c in enumerate(cols):
            a = m.get((rows[i], c))
            if a is None:
                continue
            minor = _cofactor_det(m, sub_rows, cols[:j] + cols[j + 1:], zero)
            if minor.is_zero():
                continue
            term = a * minor
            total = total - term if (i + j) % 2 else total + term
    else:
        j = best_col
        sub_cols = cols[:j] + cols[j + 1:]
        for i, r in enumerate(rows):
            a = m.get((r, cols[j]))
            if a is None:
                continue
            minor = _cofactor_det(m, rows[:i] + rows[i + 1:], sub_cols, zero)
            if minor.is_zero():
                continue
            term = a * minor
            total = total - term if (i + j) % 2 else total + term
    return total


def _bareiss(grid: list, ncols: int, zero: Polynomial):
    """Fraction-free elimination in place; returns (rank, pivots, swap parity)."""
    nrows = len(grid)
    prev = zero + 1
    rank = 0
    swaps = 0
    pivots = []
    for c in range(ncols):
        if rank == nrows:
            break
        piv = None
        for r in range(rank, nrows):
            if not grid[r][c].is_zero():
                if piv is None or len(grid[r][c].terms) < len(grid[piv][c].terms):
                    piv = r
        if piv is None:
            continue
        if piv != rank:
            grid[piv], grid[rank] = grid[rank], grid[piv]
            swaps += 1
        p = grid[rank][c]
        for r in range(rank + 1, nrows):
            a = grid[r][c]
            row = grid[r]
            prow = grid[rank]
            for cc in range(c + 1, ncols):
                v = p * row[cc] - a * prow[cc]
                row[cc] = v.exact_div(prev) if not v.is_zero() else v
            row[c] = zero
        prev = p
        pivots.append((rank, c))
        rank += 1
    return rank, pivots, swaps


def determinant(m: PolyMatrix) -> Polynomial:
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    zero = m.ring.zero()
    if n <= COFACTOR_LIMIT:
        return _cofactor_det(m._data, list(range(n)), list(range(n)), zero)
    grid = m.entries
    rank, pivots, swaps = _bareiss(grid, n, zero)
    if rank < n:
        return zero
    d = grid[n - 1][n - 1]
    return -d if swaps % 2 else d


def minors(m: PolyMatrix, t: int, max_minor_count: int = DEFAULT_MAX_MINOR_COUNT):
    """Yield (row_set, col_set, minor) over all t x t minors in lexicographic order."""
    from math import comb

    count = comb(m.rows, t) * comb(m.cols, t)
    if count > max_minor_count:
        raise ResourceGuardError(
            f"{count} minors of size {t} exceed max_minor_count={max_minor_count}"
        )
    for rs in combinations(range(m.rows), t):
        for cs in combinations(range(m.cols), t):
            yield rs, cs, determinant(m.submatrix(rs, cs))


def minors_ideal(m: PolyMatrix, t: int, max_minor_count: int = DEFAULT_MAX_MINOR_COUNT) -> Ideal:
    if t <= 0:
        return Ideal.unit(m.ring)
    if t > min(m.rows, m.cols):
        return Ideal.zero(m.ring)
    return Ideal(m.ring, (d for _, _, d in minors(m, t, max_minor_count)))


def rank_over_fraction_field(m: PolyMatrix) -> int:
    if m.is_zero():
        return 0
    grid = m.entries
    rank, _, _ = _bareiss(grid, m.cols, m.ring.zero())
    return rank


__all__ = [
    "PolyMatrix",
    "Ideal",
    "ResourceGuardError",
    "determinant",
    "minors",
    "minors_ideal",
    "rank_over_fraction_field",
    "PolynomialError",
]
