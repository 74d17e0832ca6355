"""Buchberger's algorithm and the dimension/height/grade computations built on it.

Pairs are selected by sugar degree and pruned with Buchberger's coprime
criterion and the Gebauer-Moeller chain criterion.  Krull dimension is read
off the leading monomials of the reduced basis: it is the size of the largest
variable set containing the support of no leading monomial.
"""

from __future__ import annotations

import hashlib
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .matrix import Ideal, ResourceGuardError
from .poly import Polynomial, RingConfig, _add, _fmul, grevlex_key, parse_polynomial

DEFAULT_SPAIR_BUDGET = 500_000
ORDER = "grevlex"


class GradeError(ValueError):
    """The ideal is not contained in the maximal ideal at the origin."""


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    basis: tuple
    order: str = ORDER

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.basis]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.basis)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()


@dataclass(frozen=True)
class GradeResult:
    """Dimension of R/I, height and grade of I.

    The unit ideal reports ``dimension == -1`` and ``math.inf`` for height and
    grade, so that it clears every grade threshold.
    """

    ideal: Ideal
    dimension: int
    height: float
    grade: float
    is_proper: bool


# -- raw kernels -------------------------------------------------------------

def _lead(f: dict):
    return max(f, key=grevlex_key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _monic(f: dict, p: int) -> dict:
    lm = _lead(f)
    c = f[lm]
    if c == 1:
        return f
    if p:
        inv = pow(c, -1, p)
    else:
        inv = Fraction(1) / c
    return {m: _fmul(v, inv, p) for m, v in f.items()}


def _sub_multiple(f: dict, c, shift, g: dict, p: int) -> dict:
    """f - c * x^shift * g."""
    out = f
    for m, v in g.items():
        mm = tuple(a + b for a, b in zip(m, shift))
        w = out.get(mm, 0) - _fmul(c, v, p)
        if p:
            w %= p
        elif isinstance(w, Fraction) and w.denominator == 1:
            w = w.numerator
        if w:
            out[mm] = w
        else:
            del out[mm]
    return out


def _reduce(f: dict, basis: list, leads: list, p: int) -> dict:
    """Full normal form of f modulo monic polynomials ``basis``."""
    f = dict(f)
    rem = {}
    while f:
        m = _lead(f)
        c = f[m]
        for g, lm in zip(basis, leads):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                _sub_multiple(f, c, shift, g, p)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _spoly(f: dict, lf, g: dict, lg, p: int) -> dict:
    l = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(l, lf))
    sg = tuple(a - b for a, b in zip(l, lg))
    out = {tuple(a + b for a, b in zip(m, sf)): v for m, v in f.items()}
    return _sub_multiple(out, 1, sg, g, p)


class _UnitFound(Exception):
    pass


def _buchberger_raw(gens: list, p: int, budget: int) -> list:
    polys: list = []
    leads: list = []
    sugar: list = []
    active: list = []
    pairs: list = []  # heap of (sugar, lcm key, i, j)
    live_pairs: set = set()

    def update(h: int):
        lh = leads[h]
        # chain criterion on the new pairs; coprime pairs are dropped afterwards
        cands = [(g, _lcm(leads[g], lh)) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cands):
            coprime = all(a == 0 or b == 0 for a, b in zip(leads[g], lh))
            if coprime:
                kept.append((g, l, True))
                continue
            dominated = False
            for idx2, (g2, l2) in enumerate(cands):
                if idx2 == idx:
                    continue
                if _divides(l2, l) and (l2 != l or idx2 < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, l, False))
        new_pairs = [(g, l) for g, l, coprime in kept if not coprime]
        # prune old pairs whose lcm is strictly covered through h
        for pair in list(live_pairs):
            i, j = pair
            lij = _lcm(leads[i], leads[j])
            if _divides(lh, lij) and _lcm(leads[i], lh) != lij and _lcm(leads[j], lh) != lij:
                live_pairs.discard(pair)
        for g, l in new_pairs:
            s = max(sugar[g] + sum(l) - sum(leads[g]), sugar[h] + sum(l) - sum(lh))
            pair = (g, h)
            live_pairs.add(pair)
            heapq.heappush(pairs, (s, grevlex_key(l), g, h))
        active[:] = [g for g in active if not _divides(lh, leads[g])]
        active.append(h)

    def add(f: dict, s: int):
        f = _monic(f, p)
        if not any(_lead(f)):
            raise _UnitFound
        polys.append(f)
        leads.append(_lead(f))
        sugar.append(s)
        update(len(polys) - 1)

    nv = len(_lead(gens[0]))
    try:
        for f in sorted(gens, key=lambda f: grevlex_key(_lead(f))):
            h = _reduce(f, [polys[g] for g in active], [leads[g] for g in active], p)
            if h:
                add(h, max(sum(m) for m in f))
        steps = 0
        while pairs:
            s, _, i, j = heapq.heappop(pairs)
            if (i, j) not in live_pairs:
                continue
            live_pairs.discard((i, j))
            steps += 1
            if steps > budget:
                raise ResourceGuardError(f"S-pair budget of {budget} reductions exceeded")
            sp = _spoly(polys[i], leads[i], polys[j], leads[j], p)
            h = _reduce(sp, [polys[g] for g in active], [leads[g] for g in active], p)
            if h:
                add(h, s)
    except _UnitFound:
        return [{(0,) * nv: 1}]
    # minimal basis is `active`; interreduce to the reduced basis
    basis = [polys[g] for g in active]
    blead = [leads[g] for g in active]
    reduced = []
    for k, g in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        olead = blead[:k] + blead[k + 1:]
        tail = dict(g)
        lm = blead[k]
        del tail[lm]
        r = _reduce(tail, others, olead, p)
        r[lm] = 1
        reduced.append(r)
    reduced.sort(key=lambda f: grevlex_key(_lead(f)), reverse=True)
    return reduced


def normal_form(f: Polynomial, basis) -> Polynomial:
    p = f.ring.characteristic
    monic = [_monic(g.terms, p) for g in basis if not g.is_zero()]
    leads = [_lead(g) for g in monic]
    return Polynomial._raw(f.ring, _reduce(f.terms, monic, leads, p))


class GroebnerCache:
    """On-disk cache of reduced bases, one file per (ring, generators, order) key.

    Each file lists the basis elements in the polynomial text grammar, one per line.
    """

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(ideal: Ideal, order: str = ORDER) -> str:
        ring = ideal.ring
        gens = sorted(str(g) for g in ideal.generators)
        return "\n".join([",".join(ring.variables), str(ring.characteristic), order, *gens])

    def _path(self, ideal: Ideal, order: str) -> Path:
        digest = hashlib.sha256(self.key(ideal, order).encode()).hexdigest()
        return self.directory / f"{digest}.gb"

    def get(self, ideal: Ideal, order: str = ORDER):
        path = self._path(ideal, order)
        if not path.exists():
            return None
        lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
        return GroebnerBasis(ideal, tuple(parse_polynomial(ln, ideal.ring) for ln in lines), order)

    def put(self, gb: GroebnerBasis) -> None:
        path = self._path(gb.ideal, gb.order)
        path.write_text("".join(f"{g}\n" for g in gb.basis))


def buchberger(ideal: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET, cache: GroebnerCache | None = None) -> GroebnerBasis:
    ring = ideal.ring
    if ideal.unit_flag:
        return GroebnerBasis(ideal, (ring.one(),))
    if ideal.is_zero():
        return GroebnerBasis(ideal, ())
    if cache is not None:
        hit = cache.get(ideal)
        if hit is not None:
            return hit
    p = ring.characteristic
    seen = set()
    gens = []
    for g in ideal.generators:
        m = _monic(g.terms, p)
        key = frozenset(m.items())
        if key not in seen:
            seen.add(key)
            gens.append(m)
    raw = _buchberger_raw(gens, p, spair_budget)
    gb = GroebnerBasis(ideal, tuple(Polynomial._raw(ring, f) for f in raw))
    if cache is not None:
        cache.put(gb)
    return gb


# -- dimension ---------------------------------------------------------------

def _min_hitting_set(supports: list, n: int) -> int:
    """Smallest variable set meeting every support (bitmasks); branch and bound."""
    sets = sorted(set(supports), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    best = [n + 1]

    def search(chosen: int, size: int):
        if size >= best[0]:
            return
        for s in minimal:
            if not s & chosen:
                break
        else:
            best[0] = size
            return
        bits = s
        while bits:
            b = bits & -bits
            bits ^= b
            search(chosen | b, size + 1)

    search(0, 0)
    return best[0]


def monomial_dimension(monomials, n: int) -> int:
    """Krull dimension of k[x_1..x_n] / (monomials)."""
    supports = []
    for m in monomials:
        mask = 0
        for i, e in enumerate(m):
            if e:
                mask |= 1 << i
        if mask == 0:
            return -1
        supports.append(mask)
    if not supports:
        return n
    return n - _min_hitting_set(supports, n)


def krull_dimension(ideal: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET, cache: GroebnerCache | None = None) -> int:
    n = ideal.ring.nvars
    if ideal.unit_flag:
        return -1
    if ideal.is_zero():
        return n
    gb = buchberger(ideal, spair_budget, cache)
    return monomial_dimension(gb.leading_monomials(), n)


def max_independent_set(ideal: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET) -> tuple:
    """A largest set of variables independent modulo the ideal (names)."""
    from itertools import combinations

    ring = ideal.ring
    n = ring.nvars
    if ideal.unit_flag:
        return ()
    leads = buchberger(ideal, spair_budget).leading_monomials() if not ideal.is_zero() else []
    supports = [{i for i, e in enumerate(m) if e} for m in leads]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return tuple(ring.variables[i] for i in subset)
    return ()


def grade(ideal: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET, cache: GroebnerCache | None = None) -> GradeResult:
    """Grade of I as the height of I in the polynomial ring.

    Requires every generator to vanish at the origin; the global height then
    equals the local grade at the origin whenever each minimal prime of I
    passes through the origin (e.g. homogeneous ideals).
    """
    n = ideal.ring.nvars
    if ideal.unit_flag:
        return GradeResult(ideal, -1, math.inf, math.inf, False)
    for g in ideal.generators:
        if g.constant_term() != 0:
            raise GradeError(f"generator {g} has a nonzero constant term")
    dim = krull_dimension(ideal, spair_budget, cache)
    height = n - dim
    return GradeResult(ideal, dim, height, height, True)
