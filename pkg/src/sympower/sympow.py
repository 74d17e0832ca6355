"""The complex S_j F of a finite free resolution F.

Degree t of S_j F is the direct sum, over compositions (a_0, ..., a_p) with
sum a_i = j and sum i*a_i = t, of

    D_{a_0} F_0 (x) L^{a_1} F_1 (x) D_{a_2} F_2 (x) ...

with divided powers D at even positions and exterior powers L at odd ones.
The differential moves one unit from position i+1 to position i:

* i odd  ("A" map): lower a divided exponent of f_l in F_{i+1} and wedge
  phi_{i+1}(f_l) onto the right end of the exterior factor of F_i;
* i even ("B" map): delete the l-th wedge factor f of F_{i+1} with sign
  (-1)^(l+1) and multiply phi_{i+1}(f) into the divided factor of F_i.

Basis conventions (fixed so every matrix is reproducible):
divided monomials in descending lexicographic order of exponent vectors,
exterior tuples in lexicographic order, tensor blocks with the rightmost
factor varying fastest, compositions in lexicographic order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .matrix import PolyMatrix, ResourceGuardError
from .poly import RingConfig

log = logging.getLogger(__name__)

DEFAULT_RANK_CAP = 50_000


class CharacteristicError(ValueError):
    pass


# -- combinatorics -----------------------------------------------------------

def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 for k < 0 or k > n and 1 for k == 0."""
    if k == 0:
        return 1
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def divided_rank(l: int, j: int) -> int:
    """Rank of D_j of a free module of rank l."""
    if l < 0 or j < 0:
        raise ValueError("rank and power must be non-negative")
    if l == 0:
        return 1 if j == 0 else 0
    return comb(j + l - 1, l - 1)


@dataclass(frozen=True, order=True)
class Composition:
    a: tuple

    @property
    def j(self) -> int:
        return sum(self.a)

    @property
    def t(self) -> int:
        return sum(i * ai for i, ai in enumerate(self.a))

    def step(self, i: int) -> "Composition":
        """The composition reached by the differential component at position i."""
        a = list(self.a)
        a[i] += 1
        a[i + 1] -= 1
        return Composition(tuple(a))


def enumerate_compositions(j: int, t: int, p: int) -> list:
    """All (a_0..a_p) >= 0 with sum a_i = j and sum i*a_i = t, lexicographically."""
    if j < 0 or t < 0 or p < 0:
        return []
    out = []

    def rec(i: int, left_j: int, left_t: int, prefix: list):
        if i == p:
            if left_t == p * left_j:
                out.append(Composition(tuple(prefix + [left_j])))
            return
        # positions after i carry weight >= i+1 each
        for ai in range(left_j + 1):
            rest_j = left_j - ai
            rest_t = left_t - i * ai
            if rest_t < 0:
                break
            if rest_t < (i + 1) * rest_j or rest_t > p * rest_j:
                continue
            rec(i + 1, rest_j, rest_t, prefix + [ai])

    rec(0, j, t, [])
    return out


def divided_basis(l: int, a: int) -> list:
    """Exponent vectors of length l summing to a, descending lexicographic."""
    if l == 0:
        return [()] if a == 0 else []
    if l == 1:
        return [(a,)]
    return [(e,) + rest for e in range(a, -1, -1) for rest in divided_basis(l - 1, a - e)]


def exterior_basis(l: int, a: int) -> list:
    return list(combinations(range(l), a))


def factor_rank(i: int, beta_i: int, a_i: int) -> int:
    return divided_rank(beta_i, a_i) if i % 2 == 0 else binomial(beta_i, a_i)


def factor_basis(i: int, beta_i: int, a_i: int) -> list:
    return divided_basis(beta_i, a_i) if i % 2 == 0 else exterior_basis(beta_i, a_i)


def _betti_of(res) -> tuple:
    return tuple(res.betti) if hasattr(res, "betti") else tuple(res)


@dataclass
class Block:
    composition: Composition
    rank: int
    basis: list | None = None


@dataclass
class Component:
    t: int
    blocks: list

    @property
    def total_rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    def offsets(self) -> list:
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b.rank
        return out

    def locate(self, index: int):
        """(composition, basis element) at a global index of this component."""
        for b, off in zip(self.blocks, self.offsets()):
            if off <= index < off + b.rank:
                element = b.basis[index - off] if b.basis is not None else index - off
                return b.composition.a, element
        raise IndexError(index)


def component_spec(res, j: int, t: int, with_basis: bool = False) -> Component:
    """Blocks and ranks of degree t of S_j F; ``res`` may also be a betti vector."""
    betti = _betti_of(res)
    p = len(betti) - 1
    blocks = []
    for comp in enumerate_compositions(j, t, p):
        rank = 1
        for i, ai in enumerate(comp.a):
            rank *= factor_rank(i, betti[i], ai)
        basis = None
        if with_basis:
            basis = list(product(*(factor_basis(i, betti[i], ai) for i, ai in enumerate(comp.a)))) if rank else []
        blocks.append(Block(comp, rank, basis))
    return Component(t, blocks)


def expected_length(res, j: int) -> int:
    betti = _betti_of(res)
    p = len(betti) - 1
    if p % 2 == 0:
        return j * p
    return j * (p - 1) + min(betti[p], j)


# -- the two local maps --------------------------------------------------------

def _columns(phi: PolyMatrix) -> list:
    cols = [[] for _ in range(phi.cols)]
    for (r, c), v in phi.nonzero():
        cols[c].append((r, v))
    return cols


def _a_terms(cols: list, alpha: tuple, v: tuple):
    """D_a F_{i+1} (x) L^b F_i -> D_{a-1} F_{i+1} (x) L^{b+1} F_i on one basis pair."""
    vset = set(v)
    for l, e in enumerate(alpha):
        if not e:
            continue
        lowered = alpha[:l] + (e - 1,) + alpha[l + 1:]
        for g, entry in cols[l]:
            if g in vset:
                continue
            # v ^ phi(f_l): move g from the back to its sorted slot
            pos = sum(1 for x in v if x > g)
            wedge = tuple(sorted(v + (g,)))
            yield (-entry if pos % 2 else entry), lowered, wedge


def _b_terms(cols: list, u: tuple, beta: tuple, divided_product: bool = True):
    """L^a F_{i+1} (x) D_b F_i -> L^{a-1} F_{i+1} (x) D_{b+1} F_i on one basis pair."""
    for l, f in enumerate(u):
        shorter = u[:l] + u[l + 1:]
        negate = l % 2 == 1  # (-1)^(l+1) with 1-based l
        for g, entry in cols[f]:
            raised = beta[:g] + (beta[g] + 1,) + beta[g + 1:]
            coef = entry * (beta[g] + 1) if divided_product else entry
            yield (-coef if negate else coef), shorter, raised


def build_A_map(phi: PolyMatrix, a_src: int, a_dst: int) -> PolyMatrix:
    """Matrix of D_{a_src} F_{i+1} (x) L^{a_dst} F_i -> D_{a_src-1} F_{i+1} (x) L^{a_dst+1} F_i.

    ``phi`` is the matrix of phi_{i+1}: F_{i+1} -> F_i.  Bases are the tensor
    products in that factor order, rightmost factor fastest.
    """
    if a_src < 1 or a_dst < 0:
        raise ValueError("degrees out of range")
    src_d, dst_d = phi.cols, phi.rows
    src = list(product(divided_basis(src_d, a_src), exterior_basis(dst_d, a_dst)))
    tgt = list(product(divided_basis(src_d, a_src - 1), exterior_basis(dst_d, a_dst + 1)))
    index = {x: k for k, x in enumerate(tgt)}
    cols = _columns(phi)
    data: dict = {}
    for c, (alpha, v) in enumerate(src):
        for coef, alpha2, v2 in _a_terms(cols, alpha, v):
            key = (index[(alpha2, v2)], c)
            data[key] = data[key] + coef if key in data else coef
    return PolyMatrix(phi.ring, len(tgt), len(src), data)


def build_B_map(phi: PolyMatrix, a_src: int, a_dst: int, divided_product: bool = True) -> PolyMatrix:
    """Matrix of L^{a_src} F_{i+1} (x) D_{a_dst} F_i -> L^{a_src-1} F_{i+1} (x) D_{a_dst+1} F_i.

    With ``divided_product`` the new factor is multiplied in the divided power
    algebra, g * g^(k) = (k+1) g^(k+1); otherwise every coefficient is 1.
    """
    if a_src < 1 or a_dst < 0:
        raise ValueError("degrees out of range")
    src_d, dst_d = phi.cols, phi.rows
    src = list(product(exterior_basis(src_d, a_src), divided_basis(dst_d, a_dst)))
    tgt = list(product(exterior_basis(src_d, a_src - 1), divided_basis(dst_d, a_dst + 1)))
    index = {x: k for k, x in enumerate(tgt)}
    cols = _columns(phi)
    data: dict = {}
    for c, (u, beta) in enumerate(src):
        for coef, u2, beta2 in _b_terms(cols, u, beta, divided_product):
            key = (index[(u2, beta2)], c)
            data[key] = data[key] + coef if key in data else coef
    return PolyMatrix(phi.ring, len(tgt), len(src), data)


# -- assembly ----------------------------------------------------------------

def block_sign(a: tuple, i: int) -> int:
    """(-1)^sigma with sigma = a_0 + 2*a_1 + ... + (i+1)*a_i on the source composition.

    This scalar gives d^2 = 0 together with the A map wedging on the right;
    with a left wedge the two paths through positions i and i+1 fail to cancel.
    """
    sigma = sum((k + 1) * a[k] for k in range(i + 1))
    return -1 if sigma % 2 else 1


@dataclass
class SymPowerComplex:
    ring: RingConfig
    j: int
    betti: tuple
    components: list
    differentials: list  # differentials[t - 1] is d_t
    predicted_length: int
    notes: list = field(default_factory=list)

    @property
    def ranks(self) -> list:
        return [c.total_rank for c in self.components]

    @property
    def realized_length(self) -> int:
        last = 0
        for t, r in enumerate(self.ranks):
            if r:
                last = t
        return last

    def d(self, t: int) -> PolyMatrix:
        return self.differentials[t - 1]

    def euler_characteristic(self) -> int:
        return sum((-1) ** t * r for t, r in enumerate(self.ranks))


def characteristic_ok(char: int, j: int, p: int) -> bool:
    """True when every integer 2..j*p is invertible in the coefficient field."""
    return char == 0 or j <= 1 or char > j * p


def assemble_complex(
    res,
    j: int,
    force: bool = False,
    rank_cap: int = DEFAULT_RANK_CAP,
    divided_product: bool = True,
    sign=block_sign,
) -> SymPowerComplex:
    if j < 0:
        raise ValueError("j must be non-negative")
    ring = res.ring
    betti = tuple(res.betti)
    p = len(betti) - 1
    notes = []
    if not characteristic_ok(ring.characteristic, j, p):
        msg = (f"characteristic {ring.characteristic} does not exceed j*p = {j * p}; "
               "S_jF need not be a complex")
        if not force:
            raise CharacteristicError(msg)
        log.warning("%s (forced)", msg)
        notes.append(msg + " (forced)")

    top = j * p
    total = sum(component_spec(betti, j, t).total_rank for t in range(top + 1))
    if total > rank_cap:
        raise ResourceGuardError(f"total component rank {total} exceeds rank cap {rank_cap}")

    components = [component_spec(betti, j, t, with_basis=True) for t in range(top + 1)]
    while len(components) > 1 and components[-1].total_rank == 0:
        components.pop()

    cols_of = [_columns(m) for m in res.maps]
    differentials = []
    for t in range(1, len(components)):
        src, tgt = components[t], components[t - 1]
        tgt_index = {}
        for b, off in zip(tgt.blocks, tgt.offsets()):
            tgt_index[b.composition] = (off, {x: k for k, x in enumerate(b.basis)})
        data: dict = {}
        for b, off in zip(src.blocks, src.offsets()):
            a = b.composition.a
            for i in range(p):
                if a[i + 1] == 0:
                    continue
                dest = b.composition.step(i)
                if dest not in tgt_index:
                    continue
                toff, tindex = tgt_index[dest]
                if not tindex:
                    continue
                s = sign(a, i)
                cols = cols_of[i]
                for k, x in enumerate(b.basis):
                    if i % 2:
                        terms = ((c, v2, a2) for c, a2, v2 in _a_terms(cols, x[i + 1], x[i]))
                    else:
                        terms = ((c, b2, u2) for c, u2, b2 in _b_terms(cols, x[i + 1], x[i], divided_product))
                    for coef, new_i, new_i1 in terms:
                        y = x[:i] + (new_i, new_i1) + x[i + 2:]
                        key = (toff + tindex[y], off + k)
                        val = coef if s == 1 else -coef
                        data[key] = data[key] + val if key in data else val
        differentials.append(PolyMatrix(ring, tgt.total_rank, src.total_rank, data))
    return SymPowerComplex(ring, j, betti, components, differentials, expected_length(betti, j), notes)


# -- verification ------------------------------------------------------------

@dataclass
class VerificationReport:
    check: str
    ok: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_dd_zero(c: SymPowerComplex, max_witnesses: int = 10) -> VerificationReport:
    witnesses = []
    for t in range(2, len(c.components)):
        prod = c.d(t - 1) @ c.d(t)
        for (r, col), v in prod.nonzero():
            if len(witnesses) >= max_witnesses:
                break
            row_comp, row_elt = c.components[t - 2].locate(r)
            col_comp, col_elt = c.components[t].locate(col)
            witnesses.append({
                "t": t, "row": r, "col": col, "value": str(v),
                "row_block": row_comp, "row_basis": row_elt,
                "col_block": col_comp, "col_basis": col_elt,
            })
    return VerificationReport("d^2 = 0", not witnesses, witnesses)


def verify_minimal(c: SymPowerComplex, max_witnesses: int = 10) -> VerificationReport:
    witnesses = []
    for t, d in enumerate(c.differentials, start=1):
        for (r, col), v in d.nonzero():
            if v.constant_term() != 0:
                if len(witnesses) < max_witnesses:
                    witnesses.append({"t": t, "row": r, "col": col, "value": str(v),
                                      "row_block": c.components[t - 1].locate(r)[0],
                                      "col_block": c.components[t].locate(col)[0]})
    return VerificationReport("minimal", not witnesses, witnesses)


def complex_to_dict(c: SymPowerComplex) -> dict:
    from .resolution import matrix_record

    return {
        "ring": {"variables": list(c.ring.variables), "characteristic": c.ring.characteristic},
        "j": c.j,
        "betti": list(c.betti),
        "predicted_length": c.predicted_length,
        "realized_length": c.realized_length,
        "components": [
            {"t": comp.t, "total_rank": comp.total_rank,
             "blocks": [{"composition": list(b.composition.a), "rank": b.rank} for b in comp.blocks]}
            for comp in c.components
        ],
        "differentials": [dict(t=t, **matrix_record(d)) for t, d in enumerate(c.differentials, start=1)],
    }
