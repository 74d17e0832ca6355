"""Closed-form Betti numbers of S_j(M), predicted lengths, and the bounds around them.

Everything here is integer arithmetic on the Betti vector (beta_0..beta_p) of
M; no matrices are involved.  Binomials follow the total convention
C(n, k) = 0 for k < 0 or k > n and C(n, 0) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .sympow import binomial, enumerate_compositions

LABELS = {"sym": "S_{j}(M)", "rees": "R_{j}(M)", "power": "I^{j}"}


def _check_p(beta, p: int | None) -> int:
    beta = tuple(beta)
    if p is None:
        p = len(beta) - 1
    if p != len(beta) - 1:
        raise ValueError(f"length {p} does not match a Betti vector with {len(beta)} entries")
    if p < 1 or any(b < 1 for b in beta):
        raise ValueError("need p >= 1 and positive Betti numbers")
    return p


def betti_formula(beta, p: int | None, j: int, t: int) -> int:
    """Rank of degree t of S_jF: divided-power factors at even i, exterior at odd i."""
    p = _check_p(beta, p)
    total = 0
    for comp in enumerate_compositions(j, t, p):
        term = 1
        for i, a in enumerate(comp.a):
            term *= binomial(beta[i] + a - 1, a) if i % 2 == 0 else binomial(beta[i], a)
        total += term
    return total


def betti_pd1(beta0: int, beta1: int, j: int, t: int) -> int:
    if not 0 <= t <= min(beta1, j):
        raise ValueError(f"t = {t} outside 0..min(beta_1, j) = {min(beta1, j)}")
    return binomial(beta0 + j - t - 1, j - t) * binomial(beta1, t)


def betti_pd2(beta, j: int, t: int) -> int:
    b0, b1, b2 = beta
    if not 0 <= t <= 2 * j:
        raise ValueError(f"t = {t} outside 0..2j = {2 * j}")
    if j >= t:
        rs = range(0, t // 2 + 1)
    else:
        rs = range(t - j, min(j, t // 2) + 1)
    return sum(
        binomial(b2 + r - 1, r) * binomial(b1, t - 2 * r) * binomial(b0 + j - t + r - 1, j - t + r)
        for r in rs
    )


def expected_pd(beta, p: int | None, j: int) -> int:
    p = _check_p(beta, p)
    if j < 1:
        raise ValueError("j must be at least 1")
    if p % 2 == 0:
        return j * p
    return j * (p - 1) + min(beta[p], j)


def upper_bound(beta, p: int | None, j: int) -> int:
    """The t-independent upper bound C(sum beta + j*(p+2)/2, j), or with (p+1)/2 for odd p."""
    p = _check_p(beta, p)
    s = sum(beta)
    if p == 1:
        return binomial(s + j, j)
    if p % 2 == 0:
        return binomial(s + j * (p + 2) // 2, j)
    return binomial(s + j * (p + 1) // 2, j)


def lower_bound(beta, p: int | None, j: int, t: int) -> int | None:
    """Binomial lower bound on beta_t(S_j M) for p in {1, 2}; None otherwise."""
    p = _check_p(beta, p)
    if p == 1:
        return binomial(beta[1], t)
    if p == 2:
        return binomial(beta[1], t) if j >= t else binomial(beta[1], 2 * j - t)
    return None


def rees_mu(mu: int, j: int) -> int:
    if mu < 1 or j < 0:
        raise ValueError("need mu >= 1 and j >= 0")
    return binomial(mu + j - 1, j)


@dataclass
class BettiTable:
    label: str
    j: int
    values: list
    source: str = "formula"
    pd: int | None = None
    stamp: str = ""

    @property
    def title(self) -> str:
        return LABELS[self.label].format(j=self.j)

    def to_dict(self) -> dict:
        out = {"label": self.label, "j": self.j, "values": list(self.values),
               "pd": self.pd if self.pd is not None else len(self.values) - 1, "source": self.source}
        if self.stamp:
            out["stamp"] = self.stamp
        return out

    def to_text(self) -> str:
        return render_tables([self])


def betti_table(beta, j: int, label: str = "sym") -> BettiTable:
    if label not in LABELS:
        raise ValueError(f"label must be one of {sorted(LABELS)}")
    beta = tuple(beta)
    p = _check_p(beta, None)
    pd = expected_pd(beta, p, j) if j >= 1 else 0
    values = [betti_formula(beta, p, j, t) for t in range(pd + 1)]
    return BettiTable(label, j, values, "formula", pd)


def table_from_complex(c, label: str = "sym") -> BettiTable:
    return BettiTable(label, c.j, list(c.ranks), "complex-ranks", c.realized_length)


def render_tables(tables) -> str:
    """Rows t, one column per table."""
    heads = ["t"] + [tb.title for tb in tables]
    depth = max(len(tb.values) for tb in tables)
    rows = [heads]
    for t in range(depth):
        rows.append([str(t)] + [str(tb.values[t]) if t < len(tb.values) else "" for tb in tables])
    widths = [max(len(r[k]) for r in rows) for k in range(len(heads))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows]
    for tb in tables:
        if tb.stamp:
            lines.append(f"{tb.title}: {tb.stamp}")
    return "\n".join(lines)


@dataclass(frozen=True)
class BoundRecord:
    t: int
    lower: int | None
    value: int
    upper: int

    @property
    def passed(self) -> bool:
        return (self.lower or 0) <= self.value <= self.upper

    def to_dict(self) -> dict:
        return {"t": self.t, "lower": self.lower, "value": self.value, "upper": self.upper, "pass": self.passed}


@dataclass
class BoundReport:
    beta: tuple
    j: int
    records: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {"beta": list(self.beta), "j": self.j, "overall": self.overall,
                "records": [r.to_dict() for r in self.records]}

    def to_text(self) -> str:
        rows = [("t", "lower", "value", "upper", "verdict")]
        for r in self.records:
            low = "n/a (no bound)" if r.lower is None else str(r.lower)
            rows.append((str(r.t), low, str(r.value), str(r.upper), "pass" if r.passed else "FAIL"))
        widths = [max(len(row[k]) for row in rows) for k in range(5)]
        lines = [f"bounds for beta = {tuple(self.beta)}, j = {self.j}"]
        lines += ["  " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
        lines.append(f"  overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)


def bound_report(beta, j: int, values=None) -> BoundReport:
    """Sandwich each beta_t between the lower and upper bounds; values default to the formula."""
    beta = tuple(beta)
    p = _check_p(beta, None)
    if values is None:
        values = betti_table(beta, j).values
    up = upper_bound(beta, p, j)
    records = [BoundRecord(t, lower_bound(beta, p, j, t), v, up) for t, v in enumerate(values)]
    return BoundReport(beta, j, records)


@dataclass
class BEHVerdict:
    d: int
    hypothesis: bool
    per_t: list  # (t, value, C(d, t), pass)
    total: int
    total_pass: bool

    @property
    def ok(self) -> bool:
        return all(row[3] for row in self.per_t) and self.total_pass

    def to_dict(self) -> dict:
        return {"d": self.d, "hypothesis": self.hypothesis, "total": self.total, "total_bound": 2 ** self.d,
                "total_pass": self.total_pass, "ok": self.ok,
                "per_t": [{"t": t, "value": v, "bound": b, "pass": ok} for t, v, b, ok in self.per_t]}


def beh_check(table: BettiTable, d: int, beta1: int) -> BEHVerdict:
    """beta_t >= C(d, t) and sum beta_t >= 2^d; guaranteed only when beta_1 >= d."""
    per_t = [(t, v, binomial(d, t), v >= binomial(d, t)) for t, v in enumerate(table.values)]
    total = sum(table.values)
    return BEHVerdict(d, beta1 >= d, per_t, total, total >= 2 ** d)


@dataclass
class FiberVerdict:
    composite_beta1: int
    per_t: list  # (t, value, C(beta1_T, t), pass)

    @property
    def ok(self) -> bool:
        return all(row[3] for row in self.per_t)

    def to_dict(self) -> dict:
        return {"composite_beta1": self.composite_beta1, "ok": self.ok,
                "per_t": [{"t": t, "value": v, "bound": b, "pass": ok} for t, v, b, ok in self.per_t]}


def fiber_bound(beta0_S: int, beta1_S: int, beta1_T_k: int, t: int | None = None,
                j: int | None = None, table: BettiTable | None = None) -> FiberVerdict:
    """First Betti number over a fiber product and the bound beta_t >= C(beta_1^T(k), t).

    With ``t`` given only that degree is checked; otherwise every degree of the table.
    """
    composite = beta0_S * beta1_T_k + beta1_S
    per_t = []
    if table is not None:
        if j is not None and table.j != j:
            raise ValueError(f"table is for j = {table.j}, not {j}")
        degrees = [t] if t is not None else range(len(table.values))
        for s in degrees:
            v = table.values[s]
            b = binomial(beta1_T_k, s)
            per_t.append((s, v, b, v >= b))
    return FiberVerdict(composite, per_t)
