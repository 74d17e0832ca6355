"""The (SW_j) grade conditions and the range of j for which they can hold.

For a resolution with maps phi_1..phi_p and defect ranks r_i, (SW_j) asks

* grade I_{r_i}(phi_i) >= j*i                       for even i,
* grade I_{r_i - t}(phi_i) >= j*(i-1) + 1 + t       for odd i, t = 0..j-1,
* j! invertible, i.e. characteristic 0 or greater than j.

Grades come from :mod:`sympower.groebner` in the polynomial ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .groebner import DEFAULT_SPAIR_BUDGET, GroebnerCache, grade
from .matrix import DEFAULT_MAX_MINOR_COUNT, minors_ideal
from .resolution import FreeResolution, defect_ranks
from .sympow import expected_length


def format_grade(value) -> str:
    if value == math.inf:
        return "∞ (unit ideal)"
    return str(value)


class GradeTable:
    """Grades of I_s(phi_i), computed once per (i, s) and reused across j."""

    def __init__(self, res: FreeResolution, spair_budget: int = DEFAULT_SPAIR_BUDGET,
                 max_minor_count: int = DEFAULT_MAX_MINOR_COUNT, cache: GroebnerCache | None = None):
        self.res = res
        self.spair_budget = spair_budget
        self.max_minor_count = max_minor_count
        self.cache = cache
        self._grades: dict = {}

    def __call__(self, i: int, size: int):
        key = (i, size)
        if key not in self._grades:
            ideal = minors_ideal(self.res.phi(i), size, self.max_minor_count)
            self._grades[key] = grade(ideal, self.spair_budget, self.cache).grade
        return self._grades[key]

    def computed(self) -> dict:
        return dict(self._grades)


@dataclass(frozen=True)
class Verdict:
    condition: str
    ideal: str
    required: int
    computed: float
    passed: bool

    def to_dict(self) -> dict:
        computed = "inf" if self.computed == math.inf else self.computed
        return {"condition": self.condition, "ideal": self.ideal, "required": self.required,
                "computed": computed, "pass": self.passed}


@dataclass
class SWReport:
    j: int
    verdicts: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failures(self) -> list:
        return [v for v in self.verdicts if not v.passed]

    def to_dict(self) -> dict:
        return {"j": self.j, "overall": self.overall, "verdicts": [v.to_dict() for v in self.verdicts]}

    def to_text(self) -> str:
        rows = [("condition", "ideal", "required", "computed", "verdict")]
        for v in self.verdicts:
            computed = format_grade(v.computed) if v.condition != "char" else str(v.computed)
            rows.append((v.condition, v.ideal, str(v.required), computed, "pass" if v.passed else "FAIL"))
        widths = [max(len(r[k]) for r in rows) for k in range(5)]
        lines = [f"(SW_{self.j}) check"]
        for r in rows:
            lines.append("  " + "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        lines.append(f"  overall: {'PASS' if self.overall else 'FAIL'}")
        for v in self.failures():
            if v.condition != "char":
                lines.append(f"  failed: grade {v.ideal} = {format_grade(v.computed)} < {v.required}")
        return "\n".join(lines)


def check_swj(res: FreeResolution, j: int, grades: GradeTable | None = None, **guards) -> SWReport:
    if j < 0:
        raise ValueError("j must be non-negative")
    grades = grades or GradeTable(res, **guards)
    r = defect_ranks(res)
    report = SWReport(j)
    for i in range(1, res.length + 1):
        if i % 2 == 0:
            size = r[i]
            g = grades(i, size)
            report.verdicts.append(Verdict(f"even-grade(i={i})", f"I_{size}(phi_{i})", j * i, g, g >= j * i))
        else:
            for t in range(j):
                size = r[i] - t
                need = j * (i - 1) + 1 + t
                g = grades(i, size)
                report.verdicts.append(Verdict(f"odd-grade(i={i},t={t})", f"I_{size}(phi_{i})", need, g, g >= need))
    char = res.ring.characteristic
    report.verdicts.append(Verdict("char", f"{j}! invertible", j, char, char == 0 or char > j))
    return report


@dataclass
class PD1Report:
    beta1: int
    verdicts: list

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"beta1": self.beta1, "overall": self.overall, "verdicts": [v.to_dict() for v in self.verdicts]}


def pd1_grade_criterion(res: FreeResolution, up_to: int | None = None,
                        grades: GradeTable | None = None, **guards) -> PD1Report:
    """grade I_j(phi_1) >= beta_1 - j + 1 for j = 1..min(up_to, beta_1)."""
    if res.length != 1:
        raise ValueError(f"the pd-1 criterion needs a length-1 resolution, got length {res.length}")
    grades = grades or GradeTable(res, **guards)
    beta1 = res.betti[1]
    top = beta1 if up_to is None else min(up_to, beta1)
    verdicts = []
    for j in range(1, top + 1):
        need = beta1 - j + 1
        g = grades(1, j)
        verdicts.append(Verdict(f"pd1(j={j})", f"I_{j}(phi_1)", need, g, g >= need))
    return PD1Report(beta1, verdicts)


@dataclass
class FeasibilityReport:
    """Largest j with expected pd of S_j(M) at most dim R (None when every j qualifies)."""

    p: int
    betti: tuple
    dim: int
    dim_source: str
    max_j: int | None
    rows: list  # (j, expected pd, case, feasible)

    def feasible(self, j: int) -> bool:
        return expected_length(self.betti, j) <= self.dim

    def to_dict(self) -> dict:
        return {
            "p": self.p, "dim": self.dim, "dim_source": self.dim_source, "max_j": self.max_j,
            "cases": [{"j": j, "expected_pd": e, "case": c, "feasible": f} for j, e, c, f in self.rows],
        }

    def to_text(self) -> str:
        bound = "unbounded" if self.max_j is None else f"j <= {self.max_j}"
        lines = [f"feasible range: {bound}  (p = {self.p}, dim R = {self.dim} from {self.dim_source})"]
        for j, e, case, ok in self.rows:
            lines.append(f"  j={j}: expected pd {e} {'<=' if ok else '>'} {self.dim}  [{case}]")
        return "\n".join(lines)


def feasibility_case(betti, j: int) -> str:
    """Which sub-case of the parity analysis governs j."""
    p = len(betti) - 1
    bp = betti[p]
    if p % 2 == 0:
        return "p even: j <= dim/p"
    labels = []
    if bp <= j:
        labels.append("p = 1, min = beta_1: beta_1 <= dim" if p == 1
                      else "p odd, min = beta_p: j <= (dim - beta_p)/(p - 1)")
    if j <= bp:
        labels.append("p = 1, min = j: j <= dim" if p == 1 else "p odd, min = j: j <= dim/p")
    return "; ".join(labels)


def j_feasible_range(res, dim: int | None = None) -> FeasibilityReport:
    betti = tuple(res.betti) if hasattr(res, "betti") else tuple(res)
    p = len(betti) - 1
    if dim is None:
        if not hasattr(res, "ring"):
            raise ValueError("dim is required when no ring is given")
        dim, source = res.ring.nvars, "variable count"
    else:
        source = "override"
    if p == 1 and betti[1] <= dim:
        max_j = None
        last = betti[1] + 1
    else:
        max_j = 0
        j = 1
        while expected_length(betti, j) <= dim:
            max_j = j
            j += 1
        last = max_j + 1
    rows = []
    for j in range(1, last + 1):
        e = expected_length(betti, j)
        rows.append((j, e, feasibility_case(betti, j), e <= dim))
    return FeasibilityReport(p, betti, dim, source, max_j, rows)
