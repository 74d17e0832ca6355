"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (a condition or verification
fails), 2 input error, 3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .betti import LABELS, beh_check, betti_table, bound_report, render_tables
from .groebner import DEFAULT_SPAIR_BUDGET, GradeError, GroebnerCache
from .matrix import DEFAULT_MAX_MINOR_COUNT, ResourceGuardError, rank_over_fraction_field
from .poly import PolynomialError
from .resolution import (
    FreeResolution,
    ResolutionError,
    ResolutionFormatError,
    defect_ranks,
    parse_resolution,
)
from .swcheck import GradeTable, check_swj, j_feasible_range
from .sympow import DEFAULT_RANK_CAP, CharacteristicError, assemble_complex, complex_to_dict, verify_dd_zero, verify_minimal

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    beta: list | None = None
    j: list = field(default_factory=list)
    as_label: str = "sym"
    dim: int | None = None
    force: bool = False
    format: str = "text"
    export: str | None = None
    max_minor_count: int = DEFAULT_MAX_MINOR_COUNT
    spair_budget: int = DEFAULT_SPAIR_BUDGET
    rank_cap: int = DEFAULT_RANK_CAP
    cache_dir: str | None = None

    def echo(self) -> str:
        parts = [f"{k}={v}" for k, v in asdict(self).items() if v not in (None, [])]
        return "# run: " + " ".join(parts)


def parse_j(text: str) -> list:
    """'3' -> [3]; '2..4' -> [2, 3, 4]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            js = list(range(lo, hi + 1))
        else:
            js = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid j or j-range: {text!r}") from None
    if any(j < 0 for j in js):
        raise argparse.ArgumentTypeError("j must be non-negative")
    return js


def parse_beta(text: str) -> list:
    try:
        beta = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid Betti vector: {text!r}") from None
    if len(beta) < 2 or any(b < 1 for b in beta):
        raise argparse.ArgumentTypeError("Betti vector needs at least two positive entries")
    return beta


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("guards must be positive")
    return value


class Session:
    """Loaded input plus shared grade cache for one invocation."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.document = None
        self.res: FreeResolution | None = None
        self._grades: GradeTable | None = None
        if cfg.input is not None:
            path = Path(cfg.input)
            if not path.exists():
                raise InputError(f"no such file: {cfg.input}")
            try:
                self.document = json.loads(path.read_text())
            except json.JSONDecodeError as exc:
                raise ResolutionFormatError(f"invalid JSON: {exc}") from exc
            if not isinstance(self.document, dict):
                raise ResolutionFormatError("a resolution document must be a JSON object")
            self.res = parse_resolution(self.document)

    @property
    def beta(self) -> tuple:
        if self.cfg.beta is not None:
            return tuple(self.cfg.beta)
        if self.res is None:
            raise InputError("give a resolution file or --beta")
        return self.res.betti

    def grades(self) -> GradeTable:
        if self._grades is None:
            cache = GroebnerCache(self.cfg.cache_dir) if self.cfg.cache_dir else None
            self._grades = GradeTable(self.res, self.cfg.spair_budget, self.cfg.max_minor_count, cache)
        return self._grades

    def need_resolution(self) -> FreeResolution:
        if self.res is None:
            raise InputError(f"'{self.cfg.command}' needs a resolution file")
        return self.res

    def reference(self, j: int):
        ref = (self.document or {}).get("reference_betti", {})
        return ref.get(str(j))


# -- commands: each returns (exit code, text lines, structured record) ------

def run_validate(s: Session):
    res = s.need_resolution()
    beta = ",".join(str(b) for b in res.betti)
    minimal = res.is_minimal()
    r = defect_ranks(res)
    ranks = [rank_over_fraction_field(m) for m in res.maps]
    rank_ok = all(ranks[i - 1] == r[i] for i in range(1, res.length + 1))
    text = [f"β = ({beta}), p = {res.length}, {'minimal' if minimal else 'not minimal'}, complex: OK",
            f"generic ranks {tuple(ranks)} vs expected {r.r}: {'OK' if rank_ok else 'MISMATCH'}"]
    record = {"betti": list(res.betti), "p": res.length, "minimal": minimal, "complex": True,
              "generic_ranks": ranks, "expected_ranks": list(r.r), "ranks_ok": rank_ok}
    return EXIT_OK, text, record


def run_sw_check(s: Session):
    res = s.need_resolution()
    code, text, records = EXIT_OK, [], []
    for j in s.cfg.j:
        rep = check_swj(res, j, s.grades())
        text.append(rep.to_text())
        records.append(rep.to_dict())
        if not rep.overall:
            code = EXIT_FAIL
    return code, text, {"reports": records}


def _export_path(base: str, j: int, many: bool) -> Path:
    path = Path(base)
    return path.with_name(f"{path.stem}-j{j}{path.suffix}") if many else path


def run_build(s: Session):
    res = s.need_resolution()
    code, text, records = EXIT_OK, [], []
    minimal_input = res.is_minimal()
    for j in s.cfg.j:
        c = assemble_complex(res, j, force=s.cfg.force, rank_cap=s.cfg.rank_cap)
        dd = verify_dd_zero(c)
        mn = verify_minimal(c)
        sw = check_swj(res, j, s.grades())
        ranks = " ".join(str(x) for x in c.ranks)
        text.append(f"S_{j}F: ranks {ranks}")
        text.append(f"  length: predicted {c.predicted_length}, realized {c.realized_length}")
        text.append(f"  d^2 = 0: {'OK' if dd.ok else 'FAIL'}")
        for w in dd.witnesses:
            text.append(f"    d_{w['t'] - 1}*d_{w['t']} [{w['row']}, {w['col']}] = {w['value']} "
                        f"(blocks {w['row_block']} <- {w['col_block']})")
        if minimal_input:
            text.append(f"  minimal: {'OK' if mn.ok else 'FAIL'}")
        else:
            text.append(f"  minimal: {'OK' if mn.ok else 'no'} (input resolution is not minimal)")
        for w in mn.witnesses[:3]:
            text.append(f"    d_{w['t']} [{w['row']}, {w['col']}] = {w['value']} has a unit part")
        if not sw.overall:
            text.append(f"  warning: (SW_{j}) fails, so exactness of S_{j}F is not claimed")
        for note in c.notes:
            text.append(f"  warning: {note}")
        record = {"j": j, "ranks": c.ranks, "predicted_length": c.predicted_length,
                  "realized_length": c.realized_length, "dd_zero": dd.ok, "dd_witnesses": dd.witnesses,
                  "minimal": mn.ok, "minimal_input": minimal_input, "sw": sw.overall}
        if s.cfg.export:
            path = _export_path(s.cfg.export, j, len(s.cfg.j) > 1)
            path.write_text(json.dumps(complex_to_dict(c), indent=2, default=list) + "\n")
            text.append(f"  exported to {path}")
            record["export"] = str(path)
        records.append(record)
        if not dd.ok or (minimal_input and not mn.ok):
            code = EXIT_FAIL
    return code, text, {"complexes": records}


def run_betti(s: Session):
    beta = s.beta
    tables, records, notes = [], [], []
    for j in s.cfg.j:
        tb = betti_table(beta, j, s.cfg.as_label)
        if s.res is not None and s.cfg.beta is None:
            sw = check_swj(s.res, j, s.grades())
            if sw.overall and s.res.is_minimal():
                tb.stamp = "minimal resolution ranks ((SW_j) holds, input minimal)"
            else:
                tb.stamp = "complex ranks only (exactness hypothesis unverified)"
            ref = s.reference(j)
            if ref is not None:
                notes.append(f"note: reference Betti numbers recorded for j={j}: {' '.join(map(str, ref))}")
        else:
            tb.stamp = "complex ranks only (no resolution given)"
        tables.append(tb)
        rec = tb.to_dict()
        if s.reference(j) is not None:
            rec["reference"] = s.reference(j)
        records.append(rec)
    text = [f"β = {tuple(beta)}", render_tables(tables)]
    text += [f"{tb.title}: expected pd {tb.pd}" for tb in tables]
    text += notes
    return EXIT_OK, text, {"tables": records}


def run_bounds(s: Session):
    beta = s.beta
    code, text, records = EXIT_OK, [], []
    dim = s.cfg.dim if s.cfg.dim is not None else (s.res.ring.nvars if s.res is not None else None)
    for j in s.cfg.j:
        rep = bound_report(beta, j)
        text.append(rep.to_text())
        rec = rep.to_dict()
        if len(beta) == 2 and dim is not None:
            beh = beh_check(betti_table(beta, j), dim, beta[1])
            claim = "hypothesis holds" if beh.hypothesis else "hypothesis fails, no claim"
            text.append(f"  beta_t >= C({dim}, t) and total >= 2^{dim}: "
                        f"{'OK' if beh.ok else 'violated'} ({claim})")
            rec["beh"] = beh.to_dict()
            if beh.hypothesis and not beh.ok:
                code = EXIT_FAIL
        records.append(rec)
        if not rep.overall:
            code = EXIT_FAIL
    return code, text, {"bounds": records}


def run_feasibility(s: Session):
    res = s.need_resolution()
    rep = j_feasible_range(res, s.cfg.dim)
    return EXIT_OK, [rep.to_text()], rep.to_dict()


def run_report(s: Session):
    code, text, record = EXIT_OK, [], {}
    for name, fn in [("validate", run_validate), ("feasibility", run_feasibility), ("sw-check", run_sw_check),
                     ("build", run_build), ("betti", run_betti), ("bounds", run_bounds)]:
        c, t, r = fn(s)
        code = max(code, c)
        text.append(f"== {name} ==")
        text.extend(t)
        record[name] = r
    return code, text, record


COMMANDS = {
    "validate": run_validate,
    "sw-check": run_sw_check,
    "build": run_build,
    "betti": run_betti,
    "bounds": run_bounds,
    "report": run_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sympower", description="Symmetric powers of free resolutions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        optional_input = name in ("betti", "bounds")
        p.add_argument("input", nargs="?" if optional_input else None, help="resolution file (JSON)")
        if optional_input:
            p.add_argument("--beta", type=parse_beta, help="Betti vector, e.g. 6,7,2")
        if name != "validate":
            p.add_argument("--j", type=parse_j, default=[2], help="power j or range a..b (default 2)")
        p.add_argument("--as", dest="as_label", choices=sorted(LABELS), default="sym")
        p.add_argument("--dim", type=int, help="override dim R (default: number of variables)")
        p.add_argument("--force", action="store_true", help="assemble despite the characteristic gate")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--export", help="write the assembled complex(es) to this JSON path")
        p.add_argument("--max-minor-count", type=_positive, default=DEFAULT_MAX_MINOR_COUNT)
        p.add_argument("--spair-budget", type=_positive, default=DEFAULT_SPAIR_BUDGET)
        p.add_argument("--rank-cap", type=_positive, default=DEFAULT_RANK_CAP)
        p.add_argument("--cache-dir", help="directory for cached Groebner bases")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command, input=args.input, beta=getattr(args, "beta", None),
        j=getattr(args, "j", []), as_label=args.as_label, dim=args.dim, force=args.force,
        format=args.format, export=args.export, max_minor_count=args.max_minor_count,
        spair_budget=args.spair_budget, rank_cap=args.rank_cap, cache_dir=args.cache_dir,
    )


def _emit(cfg: RunConfig, code: int, text: list, record: dict, out) -> None:
    if cfg.format == "json":
        doc = {"run_config": asdict(cfg), "exit_code": code, "result": record}
        out.write(json.dumps(doc, indent=2, default=str) + "\n")
    else:
        out.write(cfg.echo() + "\n")
        out.write("\n".join(text) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        session = Session(cfg)
        code, text, record = COMMANDS[cfg.command](session)
    except ResolutionError as exc:
        code, text, record = EXIT_FAIL, [f"invalid resolution: {exc}"], {"error": str(exc), "location": exc.location}
    except CharacteristicError as exc:
        code, text, record = EXIT_INPUT, [f"input error: {exc} (use --force to override)"], {"error": str(exc)}
    except (ResolutionFormatError, PolynomialError, InputError, GradeError) as exc:
        code, text, record = EXIT_INPUT, [f"input error: {exc}"], {"error": str(exc)}
    except ResourceGuardError as exc:
        code, text, record = EXIT_GUARD, [f"resource guard: {exc}"], {"error": str(exc)}
    _emit(cfg, code, text, record, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
