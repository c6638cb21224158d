"""Verification reports and their serialized formats.

Three formats: `structured` (the machine contract, versioned, parseable),
`tabular` (one row per claim, spreadsheet-friendly), and `human`. The
structured and tabular writers suppress wall-clock timing by default so that
two runs of the same suite produce byte-identical documents regardless of
worker count; pass include_timing=True to embed the measured values.
"""
from __future__ import annotations

from dataclasses import dataclass, field

ENGINE_VERSION = "0.1.0"
STRUCTURED_HEADER = f"# binomsums report v1 engine {ENGINE_VERSION}"
TABULAR_HEADER = f"# binomsums report-table v1 engine {ENGINE_VERSION}"


@dataclass(frozen=True)
class Failure:
    index: int
    lhs: str
    rhs: str
    residue: str


@dataclass(frozen=True)
class Annotation:
    index: int
    note: str


@dataclass
class VerificationReport:
    claim: str
    lo: int
    hi: int
    checked: int  # asserted indices that passed
    failures: list[Failure] = field(default_factory=list)
    annotations: list[Annotation] = field(default_factory=list)
    elapsed_ms: int | None = None
    engine: str = ENGINE_VERSION

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    @property
    def range_text(self) -> str:
        return f"{self.lo}..{self.hi}"


def to_structured(reports: list[VerificationReport], include_timing: bool = False) -> str:
    lines = [STRUCTURED_HEADER]
    for rep in reports:
        lines.append("")
        lines.append(f"claim: {rep.claim}")
        lines.append(f"range: {rep.range_text}")
        lines.append(f"status: {rep.status}")
        lines.append(f"checked: {rep.checked}")
        lines.append(f"failures: {len(rep.failures)}")
        for f in rep.failures:
            lines.append(
                f"failure: index={f.index} lhs={f.lhs} rhs={f.rhs} residue={f.residue}"
            )
        lines.append(f"annotations: {len(rep.annotations)}")
        for a in rep.annotations:
            lines.append(f"annotation: index={a.index} note={a.note}")
        ms = rep.elapsed_ms if (include_timing and rep.elapsed_ms is not None) else "-"
        lines.append(f"elapsed_ms: {ms}")
    return "\n".join(lines) + "\n"


def parse_structured(text: str) -> list[VerificationReport]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# binomsums report v1"):
        raise ValueError("not a structured report document (missing v1 header)")
    engine = lines[0].rsplit("engine", 1)[1].strip()
    reports: list[VerificationReport] = []
    current: VerificationReport | None = None
    for line in lines[1:]:
        if not line.strip():
            continue
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key == "claim":
            current = VerificationReport(claim=value, lo=0, hi=0, checked=0, engine=engine)
            reports.append(current)
        elif current is None:
            raise ValueError(f"field outside a claim block: {line!r}")
        elif key == "range":
            lo, _, hi = value.partition("..")
            current.lo, current.hi = int(lo), int(hi)
        elif key == "status":
            pass  # derived from failures
        elif key == "checked":
            current.checked = int(value)
        elif key in ("failures", "annotations"):
            pass  # counts are derived from the entry lines
        elif key == "failure":
            current.failures.append(Failure(**_parse_kv(value, ("index", "lhs", "rhs", "residue"))))
        elif key == "annotation":
            current.annotations.append(Annotation(**_parse_kv(value, ("index", "note"))))
        elif key == "elapsed_ms":
            current.elapsed_ms = None if value == "-" else int(value)
        else:
            raise ValueError(f"unknown report field {key!r}")
    return reports


def _parse_kv(text: str, keys: tuple[str, ...]) -> dict:
    """Parse `k1=v1 k2=v2 ...` where only the last value may contain spaces."""
    out = {}
    rest = text
    for i, key in enumerate(keys):
        prefix = f"{key}="
        if not rest.startswith(prefix):
            raise ValueError(f"expected {prefix!r} in {text!r}")
        rest = rest[len(prefix):]
        if i + 1 < len(keys):
            val, _, rest = rest.partition(" ")
        else:
            val = rest
        out[key] = val
    out["index"] = int(out["index"])
    return out


def to_tabular(reports: list[VerificationReport], include_timing: bool = False) -> str:
    lines = [TABULAR_HEADER, "claim\trange\tstatus\tchecked\tfailures\tannotations\telapsed_ms"]
    for rep in reports:
        ms = rep.elapsed_ms if (include_timing and rep.elapsed_ms is not None) else "-"
        lines.append(
            f"{rep.claim}\t{rep.range_text}\t{rep.status}\t{rep.checked}"
            f"\t{len(rep.failures)}\t{len(rep.annotations)}\t{ms}"
        )
    return "\n".join(lines) + "\n"


def to_human(reports: list[VerificationReport]) -> str:
    lines = []
    for rep in reports:
        mark = "ok " if rep.status == "pass" else "FAIL"
        lines.append(
            f"[{mark}] {rep.claim}  range {rep.range_text}  "
            f"checked {rep.checked}  failures {len(rep.failures)}"
        )
        for f in rep.failures:
            lines.append(
                f"       n={f.index}: lhs={f.lhs} rhs={f.rhs} residue={f.residue}"
            )
        for a in rep.annotations:
            lines.append(f"       note n={a.index}: {a.note}")
    return "\n".join(lines) + "\n"


FORMATTERS = {
    "structured": to_structured,
    "tabular": to_tabular,
    "human": lambda reports, include_timing=False: to_human(reports),
}
