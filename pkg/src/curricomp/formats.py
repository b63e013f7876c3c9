"""CSV input and output for curricula, degree plans, and complexity samples.

Curriculum files carry one course per row under the exact header

    Course ID,Course Name,Prefix,Number,Prerequisites,Corequisites,Strict-Corequisites,Credit Hours,Term

Requisite cells list course ids separated by semicolons. The Term column is
optional; a degree plan is produced only when every row has one. Sample files
carry the header ``tier,complexity``. All parse errors report a 1-based line
number plus the column involved.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import isfinite
from typing import IO, Iterable, Iterator

from curricomp.model import (
    Course,
    Curriculum,
    DegreePlan,
    RequisiteEdge,
    RequisiteKind,
    Term,
    validate_curriculum,
    validate_degree_plan,
)

CURRICULUM_HEADER = (
    "Course ID",
    "Course Name",
    "Prefix",
    "Number",
    "Prerequisites",
    "Corequisites",
    "Strict-Corequisites",
    "Credit Hours",
    "Term",
)
SAMPLES_HEADER = ("tier", "complexity")

_REQUISITE_COLUMNS = (
    ("Prerequisites", RequisiteKind.PREREQUISITE),
    ("Corequisites", RequisiteKind.COREQUISITE),
    ("Strict-Corequisites", RequisiteKind.STRICT_COREQUISITE),
)


class ParseError(ValueError):
    """A malformed input file; carries the offending line and column."""

    def __init__(self, line: int, message: str, column: str | None = None):
        self.line = line
        self.column = column
        where = f"line {line}"
        if column:
            where += f", column {column!r}"
        super().__init__(f"{where}: {message}")
        self.message = message


@dataclass(frozen=True)
class ComplexitySampleSet:
    """Complexity values grouped by tier label, in first-appearance order."""

    tiers: tuple[tuple[str, tuple[float, ...]], ...]

    def __post_init__(self):
        if not self.tiers:
            raise ValueError("sample set must contain at least one tier")
        labels = [label for label, _ in self.tiers]
        if len(set(labels)) != len(labels):
            raise ValueError("tier labels must be unique")
        for label, values in self.tiers:
            if not values:
                raise ValueError(f"tier {label!r} has no values")
            for v in values:
                if not (isfinite(v) and v >= 0):
                    raise ValueError(
                        f"tier {label!r}: complexity values must be finite and "
                        f">= 0, got {v}"
                    )

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.tiers)

    def values_for(self, label: str) -> tuple[float, ...]:
        for lab, values in self.tiers:
            if lab == label:
                return values
        raise KeyError(label)


def _rows(text: str | IO[str] | Iterable[str]) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, trimmed_cells) for every non-blank CSV row."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(stream)
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise ParseError(reader.line_num, f"malformed CSV: {exc}") from exc
        cells = [c.strip() for c in row]
        if cells and cells[0].startswith("﻿"):
            cells[0] = cells[0].lstrip("﻿")
        if any(cells):
            yield reader.line_num, cells


def _check_header(
    got: tuple[int, list[str]] | None, expected: tuple[str, ...]
) -> None:
    if got is None:
        raise ParseError(1, "empty file: missing header")
    line, cells = got
    if tuple(cells) != expected:
        raise ParseError(
            line,
            f"malformed header: expected {','.join(expected)!r}, "
            f"got {','.join(cells)!r}",
        )


def parse_curriculum(
    text: str | IO[str] | Iterable[str],
) -> tuple[Curriculum, DegreePlan | None]:
    """Parse a curriculum CSV, returning the curriculum and, when every row
    carries a term value, its degree plan.

    The result is fully validated; any structural problem (dangling
    reference, duplicate id, cycle, term-order conflict) raises ParseError
    pointing at the responsible line.
    """
    rows = _rows(text)
    _check_header(next(rows, None), CURRICULUM_HEADER)

    courses: list[Course] = []
    edges: list[RequisiteEdge] = []
    ids: set[str] = set()
    # (source, target) -> (line, column) of the declaring cell
    edge_at: dict[tuple[str, str], tuple[int, str]] = {}
    terms_by_course: dict[str, int] = {}
    term_first_line: dict[int, int] = {}
    untermed = 0

    for line, cells in rows:
        if len(cells) != len(CURRICULUM_HEADER):
            raise ParseError(
                line,
                f"expected {len(CURRICULUM_HEADER)} columns, got {len(cells)}",
            )
        (cid, name, prefix, number, prereq_cell, coreq_cell, strict_cell,
         credit_cell, term_cell) = cells
        if not cid:
            raise ParseError(line, "empty course id", "Course ID")
        if cid in ids:
            raise ParseError(line, f"duplicate course id {cid!r}", "Course ID")
        ids.add(cid)

        if credit_cell:
            try:
                credits = float(credit_cell)
            except ValueError:
                raise ParseError(
                    line, f"non-numeric credit hours {credit_cell!r}", "Credit Hours"
                ) from None
            if not (isfinite(credits) and credits >= 0):
                raise ParseError(
                    line,
                    f"credit hours must be finite and >= 0, got {credit_cell!r}",
                    "Credit Hours",
                )
        else:
            credits = 0.0

        for column, kind in _REQUISITE_COLUMNS:
            cell = {"Prerequisites": prereq_cell,
                    "Corequisites": coreq_cell,
                    "Strict-Corequisites": strict_cell}[column]
            for ref in (r.strip() for r in cell.split(";")):
                if not ref:
                    continue
                if ref == cid:
                    raise ParseError(
                        line, f"course {cid!r} lists itself as a requisite", column
                    )
                if (ref, cid) in edge_at:
                    raise ParseError(
                        line, f"duplicate requisite {ref!r} for course {cid!r}", column
                    )
                edge_at[(ref, cid)] = (line, column)
                edges.append(RequisiteEdge(source=ref, target=cid, kind=kind))

        if term_cell:
            try:
                term_index = int(term_cell)
            except ValueError:
                raise ParseError(
                    line, f"term must be a positive integer, got {term_cell!r}", "Term"
                ) from None
            if term_index < 1:
                raise ParseError(
                    line, f"term must be a positive integer, got {term_cell!r}", "Term"
                )
            terms_by_course[cid] = term_index
            term_first_line.setdefault(term_index, line)
        else:
            untermed += 1

        courses.append(
            Course(
                id=cid,
                name=name,
                credit_hours=credits,
                prefix=prefix or None,
                number=number or None,
            )
        )

    for (source, target), (line, column) in sorted(
        edge_at.items(), key=lambda item: item[1][0]
    ):
        if source not in ids:
            raise ParseError(
                line,
                f"course {target!r} references undefined course id {source!r}",
                column,
            )

    curriculum = Curriculum(courses=tuple(courses), edges=tuple(edges))
    for violation in validate_curriculum(curriculum):
        # Everything but cycles was raised inline above.
        pair_lines = []
        cyc = violation.involved
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if (a, b) in edge_at:
                pair_lines.append(edge_at[(a, b)])
        line, column = min(pair_lines) if pair_lines else (1, None)
        raise ParseError(line, violation.message, column)

    plan: DegreePlan | None = None
    if courses and untermed == 0:
        grouped: dict[int, list[str]] = {}
        for cid, t in terms_by_course.items():
            grouped.setdefault(t, []).append(cid)
        plan = DegreePlan(
            curriculum=curriculum,
            terms=tuple(Term(index=t, course_ids=tuple(cs))
                        for t, cs in sorted(grouped.items())),
        )
        for violation in validate_degree_plan(plan):
            if violation.kind == "term-order":
                line, column = edge_at[(violation.involved[0], violation.involved[1])]
                raise ParseError(line, violation.message, column)
            if violation.kind == "bad-term-index":
                present = set(term_first_line)
                missing = next(i for i in range(1, max(present) + 2) if i not in present)
                line = min(ln for t, ln in term_first_line.items() if t > missing)
                raise ParseError(line, violation.message, "Term")
            raise ParseError(1, violation.message)
    return curriculum, plan


def _format_number(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return repr(value)


def serialize_curriculum(curriculum: Curriculum, plan: DegreePlan | None = None) -> str:
    """Serialize to canonical CSV: rows sorted by (term, course id) when a
    plan is given, by course id otherwise; requisite cells sorted; LF line
    endings. Invalid input raises ValidationError."""
    from curricomp.model import ValidationError

    violations = validate_curriculum(curriculum)
    if plan is not None:
        if plan.curriculum != curriculum:
            raise ValueError("plan belongs to a different curriculum")
        violations.extend(validate_degree_plan(plan))
    if violations:
        raise ValidationError(violations)

    by_kind: dict[RequisiteKind, dict[str, list[str]]] = {
        kind: {} for _, kind in _REQUISITE_COLUMNS
    }
    for e in curriculum.edges:
        by_kind[e.kind].setdefault(e.target, []).append(e.source)

    term_of = plan.term_of() if plan is not None else {}
    ordered = sorted(
        curriculum.courses, key=lambda c: (term_of.get(c.id, 0), c.id)
    )

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CURRICULUM_HEADER)
    for c in ordered:
        writer.writerow(
            [
                c.id,
                c.name,
                c.prefix or "",
                c.number or "",
                ";".join(sorted(by_kind[RequisiteKind.PREREQUISITE].get(c.id, ()))),
                ";".join(sorted(by_kind[RequisiteKind.COREQUISITE].get(c.id, ()))),
                ";".join(sorted(by_kind[RequisiteKind.STRICT_COREQUISITE].get(c.id, ()))),
                _format_number(c.credit_hours),
                str(term_of[c.id]) if c.id in term_of else "",
            ]
        )
    return out.getvalue()


def parse_samples(text: str | IO[str] | Iterable[str]) -> ComplexitySampleSet:
    """Parse a tier,complexity CSV into samples grouped by tier label."""
    rows = _rows(text)
    _check_header(next(rows, None), SAMPLES_HEADER)

    grouped: dict[str, list[float]] = {}
    for line, cells in rows:
        if len(cells) != 2:
            raise ParseError(line, f"expected 2 columns, got {len(cells)}")
        label, value_cell = cells
        if not label:
            raise ParseError(line, "empty tier label", "tier")
        try:
            value = float(value_cell)
        except ValueError:
            raise ParseError(
                line, f"non-numeric complexity {value_cell!r}", "complexity"
            ) from None
        if not (isfinite(value) and value >= 0):
            raise ParseError(
                line,
                f"complexity must be finite and >= 0, got {value_cell!r}",
                "complexity",
            )
        grouped.setdefault(label, []).append(value)

    if not grouped:
        raise ParseError(2, "no samples")
    return ComplexitySampleSet(
        tiers=tuple((label, tuple(values)) for label, values in grouped.items())
    )


def serialize_samples(samples: ComplexitySampleSet) -> str:
    """Serialize samples back to tier,complexity CSV (LF line endings)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SAMPLES_HEADER)
    for label, values in samples.tiers:
        for v in values:
            writer.writerow([label, _format_number(v)])
    return out.getvalue()
