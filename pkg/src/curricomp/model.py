"""Domain model: courses, requisite edges, curricula, degree plans.

A curriculum is a directed graph whose vertices are courses and whose edges
point from a requisite to the course that depends on it. Every edge kind
participates in the acyclicity requirement: mutual corequisites must be
oriented in one canonical direction by the data author.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum


class RequisiteKind(str, Enum):
    PREREQUISITE = "prerequisite"
    COREQUISITE = "corequisite"
    STRICT_COREQUISITE = "strict_corequisite"


ALL_KINDS: frozenset[RequisiteKind] = frozenset(RequisiteKind)


class CycleError(ValueError):
    """Raised when a requisite graph contains a directed cycle."""

    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = cycle
        super().__init__(
            "requisite graph contains a cycle: "
            + " -> ".join(cycle + cycle[:1])
            + " (requisite graphs must be acyclic; orient mutual corequisites "
            "in one canonical direction)"
        )


@dataclass(frozen=True)
class Violation:
    """One structural problem found by a validator."""

    kind: str
    message: str
    involved: tuple[str, ...] = ()


class ValidationError(ValueError):
    """Raised when an operation requires a valid curriculum or plan."""

    def __init__(self, violations: list[Violation]):
        self.violations = tuple(violations)
        super().__init__(
            "; ".join(v.message for v in violations) or "validation failed"
        )


@dataclass(frozen=True)
class Course:
    id: str
    name: str = ""
    credit_hours: float = 0.0
    prefix: str | None = None
    number: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("course id must be non-empty")
        if not (self.credit_hours >= 0):
            raise ValueError(f"course {self.id!r}: credit_hours must be >= 0")


@dataclass(frozen=True)
class RequisiteEdge:
    source: str  # the requisite
    target: str  # the dependent course
    kind: RequisiteKind = RequisiteKind.PREREQUISITE

    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class Curriculum:
    """An immutable named set of courses plus requisite edges.

    Courses and edges are canonically sorted on construction, so two curricula
    built from the same content in any order compare equal.
    """

    name: str = ""
    institution: str = ""
    courses: tuple[Course, ...] = ()
    edges: tuple[RequisiteEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "courses", tuple(sorted(self.courses, key=lambda c: c.id))
        )
        object.__setattr__(
            self,
            "edges",
            tuple(sorted(self.edges, key=lambda e: (e.source, e.target, e.kind.value))),
        )

    def course_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.courses)

    def course(self, course_id: str) -> Course:
        for c in self.courses:
            if c.id == course_id:
                return c
        raise KeyError(course_id)


@dataclass(frozen=True)
class Term:
    index: int  # 1-based
    course_ids: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "course_ids", tuple(sorted(self.course_ids)))


@dataclass(frozen=True)
class DegreePlan:
    """A partition of a curriculum's courses into ordered terms."""

    curriculum: Curriculum
    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple(sorted(self.terms, key=lambda t: t.index))
        )

    def term_of(self) -> dict[str, int]:
        """Map each planned course id to its term index (last wins on dupes)."""
        out: dict[str, int] = {}
        for term in self.terms:
            for cid in term.course_ids:
                out[cid] = term.index
        return out


@dataclass(frozen=True)
class RequisiteGraph:
    """Adjacency view over course ids; vertex and edge order are canonical."""

    vertices: tuple[str, ...]
    successors: dict[str, tuple[str, ...]]
    predecessors: dict[str, tuple[str, ...]]

    def has_vertex(self, v: str) -> bool:
        return v in self.successors

    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors.values())


def build_requisite_graph(
    curriculum: Curriculum, kinds: frozenset[RequisiteKind] = ALL_KINDS
) -> RequisiteGraph:
    """Build the metric graph containing exactly the edges of enabled kinds.

    The vertex set always equals the course set, including isolated courses.
    Raises ValueError when an edge references an unknown course id.
    """
    ids = sorted({c.id for c in curriculum.courses})
    known = set(ids)
    succ: dict[str, list[str]] = {v: [] for v in ids}
    pred: dict[str, list[str]] = {v: [] for v in ids}
    for e in curriculum.edges:
        if e.source not in known or e.target not in known:
            raise ValueError(
                f"edge {e.source} -> {e.target} ({e.kind.value}) references an "
                "unknown course id"
            )
        if e.kind in kinds:
            succ[e.source].append(e.target)
            pred[e.target].append(e.source)
    return RequisiteGraph(
        vertices=tuple(ids),
        successors={v: tuple(sorted(s)) for v, s in succ.items()},
        predecessors={v: tuple(sorted(p)) for v, p in pred.items()},
    )


def _find_cycle(
    remaining: set[str], predecessors: dict[str, tuple[str, ...]]
) -> tuple[str, ...]:
    """Extract one cycle from a subgraph in which every vertex has an
    unresolved predecessor. Walks predecessor links until a repeat, then
    returns the cycle in edge direction, rotated to start at its smallest id."""
    start = min(remaining)
    path: list[str] = []
    pos: dict[str, int] = {}
    cur = start
    while cur not in pos:
        pos[cur] = len(path)
        path.append(cur)
        cur = min(p for p in predecessors[cur] if p in remaining)
    cycle = list(reversed(path[pos[cur] :]))  # now in edge direction
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def topological_order(graph: RequisiteGraph) -> list[str]:
    """Kahn's algorithm with ties broken by ascending course id.

    Raises CycleError carrying one cycle's vertex sequence when the graph is
    not acyclic.
    """
    indegree = {v: len(graph.predecessors[v]) for v in graph.vertices}
    ready = [v for v in graph.vertices if indegree[v] == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for s in graph.successors[v]:
            indegree[s] -= 1
            if indegree[s] == 0:
                heapq.heappush(ready, s)
    if len(order) != len(graph.vertices):
        remaining = {v for v in graph.vertices if indegree[v] > 0}
        raise CycleError(_find_cycle(remaining, graph.predecessors))
    return order


def validate_curriculum(curriculum: Curriculum) -> list[Violation]:
    """Report duplicate ids, dangling endpoints, self-loops, duplicate edges,
    and directed cycles. An empty report means the curriculum is valid."""
    violations: list[Violation] = []

    seen_ids: set[str] = set()
    for c in curriculum.courses:
        if c.id in seen_ids:
            violations.append(
                Violation("duplicate-id", f"duplicate course id {c.id!r}", (c.id,))
            )
        seen_ids.add(c.id)

    clean_edges: list[RequisiteEdge] = []
    seen_pairs: set[tuple[str, str]] = set()
    for e in curriculum.edges:
        dangling = [v for v in (e.source, e.target) if v not in seen_ids]
        if dangling:
            violations.append(
                Violation(
                    "dangling-edge",
                    f"edge {e.source} -> {e.target} ({e.kind.value}) references "
                    f"unknown course id(s): {', '.join(dangling)}",
                    tuple(dangling),
                )
            )
            continue
        if e.source == e.target:
            violations.append(
                Violation("self-loop", f"self-loop on course {e.source}", (e.source,))
            )
            continue
        if e.pair() in seen_pairs:
            violations.append(
                Violation(
                    "duplicate-edge",
                    f"duplicate edge {e.source} -> {e.target}",
                    e.pair(),
                )
            )
            continue
        seen_pairs.add(e.pair())
        clean_edges.append(e)

    # Cycle check over the cleaned edge set (self-loops already reported).
    ids = sorted(seen_ids)
    succ: dict[str, list[str]] = {v: [] for v in ids}
    pred: dict[str, list[str]] = {v: [] for v in ids}
    for e in clean_edges:
        succ[e.source].append(e.target)
        pred[e.target].append(e.source)
    indegree = {v: len(pred[v]) for v in ids}
    ready = [v for v in ids if indegree[v] == 0]
    heapq.heapify(ready)
    done = 0
    while ready:
        v = heapq.heappop(ready)
        done += 1
        for s in succ[v]:
            indegree[s] -= 1
            if indegree[s] == 0:
                heapq.heappush(ready, s)
    if done != len(ids):
        remaining = {v for v in ids if indegree[v] > 0}
        pred_t = {v: tuple(p for p in pred[v]) for v in ids}
        cycle = _find_cycle(remaining, pred_t)
        violations.append(
            Violation(
                "cycle",
                "cycle " + " -> ".join(cycle + cycle[:1]) + " (requisite graphs "
                "must be acyclic; orient mutual corequisites in one canonical "
                "direction)",
                cycle,
            )
        )
    return violations


def validate_degree_plan(plan: DegreePlan) -> list[Violation]:
    """Report plan-level problems: bad term indexing, empty terms, unknown or
    missing or doubly-assigned courses, and requisite/term-order conflicts."""
    violations: list[Violation] = []
    curriculum = plan.curriculum
    known = {c.id for c in curriculum.courses}

    indices = [t.index for t in plan.terms]
    if indices != list(range(1, len(indices) + 1)):
        violations.append(
            Violation(
                "bad-term-index",
                f"term indices must be consecutive starting at 1, got {indices}",
            )
        )
    for t in plan.terms:
        if not t.course_ids:
            violations.append(
                Violation("empty-term", f"term {t.index} contains no courses")
            )

    assigned: dict[str, int] = {}
    for t in plan.terms:
        for cid in t.course_ids:
            if cid not in known:
                violations.append(
                    Violation(
                        "unknown-course",
                        f"term {t.index} lists unknown course id {cid!r}",
                        (cid,),
                    )
                )
            if cid in assigned:
                violations.append(
                    Violation(
                        "double-assignment",
                        f"course {cid} assigned to terms {assigned[cid]} and {t.index}",
                        (cid,),
                    )
                )
            else:
                assigned[cid] = t.index
    for cid in sorted(known - assigned.keys()):
        violations.append(
            Violation("missing-course", f"course {cid} is not placed in any term", (cid,))
        )

    for e in curriculum.edges:
        if e.source not in assigned or e.target not in assigned:
            continue  # covered by missing/unknown reports
        ts, tt = assigned[e.source], assigned[e.target]
        if e.kind is RequisiteKind.PREREQUISITE and ts >= tt:
            violations.append(
                Violation(
                    "term-order",
                    f"prerequisite {e.source} (term {ts}) must precede "
                    f"{e.target} (term {tt})",
                    e.pair(),
                )
            )
        elif e.kind is not RequisiteKind.PREREQUISITE and ts > tt:
            violations.append(
                Violation(
                    "term-order",
                    f"{e.kind.value} {e.source} (term {ts}) may not follow "
                    f"{e.target} (term {tt})",
                    e.pair(),
                )
            )
    return violations
