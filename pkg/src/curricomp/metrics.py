"""Structural complexity metrics over requisite graphs.

blocking factor of v  = number of courses unreachable until v is passed,
                        i.e. |{u : v reaches u}|, v itself excluded
delay factor of v     = vertex count of the longest directed path through v
course complexity     = blocking_weight * blocking + delay_weight * delay
curriculum complexity = sum of course complexities
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum, isfinite

from curricomp.model import (
    ALL_KINDS,
    Curriculum,
    DegreePlan,
    RequisiteGraph,
    RequisiteKind,
    ValidationError,
    build_requisite_graph,
    topological_order,
    validate_curriculum,
    validate_degree_plan,
)


@dataclass(frozen=True)
class MetricConfig:
    blocking_weight: float = 1.0
    delay_weight: float = 1.0
    edge_kinds: frozenset[RequisiteKind] = ALL_KINDS

    def __post_init__(self):
        for label, w in (
            ("blocking_weight", self.blocking_weight),
            ("delay_weight", self.delay_weight),
        ):
            if not (isfinite(w) and w >= 0):
                raise ValueError(f"{label} must be finite and >= 0, got {w}")
        if self.blocking_weight == 0 and self.delay_weight == 0:
            raise ValueError("at least one metric weight must be positive")
        object.__setattr__(self, "edge_kinds", frozenset(self.edge_kinds))
        if not self.edge_kinds:
            raise ValueError("edge_kinds must be non-empty")


@dataclass(frozen=True)
class CourseMetrics:
    course_id: str
    blocking: int
    delay: int
    complexity: float


@dataclass(frozen=True)
class CurriculumMetrics:
    per_course: dict[str, CourseMetrics]
    per_term: tuple[float, ...] | None
    total: float


def reachable_set(graph: RequisiteGraph, vertex: str) -> set[str]:
    """All vertices reachable from `vertex` by directed edges, excluding it."""
    if not graph.has_vertex(vertex):
        raise ValueError(f"unknown vertex {vertex!r}")
    seen: set[str] = set()
    stack = list(graph.successors[vertex])
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(graph.successors[v])
    seen.discard(vertex)
    return seen


def blocking_factor(graph: RequisiteGraph, vertex: str) -> int:
    return len(reachable_set(graph, vertex))


def delay_factor(graph: RequisiteGraph, vertex: str) -> int:
    """Vertex count of the longest path through `vertex`.

    Computed as longest-path-into + longest-path-out-of - 1; an isolated
    vertex sits on a path of length one (itself).
    """
    if not graph.has_vertex(vertex):
        raise ValueError(f"unknown vertex {vertex!r}")
    order = topological_order(graph)
    l_in = {v: 1 for v in order}
    for v in order:
        for s in graph.successors[v]:
            if l_in[v] + 1 > l_in[s]:
                l_in[s] = l_in[v] + 1
    l_out = {v: 1 for v in order}
    for v in reversed(order):
        for s in graph.successors[v]:
            if l_out[s] + 1 > l_out[v]:
                l_out[v] = l_out[s] + 1
    return l_in[vertex] + l_out[vertex] - 1


def course_complexity(blocking: int, delay: int, config: MetricConfig | None = None) -> float:
    cfg = config or MetricConfig()
    return cfg.blocking_weight * blocking + cfg.delay_weight * delay


def curriculum_complexity(
    curriculum: Curriculum,
    plan: DegreePlan | None = None,
    config: MetricConfig | None = None,
) -> CurriculumMetrics:
    """All per-course metrics plus the curriculum total in one pass.

    Validates the curriculum (and plan, when given) first and raises
    ValidationError on any structural problem. Blocking factors use a bitset
    accumulation over reverse topological order so dense graphs stay cheap.
    """
    cfg = config or MetricConfig()
    violations = validate_curriculum(curriculum)
    if plan is not None:
        if plan.curriculum is not curriculum and plan.curriculum != curriculum:
            raise ValueError("plan belongs to a different curriculum")
        violations.extend(validate_degree_plan(plan))
    if violations:
        raise ValidationError(violations)

    graph = build_requisite_graph(curriculum, cfg.edge_kinds)
    order = topological_order(graph)
    index = {v: i for i, v in enumerate(order)}

    # Reachability as bitsets, accumulated in reverse topological order.
    reach = [0] * len(order)
    for v in reversed(order):
        mask = 0
        for s in graph.successors[v]:
            j = index[s]
            mask |= (1 << j) | reach[j]
        reach[index[v]] = mask

    l_in = [1] * len(order)
    for v in order:
        for s in graph.successors[v]:
            if l_in[index[v]] + 1 > l_in[index[s]]:
                l_in[index[s]] = l_in[index[v]] + 1
    l_out = [1] * len(order)
    for v in reversed(order):
        for s in graph.successors[v]:
            if l_out[index[s]] + 1 > l_out[index[v]]:
                l_out[index[v]] = l_out[index[s]] + 1

    per_course: dict[str, CourseMetrics] = {}
    for v in sorted(order):
        i = index[v]
        b = reach[i].bit_count()
        d = l_in[i] + l_out[i] - 1
        per_course[v] = CourseMetrics(
            course_id=v,
            blocking=b,
            delay=d,
            complexity=cfg.blocking_weight * b + cfg.delay_weight * d,
        )

    per_term: tuple[float, ...] | None = None
    if plan is not None:
        per_term = tuple(
            fsum(per_course[cid].complexity for cid in term.course_ids)
            for term in plan.terms
        )

    total = fsum(m.complexity for m in per_course.values())
    return CurriculumMetrics(per_course=per_course, per_term=per_term, total=total)
