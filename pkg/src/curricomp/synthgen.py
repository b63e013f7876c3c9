"""Seeded synthetic curricula and tiered study datasets.

Curricula are generated term by term (layered), so prerequisites always point
from an earlier term to a later one and corequisites pair courses within a
term, oriented by ascending id: the output is acyclic and plan-valid by
construction.

The draw sequence for a given seed is fixed and, crucially, does not depend
on edge_probability: every candidate prerequisite consumes its uniform draw
whether or not the edge is included. Lowering or raising edge_probability
therefore only shrinks or grows the included edge set, which makes total
complexity monotone in edge_probability and lets tier targets be matched by
bisection.

Draw order per curriculum:
  1. one size draw per term (courses_per_term range, inclusive)
  2. per course, in term then id order:
     a. when the course has more earlier terms than max_prereqs_per_course,
        a partial shuffle picks which terms provide candidate slots
     b. per candidate slot, ascending by term: one index draw for the source
        course, one uniform compared against edge_probability
     c. one uniform compared against corequisite_probability; on success and
        a term of at least two courses, one index draw for the partner
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import fsum, isfinite, sqrt

from curricomp.model import (
    Course,
    Curriculum,
    DegreePlan,
    RequisiteEdge,
    RequisiteKind,
    Term,
)
from curricomp.formats import ComplexitySampleSet
from curricomp.rng import MASK64, SplitMix64, mix64

# Attainment contract for generate_tier_study: realized sample moments must
# land within these distances of the targets, else the tier is flagged.
MEAN_TOLERANCE = 5.0
STD_TOLERANCE = 10.0

_BISECTION_GRAIN = 1e-4
_SEED_ATTEMPTS = 2
_ATTEMPT_TOLERANCE = 2.0
_TARGET_DRAW_ATTEMPTS = 50


class InfeasibleTargetError(ValueError):
    """A tier target lies outside what the configured generator can reach."""

    def __init__(self, label: str, target_mean: float, bound: float, side: str):
        self.label = label
        self.target_mean = target_mean
        self.bound = bound
        self.side = side
        super().__init__(
            f"tier {label!r}: target mean {target_mean} is {side} the "
            f"attainable {'minimum' if side == 'below' else 'maximum'} "
            f"of {bound:.1f} for this configuration"
        )


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    num_terms: int = 8
    courses_per_term: tuple[int, int] = (4, 6)
    edge_probability: float = 0.25
    max_prereqs_per_course: int = 3
    corequisite_probability: float = 0.05

    def __post_init__(self):
        if self.num_terms < 1:
            raise ValueError(f"num_terms must be >= 1, got {self.num_terms}")
        lo, hi = self.courses_per_term
        if not (1 <= lo <= hi):
            raise ValueError(
                f"courses_per_term must be a non-empty range with minimum >= 1, "
                f"got {self.courses_per_term}"
            )
        for label, p in (
            ("edge_probability", self.edge_probability),
            ("corequisite_probability", self.corequisite_probability),
        ):
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"{label} must lie in [0, 1], got {p}")
        if self.max_prereqs_per_course < 0:
            raise ValueError(
                f"max_prereqs_per_course must be >= 0, got {self.max_prereqs_per_course}"
            )


@dataclass(frozen=True)
class TierTarget:
    label: str
    target_mean: float
    target_std: float
    count: int

    def __post_init__(self):
        if not self.label:
            raise ValueError("tier label must be non-empty")
        if not (isfinite(self.target_mean) and self.target_mean >= 0):
            raise ValueError(f"target_mean must be finite and >= 0, got {self.target_mean}")
        if not (isfinite(self.target_std) and self.target_std >= 0):
            raise ValueError(f"target_std must be >= 0, got {self.target_std}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class GeneratedCurriculum:
    curriculum: Curriculum
    plan: DegreePlan
    complexity: float
    edge_probability: float
    seed: int


@dataclass(frozen=True)
class TierStudyTier:
    label: str
    target_mean: float
    target_std: float
    values: tuple[float, ...]
    achieved_mean: float
    achieved_std: float
    mean_attained: bool
    std_attained: bool
    curricula: tuple[GeneratedCurriculum, ...]


@dataclass(frozen=True)
class TierStudyResult:
    sample_set: ComplexitySampleSet
    tiers: tuple[TierStudyTier, ...]


@dataclass(frozen=True)
class _Blueprint:
    """Everything the RNG decides for one curriculum, with edge inclusion
    left open: candidate prerequisites keep their uniform draw so any
    edge_probability can be applied after the fact."""

    sizes: tuple[int, ...]
    term_start: tuple[int, ...]
    total_courses: int
    # per course index: candidate (source index, uniform) pairs
    prereq_candidates: tuple[tuple[tuple[int, float], ...], ...]
    coreq_pairs: tuple[tuple[int, int], ...]


def _choose_slot_terms(rng: SplitMix64, n_earlier: int, k: int) -> list[int]:
    """k distinct earlier terms via a partial shuffle; ascending order."""
    pool = list(range(n_earlier))
    for i in range(k):
        j = rng.next_int(i, n_earlier - 1)
        pool[i], pool[j] = pool[j], pool[i]
    return sorted(pool[:k])


def _blueprint(config: GeneratorConfig) -> _Blueprint:
    rng = SplitMix64(config.seed)
    lo, hi = config.courses_per_term
    sizes = [rng.next_int(lo, hi) for _ in range(config.num_terms)]
    term_start = [0] * config.num_terms
    for t in range(1, config.num_terms):
        term_start[t] = term_start[t - 1] + sizes[t - 1]
    total = term_start[-1] + sizes[-1]

    candidates: list[tuple[tuple[int, float], ...]] = []
    coreqs: set[tuple[int, int]] = set()
    for t in range(config.num_terms):
        for pos in range(sizes[t]):
            i = term_start[t] + pos
            slots: list[tuple[int, float]] = []
            if t > 0 and config.max_prereqs_per_course > 0:
                if t <= config.max_prereqs_per_course:
                    slot_terms = list(range(t))
                else:
                    slot_terms = _choose_slot_terms(
                        rng, t, config.max_prereqs_per_course
                    )
                for s in slot_terms:
                    src = term_start[s] + rng.next_int(0, sizes[s] - 1)
                    u = rng.next_float()
                    slots.append((src, u))
            candidates.append(tuple(slots))
            u = rng.next_float()
            if u < config.corequisite_probability and sizes[t] >= 2:
                partner = rng.next_int(0, sizes[t] - 2)
                if partner >= pos:
                    partner += 1
                j = term_start[t] + partner
                coreqs.add((min(i, j), max(i, j)))
    return _Blueprint(
        sizes=tuple(sizes),
        term_start=tuple(term_start),
        total_courses=total,
        prereq_candidates=tuple(candidates),
        coreq_pairs=tuple(sorted(coreqs)),
    )


def _successors_for_p(bp: _Blueprint, p: float) -> list[list[int]]:
    succ: list[list[int]] = [[] for _ in range(bp.total_courses)]
    for target, slots in enumerate(bp.prereq_candidates):
        for src, u in slots:
            if u < p:
                succ[src].append(target)
    for a, b in bp.coreq_pairs:
        succ[a].append(b)
    return succ


def _total_for_p(bp: _Blueprint, p: float) -> int:
    """Total complexity under unit weights, straight off the index graph.

    Course indices ascend along edges, so index order is already topological.
    """
    n = bp.total_courses
    succ = _successors_for_p(bp, p)
    reach = [0] * n
    for v in range(n - 1, -1, -1):
        m = 0
        for s in succ[v]:
            m |= (1 << s) | reach[s]
        reach[v] = m
    l_in = [1] * n
    for v in range(n):
        base = l_in[v] + 1
        for s in succ[v]:
            if base > l_in[s]:
                l_in[s] = base
    l_out = [1] * n
    for v in range(n - 1, -1, -1):
        best = l_out[v]
        for s in succ[v]:
            if l_out[s] + 1 > best:
                best = l_out[s] + 1
        l_out[v] = best
    return sum(
        reach[v].bit_count() + l_in[v] + l_out[v] - 1 for v in range(n)
    )


def _bisect_probability(bp: _Blueprint, target: float) -> tuple[float, int]:
    """Edge probability whose realized total lands closest to target."""
    lo_v = _total_for_p(bp, 0.0)
    hi_v = _total_for_p(bp, 1.0)
    if target <= lo_v:
        return 0.0, lo_v
    if target >= hi_v:
        return 1.0, hi_v
    lo_p, hi_p = 0.0, 1.0
    while hi_p - lo_p > _BISECTION_GRAIN:
        mid = 0.5 * (lo_p + hi_p)
        if _total_for_p(bp, mid) < target:
            lo_p = mid
        else:
            hi_p = mid
    lo_val = _total_for_p(bp, lo_p)
    hi_val = _total_for_p(bp, hi_p)
    if abs(lo_val - target) < abs(hi_val - target):
        return lo_p, lo_val
    return hi_p, hi_val


def _materialize(
    bp: _Blueprint, config: GeneratorConfig, p: float
) -> tuple[Curriculum, DegreePlan]:
    width = max(2, len(str(bp.total_courses)))
    ids = [f"C{i + 1:0{width}d}" for i in range(bp.total_courses)]
    courses = tuple(
        Course(id=cid, name=f"Course {cid}", credit_hours=3.0) for cid in ids
    )
    edges: list[RequisiteEdge] = []
    for target, slots in enumerate(bp.prereq_candidates):
        for src, u in slots:
            if u < p:
                edges.append(
                    RequisiteEdge(
                        source=ids[src],
                        target=ids[target],
                        kind=RequisiteKind.PREREQUISITE,
                    )
                )
    for a, b in bp.coreq_pairs:
        edges.append(
            RequisiteEdge(
                source=ids[a], target=ids[b], kind=RequisiteKind.COREQUISITE
            )
        )
    curriculum = Curriculum(
        name=f"synthetic-{config.seed}",
        institution="synthetic",
        courses=courses,
        edges=tuple(edges),
    )
    terms = tuple(
        Term(
            index=t + 1,
            course_ids=tuple(
                ids[bp.term_start[t] + k] for k in range(bp.sizes[t])
            ),
        )
        for t in range(config.num_terms)
    )
    return curriculum, DegreePlan(curriculum=curriculum, terms=terms)


def generate_curriculum(config: GeneratorConfig) -> tuple[Curriculum, DegreePlan]:
    """One synthetic curriculum plus its degree plan, deterministic in seed."""
    bp = _blueprint(config)
    return _materialize(bp, config, config.edge_probability)


def _moments(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = fsum(values) / n
    if n == 1:
        return mean, 0.0
    return mean, sqrt(fsum((v - mean) ** 2 for v in values) / (n - 1))


def _standardized(zs: list[float]) -> list[float]:
    """Rescale raw gaussians to exactly zero mean and unit sample std."""
    if len(zs) == 1:
        return [0.0]
    mean, std = _moments(zs)
    if std == 0.0:
        return [0.0] * len(zs)
    return [(z - mean) / std for z in zs]


def _redistribute(
    raw: list[float], lo: list[float], hi: list[float]
) -> list[float]:
    """Clamp each target into its attainable range, then push the clamped-off
    mass onto curricula with slack so the sample mean is preserved."""
    x = [min(h, max(l, v)) for v, l, h in zip(raw, lo, hi)]
    want = fsum(raw)
    for _ in range(8):
        deficit = want - fsum(x)
        if abs(deficit) <= 1e-9:
            break
        if deficit > 0:
            slack = [h - v for v, h in zip(x, hi)]
        else:
            slack = [v - l for v, l in zip(x, lo)]
        room = fsum(slack)
        if room <= 0:
            break
        share = deficit / room
        if abs(share) > 1.0:
            share = 1.0 if share > 0 else -1.0
        x = [v + share * s for v, s in zip(x, slack)]
    return x


def generate_tier_study(
    targets: list[TierTarget] | tuple[TierTarget, ...],
    base: GeneratorConfig,
) -> TierStudyResult:
    """Generate one curriculum sample per tier, moment-matched to targets.

    Per tier: curriculum seeds come first from a forked stream, then gaussian
    target draws, standardized so the pre-realization sample carries the
    target mean and std exactly; batches whose extremes poke outside the
    attainable complexity range are redrawn a bounded number of times. Each
    curriculum's edge probability is then bisected until its total complexity
    sits next to its personal target. Realized moments land within
    MEAN_TOLERANCE / STD_TOLERANCE of the targets or the tier is flagged as
    best-effort.

    Raises InfeasibleTargetError when a target mean is outside the attainable
    range of the configured layout (below the empty-graph total or above the
    saturated one).
    """
    targets = tuple(targets)
    if not targets:
        raise ValueError("at least one tier target is required")
    labels = [t.label for t in targets]
    if len(set(labels)) != len(labels):
        raise ValueError(f"tier labels must be unique, got {labels}")

    master = SplitMix64(base.seed)
    tiers: list[TierStudyTier] = []
    for target in targets:
        tier_rng = master.fork()
        seeds = [tier_rng.next_u64() for _ in range(target.count)]

        blueprints = [_blueprint(replace(base, seed=s)) for s in seeds]
        lo_bounds = [float(_total_for_p(bp, 0.0)) for bp in blueprints]
        hi_bounds = [float(_total_for_p(bp, 1.0)) for bp in blueprints]
        lo_mean = fsum(lo_bounds) / target.count
        hi_mean = fsum(hi_bounds) / target.count
        if target.target_mean < lo_mean:
            raise InfeasibleTargetError(
                target.label, target.target_mean, lo_mean, "below"
            )
        if target.target_mean > hi_mean:
            raise InfeasibleTargetError(
                target.label, target.target_mean, hi_mean, "above"
            )

        # Redraw the per-curriculum targets until the whole standardized
        # batch fits inside the attainable bounds: an in-bounds batch keeps
        # both sample moments exact. Fall back to the least-clamped batch.
        fitted: list[float] | None = None
        best_raw: list[float] | None = None
        best_overflow = float("inf")
        for _ in range(_TARGET_DRAW_ATTEMPTS):
            zs = [tier_rng.gauss() for _ in range(target.count)]
            raw = [
                target.target_mean + target.target_std * z
                for z in _standardized(zs)
            ]
            overflow = fsum(
                max(0.0, l - v) + max(0.0, v - h)
                for v, l, h in zip(raw, lo_bounds, hi_bounds)
            )
            if overflow == 0.0:
                fitted = raw
                break
            if overflow < best_overflow:
                best_overflow = overflow
                best_raw = raw
        if fitted is None:
            assert best_raw is not None
            fitted = _redistribute(best_raw, lo_bounds, hi_bounds)

        values: list[float] = []
        curricula: list[GeneratedCurriculum] = []
        for j, want in enumerate(fitted):
            best: tuple[float, int, _Blueprint, int] | None = None
            for attempt in range(_SEED_ATTEMPTS):
                if attempt == 0:
                    seed_a = seeds[j]
                    bp = blueprints[j]
                else:
                    seed_a = mix64((seeds[j] + attempt) & MASK64)
                    bp = _blueprint(replace(base, seed=seed_a))
                p, val = _bisect_probability(bp, want)
                if best is None or abs(val - want) < abs(best[1] - want):
                    best = (p, val, bp, seed_a)
                if abs(val - want) <= _ATTEMPT_TOLERANCE:
                    break
            assert best is not None
            p, val, bp, seed_a = best
            curriculum, plan = _materialize(bp, replace(base, seed=seed_a), p)
            values.append(float(val))
            curricula.append(
                GeneratedCurriculum(
                    curriculum=curriculum,
                    plan=plan,
                    complexity=float(val),
                    edge_probability=p,
                    seed=seed_a,
                )
            )

        achieved_mean, achieved_std = _moments(values)
        tiers.append(
            TierStudyTier(
                label=target.label,
                target_mean=target.target_mean,
                target_std=target.target_std,
                values=tuple(values),
                achieved_mean=achieved_mean,
                achieved_std=achieved_std,
                mean_attained=abs(achieved_mean - target.target_mean)
                <= MEAN_TOLERANCE,
                std_attained=abs(achieved_std - target.target_std)
                <= STD_TOLERANCE,
                curricula=tuple(curricula),
            )
        )

    sample_set = ComplexitySampleSet(
        tiers=tuple((t.label, t.values) for t in tiers)
    )
    return TierStudyResult(sample_set=sample_set, tiers=tuple(tiers))
