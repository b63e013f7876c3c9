"""Structural complexity analysis for curriculum requisite graphs.

Curricula are modeled as directed acyclic graphs of courses linked by
prerequisite / corequisite edges. The package computes per-course blocking and
delay factors, aggregates them into curriculum complexity, and provides the
statistics pipeline (box-plot summaries, sample sizing, one-way ANOVA with
F-test) plus a seeded synthetic-curriculum generator for end-to-end studies.
"""

from curricomp.model import (
    Course,
    Curriculum,
    CycleError,
    DegreePlan,
    RequisiteEdge,
    RequisiteGraph,
    RequisiteKind,
    Term,
    ValidationError,
    Violation,
    build_requisite_graph,
    topological_order,
    validate_curriculum,
    validate_degree_plan,
)
from curricomp.metrics import (
    CourseMetrics,
    CurriculumMetrics,
    MetricConfig,
    blocking_factor,
    course_complexity,
    curriculum_complexity,
    delay_factor,
    reachable_set,
)
from curricomp.formats import (
    ComplexitySampleSet,
    ParseError,
    parse_curriculum,
    parse_samples,
    serialize_curriculum,
)
from curricomp.stats import (
    Histogram,
    SampleSizeResult,
    SampleSummary,
    histogram,
    notch_interval,
    sample_size,
    summarize_sample,
)
from curricomp.anova import (
    AnovaTable,
    MeanSquares,
    TestDecision,
    TierSamples,
    ZeroWithinGroupVarianceError,
    anova_table,
    f_cdf,
    f_quantile,
    hypothesis_test,
    mean_squares,
)
from curricomp.synthgen import (
    GeneratedCurriculum,
    GeneratorConfig,
    InfeasibleTargetError,
    TierStudyResult,
    TierStudyTier,
    TierTarget,
    generate_curriculum,
    generate_tier_study,
)

__version__ = "0.1.0"

__all__ = [
    "AnovaTable",
    "ComplexitySampleSet",
    "Course",
    "CourseMetrics",
    "Curriculum",
    "CurriculumMetrics",
    "CycleError",
    "DegreePlan",
    "GeneratedCurriculum",
    "GeneratorConfig",
    "Histogram",
    "InfeasibleTargetError",
    "MeanSquares",
    "MetricConfig",
    "ParseError",
    "RequisiteEdge",
    "RequisiteGraph",
    "RequisiteKind",
    "SampleSizeResult",
    "SampleSummary",
    "Term",
    "TestDecision",
    "TierSamples",
    "TierStudyResult",
    "TierStudyTier",
    "TierTarget",
    "ValidationError",
    "Violation",
    "ZeroWithinGroupVarianceError",
    "anova_table",
    "blocking_factor",
    "build_requisite_graph",
    "course_complexity",
    "curriculum_complexity",
    "delay_factor",
    "f_cdf",
    "f_quantile",
    "generate_curriculum",
    "generate_tier_study",
    "histogram",
    "hypothesis_test",
    "mean_squares",
    "notch_interval",
    "parse_curriculum",
    "parse_samples",
    "reachable_set",
    "sample_size",
    "serialize_curriculum",
    "summarize_sample",
    "topological_order",
    "validate_curriculum",
    "validate_degree_plan",
]
