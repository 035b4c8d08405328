"""Named verification suites: each provable claim as an executable check.

Every suite is a pure function of ``(name, seed, size_params)``: a master
generator derives one subseed per case up front, so cases could run in
any order or concurrently without changing the report.  Failures carry a
one-line escaped instance dump that re-parses to the exact offending
instance.  Suites report failures; they do not abort on them.

Tied draws under the forbid policy are resampled, never counted as
failures: the one-half tree bound assumes distinct subset sums, so a
tied instance is outside the hypothesis, not a counterexample.

``SuiteReport.render`` deliberately omits the wall time so that repeated
runs with equal seeds produce byte-identical reports.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .adversary import GraphShape, alternate_optimize, hill_climb, tree_shapes
from .core import GraphShareError, Instance, Player, TiePolicy
from .generators import (
    gen_cycle7_family,
    gen_random_connected,
    gen_random_tree,
    resample_on_tie,
)
from .instance_io import format_instance, parse_instance
from .oracle import audit_lines, brute_value
from .solve import principal_line, optimal_responses, response_map, solve

SUITE_NAMES = (
    "general-third",
    "tree-half",
    "mutual-edge",
    "lead-invariant",
    "oracle-equivalence",
    "cycle7-family",
    "edge-family",
    "tie-tree-search",
)

_ALL_POLICIES = (TiePolicy.FORBID, TiePolicy.FIRST_MOVES, TiePolicy.SECOND_MOVES)


class UnknownSuiteError(GraphShareError):
    """The requested suite name is not one of the defined suites."""

    def __init__(self, name: str):
        known = ", ".join(SUITE_NAMES)
        super().__init__(f"unknown suite {name!r}; known suites: {known}")
        self.name = name


@dataclass(frozen=True)
class CaseFailure:
    """One failed check: the instance, what was expected, what happened."""

    case_id: str
    instance_dump: str
    expected: str
    actual: str


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one suite run.

    ``records`` holds suite-specific values worth keeping (exact family
    values, best search results) as ``(key, value)`` pairs in a fixed
    order.  ``passed`` is equivalent to ``failures`` being empty.
    """

    suite: str
    seed: int
    cases: int
    failures: tuple[CaseFailure, ...]
    records: tuple[tuple[str, str], ...]
    wall_time: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"suite={self.suite} status={status} "
            f"cases={self.cases} failures={len(self.failures)}"
        )

    def render(self) -> str:
        lines = [f"suite={self.suite}", f"seed={self.seed}", f"cases={self.cases}"]
        for key, value in self.records:
            lines.append(f"{key}={value}")
        for index, failure in enumerate(self.failures):
            prefix = f"failure.{index}"
            lines.append(f"{prefix}.case={failure.case_id}")
            lines.append(f"{prefix}.instance={escape_dump(failure.instance_dump)}")
            lines.append(f"{prefix}.expected={failure.expected}")
            lines.append(f"{prefix}.actual={failure.actual}")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


def escape_dump(text: str) -> str:
    """Escape an instance dump onto one line (inverse of unescape_dump)."""
    return text.replace("\\", "\\\\").replace("\n", "\\n")


def unescape_dump(text: str) -> str:
    out = []
    it = iter(range(len(text)))
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt == "n":
                out.append("\n")
                i += 2
                continue
            if nxt == "\\":
                out.append("\\")
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _subseeds(seed: int, count: int) -> list[int]:
    master = random.Random(seed)
    return [master.randrange(2**32) for _ in range(count)]


def _tie_free(builder: Callable[[int], Instance]) -> Instance:
    instance, _rejected = resample_on_tie(builder, TiePolicy.FORBID, attempts=50)
    return instance


# ---------------------------------------------------------------------------
# shared corpora


def _small_connected_corpus(
    seed: int, cases: int, max_vertices: int, weight_max: int
) -> list[Instance]:
    """Tie-free random connected instances with n <= max_vertices.

    Shared by the oracle-equivalence and lead-invariant suites so that
    the exhaustive audits run on exactly the instances whose values the
    oracle confirmed.
    """
    corpus = []
    for sub in _subseeds(seed, cases):
        rng = random.Random(sub)
        n = rng.randint(2, max_vertices)
        cap = n * (n - 1) // 2 - (n - 1)
        extra = rng.randint(0, min(3, cap))
        corpus.append(
            _tie_free(lambda k: gen_random_connected(n, extra, sub + k, weight_max))
        )
    return corpus


def _tree_corpus(
    seed: int, cases: int, max_vertices: int, weight_max: int
) -> list[Instance]:
    """Tie-free random trees, shared by tree-half and mutual-edge."""
    corpus = []
    for sub in _subseeds(seed, cases):
        rng = random.Random(sub)
        n = rng.randint(2, max_vertices)
        corpus.append(_tie_free(lambda k: gen_random_tree(n, sub + k, weight_max)))
    return corpus


# ---------------------------------------------------------------------------
# suites


def _case_id(index: int, instance: Instance) -> str:
    return f"{index:04d}-n{instance.vertex_count}"


def _suite_general_third(seed: int, params: dict) -> tuple[int, list, list]:
    cases = params["cases"]
    max_vertices = params["max_vertices"]
    weight_max = params["weight_max"]
    third = Fraction(1, 3)
    failures = []
    for index, sub in enumerate(_subseeds(seed, cases)):
        rng = random.Random(sub)
        # Mostly small instances; a tail of large ones keeps the bound
        # honest where the search space is deep without dominating the
        # runtime.
        if rng.random() < 0.9:
            n = rng.randint(2, min(10, max_vertices))
        else:
            n = rng.randint(min(11, max_vertices), max_vertices)
        cap = n * (n - 1) // 2 - (n - 1)
        extra = rng.randint(0, min(3 if n <= 10 else 1, cap))
        instance = _tie_free(
            lambda k: gen_random_connected(n, extra, sub + k, weight_max)
        )
        total = instance.total_weight
        w_max = max(instance.weights)
        floor = max(third, Fraction(w_max, total), Fraction(total - w_max, 2 * total))
        for policy in _ALL_POLICIES:
            value = solve(instance, policy).value
            if value < floor:
                failures.append(
                    CaseFailure(
                        _case_id(index, instance),
                        format_instance(instance),
                        f"value >= {_frac(floor)} under {policy.value}",
                        f"value={_frac(value)}",
                    )
                )
    return cases, failures, []


def _suite_tree_half(seed: int, params: dict) -> tuple[int, list, list]:
    corpus = _tree_corpus(seed, params["cases"], params["max_vertices"], params["weight_max"])
    half = Fraction(1, 2)
    failures = []
    for index, instance in enumerate(corpus):
        value = solve(instance, TiePolicy.FORBID).value
        if value < half:
            failures.append(
                CaseFailure(
                    _case_id(index, instance),
                    format_instance(instance),
                    "tree value >= 1/2 under forbid",
                    f"value={_frac(value)}",
                )
            )
    return len(corpus), failures, []


def _suite_mutual_edge(seed: int, params: dict) -> tuple[int, list, list]:
    corpus = _tree_corpus(seed, params["cases"], params["max_vertices"], params["weight_max"])
    failures = []
    for index, instance in enumerate(corpus):
        replies = response_map(instance, TiePolicy.FORBID)
        mutual = None
        for a, b in instance.edges:
            if replies[a] == b and replies[b] == a:
                mutual = (a, b)
                break
        if mutual is None:
            failures.append(
                CaseFailure(
                    _case_id(index, instance),
                    format_instance(instance),
                    "a mutual reply edge (replies[a]=b and replies[b]=a)",
                    f"replies={replies}",
                )
            )
            continue
        a, b = mutual
        total = instance.total_weight
        first_at_a = _first_total(instance, TiePolicy.FORBID, a)
        first_at_b = _first_total(instance, TiePolicy.FORBID, b)
        if first_at_a != total - first_at_b:
            failures.append(
                CaseFailure(
                    _case_id(index, instance),
                    format_instance(instance),
                    f"w(F|open {a}) = w(S|open {b}) on mutual edge {a}-{b}",
                    f"w(F|open {a})={first_at_a}, "
                    f"w(S|open {b})={total - first_at_b}",
                )
            )
    return len(corpus), failures, []


def _first_total(instance: Instance, policy: TiePolicy, start: int) -> int:
    line = principal_line(instance, policy, start)
    return sum(instance.weights[v] for player, v in line if player is Player.FIRST)


def _suite_lead_invariant(seed: int, params: dict) -> tuple[int, list, list]:
    corpus = _small_connected_corpus(
        seed, params["cases"], params["max_vertices"], params["weight_max"]
    )
    failures = []
    for index, instance in enumerate(corpus):
        w_max = max(instance.weights)
        for policy in _ALL_POLICIES:
            for start in range(instance.vertex_count):
                for audit in audit_lines(instance, policy, start):
                    if audit.max_lead_violation is not None:
                        step, leader, lead, weight = audit.max_lead_violation
                        failures.append(
                            CaseFailure(
                                _case_id(index, instance),
                                format_instance(instance),
                                "strict leader's lead < leader's last vertex weight",
                                f"policy={policy.value} start={start} step={step} "
                                f"leader={leader.value} lead={lead} last_weight={weight}",
                            )
                        )
                    if audit.skipped or audit.tie_steps:
                        continue
                    first = sum(
                        instance.weights[v]
                        for player, v in audit.line
                        if player is Player.FIRST
                    )
                    final_lead = abs(2 * first - instance.total_weight)
                    if final_lead >= w_max:
                        failures.append(
                            CaseFailure(
                                _case_id(index, instance),
                                format_instance(instance),
                                "final lead < max weight on tie-free lines",
                                f"policy={policy.value} start={start} "
                                f"final_lead={final_lead} w_max={w_max}",
                            )
                        )
    return len(corpus), failures, []


def _suite_oracle_equivalence(seed: int, params: dict) -> tuple[int, list, list]:
    corpus = _small_connected_corpus(
        seed, params["cases"], params["max_vertices"], params["weight_max"]
    )
    failures = []
    for index, instance in enumerate(corpus):
        for policy in _ALL_POLICIES:
            report = solve(instance, policy)
            for entry in report.per_start:
                reference = brute_value(instance, policy, entry.start)
                if reference != entry.value:
                    failures.append(
                        CaseFailure(
                            _case_id(index, instance),
                            format_instance(instance),
                            f"solver == oracle at start {entry.start} "
                            f"under {policy.value}",
                            f"solver={_frac(entry.value)} oracle={_frac(reference)}",
                        )
                    )
    return len(corpus), failures, []


def _suite_cycle7_family(seed: int, params: dict) -> tuple[int, list, list]:
    failures = []
    records = []
    d_vertex, e_vertex = 3, 4
    for index, m in enumerate(params["m_values"]):
        instance = gen_cycle7_family(m)
        value = solve(instance, TiePolicy.FORBID).value
        bound = Fraction(m + 69, 3 * m + 95)
        records.append((f"cycle7.M{m}.value", _frac(value)))
        records.append((f"cycle7.M{m}.bound", _frac(bound)))
        if value > bound:
            failures.append(
                CaseFailure(
                    f"{index:04d}-M{m}",
                    format_instance(instance),
                    f"value <= {_frac(bound)}",
                    f"value={_frac(value)}",
                )
            )
        replies = optimal_responses(instance, TiePolicy.FORBID, d_vertex)
        if e_vertex not in replies:
            failures.append(
                CaseFailure(
                    f"{index:04d}-M{m}",
                    format_instance(instance),
                    f"vertex {e_vertex} among optimal replies to opening {d_vertex}",
                    f"replies={sorted(replies)}",
                )
            )
    return len(params["m_values"]), failures, records


def _suite_edge_family(seed: int, params: dict) -> tuple[int, list, list]:
    failures = []
    k_max = params["k_max"]
    for k in range(1, k_max + 1):
        instance = Instance(weights=(k, k + 1), edges=((0, 1),))
        value = solve(instance, TiePolicy.FORBID).value
        expected = Fraction(k + 1, 2 * k + 1)
        if value != expected:
            failures.append(
                CaseFailure(
                    f"{k:04d}-edge",
                    format_instance(instance),
                    f"value == {_frac(expected)}",
                    f"value={_frac(value)}",
                )
            )
    return k_max, failures, []


def _suite_tie_tree_search(seed: int, params: dict) -> tuple[int, list, list]:
    """Adversary search over all tree shapes of a fixed size.

    A seeded hill climb scores every shape, then the alternating
    LP search refines the most promising ones.  The best certified
    value must beat the threshold; the stretch goal is recorded
    either way.
    """
    vertices = params["vertices"]
    threshold = params["threshold"]
    stretch = params["stretch"]
    policy = TiePolicy.FIRST_MOVES
    shapes = list(tree_shapes(vertices))
    subs = _subseeds(seed, len(shapes))
    scored = []
    for shape, sub in zip(shapes, subs):
        result = hill_climb(shape, policy, seed=sub, iters=params["hill_iters"])
        scored.append((result.value, shape, result.instance))
    scored.sort(key=lambda item: (item[0], item[1].edges))
    best_value, _shape, best_instance = scored[0]
    for _value, shape, _instance in scored[: params["refine_top"]]:
        refined = alternate_optimize(
            shape, policy, max_iters=params["alternate_iters"]
        )
        if refined.value < best_value:
            best_value, best_instance = refined.value, refined.instance
    records = [
        ("search.shapes", str(len(shapes))),
        ("search.best_value", _frac(best_value)),
        ("search.best_instance", escape_dump(format_instance(best_instance))),
        ("search.threshold", _frac(threshold)),
        ("search.stretch", _frac(stretch)),
        ("search.stretch_met", "yes" if best_value <= stretch else "no"),
    ]
    failures = []
    if best_value > threshold:
        failures.append(
            CaseFailure(
                "0000-search",
                format_instance(best_instance),
                f"best certified value <= {_frac(threshold)}",
                f"best={_frac(best_value)}",
            )
        )
    return len(shapes), failures, records


_DEFAULTS: dict[str, dict] = {
    "general-third": {"cases": 1000, "max_vertices": 14, "weight_max": 10**9},
    "tree-half": {"cases": 500, "max_vertices": 12, "weight_max": 10**9},
    "mutual-edge": {"cases": 500, "max_vertices": 12, "weight_max": 10**9},
    "lead-invariant": {"cases": 210, "max_vertices": 6, "weight_max": 10**9},
    "oracle-equivalence": {"cases": 210, "max_vertices": 6, "weight_max": 10**9},
    "cycle7-family": {"m_values": (1000, 100000)},
    "edge-family": {"k_max": 50},
    "tie-tree-search": {
        "vertices": 9,
        "hill_iters": 25,
        "alternate_iters": 12,
        "refine_top": 2,
        "threshold": Fraction(36, 100),
        "stretch": Fraction(35, 100),
    },
}

_SUITES: dict[str, Callable[[int, dict], tuple[int, list, list]]] = {
    "general-third": _suite_general_third,
    "tree-half": _suite_tree_half,
    "mutual-edge": _suite_mutual_edge,
    "lead-invariant": _suite_lead_invariant,
    "oracle-equivalence": _suite_oracle_equivalence,
    "cycle7-family": _suite_cycle7_family,
    "edge-family": _suite_edge_family,
    "tie-tree-search": _suite_tie_tree_search,
}


def run_suite(name: str, seed: int = 0, size_params: dict | None = None) -> SuiteReport:
    """Run one named suite deterministically and return its report.

    ``size_params`` overrides the suite's default sizes/thresholds; the
    report depends only on ``(name, seed, size_params)``.
    """
    if name not in _SUITES:
        raise UnknownSuiteError(name)
    params = dict(_DEFAULTS[name])
    if size_params:
        params.update(size_params)
    started = time.perf_counter()
    cases, failures, records = _SUITES[name](seed, params)
    elapsed = time.perf_counter() - started
    failures = tuple(sorted(failures, key=lambda f: f.case_id))
    return SuiteReport(
        suite=name,
        seed=seed,
        cases=cases,
        failures=failures,
        records=tuple(records),
        wall_time=elapsed,
    )


def reproduce_failure(failure: CaseFailure) -> Instance:
    """Re-parse a failure's instance dump (the reproduction handle)."""
    return parse_instance(unescape_dump(failure.instance_dump))
