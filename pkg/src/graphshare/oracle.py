"""Independent brute-force checks for the solver and the lead invariant.

This module deliberately shares only the rule definitions with the
solver: valuation here recurses over frozensets without memoization and
recomputes totals from scratch, so a bug would have to be introduced
twice to go unnoticed.

The line audits replay complete legal play sequences (not just optimal
ones) and check the lead invariant: whenever one player strictly leads,
the lead stays below the weight of that player's most recently taken
vertex.  A move made from exactly tied totals (the opening, or a
policy-resolved tie) momentarily puts its maker ahead by exactly the
taken weight; those steps are the only permitted equalities, and the
audit flags anything beyond them as a violation.  A consequence checked
downstream: on a tie-free line of a multi-vertex instance the final gap
is strictly below the maximum vertex weight, so First keeps more than
(W - w_max) / (2 W) whenever Second finishes ahead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Instance,
    InstanceTooLargeError,
    Player,
    TiePolicy,
    TieEncounteredError,
)

BRUTE_VERTEX_CAP = 10
AUDIT_EXHAUSTIVE_CAP = 8


def _adjacency(instance: Instance) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(instance.vertex_count)}
    for u, v in instance.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def brute_value(instance: Instance, policy: TiePolicy, start: int) -> Fraction:
    """Final First share after opening at ``start``, by plain exhaustive
    recursion over every legal continuation."""
    n = instance.vertex_count
    if n > BRUTE_VERTEX_CAP:
        raise InstanceTooLargeError(
            f"{n} vertices exceed the brute-force cap of {BRUTE_VERTEX_CAP}"
        )
    if not 0 <= start < n:
        raise ValueError(f"start vertex {start} does not exist")
    adj = _adjacency(instance)
    weights = instance.weights
    forbid = policy is TiePolicy.FORBID

    def rec(first: frozenset[int], second: frozenset[int]) -> int:
        f = sum(weights[v] for v in first)
        s = sum(weights[v] for v in second)
        taken = first | second
        if forbid and f == s:
            raise TieEncounteredError(
                sum(1 << v for v in first), sum(1 << v for v in second)
            )
        if len(taken) == n:
            return f
        if f < s:
            first_moves = True
        elif f > s:
            first_moves = False
        else:
            first_moves = policy is TiePolicy.FIRST_MOVES
        frontier = {u for v in taken for u in adj[v]} - taken
        if first_moves:
            return max(rec(first | {v}, second) for v in frontier)
        return min(rec(first, second | {v}) for v in frontier)

    return Fraction(rec(frozenset({start}), frozenset()), instance.total_weight)


@dataclass(frozen=True)
class LineAudit:
    """Audit of one play line.

    ``max_lead_violation`` is None when the line is clean, otherwise the
    worst offending step as (step index, leader, lead, weight of the
    leader's last vertex).  ``tie_steps`` lists post-opening steps whose
    move was made from exactly tied totals (empty means tie-free).
    ``skipped`` marks a line abandoned at a tie under the forbid policy;
    ``line`` then holds the prefix up to the tie.
    """

    line: tuple[tuple[Player, int], ...]
    max_lead_violation: tuple[int, Player, int, int] | None
    tie_steps: tuple[int, ...]
    skipped: bool


def _audit_one(
    instance: Instance, line: tuple[tuple[Player, int], ...], skipped: bool
) -> LineAudit:
    weights = instance.weights
    totals = {Player.FIRST: 0, Player.SECOND: 0}
    last = {Player.FIRST: None, Player.SECOND: None}
    tie_steps = []
    worst = None
    worst_excess = None
    for step, (who, v) in enumerate(line):
        tie_origin = totals[Player.FIRST] == totals[Player.SECOND]
        if tie_origin and step > 0:
            tie_steps.append(step)
        totals[who] += weights[v]
        last[who] = v
        f = totals[Player.FIRST]
        s = totals[Player.SECOND]
        if f == s:
            continue
        leader = Player.FIRST if f > s else Player.SECOND
        lead = abs(f - s)
        last_w = weights[last[leader]]
        if lead < last_w:
            continue
        if lead == last_w and tie_origin and who is leader:
            continue
        excess = lead - last_w
        if worst is None or excess > worst_excess:
            worst = (step, leader, lead, last_w)
            worst_excess = excess
    return LineAudit(
        line=line,
        max_lead_violation=worst,
        tie_steps=tuple(tie_steps),
        skipped=skipped,
    )


def audit_lines(
    instance: Instance,
    policy: TiePolicy,
    start: int,
    line_limit: int | None = None,
    seed: int = 0,
) -> list[LineAudit]:
    """Audit play lines opened at ``start``.

    Without ``line_limit`` every legal line is enumerated, which is only
    allowed up to 8 vertices.  With a limit, move choices are shuffled by
    a seeded generator and the first ``line_limit`` lines found are
    audited, deterministically for a given seed.  Under the forbid policy
    a line reaching tied totals is reported with ``skipped=True`` rather
    than counted as a violation.
    """
    n = instance.vertex_count
    if not 0 <= start < n:
        raise ValueError(f"start vertex {start} does not exist")
    if line_limit is None and n > AUDIT_EXHAUSTIVE_CAP:
        raise InstanceTooLargeError(
            f"exhaustive audit needs <= {AUDIT_EXHAUSTIVE_CAP} vertices; "
            "pass line_limit to sample"
        )
    adj = _adjacency(instance)
    weights = instance.weights
    forbid = policy is TiePolicy.FORBID
    rng = random.Random(seed) if line_limit is not None else None
    audits: list[LineAudit] = []
    prefix: list[tuple[Player, int]] = [(Player.FIRST, start)]

    def walk(first: frozenset[int], second: frozenset[int]) -> None:
        if line_limit is not None and len(audits) >= line_limit:
            return
        f = sum(weights[v] for v in first)
        s = sum(weights[v] for v in second)
        taken = first | second
        if len(taken) == n:
            if forbid and f == s:
                audits.append(_audit_one(instance, tuple(prefix), skipped=True))
            else:
                audits.append(_audit_one(instance, tuple(prefix), skipped=False))
            return
        if f == s and forbid:
            audits.append(_audit_one(instance, tuple(prefix), skipped=True))
            return
        if f < s:
            who = Player.FIRST
        elif f > s:
            who = Player.SECOND
        else:
            who = (
                Player.FIRST
                if policy is TiePolicy.FIRST_MOVES
                else Player.SECOND
            )
        frontier = sorted({u for v in taken for u in adj[v]} - taken)
        if rng is not None:
            rng.shuffle(frontier)
        for v in frontier:
            prefix.append((who, v))
            if who is Player.FIRST:
                walk(first | {v}, second)
            else:
                walk(first, second | {v})
            prefix.pop()

    walk(frozenset({start}), frozenset())
    return audits
