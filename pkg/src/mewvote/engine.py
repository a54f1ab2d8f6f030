"""Profile-level expected-score aggregation and winner determination.

The sequential solver groups identical voters into weighted groups, seeds
per-candidate score bounds from best/worst attainable ranks, then replaces
each group's bound contribution with its exact expected score, pruning
candidates whose upper bound falls below the best lower bound.  Pruning and
grouping never change the winner set; the parallel mode trades pruning for a
deterministic ordered reduction across worker processes, so its output is
bit-identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from multiprocessing import get_context

import numpy as np

from .errors import InvalidRule
from .preferences import rank_bounds
from .profiles import Profile
from .rep import Voter, rep_dispatch
from .rules import ScoringRule

WINNER_REL_TOL = 1e-9
PRUNE_REL_TOL = 1e-9


@dataclass
class ScoreBounds:
    """Running per-candidate bounds; ``resolved`` marks fully exact scores."""

    ub: dict[int, float]
    lb: dict[int, float]
    resolved: dict[int, bool]


@dataclass(frozen=True)
class MewStats:
    voters: int
    groups: int
    prunings: int
    seconds: float
    workers: int = 1


@dataclass(frozen=True)
class MewResult:
    winners: tuple[str, ...]
    expected_scores: dict[str, float]
    bounds: dict[str, tuple[float, float]]
    pruned: tuple[str, ...]
    stats: MewStats


@dataclass(frozen=True)
class _Group:
    voter: Voter      # weight-1 view used for solver calls
    weight: int
    first_index: int


def expected_score(c: int, voter: Voter, rule: ScoringRule) -> float:
    """Expected score of candidate ``c`` from a single voter (weight excluded)."""
    dist = rep_dispatch(c, voter, rule.m)
    return float(np.dot(dist, rule.scores))


def _grouped(profile: Profile, grouping: bool) -> list[_Group]:
    if not grouping:
        return [_Group(Voter(v.model, v.observation), v.weight, i)
                for i, v in enumerate(profile.voters)]
    groups: list[_Group] = []
    index: dict[tuple, int] = {}
    for i, v in enumerate(profile.voters):
        key = v.group_key()
        if key in index:
            g = groups[index[key]]
            groups[index[key]] = _Group(g.voter, g.weight + v.weight, g.first_index)
        else:
            index[key] = len(groups)
            groups.append(_Group(Voter(v.model, v.observation), v.weight, i))
    groups.sort(key=lambda g: (-g.weight, g.first_index))
    return groups


def _check_rule(profile: Profile, rule: ScoringRule) -> None:
    if rule.m != profile.m:
        raise InvalidRule(f"rule has {rule.m} ranks, profile has {profile.m} candidates")


def _winner_ids(profile: Profile, scores: dict[int, float]) -> tuple[str, ...]:
    top = max(scores.values())
    tol = WINNER_REL_TOL * max(1.0, abs(top))
    return tuple(profile.candidates.ids[c] for c in sorted(scores)
                 if scores[c] >= top - tol)


def mew(profile: Profile, rule: ScoringRule, *,
        pruning: bool = True, grouping: bool = True) -> MewResult:
    """Most-expected-winner set; identical for every pruning/grouping setting."""
    t0 = time.perf_counter()
    _check_rule(profile, rule)
    m = profile.m
    groups = _grouped(profile, grouping)

    # seed bounds from best/worst attainable ranks, weighted per group
    best_score = np.empty((len(groups), m))
    worst_score = np.empty((len(groups), m))
    for gi, g in enumerate(groups):
        for c in range(m):
            b, w = rank_bounds(c, g.voter.observation, m)
            best_score[gi, c] = rule.scores[b - 1]
            worst_score[gi, c] = rule.scores[w - 1]
    weights = np.array([g.weight for g in groups], dtype=float)
    state = ScoreBounds(
        ub={c: float(v) for c, v in enumerate(weights @ best_score)},
        lb={c: float(v) for c, v in enumerate(weights @ worst_score)},
        resolved={c: False for c in range(m)},
    )
    ub, lb = state.ub, state.lb

    alive = set(range(m))
    exact = {c: 0.0 for c in range(m)}
    groups_done = {c: 0 for c in range(m)}
    bounds_at_prune: dict[int, tuple[float, float]] = {}
    prunings = 0

    def prune_now() -> bool:
        nonlocal prunings
        max_lb = max(lb[c] for c in alive)
        eps = PRUNE_REL_TOL * max(1.0, abs(max_lb))
        for c in sorted(alive):
            if ub[c] < max_lb - eps:
                alive.remove(c)
                bounds_at_prune[c] = (lb[c], ub[c])
                prunings += 1
        return len(alive) == 1

    done_early = prune_now() if pruning else False
    if not done_early:
        for gi, g in enumerate(groups):
            for c in sorted(alive):
                e = expected_score(c, g.voter, rule)
                exact[c] += g.weight * e
                ub[c] += g.weight * (e - best_score[gi, c])
                lb[c] += g.weight * (e - worst_score[gi, c])
                groups_done[c] += 1
            if pruning and prune_now():
                done_early = True
                break

    # a score is fully determined once all groups contributed exactly, or once
    # the optimistic and pessimistic bounds coincide
    for c in range(m):
        state.resolved[c] = groups_done[c] == len(groups) or ub[c] == lb[c]
    resolved = state.resolved
    score_of = {c: exact[c] if groups_done[c] == len(groups) else ub[c]
                for c in range(m)}
    if all(resolved[c] for c in alive):
        winners = _winner_ids(profile, {c: score_of[c] for c in alive})
    else:  # early return: a single survivor with partially refined bounds
        winners = tuple(profile.candidates.ids[c] for c in sorted(alive))

    ids = profile.candidates.ids
    expected_scores = {ids[c]: score_of[c] for c in range(m) if resolved[c]}
    bounds = {ids[c]: bounds_at_prune.get(c, (lb[c], ub[c]))
              for c in range(m) if not resolved[c]}
    pruned = tuple(ids[c] for c in sorted(bounds_at_prune))
    stats = MewStats(voters=profile.n, groups=len(groups), prunings=prunings,
                     seconds=time.perf_counter() - t0)
    return MewResult(winners, expected_scores, bounds, pruned, stats)


# ---------------------------------------------------------------------------
# Deterministic parallel mode (pruning off)


def _score_chunk(args) -> list[tuple[int, list[float]]]:
    chunk, rule = args
    out = []
    for gi, voter in chunk:
        out.append((gi, [expected_score(c, voter, rule) for c in range(rule.m)]))
    return out


def mew_parallel(profile: Profile, rule: ScoringRule, workers: int = 1) -> MewResult:
    """Winner determination with voter groups split across worker processes.

    Per-group score vectors are combined in group-index order, so the result
    is bit-identical for any worker count and equals ``mew(pruning=False)``.
    """
    t0 = time.perf_counter()
    _check_rule(profile, rule)
    if workers < 1:
        raise InvalidRule(f"workers must be >= 1, got {workers}")
    m = profile.m
    groups = _grouped(profile, grouping=True)
    indexed = list(enumerate(g.voter for g in groups))

    if workers == 1:
        results = _score_chunk((indexed, rule))
    else:
        chunks = [indexed[i::workers] for i in range(workers)]
        chunks = [c for c in chunks if c]
        ctx = get_context("fork")
        with ProcessPoolExecutor(max_workers=len(chunks), mp_context=ctx) as ex:
            results = []
            for part in ex.map(_score_chunk, [(c, rule) for c in chunks]):
                results.extend(part)

    by_group = dict(results)
    exact = {c: 0.0 for c in range(m)}
    for gi, g in enumerate(groups):
        vec = by_group[gi]
        for c in range(m):
            exact[c] += g.weight * vec[c]

    winners = _winner_ids(profile, exact)
    ids = profile.candidates.ids
    stats = MewStats(voters=profile.n, groups=len(groups), prunings=0,
                     seconds=time.perf_counter() - t0, workers=workers)
    return MewResult(winners, {ids[c]: exact[c] for c in range(m)}, {}, (), stats)


def expected_regret(c: int, profile: Profile, rule: ScoringRule,
                    cap: int | None = None) -> float:
    """Expected (best-in-world score minus c's score); minimized by the winners."""
    from .oracle import oracle_expected_regret

    _check_rule(profile, rule)
    return oracle_expected_regret(c, profile, rule, cap)
