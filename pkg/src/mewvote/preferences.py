"""Candidate sets, rankings, and incomplete-preference structures.

Candidates are opaque string identifiers mapped to indices ``0..m-1``.  A
ranking is a tuple of candidate indices, most preferred first, so
``ranking[j-1]`` is the candidate at rank ``j``.

Four incomplete-observation structures are supported: partial orders
(posets), partitioned preferences (ordered buckets, optionally with a
"missing" set carrying no information), partial chains, and truncated
rankings (known top/bottom segments).  All structures are immutable and
hashable, which the winner engine relies on for voter grouping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import CycleDetected, OverlapViolation, TooLarge, UnknownCandidate, ValidationError

Ranking = tuple[int, ...]

ENUMERATION_CAP = 10


@dataclass(frozen=True)
class CandidateSet:
    ids: tuple[str, ...]

    def __post_init__(self):
        if len(self.ids) < 2:
            raise ValidationError("need at least 2 candidates")
        if len(set(self.ids)) != len(self.ids):
            raise ValidationError("candidate identifiers must be unique")

    @property
    def m(self) -> int:
        return len(self.ids)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.ids)}

    def index_of(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownCandidate(f"unknown candidate {name!r}") from None


def candidate_set(*ids: str) -> CandidateSet:
    return CandidateSet(tuple(ids))


@dataclass(frozen=True)
class PartialOrder:
    """A strict partial order given as a set of preference pairs (a, b) = a > b."""

    pairs: frozenset[tuple[int, int]]

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", frozenset((int(a), int(b)) for a, b in pairs))

    @cached_property
    def items(self) -> frozenset[int]:
        return frozenset(x for pair in self.pairs for x in pair)

    @cached_property
    def closure(self) -> frozenset[tuple[int, int]]:
        """Transitive closure of the pair set; raises CycleDetected."""
        succ: dict[int, set[int]] = {}
        for a, b in self.pairs:
            if a == b:
                raise CycleDetected(f"candidate {a} preferred to itself")
            succ.setdefault(a, set()).add(b)
        reach: dict[int, frozenset[int]] = {}
        state: dict[int, int] = {}  # 0 unvisited / 1 on stack / 2 done

        def visit(x: int) -> frozenset[int]:
            if state.get(x) == 1:
                raise CycleDetected("preference pairs contain a cycle")
            if state.get(x) == 2:
                return reach[x]
            state[x] = 1
            out: set[int] = set()
            for y in succ.get(x, ()):
                out.add(y)
                out |= visit(y)
            state[x] = 2
            reach[x] = frozenset(out)
            return reach[x]

        closed = set()
        for x in list(succ):
            for y in visit(x):
                closed.add((x, y))
        return frozenset(closed)

    @cached_property
    def cover_pairs(self) -> frozenset[tuple[int, int]]:
        """Pairs (a, b) with a > b and no intermediate element between them."""
        closed = self.closure
        covers = set()
        for a, b in closed:
            if not any((a, z) in closed and (z, b) in closed for z in self.items):
                covers.add((a, b))
        return frozenset(covers)

    def ancestors(self, c: int) -> frozenset[int]:
        return frozenset(a for a, b in self.closure if b == c)

    def descendants(self, c: int) -> frozenset[int]:
        return frozenset(b for a, b in self.closure if a == c)

    def consistent(self, ranking: Ranking) -> bool:
        pos = {c: j for j, c in enumerate(ranking)}
        return all(pos[a] < pos[b] for a, b in self.pairs)


@dataclass(frozen=True)
class PartitionedPreference:
    """Ordered buckets of candidates; items in ``missing`` carry no information.

    With ``missing`` empty and the buckets covering all of C this is a fully
    partitioned preference; otherwise it is partially partitioned.
    """

    buckets: tuple[frozenset[int], ...]
    missing: frozenset[int] = frozenset()

    def __init__(self, buckets, missing=()):
        object.__setattr__(self, "buckets", tuple(frozenset(b) for b in buckets))
        object.__setattr__(self, "missing", frozenset(missing))

    @cached_property
    def items(self) -> frozenset[int]:
        out: set[int] = set(self.missing)
        for b in self.buckets:
            out |= b
        return frozenset(out)

    def bucket_of(self, c: int) -> int | None:
        for i, b in enumerate(self.buckets):
            if c in b:
                return i
        return None

    def is_fully_partitioned(self, m: int) -> bool:
        return not self.missing and sum(len(b) for b in self.buckets) == m

    def to_pairs(self) -> frozenset[tuple[int, int]]:
        pairs = set()
        for i, upper in enumerate(self.buckets):
            for lower in self.buckets[i + 1:]:
                pairs.update((a, b) for a in upper for b in lower)
        return frozenset(pairs)


@dataclass(frozen=True)
class PartialChain:
    """A linear order over a subset of the candidates."""

    chain: tuple[int, ...]

    def __init__(self, chain):
        object.__setattr__(self, "chain", tuple(int(c) for c in chain))

    def to_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (self.chain[i], self.chain[j])
            for i in range(len(self.chain))
            for j in range(i + 1, len(self.chain))
        )


@dataclass(frozen=True)
class TruncatedRanking:
    """Known top and bottom segments with an unordered middle."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __init__(self, top, bottom):
        object.__setattr__(self, "top", tuple(int(c) for c in top))
        object.__setattr__(self, "bottom", tuple(int(c) for c in bottom))

    def middle(self, m: int) -> frozenset[int]:
        return frozenset(range(m)) - set(self.top) - set(self.bottom)

    def to_partitioned(self, m: int) -> PartitionedPreference:
        buckets: list[frozenset[int]] = [frozenset([c]) for c in self.top]
        mid = self.middle(m)
        if mid:
            buckets.append(frozenset(mid))
        buckets.extend(frozenset([c]) for c in self.bottom)
        return PartitionedPreference(buckets)


Observation = PartialOrder | PartitionedPreference | PartialChain | TruncatedRanking


def observation_pairs(obs: Observation) -> frozenset[tuple[int, int]]:
    """The preference pairs induced by any observation structure."""
    if isinstance(obs, PartialOrder):
        return obs.pairs
    if isinstance(obs, PartialChain):
        return obs.to_pairs()
    if isinstance(obs, PartitionedPreference):
        return obs.to_pairs()
    raise TypeError(f"no pair view for {type(obs).__name__}")


def validate(structure, candidates: CandidateSet | int) -> None:
    """Check structural invariants and candidate membership.

    ``candidates`` may be a CandidateSet or simply the candidate count when
    identifiers have already been resolved to indices.
    """
    m = candidates if isinstance(candidates, int) else candidates.m

    def check_member(c):
        if not 0 <= c < m:
            raise UnknownCandidate(f"candidate index {c} outside 0..{m - 1}")

    if isinstance(structure, PartialOrder):
        for a, b in structure.pairs:
            check_member(a)
            check_member(b)
        structure.closure  # raises CycleDetected on cycles
    elif isinstance(structure, PartitionedPreference):
        seen: set[int] = set()
        for b in structure.buckets:
            if not b:
                raise ValidationError("empty bucket")
            for c in b:
                check_member(c)
                if c in seen:
                    raise OverlapViolation(f"candidate {c} appears in two buckets")
                seen.add(c)
        for c in structure.missing:
            check_member(c)
            if c in seen:
                raise OverlapViolation(f"candidate {c} both bucketed and missing")
            seen.add(c)
    elif isinstance(structure, PartialChain):
        if len(set(structure.chain)) != len(structure.chain):
            raise OverlapViolation("repeated candidate in chain")
        for c in structure.chain:
            check_member(c)
    elif isinstance(structure, TruncatedRanking):
        both = list(structure.top) + list(structure.bottom)
        if len(set(both)) != len(both):
            raise OverlapViolation("top and bottom segments overlap")
        for c in both:
            check_member(c)
        if len(both) > m:
            raise ValidationError("top/bottom segments larger than candidate set")
    elif isinstance(structure, tuple):  # a plain ranking
        if sorted(structure) != list(range(m)):
            raise ValidationError("ranking is not a permutation of all candidates")
    else:
        raise TypeError(f"cannot validate {type(structure).__name__}")


def linear_extensions(p: PartialOrder, candidates: CandidateSet | int,
                      cap: int = ENUMERATION_CAP) -> list[Ranking]:
    """All rankings consistent with ``p``, in lexicographic index order.

    Guarded by ``cap``: enumeration over m! permutations is a desk-scale tool,
    not a solver.
    """
    m = candidates if isinstance(candidates, int) else candidates.m
    if m > cap:
        raise TooLarge(f"m={m} exceeds enumeration cap {cap}; use a solver")
    validate(p, m)
    pairs = p.pairs
    out = []
    for perm in itertools.permutations(range(m)):
        pos = {c: j for j, c in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in pairs):
            out.append(perm)
    return out


def cover_width(sigma: Ranking, p: PartialOrder) -> int:
    """Maximum number of simultaneously tracked items during insertion in sigma order.

    An item is tracked from the step it is inserted (that step counts) until
    every item it is directly related to in the cover relation has been
    inserted.
    """
    partners: dict[int, set[int]] = {}
    for a, b in p.cover_pairs:
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    width = 0
    inserted: set[int] = set()
    remaining = set(sigma)
    for c in sigma:
        inserted.add(c)
        remaining.discard(c)
        tracked = sum(1 for x in inserted if partners.get(x) and partners[x] & remaining)
        width = max(width, tracked)
    return width


def rank_bounds(c: int, structure, m: int) -> tuple[int, int]:
    """Tight (best, worst) rank range candidate ``c`` can occupy in any completion."""
    if structure is None:
        return 1, m
    if isinstance(structure, PartialOrder):
        return 1 + len(structure.ancestors(c)), m - len(structure.descendants(c))
    if isinstance(structure, PartitionedPreference):
        i = structure.bucket_of(c)
        if i is None:
            return 1, m
        before = sum(len(b) for b in structure.buckets[:i])
        after = sum(len(b) for b in structure.buckets[i + 1:])
        return before + 1, m - after
    if isinstance(structure, PartialChain):
        if c not in structure.chain:
            return 1, m
        k = structure.chain.index(c)
        return k + 1, m - (len(structure.chain) - k - 1)
    if isinstance(structure, TruncatedRanking):
        if c in structure.top:
            r = structure.top.index(c) + 1
            return r, r
        if c in structure.bottom:
            r = m - len(structure.bottom) + structure.bottom.index(c) + 1
            return r, r
        return len(structure.top) + 1, m - len(structure.bottom)
    raise TypeError(f"no rank bounds for {type(structure).__name__}")
