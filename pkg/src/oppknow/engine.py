"""Encounter simulation under the two knowledge-sharing policies.

Knowledge is tracked per node as the set of source users whose tips the node
currently holds (always including itself). Because a user's tips are fully
described by that user's variable in the joint distribution, the cumulative
knowledge gain of a node is simply the subset entropy of its knowledge set
minus its own entropy, and both policies reduce to set updates:

* send-mine-only: an encounter adds each partner's id to the other's set;
* forward-mine-plus-others: both partners end up with the union of their sets.

Per-encounter communication overhead is the information shared between what a
node transmits and what its partner already holds, computed as
``H(A) + H(B) - H(A ∪ B)`` directly from subset entropies. For disjoint
groups this is exactly their mutual information; it stays well defined on
repeat encounters, where the transmitted sources partly overlap the
receiver's knowledge.

Rounds of a schedule are matchings: pairs within a round are vertex-disjoint
and are applied simultaneously against the pre-round state, so results do not
depend on pair order inside a round.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    BadVariableIndex,
    NotAnEdge,
    ParseError,
    SelfEncounter,
    ShapeMismatch,
)
from .measures import JointDistribution, nonnegative_bits
from .topology import Graph


class Policy(Enum):
    """Knowledge-sharing policy applied at every encounter."""

    SEND_MINE_ONLY = "smo"
    FORWARD_MINE_PLUS_OTHERS = "fmpo"


KnowledgeState = tuple[frozenset[int], ...]
Round = Sequence[tuple[int, int]]
Schedule = Sequence[Round]

METRICS_HEADER = "round,node,policy,kg_bits,kl_bits,oh_round_bits,oh_cum_bits,achieved"


@dataclass(frozen=True)
class MetricsRecord:
    """Per-node, per-round simulation metrics.

    ``participated`` records whether the node was in one of the round's
    pairs; it is bookkeeping for :func:`steps_to_limit` and is not part of
    the metrics CSV schema.
    """

    round_index: int
    node: int
    policy: Policy
    kg_bits: float
    kl_bits: float
    oh_round_bits: float
    oh_cum_bits: float
    achieved: bool
    participated: bool = False


def init_state(node_count: int) -> KnowledgeState:
    """Starting state: every node holds only its own knowledge."""
    if node_count < 1:
        raise ShapeMismatch("need at least one node")
    return tuple(frozenset([n]) for n in range(node_count))


def _group_overhead(
    dist: JointDistribution, sent: frozenset[int], held: frozenset[int]
) -> float:
    """Shared information between a transmitted group and a held group.

    ``H(sent) + H(held) - H(sent ∪ held)``; equals the mutual information
    when the groups are disjoint and remains valid when they overlap.
    """
    return nonnegative_bits(
        dist.subset_entropy(sent)
        + dist.subset_entropy(held)
        - dist.subset_entropy(sent | held)
    )


def encounter_overhead(
    dist: JointDistribution,
    state: KnowledgeState,
    i: int,
    j: int,
    policy: Policy,
) -> tuple[float, float]:
    """Redundant bits each side of an encounter would transmit, pre-exchange.

    Under send-mine-only node ``i`` transmits only its own tips, so its
    overhead is the information those tips share with everything ``j``
    already holds (and symmetrically for ``j``). Under
    forward-mine-plus-others both sides transmit their full knowledge sets
    and incur the same overhead.
    """
    if i == j:
        raise SelfEncounter(f"node {i} cannot encounter itself")
    know_i, know_j = state[i], state[j]
    if policy is Policy.SEND_MINE_ONLY:
        return (
            _group_overhead(dist, frozenset([i]), know_j),
            _group_overhead(dist, frozenset([j]), know_i),
        )
    shared = _group_overhead(dist, know_i, know_j)
    return (shared, shared)


def apply_encounter(
    dist: JointDistribution,
    state: KnowledgeState,
    i: int,
    j: int,
    policy: Policy,
    graph: Graph | None = None,
) -> tuple[KnowledgeState, dict[int, float], tuple[float, float]]:
    """Execute one encounter; returns (new state, gain deltas, overheads).

    Gain deltas map each participant to the increase of its cumulative
    knowledge gain; nodes outside the pair are unchanged. When ``graph`` is
    given the pair must be one of its edges.
    """
    if i == j:
        raise SelfEncounter(f"node {i} cannot encounter itself")
    if not (0 <= i < len(state) and 0 <= j < len(state)):
        raise BadVariableIndex(f"pair ({i}, {j}) outside [0, {len(state)})")
    if graph is not None and not graph.has_edge(i, j):
        raise NotAnEdge(f"({i}, {j}) is not an edge of the topology")

    overheads = encounter_overhead(dist, state, i, j, policy)
    if policy is Policy.SEND_MINE_ONLY:
        new_i = state[i] | {j}
        new_j = state[j] | {i}
    else:
        new_i = new_j = state[i] | state[j]

    deltas = {
        i: nonnegative_bits(
            dist.subset_entropy(new_i) - dist.subset_entropy(state[i])
        ),
        j: nonnegative_bits(
            dist.subset_entropy(new_j) - dist.subset_entropy(state[j])
        ),
    }
    new_state = tuple(
        new_i if n == i else new_j if n == j else know
        for n, know in enumerate(state)
    )
    return new_state, deltas, overheads


def focal_schedule(graph: Graph, focal: int) -> list[list[tuple[int, int]]]:
    """One encounter per round: the focal node meets each neighbor by ascending id."""
    return [[(focal, nbr)] for nbr in graph.neighbors(focal)]


def round_robin_schedule(
    graph: Graph, rounds: int, seed: int
) -> list[list[tuple[int, int]]]:
    """Random maximal matchings, one per round, deterministic in the seed.

    Each round greedily accepts edges from a seeded shuffle until no further
    edge is vertex-disjoint from the accepted ones.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    rng = np.random.default_rng(seed)
    edges = graph.edges
    schedule = []
    for _ in range(rounds):
        matching = []
        used: set[int] = set()
        for index in rng.permutation(len(edges)):
            i, j = edges[index]
            if i not in used and j not in used:
                matching.append((i, j))
                used.add(i)
                used.add(j)
        schedule.append(sorted(matching))
    return schedule


def run(
    dist: JointDistribution,
    graph: Graph,
    schedule: Schedule,
    policy: Policy,
    tol: float = 1e-9,
) -> list[MetricsRecord]:
    """Simulate a schedule, emitting one record per node per round.

    A node is `achieved` once its knowledge-gain limit minus its cumulative
    gain is within ``tol`` bits.
    """
    if dist.user_count != graph.node_count:
        raise ShapeMismatch(
            f"distribution has {dist.user_count} users but topology has "
            f"{graph.node_count} nodes"
        )
    node_count = graph.node_count
    limits = [dist.knowledge_limit(n) for n in range(node_count)]

    state = init_state(node_count)
    oh_cum = [0.0] * node_count
    records: list[MetricsRecord] = []

    for round_index, round_pairs in enumerate(schedule):
        seen: set[int] = set()
        for i, j in round_pairs:
            if i in seen or j in seen:
                raise ValueError(
                    f"round {round_index} pairs are not vertex-disjoint at ({i}, {j})"
                )
            seen.update((i, j))

        oh_round = [0.0] * node_count
        participated = [False] * node_count
        for i, j in round_pairs:
            # Pairs are vertex-disjoint, so sequential application equals
            # simultaneous application against the pre-round snapshot.
            state, _, (oh_i, oh_j) = apply_encounter(dist, state, i, j, policy, graph)
            oh_round[i] += oh_i
            oh_round[j] += oh_j
            participated[i] = participated[j] = True

        for n in range(node_count):
            kg = dist.knowledge_gain(n, state[n])
            oh_cum[n] += oh_round[n]
            records.append(
                MetricsRecord(
                    round_index=round_index,
                    node=n,
                    policy=policy,
                    kg_bits=kg,
                    kl_bits=limits[n],
                    oh_round_bits=oh_round[n],
                    oh_cum_bits=oh_cum[n],
                    achieved=(limits[n] - kg) <= tol,
                    participated=participated[n],
                )
            )
    return records


def steps_to_limit(
    records: Sequence[MetricsRecord], node: int, tol: float = 1e-9
) -> int | None:
    """Encounters a node needed before its gain reached its limit.

    Counts only rounds in which the node participated, up to and including
    the first round where the limit was met within ``tol``. Returns 0 when
    the limit is zero bits away from the start, and ``None`` when the node
    never reaches it.
    """
    own = sorted(
        (r for r in records if r.node == node), key=lambda r: r.round_index
    )
    if not own:
        raise BadVariableIndex(f"no records for node {node}")
    if own[0].kl_bits <= tol:
        return 0
    encounters = 0
    for record in own:
        if record.participated:
            encounters += 1
        if record.kl_bits - record.kg_bits <= tol:
            return encounters
    return None


# -- metrics files ----------------------------------------------------------
#
# Fixed 12-significant-digit decimal formatting keeps repeated runs of the
# same scenario byte-identical.


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def write_metrics_csv(records: Sequence[MetricsRecord], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(METRICS_HEADER + "\n")
        for r in records:
            fh.write(
                f"{r.round_index},{r.node},{r.policy.value},{_fmt(r.kg_bits)},"
                f"{_fmt(r.kl_bits)},{_fmt(r.oh_round_bits)},{_fmt(r.oh_cum_bits)},"
                f"{'true' if r.achieved else 'false'}\n"
            )


def read_metrics_csv(path: str | os.PathLike) -> list[MetricsRecord]:
    """Read back a metrics CSV; participation flags are not serialized."""
    with open(path, "r", encoding="ascii", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != METRICS_HEADER:
        raise ParseError(1, f"expected header {METRICS_HEADER!r}")
    records = []
    for line_number, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 8:
            raise ParseError(line_number, f"expected 8 fields, got {len(fields)}")
        try:
            records.append(
                MetricsRecord(
                    round_index=int(fields[0]),
                    node=int(fields[1]),
                    policy=Policy(fields[2]),
                    kg_bits=float(fields[3]),
                    kl_bits=float(fields[4]),
                    oh_round_bits=float(fields[5]),
                    oh_cum_bits=float(fields[6]),
                    achieved=fields[7] == "true",
                )
            )
        except ValueError:
            raise ParseError(line_number, f"malformed record {line!r}") from None
    return records
