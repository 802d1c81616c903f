"""Sparse multivariate discrete information measures, in bits.

The central object is :class:`JointDistribution`: an empirical joint PMF over
``user_count`` categorical variables, stored sparsely as a map from observed
outcome tuples to positive integer counts. All queries (subset entropy,
conditional entropy, mutual information, knowledge gain/limit) reduce to
entropies of outcome projections, merged exactly in integer arithmetic before
any floating-point work.

Conventions:

* logarithms are base 2 throughout, so every result is in bits;
* ``0 * log2(0) = 0``, enforced structurally because zero-probability
  projections are never materialized;
* results that are mathematically non-negative but come out slightly negative
  through floating-point cancellation are clamped to zero when the magnitude
  is below ``1e-12``; larger negatives raise
  :class:`~oppknow.errors.InternalConsistencyError`.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    BadVariableIndex,
    DuplicateVariable,
    EmptyInput,
    EmptySet,
    InternalConsistencyError,
    MalformedSamples,
    OverlappingSets,
    SelfNotInKnowledgeSet,
)

if TYPE_CHECKING:
    from .traces import SampleTable

#: Negative results larger than this magnitude are treated as real bugs.
ROUND_OFF_TOLERANCE = 1e-12


def nonnegative_bits(value: float) -> float:
    """Clamp floating-point cancellation noise in a non-negative quantity.

    Values in ``(-1e-12, 0)`` become ``0.0``; anything more negative raises
    :class:`InternalConsistencyError`.
    """
    if value >= 0.0:
        return value
    if value > -ROUND_OFF_TOLERANCE:
        return 0.0
    raise InternalConsistencyError(
        f"quantity that must be non-negative evaluated to {value!r}"
    )


class JointDistribution:
    """Empirical joint PMF over ``user_count`` variables with ``category_count`` outcomes each.

    Atoms map full outcome tuples (length ``user_count``, entries in
    ``[0, category_count)``) to positive integer weights; the probability of
    an atom is ``weight / total_weight``. Instances are immutable after
    construction and every query is pure, so they are safe to share across
    threads. Entropy queries are memoized per variable subset; the memo is
    semantically invisible.
    """

    def __init__(
        self,
        user_count: int,
        category_count: int,
        atoms: Mapping[tuple[int, ...], int],
    ):
        if user_count < 1:
            raise MalformedSamples("user_count must be >= 1")
        if category_count < 1:
            raise MalformedSamples("category_count must be >= 1")
        if not atoms:
            raise EmptyInput("a distribution needs at least one atom")

        self.user_count = int(user_count)
        self.category_count = int(category_count)
        clean: dict[tuple[int, ...], int] = {}
        for outcome, weight in atoms.items():
            outcome = tuple(int(c) for c in outcome)
            if len(outcome) != self.user_count:
                raise MalformedSamples(
                    f"outcome {outcome!r} does not have length {self.user_count}"
                )
            if any(c < 0 or c >= self.category_count for c in outcome):
                raise MalformedSamples(f"outcome {outcome!r} has an out-of-range category")
            w = int(weight)
            if w <= 0:
                raise MalformedSamples(f"atom weight must be positive, got {weight!r}")
            clean[outcome] = clean.get(outcome, 0) + w

        # Canonical (sorted) atom order keeps query results independent of
        # the insertion order of equal tables.
        self.atoms: dict[tuple[int, ...], int] = dict(sorted(clean.items()))
        self.total_weight = sum(self.atoms.values())

        self._outcomes = np.array(list(self.atoms.keys()), dtype=np.int64)
        self._weights = np.array(list(self.atoms.values()), dtype=np.int64)
        self._entropy_memo: dict[tuple[int, ...], float] = {}

    @classmethod
    def from_samples(cls, table: "SampleTable") -> "JointDistribution":
        """Estimate the joint PMF of a sample table by row multiplicity.

        Each distinct row becomes one atom weighted by its occurrence count;
        ``total_weight`` equals the number of rows.
        """
        if not table.rows:
            raise EmptyInput("sample table has no rows")
        m = table.user_count
        for row in table.rows:
            if len(row) != m:
                raise MalformedSamples(
                    f"row {row!r} does not have length {m}"
                )
        return cls(m, table.category_count, Counter(table.rows))

    # -- subset handling -------------------------------------------------------

    def _canonical_subset(self, members: Iterable[int]) -> tuple[int, ...]:
        ids = sorted({int(i) for i in members})
        for i in ids:
            if i < 0 or i >= self.user_count:
                raise BadVariableIndex(
                    f"variable {i} outside [0, {self.user_count})"
                )
        return tuple(ids)

    def all_variables(self) -> tuple[int, ...]:
        """The full variable set ``(0, ..., user_count - 1)``."""
        return tuple(range(self.user_count))

    # -- entropy queries --------------------------------------------------------

    def subset_entropy(self, members: Iterable[int]) -> float:
        """Joint entropy, in bits, of the variables in ``members``.

        Atoms are projected onto the requested coordinates, projections with
        equal value are merged by summing their integer weights, and the
        entropy is ``-sum(p * log2(p))`` over the merged projections. The
        entropy of the empty set is 0.
        """
        key = self._canonical_subset(members)
        memo = self._entropy_memo
        if key in memo:
            return memo[key]
        value = 0.0 if not key else nonnegative_bits(self._projection_entropy(key))
        memo[key] = value
        return value

    def _projection_entropy(self, key: tuple[int, ...]) -> float:
        # Pack the projected coordinates of every atom into a single integer
        # key (mixed radix), re-densifying the alphabet whenever the next
        # column would overflow 2^62, then merge equal keys exactly in
        # integer weights.
        v = self.category_count
        limit = 1 << 62
        packed = self._outcomes[:, key[0]].copy()
        capacity = v
        for column in key[1:]:
            if capacity > limit // v:
                uniques, packed = np.unique(packed, return_inverse=True)
                capacity = len(uniques)
            packed = packed * v + self._outcomes[:, column]
            capacity *= v
        _, inverse = np.unique(packed, return_inverse=True)
        merged = np.bincount(inverse, weights=self._weights)
        merged = merged[merged > 0]
        total = float(self.total_weight)
        return float(np.log2(total) - np.dot(merged, np.log2(merged)) / total)

    def conditional_entropy(self, a: Iterable[int], b: Iterable[int]) -> float:
        """``H(A | B) = H(A ∪ B) - H(B)`` in bits, for disjoint groups."""
        a_ids = self._canonical_subset(a)
        b_ids = self._canonical_subset(b)
        if set(a_ids) & set(b_ids):
            raise OverlappingSets(f"groups {a_ids} and {b_ids} overlap")
        joint = self.subset_entropy(a_ids + b_ids)
        return nonnegative_bits(joint - self.subset_entropy(b_ids))

    def mutual_information(self, a: Iterable[int], b: Iterable[int]) -> float:
        """``I(A; B) = H(A) + H(B) - H(A ∪ B)`` in bits, for disjoint nonempty groups."""
        a_ids = self._canonical_subset(a)
        b_ids = self._canonical_subset(b)
        if not a_ids or not b_ids:
            raise EmptySet("mutual information needs two nonempty groups")
        if set(a_ids) & set(b_ids):
            raise OverlappingSets(f"groups {a_ids} and {b_ids} overlap")
        value = (
            self.subset_entropy(a_ids)
            + self.subset_entropy(b_ids)
            - self.subset_entropy(a_ids + b_ids)
        )
        return nonnegative_bits(value)

    # -- knowledge measures -------------------------------------------------------

    def knowledge_limit(self, i: int) -> float:
        """Maximum knowledge, in bits, available to user ``i`` from everyone else.

        Joint entropy of all variables minus the entropy user ``i`` already
        holds on its own.
        """
        single = self._canonical_subset([i])
        return nonnegative_bits(
            self.subset_entropy(self.all_variables()) - self.subset_entropy(single)
        )

    def knowledge_gain(self, i: int, holding: Iterable[int]) -> float:
        """Knowledge, in bits, user ``i`` has gained by holding the sources in ``holding``.

        ``holding`` must contain ``i`` itself. The gain is
        ``H(holding) - H({i})``: zero when ``holding == {i}`` and equal to
        :meth:`knowledge_limit` when ``holding`` covers every user.
        """
        held = self._canonical_subset(holding)
        i = int(i)
        if i not in held:
            raise SelfNotInKnowledgeSet(f"user {i} missing from its own knowledge set {held}")
        return nonnegative_bits(self.subset_entropy(held) - self.subset_entropy([i]))

    def chain_decomposition(self, order: Sequence[int]) -> list[float]:
        """Conditional-entropy terms of the chain rule along ``order``.

        Term ``t`` (for ``t >= 1``) is ``H(order[t] | order[0..t-1])``. The
        terms sum to ``H(order) - H(order[0])``.
        """
        ids = [int(i) for i in order]
        if len(ids) < 2:
            raise ValueError("chain decomposition needs at least two variables")
        if len(set(ids)) != len(ids):
            raise DuplicateVariable(f"order {ids} repeats a variable")
        self._canonical_subset(ids)
        return [
            self.conditional_entropy([ids[t]], ids[:t]) for t in range(1, len(ids))
        ]

    def __repr__(self) -> str:
        return (
            f"JointDistribution(users={self.user_count}, categories={self.category_count}, "
            f"atoms={len(self.atoms)}, total_weight={self.total_weight})"
        )
