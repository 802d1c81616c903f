"""Activity traces: ingestion, per-user profiles, and synthetic generation.

A :class:`SampleTable` holds one category assignment per user per time unit;
it is the raw material from which
:meth:`oppknow.measures.JointDistribution.from_samples` estimates the joint
PMF. Real traces arrive as activity CSVs (``timestamp,user,category``
triples); desk-scale experiments use :func:`synthesize_traces`, a
one-parameter correlation family spanning fully independent users (rho = 0)
to identical users (rho = 1).

All randomness flows through ``numpy.random.default_rng`` (PCG64), so equal
seeds give byte-identical tables on every platform.
"""

from __future__ import annotations

import os
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadVariableIndex,
    DuplicateObservation,
    EmptyInput,
    MalformedSamples,
    OutOfRange,
    ParseError,
)

ACTIVITY_HEADER = "timestamp,user,category"

# Fixed internal seed for unique-tip injection, so the operation is a pure
# function of the input table.
_UNIQUE_TIP_SEED = 0x517E

MISSING_POLICIES = ("drop-row", "idle-category")


@dataclass(frozen=True)
class SampleTable:
    """Time-indexed category assignments: one length-M row per time unit."""

    user_count: int
    category_count: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.user_count < 1 or self.category_count < 1:
            raise MalformedSamples("user_count and category_count must be >= 1")

    @property
    def row_count(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SynthConfig:
    """Parameters for synthetic trace generation."""

    user_count: int
    category_count: int
    row_count: int
    correlation: float
    seed: int

    def __post_init__(self):
        if self.user_count < 2:
            raise ValueError("user_count must be >= 2")
        if self.category_count < 2:
            raise ValueError("category_count must be >= 2")
        if self.row_count < 1:
            raise ValueError("row_count must be >= 1")
        if not 0.0 <= self.correlation <= 1.0:
            raise ValueError("correlation must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def parse_activity_csv(
    source: Iterable[str] | str,
    user_count: int,
    category_count: int,
    missing_policy: str = "drop-row",
) -> SampleTable:
    """Parse ``timestamp,user,category`` observations into a sample table.

    Observations are grouped by timestamp, one output row per timestamp in
    ascending order. Timestamps where some user was not observed are handled
    per ``missing_policy``:

    * ``drop-row`` discards incomplete timestamps; categories keep their ids
      and the table alphabet stays ``category_count``.
    * ``idle-category`` keeps every timestamp, assigns absent users the
      reserved category 0 and shifts observed category ids up by one, so the
      table alphabet becomes ``category_count + 1``.
    """
    if missing_policy not in MISSING_POLICIES:
        raise ValueError(f"missing_policy must be one of {MISSING_POLICIES}")
    lines = source.splitlines() if isinstance(source, str) else source

    by_timestamp: dict[int, dict[int, int]] = {}
    header_seen = False
    line_number = 0
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line_number == 1:
            if line != ACTIVITY_HEADER:
                raise ParseError(1, f"expected header {ACTIVITY_HEADER!r}, got {line!r}")
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise ParseError(line_number, f"expected 3 comma-separated fields, got {line!r}")
        try:
            timestamp, user, category = (int(f) for f in fields)
        except ValueError:
            raise ParseError(line_number, f"non-integer field in {line!r}") from None
        if timestamp < 0 or user < 0 or category < 0:
            raise ParseError(line_number, f"negative value in {line!r}")
        if user >= user_count:
            raise OutOfRange(line_number, f"user {user} >= declared user count {user_count}")
        if category >= category_count:
            raise OutOfRange(
                line_number, f"category {category} >= declared category count {category_count}"
            )
        seen = by_timestamp.setdefault(timestamp, {})
        if user in seen:
            raise DuplicateObservation(
                f"line {line_number}: duplicate observation for timestamp {timestamp}, user {user}"
            )
        seen[user] = category
    if not header_seen:
        raise ParseError(1, "empty input, expected header line")

    rows: list[tuple[int, ...]] = []
    if missing_policy == "drop-row":
        for timestamp in sorted(by_timestamp):
            seen = by_timestamp[timestamp]
            if len(seen) == user_count:
                rows.append(tuple(seen[u] for u in range(user_count)))
        alphabet = category_count
    else:
        for timestamp in sorted(by_timestamp):
            seen = by_timestamp[timestamp]
            rows.append(
                tuple(seen[u] + 1 if u in seen else 0 for u in range(user_count))
            )
        alphabet = category_count + 1

    return SampleTable(user_count, alphabet, tuple(rows))


def profile_vector(table: SampleTable, user: int) -> np.ndarray:
    """Empirical category distribution of one user across all rows."""
    if not 0 <= user < table.user_count:
        raise BadVariableIndex(f"user {user} outside [0, {table.user_count})")
    if not table.rows:
        raise EmptyInput("cannot profile an empty table")
    counts = np.zeros(table.category_count, dtype=np.int64)
    for row in table.rows:
        counts[row[user]] += 1
    return counts / len(table.rows)


def synthesize_traces(config: SynthConfig) -> SampleTable:
    """Generate a correlated synthetic trace, deterministic in the seed.

    Each row draws a shared latent category uniformly; each user then copies
    the latent value with probability ``correlation`` and otherwise samples
    from a private profile. Private profiles are drawn once per user as
    normalized independent unit-exponential weights (uniform over the
    category simplex).
    """
    m, v, t = config.user_count, config.category_count, config.row_count
    rng = np.random.default_rng(config.seed)

    profiles = rng.exponential(1.0, size=(m, v))
    profiles /= profiles.sum(axis=1, keepdims=True)

    latent = rng.integers(0, v, size=t)
    copy_latent = rng.random(size=(t, m)) < config.correlation
    private = np.empty((t, m), dtype=np.int64)
    for u in range(m):
        private[:, u] = rng.choice(v, size=t, p=profiles[u])

    categories = np.where(copy_latent, latent[:, None], private)
    rows = tuple(tuple(row) for row in categories.tolist())
    return SampleTable(m, v, rows)


def inject_unique_tips(table: SampleTable) -> SampleTable:
    """Guarantee every user holds knowledge no one else has.

    Extends the alphabet by one reserved category per user and appends, per
    user, a copy of a fixed baseline row with that user's entry replaced by
    its reserved category. The baseline row then resolves two ways given all
    other users, so ``H(X_i | rest) > 0`` for every user afterwards. The
    result is a pure function of the input table.
    """
    if not table.rows:
        raise EmptyInput("cannot inject unique tips into an empty table")
    m, v = table.user_count, table.category_count
    rng = np.random.default_rng(_UNIQUE_TIP_SEED)
    baseline = table.rows[int(rng.integers(len(table.rows)))]

    appended = []
    for user in range(m):
        row = list(baseline)
        row[user] = v + user
        appended.append(tuple(row))
    return SampleTable(m, v + m, table.rows + tuple(appended))


# -- sample table files ----------------------------------------------------------
#
# Format: one header line "M,v,T", then T lines of M comma-separated
# category ids, LF line endings.


def write_sample_table(table: SampleTable, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{table.user_count},{table.category_count},{table.row_count}\n")
        for row in table.rows:
            fh.write(",".join(str(c) for c in row) + "\n")


def read_sample_table(path: str | os.PathLike) -> SampleTable:
    with open(path, "r", encoding="ascii", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(1, "empty sample table file")
    header = lines[0].split(",")
    if len(header) != 3:
        raise ParseError(1, f"expected header 'M,v,T', got {lines[0]!r}")
    try:
        m, v, t = (int(f) for f in header)
    except ValueError:
        raise ParseError(1, f"non-integer header field in {lines[0]!r}") from None
    if len(lines) - 1 != t:
        raise ParseError(
            len(lines), f"header declares {t} rows but file has {len(lines) - 1}"
        )
    rows = []
    for line_number, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != m:
            raise ParseError(line_number, f"expected {m} fields, got {len(fields)}")
        try:
            row = tuple(int(f) for f in fields)
        except ValueError:
            raise ParseError(line_number, f"non-integer field in {line!r}") from None
        for c in row:
            if c < 0 or c >= v:
                raise OutOfRange(line_number, f"category {c} outside [0, {v})")
        rows.append(row)
    return SampleTable(m, v, tuple(rows))
