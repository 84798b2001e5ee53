"""Votes, preference profiles, elimination sequences and Borda scoring.

Candidates and voters are 0-based integers everywhere inside the package.
1-based numbering appears only at the text boundary: profile files,
sequence strings like ``"1,2,3,1"``, and JSON reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CandidateUnknown,
    InvalidVoter,
    ParseError,
    SequenceLengthMismatch,
)

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def default_labels(m: int) -> tuple[str, ...]:
    """Candidate names used when a profile has no explicit labels."""
    if m <= len(_ALPHABET):
        return tuple(_ALPHABET[:m])
    return tuple(f"c{i + 1}" for i in range(m))


@dataclass(frozen=True)
class Vote:
    """A strict linear order over candidates ``0..m-1``, best first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(
                f"ranking must be a permutation of 0..{len(self.ranking) - 1}: "
                f"{self.ranking!r}"
            )

    @property
    def m(self) -> int:
        return len(self.ranking)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """``positions[c]`` is the 0-based slot of candidate ``c`` (0 = best)."""
        pos = [0] * self.m
        for slot, c in enumerate(self.ranking):
            pos[c] = slot
        return tuple(pos)

    def rank(self, c: int) -> int:
        """1-based rank of ``c``: 1 for the favourite, m for the least liked."""
        if not 0 <= c < self.m:
            raise CandidateUnknown(f"candidate {c} not in a vote over {self.m} candidates")
        return self.positions[c] + 1

    def prefers(self, c: int, d: int) -> bool:
        return self.rank(c) < self.rank(d)

    def worst_among(self, alive) -> int:
        """Least preferred candidate in the non-empty collection ``alive``."""
        return max(alive, key=self.positions.__getitem__)


@dataclass(frozen=True)
class PreferenceProfile:
    """One vote per voter over a common candidate set.

    ``labels`` keeps the display names from a parsed file; profiles built in
    code usually leave it ``None`` and fall back to ``a, b, c, ...``.
    """

    votes: tuple[Vote, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.votes:
            raise ValueError("a profile needs at least one voter")
        m = self.votes[0].m
        if any(v.m != m for v in self.votes):
            raise ValueError("all votes must rank the same candidate set")
        if self.labels is not None:
            if len(self.labels) != m or len(set(self.labels)) != m:
                raise ValueError("labels must name every candidate exactly once")

    @classmethod
    def from_rankings(cls, rankings, labels=None) -> "PreferenceProfile":
        votes = tuple(Vote(tuple(r)) for r in rankings)
        return cls(votes, None if labels is None else tuple(labels))

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def m(self) -> int:
        return self.votes[0].m

    def label(self, c: int) -> str:
        if not 0 <= c < self.m:
            raise CandidateUnknown(f"candidate {c} not in profile with m={self.m}")
        if self.labels is not None:
            return self.labels[c]
        return default_labels(self.m)[c]

    def rank(self, c: int, voter: int) -> int:
        if not 0 <= voter < self.n:
            raise InvalidVoter(f"voter {voter + 1} outside 1..{self.n}")
        return self.votes[voter].rank(c)

    def borda_score(self, c: int) -> int:
        """Sum over voters of ``m - rank(c)``."""
        if not 0 <= c < self.m:
            raise CandidateUnknown(f"candidate {c} not in profile with m={self.m}")
        m = self.m
        return sum(m - 1 - v.positions[c] for v in self.votes)

    def borda_scores(self) -> tuple[int, ...]:
        m = self.m
        scores = [0] * m
        for v in self.votes:
            for c in range(m):
                scores[c] += m - 1 - v.positions[c]
        return tuple(scores)

    def relabel(self, perm) -> "PreferenceProfile":
        """Rename candidate ``c`` to ``perm[c]`` in every vote. Labels drop."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.m)):
            raise ValueError("perm must be a candidate permutation")
        return PreferenceProfile.from_rankings(
            tuple(tuple(perm[c] for c in v.ranking) for v in self.votes)
        )

    def position_matrix(self) -> np.ndarray:
        """(n, m) array of 0-based slots, one row per voter."""
        return np.array([v.positions for v in self.votes], dtype=np.int8)


@dataclass(frozen=True)
class OccurrenceTable:
    """Per-voter turn counts of an elimination sequence."""

    counts: tuple[int, ...]

    @property
    def o_max(self) -> int:
        return max(self.counts) if self.counts else 0

    def argmax(self) -> int:
        """Lowest-index voter with the most turns."""
        return self.counts.index(self.o_max)


@dataclass(frozen=True)
class EliminationSequence:
    """Order in which voters take elimination turns; 0-based voter ids."""

    turns: tuple[int, ...]

    def __post_init__(self):
        if any(t < 0 for t in self.turns):
            raise InvalidVoter("voter indices must be non-negative")

    def __len__(self) -> int:
        return len(self.turns)

    def validate(self, n: int, m: int | None = None) -> None:
        """Check entries fit ``n`` voters and, when given, length ``m - 1``."""
        if m is not None and len(self.turns) != m - 1:
            raise SequenceLengthMismatch(
                f"sequence has {len(self.turns)} turns but m-1={m - 1} are needed"
            )
        for t in self.turns:
            if t >= n:
                raise InvalidVoter(f"voter {t + 1} outside 1..{n}")

    def occurrences(self, n: int) -> OccurrenceTable:
        self.validate(n)
        counts = [0] * n
        for t in self.turns:
            counts[t] += 1
        return OccurrenceTable(tuple(counts))

    def is_palindromic(self) -> bool:
        return self.turns == self.turns[::-1]

    def reverse(self) -> "EliminationSequence":
        return EliminationSequence(self.turns[::-1])

    @classmethod
    def parse(cls, text: str) -> "EliminationSequence":
        """Parse comma-separated 1-based voter indices, e.g. ``"1,2,3,1"``."""
        parts = [p.strip() for p in text.split(",")]
        turns = []
        for p in parts:
            if not p.isdigit() or int(p) < 1:
                raise ParseError(f"bad voter index {p!r} in sequence {text!r}")
            turns.append(int(p) - 1)
        if not turns:
            raise ParseError("empty elimination sequence")
        return cls(tuple(turns))

    def to_text(self) -> str:
        return ",".join(str(t + 1) for t in self.turns)

    def compact(self) -> str:
        """Digit string like ``1112221`` when every index fits one digit."""
        if all(t < 9 for t in self.turns):
            return "".join(str(t + 1) for t in self.turns)
        return self.to_text()


def parse_profile(text: str) -> PreferenceProfile:
    """Parse the profile text format.

    One voter per line, candidate labels separated by whitespace, most
    preferred first; ``#`` starts a comment; blank lines are skipped.
    Candidate ids follow the label order of the first voter line.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not rows:
            for tok in tokens:
                if tok in index:
                    raise ParseError(
                        f"line {lineno}: candidate {tok!r} listed twice", line=lineno
                    )
                index[tok] = len(labels)
                labels.append(tok)
        row = []
        seen = set()
        for tok in tokens:
            if tok not in index:
                raise ParseError(
                    f"line {lineno}: unknown candidate {tok!r}", line=lineno
                )
            if tok in seen:
                raise ParseError(
                    f"line {lineno}: candidate {tok!r} listed twice", line=lineno
                )
            seen.add(tok)
            row.append(index[tok])
        if len(row) != len(labels):
            raise ParseError(
                f"line {lineno}: expected {len(labels)} candidates, got {len(row)}",
                line=lineno,
            )
        rows.append(row)
    if not rows:
        raise ParseError("no voter lines found")
    return PreferenceProfile.from_rankings(rows, labels=labels)


def format_profile(profile: PreferenceProfile) -> str:
    """Inverse of :func:`parse_profile` up to comments and spacing."""
    lines = [
        " ".join(profile.label(c) for c in v.ranking) for v in profile.votes
    ]
    return "\n".join(lines) + "\n"
