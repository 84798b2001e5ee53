"""Profile generation: exhaustive enumeration, Impartial Culture, Mallows.

Randomness comes from a counter-based construction so that sample ``i`` is a
pure function of ``(master_seed, i)``: workers can draw disjoint sample
ranges in any order and always reproduce the single-threaded stream. The
word generator is the SplitMix64 finalizer used in counter mode:

    stream_key(i) = mix64(seed + (i+1) * GOLDEN)
    word(i, k)    = mix64(stream_key(i) + (k+1) * GOLDEN)

Mallows sampling uses repeated insertion: candidate ``j`` (1-based) inserts
at position ``i`` from the top with probability proportional to
``phi ** (j - i)``, which draws exactly ``P(v) ∝ phi ** kendall_tau(v, ref)``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial

import numpy as np

from .core import PreferenceProfile, Vote
from .errors import BudgetExceeded, LengthMismatch, ParseError, PhiOutOfRange

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MASK64 = (1 << 64) - 1

#: profiles an exhaustive enumeration may touch unless overridden; the
#: ELIMGAME_BUDGET environment variable or an explicit argument wins.
DEFAULT_BUDGET = 10**8


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("ELIMGAME_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"ELIMGAME_BUDGET must be an integer, got {env!r}")
    return DEFAULT_BUDGET


def _mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, elementwise on uint64 (wrapping arithmetic)."""
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def _stream_keys(master_seed: int, start: int, count: int) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.uint64)
    seed = np.uint64(master_seed & _MASK64)
    return _mix64(seed + (idx + np.uint64(1)) * _GOLDEN)


def _words_block(keys: np.ndarray, nwords: int) -> np.ndarray:
    """(len(keys), nwords) raw words; column k is word k of each stream."""
    ks = (np.arange(nwords, dtype=np.uint64) + np.uint64(1)) * _GOLDEN
    return _mix64(keys[:, None] + ks[None, :])


def _uniforms(words: np.ndarray) -> np.ndarray:
    """Map raw words to float64 uniforms in [0, 1) with 53 random bits."""
    return (words >> np.uint64(11)).astype(np.float64) * (2.0**-53)


def _bounded(words: np.ndarray, bound: int) -> np.ndarray:
    """Unbiased-enough integers in [0, bound): fixed-point multiply on the
    top 32 bits (bias < 2**-32, far below every tolerance used here)."""
    return ((words >> np.uint64(32)) * np.uint64(bound)) >> np.uint64(32)


@dataclass(frozen=True)
class RngStream:
    """Handle on one counter-based stream: ``(master_seed, stream_index)``."""

    master_seed: int
    stream_index: int = 0

    def split(self, index: int) -> "RngStream":
        return RngStream(self.master_seed, index)

    def word(self, k: int) -> int:
        key = _stream_keys(self.master_seed, self.stream_index, 1)
        return int(_words_block(key, k + 1)[0, k])


class CultureKind(Enum):
    IMPARTIAL = "ic"
    MALLOWS = "mallows"


@dataclass(frozen=True)
class CultureSpec:
    """A vote distribution: impartial culture or a Mallows model.

    ``phi`` is the Mallows dispersion in (0, 1]; 1 coincides with impartial
    culture. The reference ranking defaults to the identity; with
    ``random_reference`` a fresh uniform reference is drawn per profile
    (per sample, not per vote).
    """

    kind: CultureKind
    phi: float = 1.0
    reference: Vote | None = None
    random_reference: bool = False

    def __post_init__(self):
        if self.kind is CultureKind.MALLOWS and not 0.0 < self.phi <= 1.0:
            raise PhiOutOfRange(f"phi must lie in (0, 1], got {self.phi}")
        if self.reference is not None and self.random_reference:
            raise ValueError("fixed reference and random_reference are exclusive")

    @classmethod
    def impartial(cls) -> "CultureSpec":
        return cls(CultureKind.IMPARTIAL)

    @classmethod
    def mallows(cls, phi: float, reference: Vote | None = None,
                random_reference: bool = False) -> "CultureSpec":
        return cls(CultureKind.MALLOWS, phi, reference, random_reference)

    @classmethod
    def parse(cls, text: str, phi: float | None = None) -> "CultureSpec":
        """Parse command-line culture strings: ``ic`` or ``mallows:phi=0.6``.

        A bare ``mallows`` takes its dispersion from the ``phi`` argument.
        """
        text = text.strip()
        if text == "ic":
            return cls.impartial()
        if text == "mallows" or text.startswith("mallows:"):
            if ":" in text:
                _, _, tail = text.partition(":")
                key, _, value = tail.partition("=")
                if key != "phi" or not value:
                    raise ParseError(f"bad culture spec {text!r}")
                try:
                    phi = float(value)
                except ValueError:
                    raise ParseError(f"bad phi value {value!r} in {text!r}")
            if phi is None:
                raise ParseError("mallows culture needs phi (use mallows:phi=X or --phi)")
            return cls.mallows(phi)
        raise ParseError(f"unknown culture {text!r} (expected ic or mallows:phi=X)")

    def describe(self) -> str:
        return "ic" if self.kind is CultureKind.IMPARTIAL else "mallows"


def kendall_tau(v1: Vote, v2: Vote) -> int:
    """Number of candidate pairs the two votes order oppositely."""
    if v1.m != v2.m:
        raise LengthMismatch(f"votes rank {v1.m} and {v2.m} candidates")
    seq = [v2.positions[c] for c in v1.ranking]
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return inv


def mallows_log_weights(m: int, phi: float, reference: Vote) -> dict[tuple[int, ...], float]:
    """Exact Mallows pmf over all m! rankings (tiny m only; test oracle)."""
    z = 1.0
    for j in range(2, m + 1):
        z *= sum(phi**k for k in range(j))
    out = {}
    for perm in itertools.permutations(range(m)):
        out[perm] = phi ** kendall_tau(Vote(perm), reference) / z
    return out


def _fisher_yates(words: np.ndarray) -> np.ndarray:
    """Uniform permutations from raw words; one row per (R, m-1) word row."""
    rows_n, mm1 = words.shape
    m = mm1 + 1
    perm = np.tile(np.arange(m, dtype=np.int8), (rows_n, 1))
    rows = np.arange(rows_n)
    for j in range(m - 1, 0, -1):
        r = _bounded(words[:, m - 1 - j], j + 1).astype(np.int64)
        tmp = perm[rows, r]
        perm[rows, r] = perm[:, j]
        perm[:, j] = tmp
    return perm


def _mallows_identity(words: np.ndarray, phi: float) -> np.ndarray:
    """Repeated insertion against the identity reference.

    Returns (R, m) rankings. Candidate j-1 (0-based) inserts into the prefix
    order of candidates 0..j-2; positions counted from the top carry weights
    phi**(j-i) so the bottom slot has weight 1.
    """
    rows_n, mm1 = words.shape
    m = mm1 + 1
    order = np.zeros((rows_n, m), dtype=np.int8)
    cols = np.arange(m, dtype=np.int64)[None, :]
    for j in range(2, m + 1):
        weights = phi ** np.arange(j - 1, -1, -1, dtype=np.float64)
        cdf = np.cumsum(weights)
        u = _uniforms(words[:, j - 2]) * cdf[-1]
        p = np.searchsorted(cdf, u, side="right").astype(np.int64)[:, None]
        shifted = np.roll(order, 1, axis=1)
        order = np.where(cols < p, order, np.where(cols == p, np.int8(j - 1), shifted))
    return order


def sample_rankings_batch(
    n: int,
    m: int,
    spec: CultureSpec,
    master_seed: int,
    start_index: int,
    count: int,
) -> np.ndarray:
    """Rankings for profile samples ``start_index .. start_index+count-1``.

    Returns a ``(count, n, m)`` int8 array; ``[s, v]`` is voter v's ranking,
    best first. Pure function of its arguments, so any chunking of the index
    range yields identical rows.
    """
    if m < 1 or n < 1:
        raise ValueError("need n >= 1 voters and m >= 1 candidates")
    if count == 0:
        return np.zeros((0, n, m), dtype=np.int8)
    keys = _stream_keys(master_seed, start_index, count)
    # fixed word layout per sample: (m-1) words per voter, then (m-1) words
    # for an optional random reference; unused words cost nothing but keeping
    # the layout culture-independent keeps sample i stable across cultures.
    words = _words_block(keys, (n + 1) * (m - 1)) if m > 1 else None
    if m == 1:
        return np.zeros((count, n, 1), dtype=np.int8)
    vote_words = words[:, : n * (m - 1)].reshape(count * n, m - 1)
    if spec.kind is CultureKind.IMPARTIAL or spec.phi == 1.0:
        flat = _fisher_yates(vote_words)
    else:
        flat = _mallows_identity(vote_words, spec.phi)
    rankings = flat.reshape(count, n, m)
    if spec.kind is CultureKind.MALLOWS:
        if spec.random_reference:
            refs = _fisher_yates(words[:, n * (m - 1):])
            rankings = np.take_along_axis(
                np.broadcast_to(refs[:, None, :], rankings.shape),
                rankings.astype(np.int64),
                axis=2,
            ).astype(np.int8)
        elif spec.reference is not None:
            ref = np.asarray(spec.reference.ranking, dtype=np.int8)
            if ref.shape[0] != m:
                raise LengthMismatch(f"reference ranks {ref.shape[0]} of {m} candidates")
            rankings = ref[rankings]
    return rankings


def _profile_from_rows(rows: np.ndarray) -> PreferenceProfile:
    return PreferenceProfile.from_rankings([tuple(int(c) for c in r) for r in rows])


def sample_impartial(n: int, m: int, rng: RngStream) -> PreferenceProfile:
    """One uniform profile from the stream's index."""
    rows = sample_rankings_batch(
        n, m, CultureSpec.impartial(), rng.master_seed, rng.stream_index, 1
    )[0]
    return _profile_from_rows(rows)


def sample_mallows(n: int, m: int, spec: CultureSpec, rng: RngStream) -> PreferenceProfile:
    """One Mallows profile from the stream's index."""
    if spec.kind is not CultureKind.MALLOWS:
        raise ValueError("spec must be a Mallows culture")
    rows = sample_rankings_batch(n, m, spec, rng.master_seed, rng.stream_index, 1)[0]
    return _profile_from_rows(rows)


def sample_profile(n: int, m: int, spec: CultureSpec, rng: RngStream) -> PreferenceProfile:
    rows = sample_rankings_batch(n, m, spec, rng.master_seed, rng.stream_index, 1)[0]
    return _profile_from_rows(rows)


@lru_cache(maxsize=8)
def permutation_table(m: int) -> tuple[np.ndarray, np.ndarray]:
    """All m! rankings in lexicographic order plus their position tables.

    ``perms[r, slot]`` is the candidate at ``slot``; ``pos[r, c]`` the slot
    of candidate ``c``. Rank 0 is the identity.
    """
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int8)
    pos = np.argsort(perms, axis=1).astype(np.int8)
    return perms, pos


def enumeration_size(n: int, m: int, fix_first: bool = True) -> int:
    free = n - 1 if fix_first else n
    return factorial(m) ** free


def profile_at_index(n: int, m: int, index: int, fix_first: bool = True) -> PreferenceProfile:
    """Profile at a given rank of the enumeration order.

    The order is lexicographic over the free voters' rankings, first free
    voter most significant. With ``fix_first`` voter 1 is pinned to the
    identity ranking, which is sound for worst-case and distributional work
    because every quantity of interest is invariant under candidate
    relabelling.
    """
    total = enumeration_size(n, m, fix_first)
    if not 0 <= index < total:
        raise ValueError(f"index {index} outside 0..{total - 1}")
    perms = list(itertools.permutations(range(m)))
    fact = len(perms)
    free = n - 1 if fix_first else n
    digits = []
    rem = index
    for k in range(free - 1, -1, -1):
        d, rem = divmod(rem, fact**k)
        digits.append(d)
    rows = ([tuple(range(m))] if fix_first else []) + [perms[d] for d in digits]
    return PreferenceProfile.from_rankings(rows)


def enumerate_profiles(
    n: int,
    m: int,
    fix_first: bool = True,
    budget: int | None = None,
    start: int = 0,
    count: int | None = None,
):
    """Yield profiles in enumeration order; see :func:`profile_at_index`.

    ``start``/``count`` select a contiguous slice so callers can split the
    space. The budget guards the full space size, not the slice. This is the
    plain-python path for small spaces and oracles; large enumerations go
    through the vectorised sweep engine.
    """
    total = enumeration_size(n, m, fix_first)
    limit = resolve_budget(budget)
    if total > limit:
        raise BudgetExceeded(
            f"enumeration would touch {total} profiles, over the budget of {limit}; "
            "raise ELIMGAME_BUDGET or pass a larger budget to proceed"
        )
    if count is None:
        count = total - start
    perms = list(itertools.permutations(range(m)))
    free = n - 1 if fix_first else n
    head = [tuple(range(m))] if fix_first else []
    it = itertools.product(perms, repeat=free)
    for rows in itertools.islice(it, start, start + count):
        yield PreferenceProfile.from_rankings(head + list(rows))
