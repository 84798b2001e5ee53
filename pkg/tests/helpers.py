"""Shared test helpers: compact builders for profiles and sequences."""

from __future__ import annotations

import random

from elimgame import EliminationSequence, PreferenceProfile, Vote


def profile(*rankings: str) -> PreferenceProfile:
    """Profiles from letter strings: 'abcd' means a > b > c > d, a is id 0."""
    return PreferenceProfile.from_rankings(
        [tuple(ord(c) - 97 for c in r) for r in rankings]
    )


def seq(*turns: int) -> EliminationSequence:
    """Sequence from 1-based voter numbers."""
    return EliminationSequence(tuple(t - 1 for t in turns))


def seq_from(compact: str) -> EliminationSequence:
    return EliminationSequence(tuple(int(c) - 1 for c in compact))


def random_vote(rng: random.Random, m: int) -> Vote:
    ranking = list(range(m))
    rng.shuffle(ranking)
    return Vote(tuple(ranking))


def random_profile(rng: random.Random, n: int, m: int) -> PreferenceProfile:
    return PreferenceProfile(tuple(random_vote(rng, m) for _ in range(n)))


def random_sequence(rng: random.Random, n: int, m: int) -> EliminationSequence:
    return EliminationSequence(tuple(rng.randrange(n) for _ in range(m - 1)))


def random_instance(rng: random.Random, n_choices=(2, 3), m_choices=(3, 4, 5, 6)):
    n = rng.choice(n_choices)
    m = rng.choice(m_choices)
    return random_profile(rng, n, m), random_sequence(rng, n, m)
