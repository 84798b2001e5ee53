"""Constructions of profiles attaining the worst-case welfare bounds.

Both generators follow the same skeleton. Pick the voter x with the most
turns (O_max of them). Give every other voter i a private block of o_i
throwaway candidates at the bottom of her ranking, just below the designated
strategic winner b; sincere play then makes each voter spend her turns
eliminating exactly her own block, and the placement of b and the top
candidates does the rest. The throwaway blocks are pairwise disjoint, which
is possible because turn counts sum to m - 1.

For the anarchy bound the profile makes a near-unanimous favourite a lose
to b, whose score is pinned at m - 1 + O_max over m - 1 normalised; the
bound is attainable for every sequence. For the sincerity bound, b must
survive sincere play but win strategic play, which needs a helper voter y
and a shared candidate e that x eliminates under sincere order and y under
reversed order; whether turns can be ordered that way depends on the
sequence, and sequences admitting no such (y, r, k) structure raise
StructureUnsatisfiable. Palindromic sequences never admit one: the two
orderings required are mirror images, so they cannot both hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .core import EliminationSequence, PreferenceProfile
from .errors import StructureUnsatisfiable, Unsatisfiable
from .play import backward_induction, spne_outcome
from .welfare import poa_formula, ratio_ab, ratio_cb, sr_upper_bound


class ExtremalMode(Enum):
    POA = "poa"
    SR = "sr"

    @classmethod
    def parse(cls, text: str) -> "ExtremalMode":
        return cls(text.lower())


@dataclass(frozen=True)
class ExtremalSpec:
    """Structure behind a generated worst-case profile.

    Candidate ids: ``b`` wins strategic play in both modes. POA mode also
    names ``a``, the candidate everyone but x loves; SR mode names the
    sincere winner ``c``, the shared throwaway ``e`` (x's r-th worst, y's
    k-th worst) and the helper voter ``y``.
    """

    mode: ExtremalMode
    n: int
    m: int
    sequence: EliminationSequence
    x: int
    b: int
    a: int | None = None
    c: int | None = None
    e: int | None = None
    y: int | None = None
    r: int | None = None
    k: int | None = None


def _common_checks(seq: EliminationSequence, n: int, m: int):
    if n < 2:
        raise Unsatisfiable("worst-case constructions need at least two voters")
    if m < 2:
        raise Unsatisfiable("worst-case constructions need at least two candidates")
    seq.validate(n, m)
    occ = seq.occurrences(n)
    return occ.argmax(), list(occ.counts)


def _fill_rows(slots: list[dict[int, int]], below: list[list[int]],
               counts: list[int], m: int, reserved: int) -> PreferenceProfile:
    """Complete partially pinned rankings into a full profile.

    ``slots[i]`` maps slot -> candidate for voter i's pinned cells;
    ``below[i]`` lists her still-empty throwaway slots. Free candidates
    (ids >= reserved) go one each into the below slots, voters in
    descending-turn-count order, then whatever remains pads the rows top
    down in id order.
    """
    n = len(slots)
    free = list(range(reserved, m))
    order = sorted(range(n), key=lambda i: (-counts[i], i))
    for i in order:
        for slot in below[i]:
            if not free:
                raise Unsatisfiable("ran out of throwaway candidates")
            slots[i][slot] = free.pop(0)
    if free:
        raise Unsatisfiable("unplaced throwaway candidates remain")
    rows = []
    for i in range(n):
        used = set(slots[i].values())
        rest = [c for c in range(m) if c not in used]
        row = [slots[i].get(s) for s in range(m)]
        it = iter(rest)
        row = [c if c is not None else next(it) for c in row]
        rows.append(row)
    return PreferenceProfile.from_rankings(rows)


def gen_poa_tight(
    seq: EliminationSequence, n: int, m: int
) -> tuple[PreferenceProfile, ExtremalSpec]:
    """Profile whose AB ratio equals the anarchy bound for this sequence.

    Candidate 0 is the Borda favourite a (top for everyone but x), candidate
    1 the strategic and sincere winner b. Both behaviours elect b: every
    voter sincerely burns her own throwaway block, and x, acting last among
    live options, removes a just before the end.
    """
    x, counts = _common_checks(seq, n, m)
    o_max = counts[x]
    a, b = 0, 1
    slots: list[dict[int, int]] = [dict() for _ in range(n)]
    below: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        if i == x:
            if m - o_max - 1 < 0:
                raise Unsatisfiable("too many turns for one voter")
            slots[i][m - o_max - 1] = b
            slots[i][m - o_max] = a
            below[i] = list(range(m - o_max + 1, m))
        else:
            if m - counts[i] - 1 <= 0:
                raise Unsatisfiable("a helper voter has too many turns")
            slots[i][0] = a
            slots[i][m - counts[i] - 1] = b
            below[i] = list(range(m - counts[i], m))
    profile = _fill_rows(slots, below, counts, m, reserved=2)
    spec = ExtremalSpec(ExtremalMode.POA, n, m, seq, x=x, b=b, a=a)
    return profile, spec


def _structure_search(turns_of: list[list[int]], x: int, length: int):
    """Find (y, r, k): x takes e before y sincerely, y before x reversed.

    e will be x's r-th worst and y's k-th worst candidate. Sincere play
    reaches it at x's r-th turn, reversed play at y's k-th reversed turn,
    so feasibility is a pure turn-ordering question. Candidates for y are
    scanned by latest final turn first, which reproduces the block layout
    (heaviest voters first, helper last) whenever that layout works.
    """
    o_max = len(turns_of[x])
    ys = [i for i in range(len(turns_of)) if i != x and turns_of[i]]
    ys.sort(key=lambda i: (-turns_of[i][-1], i))
    for y in ys:
        o_y = len(turns_of[y])
        for r in range(1, o_max + 1):
            for k in range(1, o_y + 1):
                sincere_ok = turns_of[x][r - 1] < turns_of[y][k - 1]
                ry = length - 1 - turns_of[y][o_y - k]
                rx = length - 1 - turns_of[x][o_max - r]
                if sincere_ok and ry < rx:
                    return y, r, k
    return None


def gen_sr_tight(
    seq: EliminationSequence, n: int, m: int
) -> tuple[PreferenceProfile, ExtremalSpec]:
    """Profile whose CB ratio equals the sincerity upper bound, if possible.

    Candidate 0 is the sincere winner c, candidate 1 the strategic winner b,
    candidate 2 the shared throwaway e. Under sincere play x removes e, so
    the helper y runs out of throwaways and spends her last turn on b;
    under reversed play y removes e first, so x's final turn lands on c
    instead. Raises StructureUnsatisfiable when no voter pair can be
    ordered that way (palindromic sequences in particular).
    """
    x, counts = _common_checks(seq, n, m)
    o_max = counts[x]
    if o_max > m - 2:
        raise StructureUnsatisfiable(
            "the busiest voter's block leaves no room above b and c"
        )
    turns_of = [[t for t, v in enumerate(seq.turns) if v == i] for i in range(n)]
    found = _structure_search(turns_of, x, len(seq.turns))
    if found is None:
        raise StructureUnsatisfiable(
            f"sequence {seq.compact()} admits no bound-attaining profile: "
            "no helper voter can trade the shared candidate across orderings"
        )
    y, r, k = found
    c, b, e = 0, 1, 2
    slots: list[dict[int, int]] = [dict() for _ in range(n)]
    below: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        if i == x:
            slots[i][m - o_max - 2] = b
            slots[i][m - o_max - 1] = c
            slots[i][m - r] = e
            below[i] = [s for s in range(m - o_max, m) if s != m - r]
        else:
            if m - counts[i] - 1 <= 0:
                raise Unsatisfiable("a helper voter has too many turns")
            slots[i][0] = c
            slots[i][m - counts[i] - 1] = b
            if i == y:
                slots[i][m - k] = e
                below[i] = [s for s in range(m - counts[i], m) if s != m - k]
            else:
                below[i] = list(range(m - counts[i], m))
    profile = _fill_rows(slots, below, counts, m, reserved=3)
    spec = ExtremalSpec(
        ExtremalMode.SR, n, m, seq, x=x, b=b, c=c, e=e, y=y, r=r, k=k
    )
    return profile, spec


def generate(
    mode: ExtremalMode, seq: EliminationSequence, n: int, m: int
) -> tuple[PreferenceProfile, ExtremalSpec]:
    if mode is ExtremalMode.POA:
        return gen_poa_tight(seq, n, m)
    return gen_sr_tight(seq, n, m)


@dataclass(frozen=True)
class TightnessReport:
    """Outcome of re-deriving a bound from an actual profile."""

    mode: ExtremalMode
    achieved: Fraction
    bound: Fraction
    attained: bool
    oracle_agrees: bool | None = None


def verify_tight(
    profile: PreferenceProfile,
    seq: EliminationSequence,
    mode: ExtremalMode,
    oracle: bool = False,
) -> TightnessReport:
    """Recompute the ratio through the play engine and compare to the bound.

    With ``oracle`` the strategic winner is additionally recomputed by full
    backward induction (small m only) and checked against the reversed-
    sequence shortcut.
    """
    o_max = seq.occurrences(profile.n).o_max
    if mode is ExtremalMode.POA:
        achieved = ratio_ab(profile, seq)
        bound = poa_formula(profile.n, profile.m, o_max)
    else:
        achieved = ratio_cb(profile, seq)
        bound = sr_upper_bound(profile.n, profile.m, o_max)
    agrees = None
    if oracle:
        agrees = (
            backward_induction(profile, seq).winner
            == spne_outcome(profile, seq).winner
        )
    return TightnessReport(mode, achieved, bound, achieved == bound, agrees)
