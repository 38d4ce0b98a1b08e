"""Commuting graph of conjugated standard parabolic subgroups.

A vertex is a handle: an index set I of fixed size m together with a
conjugator word in Nielsen letters.  Two handles are adjacent when the
subgroups commute elementwise, which for parabolics reduces to a finite
check on conjugated Nielsen generators.  The path builder realises the
constructive connectivity argument: a generator with support disjoint
from I fixes the vertex, and otherwise a spare index block K gives a
length-2 detour through a disjoint parabolic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import autf


@dataclass(frozen=True)
class SubgroupHandle:
    """Conjugate of a standard parabolic: (rank, index set, Nielsen word)."""

    rank: int
    indices: frozenset
    conjugator: tuple = ()

    def __post_init__(self):
        for i in self.indices:
            if not 1 <= i <= self.rank:
                raise ValueError("index out of range")
        for side, i, j, exp in self.conjugator:
            if side not in ("L", "R") or i == j or exp not in (1, -1):
                raise ValueError(f"bad Nielsen letter {(side, i, j, exp)}")

    def conjugator_automorphism(self):
        return autf.eval_nielsen_word(self.conjugator, self.rank)

    def translated(self, suffix):
        """Handle for the same parabolic conjugated additionally by suffix."""
        return SubgroupHandle(self.rank, self.indices, self.conjugator + tuple(suffix))

    def to_json_obj(self):
        return {
            "I": sorted(self.indices),
            "conjugator": [list(l) for l in self.conjugator],
        }


def handle(rank, indices, conjugator=()):
    return SubgroupHandle(rank, frozenset(indices), tuple(conjugator))


def parabolic_generators(h):
    """Conjugated Nielsen generators {L_ab, R_ab : a != b in I}."""
    if len(h.indices) < 2:
        raise ValueError(
            "parabolics on fewer than two indices have no Nielsen generators; "
            "handles with |I| <= 1 are rejected"
        )
    g = h.conjugator_automorphism()
    gens = []
    for a in sorted(h.indices):
        for b in sorted(h.indices):
            if a == b:
                continue
            for side in ("L", "R"):
                gens.append(autf.make_nielsen(side, a, b, 1, h.rank).conjugate(g))
    return gens


def commutes(h1, h2):
    """Elementwise commutation of the two parabolic subgroups.

    Generating sets commute pairwise if and only if the generated
    subgroups commute elementwise, so the check is finite and exact.
    """
    if h1.rank != h2.rank:
        raise ValueError("rank mismatch")
    id_auto = autf.identity_automorphism(h1.rank)
    gens2 = parabolic_generators(h2)
    for g1 in parabolic_generators(h1):
        for g2 in gens2:
            if autf.group_commutator(g1, g2) != id_auto:
                return False
    return True


def handles_known_equal(h1, h2):
    """Conservative subgroup equality for handles with the same index set.

    True when the conjugator difference either has support disjoint from I
    (it then commutes with the whole parabolic) or support inside I (it then
    lies in the parabolic); both cases normalize the subgroup.  Anything
    else is reported unequal, since subgroup equality is not decided here.
    """
    if h1.rank != h2.rank or h1.indices != h2.indices:
        return False
    if h1.conjugator == h2.conjugator:
        return True
    diff = h1.conjugator_automorphism().compose(
        h2.conjugator_automorphism().inverse()
    )
    support = autf.minimal_support(diff)
    return not (support & h1.indices) or support <= h1.indices


@dataclass(frozen=True)
class GraphPath:
    handles: tuple

    def __len__(self):
        return len(self.handles)

    @property
    def edge_count(self):
        return max(0, len(self.handles) - 1)

    def to_json(self):
        return json.dumps([h.to_json_obj() for h in self.handles], sort_keys=True)


def _check_bound(n, m):
    if 2 * m + 1 > n:
        raise ValueError(f"need 2m+1 <= n, got m={m}, n={n}")


def generator_edge_path(n, I, letter):
    """Path from the parabolic on I to its conjugate by one Nielsen letter.

    Disjoint support means the conjugate is the same subgroup and the path
    has length 0.  Otherwise K is the lowest block of m fresh indices
    outside I and the letter's support, giving the length-2 path through
    the parabolic on K.
    """
    I = frozenset(I)
    m = len(I)
    _check_bound(n, m)
    s_support = autf.nielsen_word_support([letter])
    start = handle(n, I)
    if not (s_support & I):
        return GraphPath((start,))
    blocked = I | s_support
    free = [a for a in range(1, n + 1) if a not in blocked]
    if len(free) < m:
        raise ValueError("no disjoint index block available")
    K = frozenset(free[:m])
    return GraphPath((start, handle(n, K), handle(n, I, (letter,))))


def conjugate_path(n, I, word):
    """Path from the parabolic on I to its conjugate by a Nielsen word.

    The word [t1, ..., tL] denotes the composition t1 . t2 ... tL (the
    last letter acts first).  The path is assembled back to front: the
    path for the tail is followed by the one-letter path for t1
    translated by the tail, so it has at most 2L edges.
    """
    I = frozenset(I)
    _check_bound(n, len(I))
    word = tuple(word)
    handles = [handle(n, I)]
    for pos in range(len(word) - 1, -1, -1):
        letter = word[pos]
        suffix = word[pos + 1:]
        segment = generator_edge_path(n, I, letter)
        if len(segment.handles) == 1:
            # good letter: same subgroup, extend the endpoint label only
            handles[-1] = handle(n, I, (letter,) + suffix)
            continue
        translated = [h.translated(suffix) for h in segment.handles]
        # the first translated handle names the same subgroup as the
        # current endpoint (conjugators differ by good letters only)
        if not handles_known_equal(translated[0], handles[-1]):
            raise AssertionError("junction mismatch in path assembly")
        handles.extend(translated[1:])
    return GraphPath(tuple(handles))


def verify_path(path):
    """Every consecutive pair must commute; known-equal handles collapse."""
    hs = path.handles
    for h1, h2 in zip(hs, hs[1:]):
        if handles_known_equal(h1, h2):
            continue
        if not commutes(h1, h2):
            return False
    return True
