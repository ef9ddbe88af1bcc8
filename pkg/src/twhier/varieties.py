"""Membership decisions for the hierarchy levels, by two routes.

The corner levels are decided either by their defining identities
(exponential assignment scan) or by the polynomial quotient tower that
alternates the two canonical congruences; the tower route is the
default and the identity route is kept as the independent cross-check.
Join levels have a single identity each, so the scan is the only route
there.
"""

from dataclasses import dataclass

from . import rankers
from .errors import InternalDefect, PreconditionFailed
from .monoid import quotient, sim_d, sim_k
from .terms import (
    DEFAULT_SEARCH_CAP,
    band_identity,
    commutativity_identity,
    da_identity,
    l2_identity,
    lm_identity,
    r2_identity,
    rm_identity,
    satisfies_identity,
    w_identity,
)

VARIETY_FAMILIES = {
    "DA": (da_identity,),
    "R": (r2_identity,),
    "L": (l2_identity,),
    "J": (r2_identity, l2_identity),
    "B": (band_identity,),
    "J1": (commutativity_identity, band_identity),
}


def in_variety(monoid, name, cap=DEFAULT_SEARCH_CAP, jobs=1):
    """Membership in one of the named base varieties.

    A name maps to a set of identities; membership is their conjunction
    (the J and J1 entries are genuine intersections).
    """
    try:
        family = VARIETY_FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown variety {name!r}; "
                         f"expected one of {sorted(VARIETY_FAMILIES)}") from None
    return all(satisfies_identity(monoid, mk(), cap=cap, jobs=jobs)
               for mk in family)


def in_rm_identity(monoid, m, cap=DEFAULT_SEARCH_CAP, jobs=1):
    return bool(satisfies_identity(monoid, rm_identity(m), cap=cap, jobs=jobs))


def in_lm_identity(monoid, m, cap=DEFAULT_SEARCH_CAP, jobs=1):
    return bool(satisfies_identity(monoid, lm_identity(m), cap=cap, jobs=jobs))


def in_rm_malcev(monoid, m):
    """Corner membership through the quotient tower (polynomial)."""
    if m < 2:
        raise ValueError("corner levels start at m = 2")
    if m == 2:
        return monoid.is_r_trivial()
    q, _ = quotient(monoid, sim_k(monoid))
    return in_lm_malcev(q, m - 1)


def in_lm_malcev(monoid, m):
    if m < 2:
        raise ValueError("corner levels start at m = 2")
    if m == 2:
        return monoid.is_l_trivial()
    q, _ = quotient(monoid, sim_d(monoid))
    return in_rm_malcev(q, m - 1)


def in_wm(monoid, m, cap=DEFAULT_SEARCH_CAP, jobs=1):
    """Join-level membership: the single identity with 2m-1 variables."""
    return bool(satisfies_identity(monoid, w_identity(m), cap=cap, jobs=jobs))


@dataclass(frozen=True)
class HierarchyProfile:
    """Where a monoid sits in the hierarchy.

    Levels are smallest memberships (all >= 2) or None outside the
    union.  ``tower_trace`` records the quotient steps taken, prefix
    chain first then suffix chain, as (congruence kind, quotient size).
    """

    in_da: bool
    min_r: int | None
    min_l: int | None
    min_join: int | None
    min_intersection: int | None
    tower_trace: tuple


def _corner_level(monoid, start_kind):
    """Smallest corner level along one alternating quotient chain.

    Step j tests R-triviality on even j and L-triviality on odd j for
    the prefix chain (start_kind "K"), swapped for the suffix chain;
    success at step j means level 2+j.  Two consecutive identity
    congruences with failing tests mean the chain has stalled and the
    monoid is outside this chain's union.
    """
    current = monoid
    trace = []
    kind = start_kind
    prev_identity = False
    j = 0
    while True:
        if (j % 2 == 0) == (start_kind == "K"):
            passed = current.is_r_trivial()
        else:
            passed = current.is_l_trivial()
        if passed:
            return 2 + j, tuple(trace)
        cong = sim_k(current) if kind == "K" else sim_d(current)
        if cong.is_identity and prev_identity:
            return None, tuple(trace)
        prev_identity = cong.is_identity
        current, _ = quotient(current, cong)
        trace.append((kind, current.size))
        kind = "D" if kind == "K" else "K"
        j += 1
        if j > 2 * monoid.size + 4:  # sizes are non-increasing; cannot happen
            raise InternalDefect("quotient tower failed to terminate")


def classify(monoid, cap=DEFAULT_SEARCH_CAP, jobs=1):
    """Full placement of a monoid in the hierarchy.

    The corner levels come from the quotient towers; the containing
    variety membership comes from its identity, and the two must agree.
    The join level is swept from 2 upward, bounded by the corner levels.
    """
    in_da = bool(satisfies_identity(monoid, da_identity(), cap=cap, jobs=jobs))
    min_r, trace_r = _corner_level(monoid, "K")
    min_l, trace_l = _corner_level(monoid, "D")
    towers_say_da = min_r is not None and min_l is not None
    if towers_say_da != in_da:
        raise InternalDefect("quotient towers disagree with the identity "
                             f"route: towers={towers_say_da}, identity={in_da}")
    min_join = None
    min_intersection = None
    if in_da:
        min_intersection = max(min_r, min_l)
        for m in range(2, max(min_r, min_l) + 1):
            if in_wm(monoid, m, cap=cap, jobs=jobs):
                min_join = m
                break
        if min_join is None:
            raise InternalDefect("corner membership implies a join level")
    return HierarchyProfile(in_da, min_r, min_l, min_join, min_intersection,
                            trace_r + trace_l)


@dataclass(frozen=True)
class AlignedFactorization:
    """Matched factorizations u0 a1 u1 ... al ul / v0 a1 v1 ... al vl.

    ``r`` visits exactly the prefix-side cut positions, ``s`` the
    suffix-side ones, on both words; ``letters`` are the shared markers.
    """

    r: rankers.Ranker | None
    s: rankers.Ranker | None
    letters: tuple
    u_factors: tuple
    v_factors: tuple


def _r_factorization_cuts(morphism, word):
    """Positions (1-based) where the growing prefix leaves its R-class."""
    m = morphism.monoid
    acc = m.identity
    cuts = []
    for i, a in enumerate(word, 1):
        nxt = m.mul(acc, morphism.letter_image[a])
        if not m.r_related(nxt, acc):
            cuts.append((i, a))
        acc = nxt
    return cuts


def _l_factorization_cuts(morphism, word):
    """Positions where the growing suffix leaves its L-class, ascending."""
    m = morphism.monoid
    acc = m.identity
    cuts = []
    for j in range(len(word), 0, -1):
        a = word[j - 1]
        nxt = m.mul(morphism.letter_image[a], acc)
        if not m.l_related(nxt, acc):
            cuts.append((j, a))
        acc = nxt
    cuts.reverse()
    return cuts


def aligned_factorization(morphism, u, v, cap=DEFAULT_SEARCH_CAP):
    """Align the prefix-side factorization of u with the suffix-side one of v.

    Requires the recognizing monoid to satisfy the unambiguity identity
    and the words to agree on one-block rankers up to depth 2|M|-2.
    The prefix-cut letters of u define a forward ranker r, the
    suffix-cut letters of v a backward ranker s; both transfer to the
    other word, and the merged position sets (a shared position counts
    once) give the common markers.
    """
    monoid = morphism.monoid
    if not satisfies_identity(monoid, da_identity(), cap=cap):
        raise PreconditionFailed("recognizing monoid fails the unambiguity "
                                 "identity")
    depth = 2 * monoid.size - 2
    if not rankers.equivalent(u, v, morphism.alphabet, 1, depth, "full"):
        raise PreconditionFailed(
            f"words are not one-block equivalent at depth {depth}")

    r_cuts = _r_factorization_cuts(morphism, u)
    l_cuts = _l_factorization_cuts(morphism, v)
    if len(r_cuts) > monoid.size - 1 or len(l_cuts) > monoid.size - 1:
        raise InternalDefect("factorization longer than the class count")
    r = rankers.Ranker(tuple(("X", a) for _, a in r_cuts)) if r_cuts else None
    s = rankers.Ranker(tuple(("Y", a) for _, a in reversed(l_cuts))) \
        if l_cuts else None

    def prefix_positions(ranker, word, expect=None):
        if ranker is None:
            return []
        out = []
        for k in range(1, len(ranker.instructions) + 1):
            prefix = rankers.Ranker(ranker.instructions[:k])
            p = rankers.eval_ranker(prefix, word)
            if p is None:
                raise InternalDefect("transferred ranker undefined despite "
                                     "the equivalence precondition")
            out.append(p)
        if expect is not None and out != expect:
            raise InternalDefect("ranker does not revisit its own cuts")
        return out

    red_u = prefix_positions(r, u, expect=[p for p, _ in r_cuts])
    red_v = prefix_positions(r, v)
    blue_v = prefix_positions(s, v,
                              expect=[p for p, _ in reversed(l_cuts)])
    blue_u = prefix_positions(s, u)

    marked_u = sorted(set(red_u) | set(blue_u))
    marked_v = sorted(set(red_v) | set(blue_v))
    if len(marked_u) != len(marked_v):
        raise InternalDefect("marker counts differ between the words")
    rank_u = {p: i for i, p in enumerate(marked_u)}
    rank_v = {p: i for i, p in enumerate(marked_v)}
    for pu, pv in zip(red_u, red_v):
        if rank_u[pu] != rank_v[pv]:
            raise InternalDefect("relative marker order differs")
    for pu, pv in zip(blue_u, blue_v):
        if rank_u[pu] != rank_v[pv]:
            raise InternalDefect("relative marker order differs")
    letters_u = tuple(u[p - 1] for p in marked_u)
    letters_v = tuple(v[p - 1] for p in marked_v)
    if letters_u != letters_v:
        raise InternalDefect("marker letters differ between the words")

    def split(word, positions):
        parts = []
        prev = 0
        for p in positions:
            parts.append(word[prev:p - 1])
            prev = p
        parts.append(word[prev:])
        return tuple(parts)

    return AlignedFactorization(r, s, letters_u, split(u, marked_u),
                                split(v, marked_v))
