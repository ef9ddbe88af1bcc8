"""Separating languages between consecutive hierarchy levels.

The family L(k, l) is a chain of marked star-blocks: growing alphabets
on the left end in the markers b_k, ..., b_2, a central d, then markers
c_2, ..., c_l with growing alphabets on the right.  Its syntactic
monoid lies in both corners one level up but fails the join-level
identity at the level itself; the witness words expand the identity's
two sides into concrete words that the language tells apart.
"""

from dataclasses import dataclass

from . import rankers
from .errors import AlphabetExhausted, PreconditionFailed
from .languages import (
    accepts,
    lit,
    parse_regex,
    rcat,
    regex_to_dfa,
    render_regex,
    rstar,
    runion,
    syntactic_monoid,
)
from .terms import DEFAULT_SEARCH_CAP, satisfies_identity, w_identity
from .varieties import in_lm_malcev, in_rm_malcev


def letter_map(max_index):
    """Fixed injective map from abstract letters to a-z.

    d -> d, b2 -> b, c2 -> c, then alternating pairs b3 -> e, c3 -> f,
    b4 -> g, c4 -> h, ...  Deterministic so regexes and reports are
    reproducible.
    """
    mapping = {"d": "d", "b2": "b", "c2": "c"}
    ch = ord("e")
    for i in range(3, max_index + 1):
        for abstract in (f"b{i}", f"c{i}"):
            if ch > ord("z"):
                raise AlphabetExhausted(
                    f"no concrete letters left for {abstract}")
            mapping[abstract] = chr(ch)
            ch += 1
    return mapping


@dataclass(frozen=True)
class WitnessSpec:
    """Concrete instantiation of the separating language L(k, l)."""

    k: int
    l: int
    letter_map: dict
    alphabet: frozenset

    def b(self, i):
        return self.letter_map[f"b{i}"]

    def c(self, i):
        return self.letter_map[f"c{i}"]

    @property
    def d(self):
        return self.letter_map["d"]

    def lower_set(self, i):
        """Letters below index i plus the center: the shared alphabet of
        the i-th star blocks."""
        out = {self.d}
        for j in range(2, i):
            out.add(self.b(j))
            out.add(self.c(j))
        return out

    def b_set(self, i):
        return self.lower_set(i) | {self.b(i)}

    def c_set(self, i):
        return self.lower_set(i) | {self.c(i)}


def _star_block(letters):
    letters = sorted(letters)
    node = lit(letters[0])
    for a in letters[1:]:
        node = runion(node, lit(a))
    return rstar(node)


def witness_language(k, l):
    """Regex for L(k, l) with the fixed letter map.

    The left chain runs the b-markers from k down to 2, then the
    center d, then the c-markers from 2 up to l.
    """
    if k < 1 or l < 1:
        raise PreconditionFailed("levels start at 1")
    mapping = letter_map(max(k, l))
    used = {"d"}
    used |= {f"b{i}" for i in range(2, k + 1)}
    used |= {f"c{i}" for i in range(2, l + 1)}
    spec = WitnessSpec(k, l, {a: mapping[a] for a in sorted(used)},
                       frozenset(mapping[a] for a in used))
    regex = None

    def chain(node):
        nonlocal regex
        regex = node if regex is None else rcat(regex, node)

    for i in range(k, 1, -1):
        chain(_star_block(spec.b_set(i)))
        chain(lit(spec.b(i)))
    chain(lit(spec.d))
    for i in range(2, l + 1):
        chain(lit(spec.c(i)))
        chain(_star_block(spec.c_set(i)))
    return regex, spec


def witness_words(m, monoid=None, exponent=None):
    """The two words whose identification the level-m identity forces.

    ``exponent`` (or the monoid's global idempotent exponent) controls
    how often each marker block repeats so that every block evaluates
    to an idempotent.  The first word lies in L(m, m), the second does
    not.
    """
    if exponent is None:
        if monoid is None:
            raise PreconditionFailed("need a monoid or an explicit exponent")
        exponent = monoid.global_exponent()
    mapping = letter_map(max(m, 2))
    d = mapping["d"]
    ech = ""
    fch = ""
    for i in range(2, m + 1):
        e_i = (ech + d + fch + mapping[f"b{i}"]) * exponent
        f_i = (mapping[f"c{i}"] + ech + d + fch) * exponent
        ech = e_i + ech
        fch = fch + f_i
    return ech + d + fch, ech + fch


@dataclass(frozen=True)
class SeparationReport:
    """Instance evidence that level m's join sits strictly below the
    next intersection level."""

    level: int
    pattern: str
    alphabet: tuple
    monoid: object
    monoid_size: int
    exponent: int
    in_r_next: bool
    in_l_next: bool
    w_counterexample: dict
    witness_u: str
    witness_v: str
    u_in_language: bool
    v_in_language: bool
    image_u: int
    image_v: int

    @property
    def all_checks_pass(self):
        return (self.in_r_next and self.in_l_next and self.u_in_language
                and not self.v_in_language and self.image_u != self.image_v)


def verify_separation(m, language=None, cap=DEFAULT_SEARCH_CAP, jobs=1):
    """Check the four separation facts for L(m, m) mechanically.

    The syntactic monoid must fail the join-level identity (otherwise
    the language is no witness and the precondition fails - that is the
    injection point for testing the rejection path); it must lie in
    both corners at m+1 via the quotient-tower route; and the witness
    words must straddle the language with distinct images.
    """
    if m < 2:
        raise PreconditionFailed("separation instances start at m = 2")
    if language is None:
        regex, spec = witness_language(m, m)
        pattern = render_regex(regex)
        alphabet = tuple(sorted(spec.alphabet))
    else:
        regex = parse_regex(language) if isinstance(language, str) else language
        pattern = render_regex(regex)
        alphabet = None
    dfa = regex_to_dfa(regex)
    if alphabet is None:
        alphabet = dfa.alphabet
    morphism = syntactic_monoid(dfa)
    monoid = morphism.monoid
    verdict = satisfies_identity(monoid, w_identity(m), cap=cap, jobs=jobs)
    if verdict.holds:
        raise PreconditionFailed(
            f"recognizing monoid lies in the level-{m} join; "
            "not a separation witness")
    u, v = witness_words(m, monoid=monoid)
    exponent = monoid.global_exponent()
    return SeparationReport(
        level=m,
        pattern=pattern,
        alphabet=tuple(alphabet),
        monoid=monoid,
        monoid_size=monoid.size,
        exponent=exponent,
        in_r_next=in_rm_malcev(monoid, m + 1),
        in_l_next=in_lm_malcev(monoid, m + 1),
        w_counterexample=verdict.counterexample,
        witness_u=u,
        witness_v=v,
        u_in_language=accepts(dfa, u),
        v_in_language=accepts(dfa, v),
        image_u=morphism.image_of_word(u),
        image_v=morphism.image_of_word(v),
    )


def _swap_table(max_index):
    mapping = letter_map(max_index)
    table = {}
    for i in range(2, max_index + 1):
        table[mapping[f"b{i}"]] = mapping[f"c{i}"]
        table[mapping[f"c{i}"]] = mapping[f"b{i}"]
    return table


def _mirror_ranker(r, swap):
    return rankers.Ranker(tuple(("Y" if d == "X" else "X", swap.get(a, a))
                                for d, a in r.instructions))


def _prepend(instr, rs):
    return {rankers.Ranker((instr,) + r.instructions) for r in rs}


def _forward_description(m, alphabet):
    """Condensed-ranker description of L(m, m+1), forward-leading.

    Base: the two-letter core language is "the first c has a d before
    it and nothing after that d's predecessor", minus overshoots and
    foreign letters.  Step: relativize the mirrored description of
    L(m, m-1) to the factor before the first c_m, then demand the next
    marker and exclude everything premature.
    """
    mapping = letter_map(m + 1)
    swap = _swap_table(m + 1)
    spec = WitnessSpec(m, m + 1,
                       mapping, frozenset(alphabet))
    if m == 1:
        c2, d = mapping["c2"], mapping["d"]
        s_set = {rankers.Ranker((("X", c2), ("Y", d)))}
        t_set = {rankers.Ranker((("X", c2), ("Y", d), ("Y", d)))}
        t_set |= {rankers.Ranker((("X", a),))
                  for a in alphabet - spec.c_set(2)}
        return s_set, t_set
    mirrored_alphabet = frozenset(swap.get(a, a) for a in alphabet)
    s1, t1 = _forward_description(m - 1, mirrored_alphabet)
    s_prev = {_mirror_ranker(r, swap) for r in s1}
    t_prev = {_mirror_ranker(r, swap) for r in t1}
    cm = mapping[f"c{m}"]
    cm1 = mapping[f"c{m + 1}"]
    x_cm = ("X", cm)
    s_set = _prepend(x_cm, s_prev)
    s_set.add(rankers.Ranker((x_cm, ("X", cm1))))
    t_set = _prepend(x_cm, t_prev)
    t_set |= {rankers.Ranker((("X", a),)) for a in alphabet - spec.c_set(m + 1)}
    t_set |= {rankers.Ranker((x_cm, ("X", cm1), ("Y", a)))
              for a in alphabet - spec.c_set(m)}
    return s_set, t_set


def ranker_description(m, alphabet=None, max_level=2):
    """Ranker sets (S, T) with L(m, m+1) = (all of S condensed) minus
    (any of T condensed), over any alphabet containing the language's.

    Verified at small scale only, hence the level cap; pass a larger
    ``max_level`` to use the recursion beyond its validated range.
    Returns (S, T, "X-leading").
    """
    if m < 1:
        raise PreconditionFailed("levels start at 1")
    if m > max_level:
        raise PreconditionFailed(
            f"description validated only up to level {max_level}")
    _, spec = witness_language(m, m + 1)
    if alphabet is None:
        alphabet = spec.alphabet
    alphabet = frozenset(alphabet)
    if not spec.alphabet <= alphabet:
        raise PreconditionFailed("alphabet must contain the language's")
    s_set, t_set = _forward_description(m, alphabet)
    return s_set, t_set, "X-leading"
