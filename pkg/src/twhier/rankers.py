"""Rankers: directed letter-search instructions over finite words.

A ranker is a nonempty sequence of instructions X_a ("go to the next
a-position") and Y_a ("go to the previous a-position"), executed left
to right from the virtual boundary 0 (X) or |u|+1 (Y).  It either
denotes a unique 1-based position of the word or is undefined.  It is
*condensed* when execution never overruns a previously visited
position.

Words are compared by the sets of condensed rankers from bounded
families: depth (length) at most n, at most m direction blocks, and
optionally restricted by the leading direction.  The quotients of the
free monoid by these comparisons are the bridge between words and the
corner/join levels of the hierarchy.
"""

from array import array
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
import random

from ._backend import kernels
from .errors import (
    CongruenceViolation,
    ParseError,
    SizeCapExceeded,
    UnknownLetter,
)
from .monoid import Monoid

RANKER_SET_CAP = 20000
CLASS_CAP = 5000

VARIANTS = ("full", "X", "Y")


@dataclass(frozen=True)
class Ranker:
    """Nonempty instruction sequence; each instruction is (dir, letter)."""

    instructions: tuple

    def __post_init__(self):
        if not self.instructions:
            raise ParseError(0, "nonempty ranker")
        for d, a in self.instructions:
            if d not in "XY" or not a:
                raise ParseError(0, "instruction X<letter> or Y<letter>")

    @classmethod
    def parse(cls, text):
        if not text:
            raise ParseError(0, "nonempty ranker")
        instrs = []
        i = 0
        while i < len(text):
            d = text[i]
            if d not in "XY" or i + 1 >= len(text):
                raise ParseError(i, "instruction X<letter> or Y<letter>")
            instrs.append((d, text[i + 1]))
            i += 2
        return cls(tuple(instrs))

    @classmethod
    def of(cls, *instrs):
        """Ranker.of("Xa", "Yb") convenience constructor."""
        return cls(tuple((s[0], s[1]) for s in instrs))

    @property
    def depth(self):
        """Depth is the length as a word over the instruction alphabet."""
        return len(self.instructions)

    @property
    def block_count(self):
        """Number of maximal same-direction factors."""
        blocks = 0
        prev = None
        for d, _ in self.instructions:
            if d != prev:
                blocks += 1
                prev = d
        return blocks

    def __str__(self):
        return "".join(d + a for d, a in self.instructions)


def eval_ranker(ranker, word):
    """The position denoted on ``word`` (1-based), or None if undefined."""
    n = len(word)
    pos = None
    for d, a in ranker.instructions:
        if d == "X":
            start = 0 if pos is None else pos
            pos = next((y for y in range(start + 1, n + 1)
                        if word[y - 1] == a), None)
        else:
            start = n + 1 if pos is None else pos
            pos = next((y for y in range(start - 1, 0, -1)
                        if word[y - 1] == a), None)
        if pos is None:
            return None
    return pos


def is_condensed(ranker, word):
    """Defined, and no later position jumps over an earlier one.

    Reference implementation straight from the definition: for every
    visited position, all subsequent positions lie entirely on one side
    of it.  The signature kernel uses an equivalent online check.
    """
    positions = []
    n = len(word)
    pos = None
    for d, a in ranker.instructions:
        if d == "X":
            start = 0 if pos is None else pos
            pos = next((y for y in range(start + 1, n + 1)
                        if word[y - 1] == a), None)
        else:
            start = n + 1 if pos is None else pos
            pos = next((y for y in range(start - 1, 0, -1)
                        if word[y - 1] == a), None)
        if pos is None:
            return False
        positions.append(pos)
    for i in range(len(positions) - 1):
        x = positions[i]
        later = positions[i + 1:]
        if not (all(p > x for p in later) or all(p < x for p in later)):
            return False
    return True


@dataclass(frozen=True)
class RankerSet:
    """Rankers with depth <= n and at most m blocks, canonically ordered."""

    alphabet: tuple
    m: int
    n: int
    variant: str
    members: tuple


def _alphabet_key(alphabet):
    return tuple(sorted(alphabet))


@lru_cache(maxsize=512)
def _ranker_members(alphabet_key, m, n, cap=RANKER_SET_CAP):
    """All of R_{m,n} in canonical order (length, then instruction codes).

    Instruction order puts every X before every Y, letters
    alphabetically within a direction.
    """
    if m <= 0 or n <= 0:
        return ()
    instrs = [("X", a) for a in alphabet_key] + [("Y", a) for a in alphabet_key]
    members = []
    frontier = [((ins,), 1) for ins in instrs]
    for _ in range(n):
        nxt = []
        for seq, blocks in frontier:
            if blocks <= m:
                members.append(Ranker(seq))
                if len(members) > cap:
                    raise SizeCapExceeded(
                        f"ranker family exceeds cap {cap}")
                if len(seq) < n:
                    for ins in instrs:
                        nb = blocks + (ins[0] != seq[-1][0])
                        if nb <= m:
                            nxt.append((seq + (ins,), nb))
        frontier = nxt
    members.sort(key=_canonical_key)
    return tuple(members)


def _canonical_key(r):
    return (len(r.instructions),
            tuple((0 if d == "X" else 1, a) for d, a in r.instructions))


@lru_cache(maxsize=512)
def _variant_members(alphabet_key, m, n, variant):
    base = _ranker_members(alphabet_key, m, n)
    if variant == "full":
        return base
    lead = "X" if variant == "X" else "Y"
    kept = [r for r in base if r.instructions[0][0] == lead]
    extra = [r for r in _ranker_members(alphabet_key, m - 1, n - 1)
             if r.instructions[0][0] != lead]
    members = sorted(kept + extra, key=_canonical_key)
    return tuple(members)


def enumerate_rankers(alphabet, m, n, variant="full"):
    """The ranker family used by the word comparisons.

    "full" is the two-sided family; "X" keeps the forward-leading part
    plus the whole (m-1, n-1) family, "Y" dually.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    key = _alphabet_key(alphabet)
    return RankerSet(key, m, n, variant, _variant_members(key, m, n, variant))


@lru_cache(maxsize=512)
def _packed(alphabet_key, m, n, variant):
    """Kernel packing of the family: parallel dirs/letters plus offsets."""
    members = _variant_members(alphabet_key, m, n, variant)
    code = {a: i for i, a in enumerate(alphabet_key)}
    dirs = array("i")
    letters = array("i")
    offsets = array("i", [0])
    for r in members:
        for d, a in r.instructions:
            dirs.append(0 if d == "X" else 1)
            letters.append(code[a])
        offsets.append(len(dirs))
    return members, dirs, letters, offsets


def _word_codes(word, alphabet_key):
    code = {a: i for i, a in enumerate(alphabet_key)}
    blank = len(alphabet_key)
    return array("i", (code.get(a, blank) for a in word))


@lru_cache(maxsize=100000)
def _sig_bits(word, alphabet_key, m, n, variant):
    members, dirs, letters, offsets = _packed(alphabet_key, m, n, variant)
    if not members:
        return 0
    if not word:
        return 0
    codes = _word_codes(word, alphabet_key)
    flags = kernels.condensed_flags(codes, len(alphabet_key) + 1, dirs,
                                    letters, offsets, len(members))
    bits = 0
    for i in range(len(members) - 1, -1, -1):
        bits = (bits << 1) | flags[i]
    return bits


def condensed_subset(word, ranker_list, alphabet):
    """Kernel-backed bulk filter: the members condensed on ``word``.

    For ad-hoc ranker collections (the bounded families have the faster
    cached path through :func:`signature`).
    """
    key = _alphabet_key(alphabet)
    ranker_list = list(ranker_list)
    if not word or not ranker_list:
        return frozenset()
    code = {a: i for i, a in enumerate(key)}
    dirs = array("i")
    letters = array("i")
    offsets = array("i", [0])
    for r in ranker_list:
        for d, a in r.instructions:
            dirs.append(0 if d == "X" else 1)
            letters.append(code[a])
        offsets.append(len(dirs))
    flags = kernels.condensed_flags(_word_codes(word, key), len(key) + 1,
                                    dirs, letters, offsets, len(ranker_list))
    return frozenset(r for i, r in enumerate(ranker_list) if flags[i])


def signature(word, alphabet, m, n, variant="full"):
    """The condensed subset of the family on ``word``."""
    key = _alphabet_key(alphabet)
    if not set(word) <= set(key):
        raise UnknownLetter(f"letters {sorted(set(word) - set(key))} "
                            "outside the alphabet")
    members = _variant_members(key, m, n, variant)
    bits = _sig_bits(word, key, m, n, variant)
    return frozenset(r for i, r in enumerate(members) if bits >> i & 1)


def _subsequence_set(word, n, cap=1 << 21):
    """All scattered subwords up to length n, as a set of strings."""
    subs = {""}
    for ch in word:
        grown = {s + ch for s in subs if len(s) < n}
        subs |= grown
        if len(subs) > cap:
            raise SizeCapExceeded(f"subsequence set exceeds cap {cap}")
    return subs


def one_block_equivalent(u, v, n):
    """Agreement on one-block rankers up to depth n, without
    enumerating them.

    A one-direction ranker is condensed exactly when it is defined, and
    it is defined exactly when its letters (reversed, for the backward
    direction) form a scattered subword; so agreement on either
    one-block family is equality of bounded subsequence sets.
    """
    bound = min(n, max(len(u), len(v)))
    return _subsequence_set(u, bound) == _subsequence_set(v, bound)


def equivalent(u, v, alphabet, m, n, variant="full"):
    """Agreement on condensed rankers of the chosen family.

    "X" and "Y" are the one-sided comparisons, "full" the conjunction
    of both.  Deep one-block comparisons (as needed by factorization
    alignment, where the depth grows with the monoid) bypass family
    enumeration through the subsequence characterization.
    """
    key = _alphabet_key(alphabet)
    if m == 1 and n >= 1:
        family_size = 2 * sum(len(key) ** k for k in range(1, n + 1))
        if family_size > RANKER_SET_CAP:
            return one_block_equivalent(u, v, n)
    return (_sig_bits(u, key, m, n, variant)
            == _sig_bits(v, key, m, n, variant))


def quotient_monoid(alphabet, m, n, variant="full", ranker_cap=RANKER_SET_CAP,
                    class_cap=CLASS_CAP, spot_checks=20):
    """The finite quotient of the free monoid by signature agreement.

    Classes are keyed by signature, discovered breadth-first from the
    empty word by single-letter extension; class representatives are
    therefore shortest (then lexicographically smallest) words.
    Multiplication concatenates representatives.  That this relation is
    a congruence is imported, not re-proved; it is spot-checked on
    alternative representatives and a violation reports a defect.

    Returns (monoid, letter_map, representatives).
    """
    key = _alphabet_key(alphabet)
    members = _variant_members(key, m, n, variant)
    if len(members) > ranker_cap:
        raise SizeCapExceeded(f"ranker family of {len(members)} exceeds "
                              f"cap {ranker_cap}")

    def bits(w):
        return _sig_bits(w, key, m, n, variant)

    sig_to_class = {bits(""): 0}
    reps = [""]
    alternates = {}
    queue = deque([""])
    while queue:
        w = queue.popleft()
        for a in key:
            ext = w + a
            s = bits(ext)
            cls = sig_to_class.get(s)
            if cls is None:
                if len(reps) >= class_cap:
                    raise SizeCapExceeded(
                        f"signature classes exceed cap {class_cap}")
                sig_to_class[s] = len(reps)
                reps.append(ext)
                queue.append(ext)
            else:
                alts = alternates.setdefault(cls, [])
                if len(alts) < 3 and ext != reps[cls]:
                    alts.append(ext)
    k = len(reps)
    rows = [[sig_to_class[bits(reps[i] + reps[j])] for j in range(k)]
            for i in range(k)]
    letter_map = {a: sig_to_class[bits(a)] for a in key}
    _spot_check_congruence(rows, reps, alternates, sig_to_class, bits,
                           spot_checks)
    monoid = Monoid(rows, 0, labels=[w if w else "1" for w in reps],
                    _trusted=True)
    return monoid, letter_map, tuple(reps)


def _spot_check_congruence(rows, reps, alternates, sig_to_class, bits,
                           spot_checks):
    """Multiply alternative representatives against the table."""
    if not alternates or spot_checks <= 0:
        return
    rng = random.Random(0)
    k = len(reps)
    pool = sorted(alternates)
    for _ in range(spot_checks):
        i = pool[rng.randrange(len(pool))]
        j = rng.randrange(k)
        for alt in alternates[i]:
            if sig_to_class.get(bits(alt + reps[j])) != rows[i][j]:
                raise CongruenceViolation(
                    f"left representative {alt!r} disagrees with {reps[i]!r}")
            if sig_to_class.get(bits(reps[j] + alt)) != rows[j][i]:
                raise CongruenceViolation(
                    f"right representative {alt!r} disagrees with {reps[i]!r}")
