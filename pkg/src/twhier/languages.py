"""Regular-language ingestion: regexes, DFAs, syntactic monoids.

The syntactic monoid is computed as the transition monoid of the
minimal complete DFA, which is the standard concrete presentation of
the abstract minimal recognizer.  Minimization renumbers states in
breadth-first order from the initial state, so equal languages yield
identical automata and the whole pipeline is deterministic.
"""

from dataclasses import dataclass

from .errors import ParseError, StateCapExceeded, UnknownLetter
from .monoid import DEFAULT_SIZE_CAP, Monoid, close_transformations

DEFAULT_STATE_CAP = 10 ** 5


# -- regular expressions ----------------------------------------------


@dataclass(frozen=True)
class Regex:
    """AST node; kind in {empty, epsilon, lit, union, cat, star}."""

    kind: str
    a: object = None
    b: object = None

    def __str__(self):
        return render_regex(self)


EMPTY = Regex("empty")
EPSILON = Regex("epsilon")


def lit(ch):
    return Regex("lit", ch)


def runion(a, b):
    return Regex("union", a, b)


def rcat(a, b):
    return Regex("cat", a, b)


def rstar(a):
    return Regex("star", a)


def parse_regex(text):
    """Grammar: '|' alternation, juxtaposition, postfix '*', '%' for the
    empty word, letters a-z, '(...)' grouping.  Star > concat > union.
    """

    pos = 0

    def peek():
        return text[pos] if pos < len(text) else None

    def union():
        nonlocal pos
        node = concat()
        while peek() == "|":
            pos += 1
            node = runion(node, concat())
        return node

    def concat():
        nonlocal pos
        node = None
        while peek() is not None and peek() not in "|)":
            nxt = starred()
            node = nxt if node is None else rcat(node, nxt)
        if node is None:
            raise ParseError(pos, "letter, '%', or '('")
        return node

    def starred():
        nonlocal pos
        node = atom()
        while peek() == "*":
            pos += 1
            node = rstar(node)
        return node

    def atom():
        nonlocal pos
        c = peek()
        if c == "(":
            pos += 1
            node = union()
            if peek() != ")":
                raise ParseError(pos, "')'")
            pos += 1
            return node
        if c == "%":
            pos += 1
            return EPSILON
        if c is not None and c.islower():
            pos += 1
            return lit(c)
        raise ParseError(pos, "letter, '%', or '('")

    node = union()
    if pos != len(text):
        raise ParseError(pos, "end of pattern")
    return node


def render_regex(r):
    def prec(node):
        return {"union": 0, "cat": 1}.get(node.kind, 2)

    def wrap(node, level):
        s = go(node)
        return f"({s})" if prec(node) < level else s

    def go(node):
        if node.kind == "empty":
            return "(%|%)"  # no surface form; unreachable in practice
        if node.kind == "epsilon":
            return "%"
        if node.kind == "lit":
            return node.a
        if node.kind == "union":
            return f"{wrap(node.a, 0)}|{wrap(node.b, 0)}"
        if node.kind == "cat":
            return f"{wrap(node.a, 1)}{wrap(node.b, 1)}"
        return f"{wrap(node.a, 2)}*"

    return go(r)


def regex_letters(r):
    out = set()
    stack = [r]
    while stack:
        node = stack.pop()
        if node.kind == "lit":
            out.add(node.a)
        elif node.kind in ("union", "cat"):
            stack.extend((node.a, node.b))
        elif node.kind == "star":
            stack.append(node.a)
    return out


# -- automata ---------------------------------------------------------


@dataclass(frozen=True)
class Dfa:
    """Complete automaton: delta[state][letter_index] is total."""

    n_states: int
    initial: int
    accepting: frozenset
    alphabet: tuple
    delta: tuple

    def letter_index(self, a):
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise UnknownLetter(f"letter {a!r} outside alphabet "
                                f"{''.join(self.alphabet)}") from None

    def step(self, state, a):
        return self.delta[state][self.letter_index(a)]


def accepts(dfa, word):
    """Run the automaton; letters must lie in its alphabet."""
    index = {a: i for i, a in enumerate(dfa.alphabet)}
    state = dfa.initial
    for a in word:
        try:
            state = dfa.delta[state][index[a]]
        except KeyError:
            raise UnknownLetter(f"letter {a!r} outside alphabet "
                                f"{''.join(dfa.alphabet)}") from None
    return state in dfa.accepting


def _thompson(regex, letters):
    """Epsilon-NFA fragments: returns (n_states, eps, trans, start, end)."""
    eps = []
    trans = []

    def new_state():
        eps.append([])
        trans.append({})
        return len(eps) - 1

    def build(node):
        if node.kind == "empty":
            return new_state(), new_state()
        if node.kind == "epsilon":
            s = new_state()
            e = new_state()
            eps[s].append(e)
            return s, e
        if node.kind == "lit":
            s = new_state()
            e = new_state()
            trans[s].setdefault(node.a, []).append(e)
            return s, e
        if node.kind == "union":
            s1, e1 = build(node.a)
            s2, e2 = build(node.b)
            s = new_state()
            e = new_state()
            eps[s] += [s1, s2]
            eps[e1].append(e)
            eps[e2].append(e)
            return s, e
        if node.kind == "cat":
            s1, e1 = build(node.a)
            s2, e2 = build(node.b)
            eps[e1].append(s2)
            return s1, e2
        s1, e1 = build(node.a)
        s = new_state()
        e = new_state()
        eps[s] += [s1, e]
        eps[e1] += [s1, e]
        return s, e

    start, end = build(regex)
    return eps, trans, start, end


def regex_to_dfa(regex, alphabet=None, state_cap=DEFAULT_STATE_CAP):
    """Complete DFA for the regex via subset construction.

    The alphabet is inferred from the regex unless given explicitly
    (give the wider alphabet when the language must live over it);
    completion adds a sink for missing letters either way.
    """
    letters = regex_letters(regex)
    if alphabet is not None:
        if not letters <= set(alphabet):
            raise UnknownLetter("regex uses letters outside the requested "
                                "alphabet")
        letters = set(alphabet)
    alpha = tuple(sorted(letters))
    eps, trans, start, end = _thompson(regex, alpha)

    def closure(states):
        stack = list(states)
        seen = set(states)
        while stack:
            q = stack.pop()
            for t in eps[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    init = closure({start})
    subsets = {init: 0}
    order = [init]
    delta = []
    i = 0
    while i < len(order):
        current = order[i]
        row = []
        for a in alpha:
            targets = set()
            for q in current:
                targets.update(trans[q].get(a, ()))
            nxt = closure(targets)
            if nxt not in subsets:
                if len(order) >= state_cap:
                    raise StateCapExceeded(
                        f"subset construction exceeds cap {state_cap}")
                subsets[nxt] = len(order)
                order.append(nxt)
            row.append(subsets[nxt])
        delta.append(tuple(row))
        i += 1
    accepting = frozenset(i for i, s in enumerate(order) if end in s)
    return Dfa(len(order), 0, accepting, alpha, tuple(delta))


def minimize(dfa):
    """Minimal complete DFA, canonically numbered; idempotent."""
    # prune unreachable states
    reach = [dfa.initial]
    seen = {dfa.initial}
    for q in reach:
        for t in dfa.delta[q]:
            if t not in seen:
                seen.add(t)
                reach.append(t)
    renum = {q: i for i, q in enumerate(reach)}
    delta = [tuple(renum[dfa.delta[q][ai]] for ai in range(len(dfa.alphabet)))
             for q in reach]
    accepting = {renum[q] for q in dfa.accepting if q in renum}
    n = len(reach)

    # Moore refinement
    block = [0 if q in accepting else 1 for q in range(n)]
    if not accepting or len(accepting) == n:
        block = [0] * n
    while True:
        keys = {}
        new_block = []
        for q in range(n):
            key = (block[q],) + tuple(block[t] for t in delta[q])
            new_block.append(keys.setdefault(key, len(keys)))
        if new_block == block:
            break
        block = new_block

    # canonical numbering: BFS over blocks from the initial block
    rep_delta = {}
    for q in range(n):
        rep_delta.setdefault(block[q], delta[q])
    order = [block[0]]
    number = {block[0]: 0}
    for b in order:
        for t in rep_delta[b]:
            if block[t] not in number:
                number[block[t]] = len(order)
                order.append(block[t])
    k = len(order)
    new_delta = [None] * k
    for b in order:
        new_delta[number[b]] = tuple(number[block[t]] for t in rep_delta[b])
    new_accepting = frozenset(number[block[q]] for q in accepting)
    return Dfa(k, 0, new_accepting, dfa.alphabet, tuple(new_delta))


def distinguishing_word(d1, d2):
    """A word accepted by exactly one automaton, or None if equivalent."""
    if d1.alphabet != d2.alphabet:
        raise UnknownLetter("automata have different alphabets")
    start = (d1.initial, d2.initial)
    seen = {start: ""}
    queue = [start]
    i = 0
    while i < len(queue):
        q1, q2 = queue[i]
        word = seen[(q1, q2)]
        if (q1 in d1.accepting) != (q2 in d2.accepting):
            return word
        for ai, a in enumerate(d1.alphabet):
            nxt = (d1.delta[q1][ai], d2.delta[q2][ai])
            if nxt not in seen:
                seen[nxt] = word + a
                queue.append(nxt)
        i += 1
    return None


def dfa_equivalent(d1, d2):
    return distinguishing_word(d1, d2) is None


# -- syntactic monoids ------------------------------------------------


@dataclass(frozen=True)
class SyntacticMorphism:
    """Monoid recognizing a language, with the letter map that does it."""

    monoid: Monoid
    letter_image: dict
    accepting_elements: frozenset
    alphabet: tuple

    def image_of_word(self, word):
        m = self.monoid
        acc = m.identity
        for a in word:
            try:
                acc = m.mul(acc, self.letter_image[a])
            except KeyError:
                raise UnknownLetter(f"letter {a!r} outside alphabet "
                                    f"{''.join(self.alphabet)}") from None
        return acc


def syntactic_monoid(dfa, cap=DEFAULT_SIZE_CAP):
    """Transition monoid of the minimal complete DFA, with the morphism."""
    mdfa = minimize(dfa)
    gens = [tuple(mdfa.delta[q][ai] for q in range(mdfa.n_states))
            for ai in range(len(mdfa.alphabet))]
    elements, rows, gen_index = close_transformations(mdfa.n_states, gens,
                                                      cap=cap)
    labels = _element_words(len(elements), rows, gen_index, mdfa.alphabet)
    monoid = Monoid(rows, 0, labels=labels, _trusted=True)
    letter_image = {a: gen_index[ai] for ai, a in enumerate(mdfa.alphabet)}
    accepting = frozenset(
        i for i, t in enumerate(elements)
        if t.mapping[mdfa.initial] in mdfa.accepting)
    return SyntacticMorphism(monoid, letter_image, accepting, mdfa.alphabet)


def _element_words(k, rows, gen_index, alphabet):
    """Shortest generator words naming each element, for reports."""
    labels = [None] * k
    labels[0] = "1"
    queue = [0]
    i = 0
    while i < len(queue):
        x = queue[i]
        for ai, a in enumerate(alphabet):
            y = rows[x][gen_index[ai]]
            if labels[y] is None:
                labels[y] = a if x == 0 else labels[x] + a
                queue.append(y)
        i += 1
    return labels


def morphism_accepts(morphism, word):
    """Recognition through the morphism; agrees with the source DFA."""
    return morphism.image_of_word(word) in morphism.accepting_elements


