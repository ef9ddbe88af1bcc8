"""Unambiguous interval temporal logic over finite words.

Formulas split the word at the first (F) or last (L) occurrence of a
letter and evaluate the two parts; the split is unique, which is what
makes the logic unambiguous.  Two metrics grade a formula: ``turns``
counts blocks of split directions along any branch, ``nesting_depth``
counts modal nesting.  The fragment with at most m turns and depth n
distinguishes exactly the word pairs separated by condensed rankers
with m blocks and depth n; ``distinguishing_formula`` realizes the
constructive half of that correspondence.
"""

from dataclasses import dataclass

from . import rankers
from .errors import InternalDefect, ParseError, StateCapExceeded
from .languages import Dfa, minimize, regex_to_dfa, syntactic_monoid
from .terms import DEFAULT_SEARCH_CAP
from .varieties import in_wm


@dataclass(frozen=True)
class Formula:
    """AST node; kind in {top, bot, not, or, and, fmod, lmod}.

    Modal nodes use ``a`` / ``b`` for the two operand formulas and
    ``letter`` for the split letter.
    """

    kind: str
    a: object = None
    b: object = None
    letter: str = None

    def __str__(self):
        return render_formula(self)


TRUE = Formula("top")
FALSE = Formula("bot")


def fnot(f):
    return Formula("not", f)


def for_(f, g):
    return Formula("or", f, g)


def fand(f, g):
    return Formula("and", f, g)


def fmod(f, letter, g):
    return Formula("fmod", f, g, letter)


def lmod(f, letter, g):
    return Formula("lmod", f, g, letter)


def eval_formula(word, formula):
    """Word semantics; modal operators split at the first/last letter."""
    k = formula.kind
    if k == "top":
        return True
    if k == "bot":
        return False
    if k == "not":
        return not eval_formula(word, formula.a)
    if k == "or":
        return eval_formula(word, formula.a) or eval_formula(word, formula.b)
    if k == "and":
        return eval_formula(word, formula.a) and eval_formula(word, formula.b)
    if k == "fmod":
        i = word.find(formula.letter)
        if i < 0:
            return False
        return (eval_formula(word[:i], formula.a)
                and eval_formula(word[i + 1:], formula.b))
    i = word.rfind(formula.letter)
    if i < 0:
        return False
    return (eval_formula(word[:i], formula.a)
            and eval_formula(word[i + 1:], formula.b))


def turns(formula):
    """Direction-alternation metric: a forward split charges its left
    operand, a backward split its right operand."""
    k = formula.kind
    if k in ("top", "bot"):
        return 0
    if k == "not":
        return turns(formula.a)
    if k in ("or", "and"):
        return max(turns(formula.a), turns(formula.b))
    if k == "fmod":
        return max(turns(formula.a) + 1, turns(formula.b))
    return max(turns(formula.a), turns(formula.b) + 1)


def nesting_depth(formula):
    """Modal nesting: both operands of a modality sit one level deeper."""
    k = formula.kind
    if k in ("top", "bot"):
        return 0
    if k == "not":
        return nesting_depth(formula.a)
    if k in ("or", "and"):
        return max(nesting_depth(formula.a), nesting_depth(formula.b))
    return max(nesting_depth(formula.a) + 1, nesting_depth(formula.b) + 1)


def in_fragment(formula, m, n):
    return turns(formula) <= m and nesting_depth(formula) <= n


# -- compilation to automata ------------------------------------------


def _const_dfa(alphabet, accept_all):
    alpha = tuple(sorted(alphabet))
    row = tuple(0 for _ in alpha)
    return Dfa(1, 0, frozenset([0]) if accept_all else frozenset(),
               alpha, (row,))


def _complement(d):
    return Dfa(d.n_states, d.initial,
               frozenset(range(d.n_states)) - d.accepting, d.alphabet,
               d.delta)


def _product(d1, d2, conj, state_cap):
    pairs = {(d1.initial, d2.initial): 0}
    order = [(d1.initial, d2.initial)]
    delta = []
    i = 0
    while i < len(order):
        q1, q2 = order[i]
        row = []
        for ai in range(len(d1.alphabet)):
            nxt = (d1.delta[q1][ai], d2.delta[q2][ai])
            if nxt not in pairs:
                if len(order) >= state_cap:
                    raise StateCapExceeded(
                        f"product exceeds cap {state_cap}")
                pairs[nxt] = len(order)
                order.append(nxt)
            row.append(pairs[nxt])
        delta.append(tuple(row))
        i += 1
    if conj:
        accepting = frozenset(i for i, (q1, q2) in enumerate(order)
                              if q1 in d1.accepting and q2 in d2.accepting)
    else:
        accepting = frozenset(i for i, (q1, q2) in enumerate(order)
                              if q1 in d1.accepting or q2 in d2.accepting)
    return Dfa(len(order), 0, accepting, d1.alphabet, tuple(delta))


def _first_split(d1, a, d2, state_cap):
    """Automaton for (L(d1) restricted to a-free words) a L(d2).

    Phase 1 runs d1 while no ``a`` has been read; the first ``a`` jumps
    to d2's initial state if the a-free prefix was accepted, else to a
    sink.  Phase-1 states never accept (the split letter must occur).
    """
    n1, n2 = d1.n_states, d2.n_states
    if n1 + n2 + 1 > state_cap:
        raise StateCapExceeded(f"split construction exceeds cap {state_cap}")
    sink = n1 + n2
    ai_split = d1.alphabet.index(a)
    delta = []
    for q in range(n1):
        row = list(d1.delta[q])
        row[ai_split] = n1 + d2.initial if q in d1.accepting else sink
        delta.append(tuple(row))
    for q in range(n2):
        delta.append(tuple(n1 + t for t in d2.delta[q]))
    delta.append(tuple(sink for _ in d1.alphabet))
    accepting = frozenset(n1 + q for q in d2.accepting)
    return Dfa(n1 + n2 + 1, d1.initial, accepting, d1.alphabet, tuple(delta))


def _last_split(d1, a, d2, state_cap):
    """Automaton for L(d1) a (L(d2) restricted to a-free words).

    Subset construction: a thread in d2 dies on ``a``, so the split
    letter consumed at the jump is necessarily the last one.
    """
    ai_split = d1.alphabet.index(a)
    init = frozenset([(0, d1.initial)])
    subsets = {init: 0}
    order = [init]
    delta = []
    i = 0
    while i < len(order):
        current = order[i]
        row = []
        for ai in range(len(d1.alphabet)):
            nxt = set()
            for phase, q in current:
                if phase == 0:
                    nxt.add((0, d1.delta[q][ai]))
                    if ai == ai_split and q in d1.accepting:
                        nxt.add((1, d2.initial))
                elif ai != ai_split:
                    nxt.add((1, d2.delta[q][ai]))
            nxt = frozenset(nxt)
            if nxt not in subsets:
                if len(order) >= state_cap:
                    raise StateCapExceeded(
                        f"split construction exceeds cap {state_cap}")
                subsets[nxt] = len(order)
                order.append(nxt)
            row.append(subsets[nxt])
        delta.append(tuple(row))
        i += 1
    accepting = frozenset(
        i for i, s in enumerate(order)
        if any(phase == 1 and q in d2.accepting for phase, q in s))
    return Dfa(len(order), 0, accepting, d1.alphabet, tuple(delta))


def compile_formula(formula, alphabet, state_cap=10 ** 5):
    """DFA for the formula's language over the given alphabet."""
    alpha = tuple(sorted(alphabet))

    def go(f):
        k = f.kind
        if k == "top":
            return _const_dfa(alpha, True)
        if k == "bot":
            return _const_dfa(alpha, False)
        if k == "not":
            return minimize(_complement(go(f.a)))
        if k == "or":
            return minimize(_product(go(f.a), go(f.b), False, state_cap))
        if k == "and":
            return minimize(_product(go(f.a), go(f.b), True, state_cap))
        if f.letter not in alpha:
            raise ParseError(0, f"modal letter {f.letter!r} in the alphabet")
        if k == "fmod":
            return minimize(_first_split(go(f.a), f.letter, go(f.b),
                                         state_cap))
        return minimize(_last_split(go(f.a), f.letter, go(f.b), state_cap))

    return go(formula)


# -- distinguishing formulas ------------------------------------------


def _split_first(word, a):
    i = word.index(a)
    return word[:i], word[i + 1:]


def _split_last(word, a):
    i = word.rindex(a)
    return word[:i], word[i + 1:]


def _distinguish_forward(u, v, alphabet, m, n):
    """Formula telling u and v apart, given they disagree on the
    forward-leading ranker family at (m, n).

    Follows the recursive characterization of that family: an alphabet
    difference, a backward disagreement one level down, or a
    disagreement of the first-letter split parts.
    """
    diff = sorted(set(u) ^ set(v))
    if diff:
        return fmod(TRUE, diff[0], TRUE)
    if not rankers.equivalent(u, v, alphabet, m - 1, n - 1, "Y"):
        return _distinguish_backward(u, v, alphabet, m - 1, n - 1)
    for a in sorted(set(u)):
        u0, u1 = _split_first(u, a)
        v0, v1 = _split_first(v, a)
        if not rankers.equivalent(u0, v0, alphabet, m - 1, n - 1, "Y"):
            psi = _distinguish_backward(u0, v0, alphabet, m - 1, n - 1)
            return fmod(psi, a, TRUE)
        if not rankers.equivalent(u1, v1, alphabet, m, n - 1, "X"):
            psi = _distinguish_forward(u1, v1, alphabet, m, n - 1)
            return fmod(TRUE, a, psi)
    raise InternalDefect("forward disagreement without a witnessing clause")


def _distinguish_backward(u, v, alphabet, m, n):
    diff = sorted(set(u) ^ set(v))
    if diff:
        return lmod(TRUE, diff[0], TRUE)
    if not rankers.equivalent(u, v, alphabet, m - 1, n - 1, "X"):
        return _distinguish_forward(u, v, alphabet, m - 1, n - 1)
    for a in sorted(set(u)):
        u0, u1 = _split_last(u, a)
        v0, v1 = _split_last(v, a)
        if not rankers.equivalent(u1, v1, alphabet, m - 1, n - 1, "X"):
            psi = _distinguish_forward(u1, v1, alphabet, m - 1, n - 1)
            return lmod(TRUE, a, psi)
        if not rankers.equivalent(u0, v0, alphabet, m, n - 1, "Y"):
            psi = _distinguish_backward(u0, v0, alphabet, m, n - 1)
            return lmod(psi, a, TRUE)
    raise InternalDefect("backward disagreement without a witnessing clause")


def distinguishing_formula(u, v, alphabet, m, n):
    """A fragment formula separating the words, or None if equivalent.

    When the words disagree on the two-sided ranker family at (m, n),
    the returned formula has at most m turns and depth at most n, holds
    on exactly one of the words, and is built by recursing on whichever
    side of the comparison fails first.
    """
    if rankers.equivalent(u, v, alphabet, m, n, "full"):
        return None
    if not rankers.equivalent(u, v, alphabet, m, n, "X"):
        formula = _distinguish_forward(u, v, alphabet, m, n)
    else:
        formula = _distinguish_backward(u, v, alphabet, m, n)
    if eval_formula(u, formula) == eval_formula(v, formula):
        raise InternalDefect("constructed formula does not separate the words")
    if not in_fragment(formula, m, n):
        raise InternalDefect("constructed formula leaves the fragment")
    return formula


def definable_in_itl_m(language, m, cap=DEFAULT_SEARCH_CAP, jobs=1):
    """Whether the language is expressible with at most m turns.

    ``language`` is a DFA or a regex AST; decided on its syntactic
    monoid through the join-level identity.
    """
    if not isinstance(language, Dfa):
        language = regex_to_dfa(language)
    morphism = syntactic_monoid(language)
    return in_wm(morphism.monoid, m, cap=cap, jobs=jobs)


# -- surface syntax ---------------------------------------------------
#
# atom := 'true' | 'false' ; unary := '!' expr ;
# modal := '(' expr ('F'|'L')<letter> expr ')' ;
# binary '&' and '|' with precedence ! > & > |.


def _formula_tokens(text):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "!&|()":
            tokens.append((c, i))
            i += 1
        elif c.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            w = text[i:j]
            if w in ("true", "false"):
                tokens.append((w, i))
            elif len(w) == 2 and w[0] in "FL" and w[1].islower():
                tokens.append(("modal", i, w[0], w[1]))
            else:
                raise ParseError(i, "'true', 'false', or a modality")
            i = j
        else:
            raise ParseError(i, "formula token")
    tokens.append(("end", len(text)))
    return tokens


class _FormulaParser:
    def __init__(self, text):
        self.tokens = _formula_tokens(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        f = self.or_expr()
        if self.peek()[0] != "end":
            raise ParseError(self.peek()[1], "end of formula")
        return f

    def or_expr(self):
        f = self.and_expr()
        while self.peek()[0] == "|":
            self.take()
            f = for_(f, self.and_expr())
        return f

    def and_expr(self):
        f = self.unary()
        while self.peek()[0] == "&":
            self.take()
            f = fand(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok[0] == "!":
            self.take()
            return fnot(self.unary())
        if tok[0] == "true":
            self.take()
            return TRUE
        if tok[0] == "false":
            self.take()
            return FALSE
        if tok[0] == "(":
            self.take()
            left = self.or_expr()
            tok = self.take()
            if tok[0] == "modal":
                right = self.or_expr()
                closing = self.take()
                if closing[0] != ")":
                    raise ParseError(closing[1], "')'")
                ctor = fmod if tok[2] == "F" else lmod
                return ctor(left, tok[3], right)
            if tok[0] == ")":
                return left
            raise ParseError(tok[1], "')' or a modality")
        raise ParseError(tok[1], "formula")


def parse_formula(text):
    return _FormulaParser(text).parse()


def render_formula(formula):
    """Canonical text form; parse(render(f)) reproduces the AST."""
    k = formula.kind
    if k == "top":
        return "true"
    if k == "bot":
        return "false"
    if k == "not":
        sub = render_formula(formula.a)
        if formula.a.kind in ("or", "and"):
            sub = f"({sub})"
        return f"!{sub}"
    if k == "or":
        left = render_formula(formula.a)
        right = render_formula(formula.b)
        if formula.b.kind == "or":
            right = f"({right})"
        return f"{left} | {right}"
    if k == "and":
        left = render_formula(formula.a)
        right = render_formula(formula.b)
        if formula.a.kind == "or":
            left = f"({left})"
        if formula.b.kind in ("or", "and"):
            right = f"({right})"
        return f"{left} & {right}"
    op = "F" if k == "fmod" else "L"
    return (f"({render_formula(formula.a)} {op}{formula.letter} "
            f"{render_formula(formula.b)})")
