"""Omega-terms, identities between them, and brute-force satisfaction.

Terms are hash-consed: the constructors intern every node, so shared
subterms are physically shared and structural equality is object
identity.  Concatenation is canonicalized to a right-leaning spine with
unit factors dropped, which keeps the identity families linear-sized
(their naive expansions are exponential in the level).

An identity is checked on a monoid by enumerating every variable
assignment in mixed-radix order (first variable most significant) and
evaluating both sides through a small straight-line program shared with
the kernel backends.  The first failing assignment in that order is
therefore deterministic.
"""

from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ._backend import kernels
from ._kernels_py import OP_MUL, OP_OMEGA, OP_ONE, OP_VAR
from .errors import ParseError, SearchSpaceExceeded, UnboundVariable

DEFAULT_SEARCH_CAP = 10 ** 8

_MIN_PARALLEL_SPACE = 1 << 16


class Term:
    """Interned omega-term node; build only via one/var/cat/omega."""

    __slots__ = ("kind", "a", "b")

    def __init__(self, kind, a=None, b=None):
        self.kind = kind
        self.a = a
        self.b = b

    def __repr__(self):
        return f"Term({render_term(self)!r})"


_interned = {}


def _node(key, kind, a=None, b=None):
    t = _interned.get(key)
    if t is None:
        t = Term(kind, a, b)
        _interned[key] = t
    return t


ONE = _node(("one",), "one")


def var(name):
    if not name:
        raise ParseError(0, "nonempty variable name")
    return _node(("var", name), "var", name)


def _spine(t, out):
    while t.kind == "cat":
        out.append(t.a)
        t = t.b
    if t is not ONE:
        out.append(t)


def cat(*terms):
    """Concatenation, flattened right-associative, unit factors dropped."""
    factors = []
    for t in terms:
        _spine(t, factors)
    if not factors:
        return ONE
    acc = factors[-1]
    for f in reversed(factors[:-1]):
        acc = _node(("cat", id(f), id(acc)), "cat", f, acc)
    return acc


def omega(t):
    """Omega power: evaluates to the idempotent generated by the body."""
    return _node(("omega", id(t)), "omega", t)


def term_variables(t):
    """Variable names in first-appearance (left-to-right) order."""
    out = []
    seen = set()

    def walk(s):
        if s.kind == "var":
            if s.a not in seen:
                seen.add(s.a)
                out.append(s.a)
        elif s.kind == "cat":
            walk(s.a)
            walk(s.b)
        elif s.kind == "omega":
            walk(s.a)

    walk(t)
    return out


@dataclass(frozen=True)
class IdentityOfTerms:
    """A pair of omega-terms with an ordered variable list."""

    lhs: Term
    rhs: Term
    variables: tuple

    def __post_init__(self):
        occurring = set(term_variables(self.lhs)) | set(term_variables(self.rhs))
        if not occurring <= set(self.variables):
            missing = sorted(occurring - set(self.variables))
            raise UnboundVariable(missing[0])

    def render(self):
        return f"{render_term(self.lhs)} = {render_term(self.rhs)}"


def identity_of(lhs, rhs, variables=None):
    if variables is None:
        variables = term_variables(lhs)
        for name in term_variables(rhs):
            if name not in variables:
                variables.append(name)
    return IdentityOfTerms(lhs, rhs, tuple(variables))


# -- evaluation -------------------------------------------------------


def eval_term(monoid, term, assignment):
    """Homomorphic evaluation of a term under a variable assignment."""
    memo = {}

    def go(t):
        v = memo.get(id(t))
        if v is None:
            if t.kind == "one":
                v = monoid.identity
            elif t.kind == "var":
                try:
                    v = assignment[t.a]
                except KeyError:
                    raise UnboundVariable(t.a) from None
            elif t.kind == "cat":
                v = monoid.mul(go(t.a), go(t.b))
            else:
                v = monoid.omega_power(go(t.a))
            memo[id(t)] = v
        return v

    return go(term)


def compile_identity(ident):
    """Flatten both sides into one shared straight-line program.

    Returns (prog, n_instr, lhs_reg, rhs_reg); register j is the value
    of instruction j.  Interning makes common subterms compile once.
    """
    var_index = {name: i for i, name in enumerate(ident.variables)}
    prog = array("i")
    memo = {}

    def emit(op, a, b=0):
        prog.extend((op, a, b))
        return len(prog) // 3 - 1

    def go(t):
        r = memo.get(id(t))
        if r is None:
            if t.kind == "one":
                r = emit(OP_ONE, 0)
            elif t.kind == "var":
                r = emit(OP_VAR, var_index[t.a])
            elif t.kind == "cat":
                r = emit(OP_MUL, go(t.a), go(t.b))
            else:
                r = emit(OP_OMEGA, go(t.a))
            memo[id(t)] = r
        return r

    lhs_reg = go(ident.lhs)
    rhs_reg = go(ident.rhs)
    return prog, len(prog) // 3, lhs_reg, rhs_reg


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of an identity check; falsy iff a counterexample exists."""

    holds: bool
    counterexample: dict | None = None

    def __bool__(self):
        return self.holds


def satisfies_identity(monoid, ident, cap=DEFAULT_SEARCH_CAP, jobs=1):
    """Check an identity by scanning every assignment.

    On failure the counterexample is the lexicographically first one
    with respect to the identity's variable order.  Raises
    :class:`SearchSpaceExceeded` when |M|^#variables exceeds ``cap``.
    """
    names = ident.variables
    nvars = len(names)
    size = monoid.size
    space = size ** nvars
    if space > cap:
        raise SearchSpaceExceeded(space, cap)
    if nvars == 0:
        same = eval_term(monoid, ident.lhs, {}) == eval_term(monoid, ident.rhs, {})
        return IdentityVerdict(same, None if same else {})
    prog, n_instr, lhs_reg, rhs_reg = compile_identity(ident)
    flat = monoid.flat_table()
    om = monoid.flat_omega()
    args = (flat, om, size, monoid.identity, prog, n_instr, lhs_reg, rhs_reg,
            nvars)
    if jobs > 1 and space > _MIN_PARALLEL_SPACE:
        chunk = -(-space // jobs)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(kernels.scan_identity, *args, s,
                            min(chunk, space - s))
                for s in range(0, space, chunk)
            ]
            hits = [f.result() for f in futures]
        hit = min((h for h in hits if h >= 0), default=-1)
    else:
        hit = kernels.scan_identity(*args, 0, space)
    if hit < 0:
        return IdentityVerdict(True)
    assignment = {}
    rem = hit
    for k in range(nvars - 1, -1, -1):
        assignment[names[k]] = rem % size
        rem //= size
    return IdentityVerdict(False, assignment)


# -- identity families ------------------------------------------------


def da_identity():
    """(x y)^w x (x y)^w = (x y)^w"""
    x, y = var("x"), var("y")
    e = omega(cat(x, y))
    return IdentityOfTerms(cat(e, x, e), e, ("x", "y"))


def r2_identity():
    """(z x)^w z = (z x)^w"""
    z, x = var("z"), var("x")
    e = omega(cat(z, x))
    return IdentityOfTerms(cat(e, z), e, ("z", "x"))


def l2_identity():
    """z (y z)^w = (y z)^w"""
    z, y = var("z"), var("y")
    e = omega(cat(y, z))
    return IdentityOfTerms(cat(z, e), e, ("z", "y"))


def band_identity():
    """x x = x"""
    x = var("x")
    return IdentityOfTerms(cat(x, x), x, ("x",))


def commutativity_identity():
    """x y = y x"""
    x, y = var("x"), var("y")
    return IdentityOfTerms(cat(x, y), cat(y, x), ("x", "y"))


def _level_chains(m):
    """Shared prefix/suffix product chains of the join-level family.

    Level i >= 2 extends the chains by one omega factor on each side:
    the next prefix factor wraps (prefix z suffix x_i) and the next
    suffix factor wraps (y_i prefix z suffix).  Level 1 factors are
    units and vanish.  Returns per-level snapshots
    echains[i] = e_i...e_1 and fchains[i] = f_1...f_i for i = 1..m.
    """
    z = var("z")
    ech, fch = ONE, ONE
    echains, fchains = [None, ech], [None, fch]
    for i in range(1, m):
        core = cat(ech, z, fch)
        e_next = omega(cat(core, var(f"x{i}")))
        f_next = omega(cat(var(f"y{i}"), core))
        ech = cat(e_next, ech)
        fch = cat(fch, f_next)
        echains.append(ech)
        fchains.append(fch)
    return z, echains, fchains


def w_identity(m):
    """The join-level identity at level m >= 2 (2m-1 variables)."""
    if m < 2:
        raise ValueError("join levels start at m = 2")
    z, ech, fch = _level_chains(m)
    names = ["z"]
    names += [f"x{i}" for i in range(1, m)]
    names += [f"y{i}" for i in range(1, m)]
    return IdentityOfTerms(cat(ech[m], z, fch[m]), cat(ech[m], fch[m]),
                           tuple(names))


def rm_identity(m):
    """Corner identity for the m-th level, prefix-sided."""
    if m < 2:
        raise ValueError("corner levels start at m = 2")
    z, ech, fch = _level_chains(m)
    names = ["z"]
    names += [f"x{i}" for i in range(1, m)]
    names += [f"y{i}" for i in range(1, m - 1)]
    return IdentityOfTerms(cat(ech[m], z, fch[m - 1]),
                           cat(ech[m], fch[m - 1]), tuple(names))


def lm_identity(m):
    """Corner identity for the m-th level, suffix-sided (mirror of rm)."""
    if m < 2:
        raise ValueError("corner levels start at m = 2")
    z, ech, fch = _level_chains(m)
    names = ["z"]
    names += [f"y{i}" for i in range(1, m)]
    names += [f"x{i}" for i in range(1, m - 1)]
    return IdentityOfTerms(cat(ech[m - 1], z, fch[m]),
                           cat(ech[m - 1], fch[m]), tuple(names))


def mirror_term(t, rename=None):
    """Reverse every concatenation; optionally rename variables."""
    if t.kind == "one":
        return ONE
    if t.kind == "var":
        return var(rename.get(t.a, t.a)) if rename else t
    if t.kind == "omega":
        return omega(mirror_term(t.a, rename))
    factors = []
    _spine(t, factors)
    return cat(*(mirror_term(f, rename) for f in reversed(factors)))


# -- surface syntax ---------------------------------------------------
#
# term := factor+ ; factor := '1' | ident | '(' term ')' '^w' | '(' term ')'
# identity := term '=' term ; whitespace separates juxtaposed factors.


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()=":
            tokens.append((c, i))
            i += 1
        elif c == "^":
            if text[i:i + 2] != "^w":
                raise ParseError(i, "'^w'")
            tokens.append(("^w", i))
            i += 2
        elif c == "1":
            tokens.append(("1", i))
            i += 1
        elif c.isalpha():
            j = i + 1
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(("ident", i, text[i:j]))
            i = j
        else:
            raise ParseError(i, "factor")
    tokens.append(("end", len(text)))
    return tokens


class _TermParser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def term(self):
        factors = [self.factor()]
        while self.peek()[0] in ("1", "ident", "("):
            factors.append(self.factor())
        return cat(*factors)

    def factor(self):
        tok = self.peek()
        if tok[0] == "1":
            self.pos += 1
            return ONE
        if tok[0] == "ident":
            self.pos += 1
            return var(tok[2])
        if tok[0] == "(":
            self.pos += 1
            inner = self.term()
            if self.peek()[0] != ")":
                raise ParseError(self.peek()[1], "')'")
            self.pos += 1
            if self.peek()[0] == "^w":
                self.pos += 1
                return omega(inner)
            return inner
        raise ParseError(tok[1], "factor")

    def expect_end(self):
        if self.peek()[0] != "end":
            raise ParseError(self.peek()[1], "end of input")


def parse_term(text):
    p = _TermParser(text)
    t = p.term()
    p.expect_end()
    return t


def parse_identity(text):
    """Parse "lhs = rhs"; variables ordered by first appearance."""
    p = _TermParser(text)
    lhs = p.term()
    if p.peek()[0] != "=":
        raise ParseError(p.peek()[1], "'='")
    p.pos += 1
    rhs = p.term()
    p.expect_end()
    return identity_of(lhs, rhs)


def render_term(t):
    """Flat rendering; concatenation is a space-separated factor list."""
    if t.kind == "one":
        return "1"
    if t.kind == "var":
        return t.a
    if t.kind == "omega":
        return f"({render_term(t.a)})^w"
    factors = []
    _spine(t, factors)
    return " ".join(render_term(f) for f in factors)
