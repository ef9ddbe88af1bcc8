"""Finite monoids as multiplication tables.

Elements are dense 0-based indices; the identity may sit at any index
because transition-monoid generation discovers it late.  A ``Monoid``
is immutable after construction and safe for concurrent reads; the
Green's-relation ideals and idempotent-power tables are cached lazily
(they are deterministic, so a benign race recomputes the same value).

Everything here is desk-scale: ideals are enumerated directly from the
table (O(size) per element) and derived constructions refuse to grow
past a configurable element cap.
"""

from array import array
from dataclasses import dataclass
from math import gcd

from ._backend import kernels
from .errors import (
    BadIdentity,
    IncompatibleCongruence,
    IndexOutOfRange,
    InternalDefect,
    NonAssociative,
    SizeCapExceeded,
)

DEFAULT_SIZE_CAP = 5000


class Monoid:
    """A finite monoid given by its full multiplication table.

    ``rows[x][y]`` is the product x*y.  Use :func:`make_monoid` to build
    one from untrusted input (it runs the full associativity scan);
    derived constructions (products, quotients, transition monoids) are
    associative by construction and skip the scan.
    """

    __slots__ = ("size", "identity", "rows", "labels", "_flat", "_omega",
                 "_right_sets", "_left_sets", "_idempotents")

    def __init__(self, rows, identity, labels=None, _trusted=False):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if not _trusted:
            _validate_table(rows, n, identity)
        self.size = n
        self.identity = identity
        self.rows = rows
        self.labels = tuple(labels) if labels is not None else None
        self._flat = None
        self._omega = None
        self._right_sets = None
        self._left_sets = None
        self._idempotents = None

    # -- basic algebra ------------------------------------------------

    def mul(self, x, y):
        """Product x*y by table lookup."""
        if not (0 <= x < self.size and 0 <= y < self.size):
            raise IndexOutOfRange(f"elements ({x}, {y}) of a size-{self.size} monoid")
        return self.rows[x][y]

    def power(self, x, k):
        """x^k for k >= 1."""
        acc = x
        for _ in range(k - 1):
            acc = self.rows[acc][x]
        return acc

    def omega_power(self, x):
        """The unique idempotent positive power of x."""
        return self.omega_table()[x]

    def omega_table(self):
        """Per-element idempotent powers, computed once."""
        if self._omega is None:
            self._omega = tuple(self._omega_of(x) for x in range(self.size))
        return self._omega

    def _omega_of(self, x):
        seen = {}
        acc = x
        k = 1
        while acc not in seen:
            seen[acc] = k
            acc = self.rows[acc][x]
            k += 1
        index = seen[acc]
        period = k - index
        # idempotent powers are the multiples of the period past the index
        e = period * ((index + period - 1) // period)
        return self.power(x, e)

    def idempotents(self):
        """All elements e with e*e = e (always contains the identity)."""
        if self._idempotents is None:
            self._idempotents = frozenset(
                e for e in range(self.size) if self.rows[e][e] == e)
        return self._idempotents

    def global_exponent(self):
        """Smallest n >= 1 such that x^n is idempotent for every x.

        lcm of the per-element cycle periods, bumped to clear the
        largest pre-cycle index.  Used for building witness words.
        """
        lcm = 1
        max_index = 1
        for x in range(self.size):
            seen = {}
            acc = x
            k = 1
            while acc not in seen:
                seen[acc] = k
                acc = self.rows[acc][x]
                k += 1
            index = seen[acc]
            period = k - index
            lcm = lcm * period // gcd(lcm, period)
            max_index = max(max_index, index)
        return lcm * ((max_index + lcm - 1) // lcm)

    # -- Green's relations ---------------------------------------------

    def right_ideal(self, x):
        """xM as a frozenset (row x of the table)."""
        if self._right_sets is None:
            self._right_sets = tuple(frozenset(row) for row in self.rows)
        return self._right_sets[x]

    def left_ideal(self, x):
        """Mx as a frozenset (column x of the table)."""
        if self._left_sets is None:
            self._left_sets = tuple(
                frozenset(self.rows[y][x] for y in range(self.size))
                for x in range(self.size))
        return self._left_sets[x]

    def r_related(self, x, y):
        return self.right_ideal(x) == self.right_ideal(y)

    def l_related(self, x, y):
        return self.left_ideal(x) == self.left_ideal(y)

    def leq_r(self, x, y):
        return self.right_ideal(x) <= self.right_ideal(y)

    def leq_l(self, x, y):
        return self.left_ideal(x) <= self.left_ideal(y)

    def is_r_trivial(self):
        """R is equality: x -> xM is injective."""
        return len({self.right_ideal(x) for x in range(self.size)}) == self.size

    def is_l_trivial(self):
        return len({self.left_ideal(x) for x in range(self.size)}) == self.size

    def is_aperiodic(self):
        """True iff x^(omega+1) = x^omega for every element."""
        om = self.omega_table()
        return all(self.rows[om[x]][x] == om[x] for x in range(self.size))

    # -- plumbing -------------------------------------------------------

    def flat_table(self):
        """Row-major table as an int array, shared with the kernels."""
        if self._flat is None:
            flat = array("i", bytes(4 * self.size * self.size))
            n = self.size
            for x, row in enumerate(self.rows):
                flat[x * n:(x + 1) * n] = array("i", row)
            self._flat = flat
        return self._flat

    def flat_omega(self):
        return array("i", self.omega_table())

    def label_of(self, x):
        if self.labels is not None and self.labels[x] is not None:
            return self.labels[x]
        return str(x)

    def __repr__(self):
        return f"Monoid(size={self.size}, identity={self.identity})"


def _validate_table(rows, n, identity):
    if n == 0:
        raise IndexOutOfRange("a monoid needs at least the identity element")
    for x, row in enumerate(rows):
        if len(row) != n:
            raise IndexOutOfRange(f"row {x} has length {len(row)}, expected {n}")
        for y, v in enumerate(row):
            if not 0 <= v < n:
                raise IndexOutOfRange(f"entry ({x},{y}) = {v} outside [0,{n})")
    if not 0 <= identity < n:
        raise IndexOutOfRange(f"identity {identity} outside [0,{n})")
    for x in range(n):
        if rows[identity][x] != x or rows[x][identity] != x:
            raise BadIdentity(f"element {identity} does not act neutrally on {x}")
    flat = array("i", [v for row in rows for v in row])
    bad = kernels.first_nonassociative(flat, n)
    if bad >= 0:
        z = bad % n
        y = (bad // n) % n
        x = bad // (n * n)
        raise NonAssociative(x, y, z)


def make_monoid(table, identity, labels=None):
    """Validated monoid from a square table: full associativity scan."""
    return Monoid(table, identity, labels=labels)


def multiply(monoid, x, y):
    """Product of two elements (table lookup)."""
    return monoid.mul(x, y)


def omega_power(monoid, x):
    return monoid.omega_power(x)


def idempotents(monoid):
    return monoid.idempotents()


def is_aperiodic(monoid):
    return monoid.is_aperiodic()


def content(word):
    """Alphabet of a word: the set of letters occurring in it."""
    return frozenset(word)


@dataclass(frozen=True)
class Congruence:
    """A partition of a monoid compatible with multiplication."""

    owner: Monoid
    class_of: tuple
    class_count: int

    def __post_init__(self):
        if len(self.class_of) != self.owner.size:
            raise IncompatibleCongruence("class map not total")
        seen = set(self.class_of)
        if seen != set(range(self.class_count)):
            raise IncompatibleCongruence("class indices not dense")

    @property
    def is_identity(self):
        return self.class_count == self.owner.size

    def check_compatibility(self):
        """Raise unless class_of(x*y) depends only on the classes of x, y."""
        m = self.owner
        cls = self.class_of
        prod = {}
        for x in range(m.size):
            cx = cls[x]
            row = m.rows[x]
            for y in range(m.size):
                key = (cx, cls[y])
                c = cls[row[y]]
                if prod.setdefault(key, c) != c:
                    raise IncompatibleCongruence(
                        f"product class of {key} is ambiguous")
        return prod


def _classes_from_profiles(monoid, profiles):
    index = {}
    class_of = []
    for x in range(monoid.size):
        class_of.append(index.setdefault(profiles[x], len(index)))
    return Congruence(monoid, tuple(class_of), len(index))


def sim_k(monoid):
    """Congruence x ~ y iff for all idempotents e:
    (ex R e or ey R e) implies ex = ey.

    Computed via per-element profiles: the value ex where ex R e, a
    blank otherwise; equal profiles are exactly the related pairs.
    """
    idems = sorted(monoid.idempotents())
    profiles = []
    for x in range(monoid.size):
        prof = []
        for e in idems:
            ex = monoid.rows[e][x]
            prof.append(ex if monoid.r_related(ex, e) else -1)
        profiles.append(tuple(prof))
    cong = _classes_from_profiles(monoid, profiles)
    _assert_compatible(cong, "sim_k")
    return cong


def sim_d(monoid):
    """Left-right dual of :func:`sim_k` (xe L e clauses)."""
    idems = sorted(monoid.idempotents())
    profiles = []
    for x in range(monoid.size):
        prof = []
        for e in idems:
            xe = monoid.rows[x][e]
            prof.append(xe if monoid.l_related(xe, e) else -1)
        profiles.append(tuple(prof))
    cong = _classes_from_profiles(monoid, profiles)
    _assert_compatible(cong, "sim_d")
    return cong


def _assert_compatible(cong, what):
    try:
        cong.check_compatibility()
    except IncompatibleCongruence as exc:  # pragma: no cover - defect guard
        raise InternalDefect(f"{what} produced an incompatible relation") from exc


def quotient(monoid, cong):
    """Quotient monoid on the classes, with the projection map.

    The projection x -> class_of(x) is a surjective homomorphism.
    """
    if cong.owner is not monoid:
        raise IncompatibleCongruence("congruence belongs to a different monoid")
    prod = cong.check_compatibility()
    k = cong.class_count
    rows = [[0] * k for _ in range(k)]
    for (cx, cy), c in prod.items():
        rows[cx][cy] = c
    labels = None
    if monoid.labels is not None:
        labels = [None] * k
        for x in range(monoid.size - 1, -1, -1):
            labels[cong.class_of[x]] = monoid.labels[x]
    q = Monoid(rows, cong.class_of[monoid.identity], labels=labels,
               _trusted=True)
    return q, cong.class_of


def direct_product(m1, m2, cap=DEFAULT_SIZE_CAP):
    """Componentwise product monoid of size |M|*|N|."""
    n1, n2 = m1.size, m2.size
    if n1 * n2 > cap:
        raise SizeCapExceeded(f"product size {n1 * n2} exceeds cap {cap}")
    rows = []
    for x1 in range(n1):
        r1 = m1.rows[x1]
        for x2 in range(n2):
            r2 = m2.rows[x2]
            rows.append([r1[y1] * n2 + r2[y2]
                         for y1 in range(n1) for y2 in range(n2)])
    return Monoid(rows, m1.identity * n2 + m2.identity, _trusted=True)


@dataclass(frozen=True)
class Transformation:
    """A total map on a finite point set, used to generate monoids."""

    domain_size: int
    mapping: tuple

    def __post_init__(self):
        if len(self.mapping) != self.domain_size or any(
                not 0 <= p < self.domain_size for p in self.mapping):
            raise IndexOutOfRange("transformation image outside the point set")

    def then(self, other):
        """self followed by other."""
        return Transformation(
            self.domain_size, tuple(other.mapping[p] for p in self.mapping))

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(range(n)))


def close_transformations(n_points, generators, cap=DEFAULT_SIZE_CAP):
    """Worklist closure of transformations under composition.

    Returns (elements, rows, gen_index) where ``elements`` lists the
    distinct compositions (identity first, then breadth-first by word
    length), ``rows`` is the multiplication table and ``gen_index[i]``
    is the element index of the i-th generator.
    """
    gens = []
    for g in generators:
        if isinstance(g, Transformation):
            if g.domain_size != n_points:
                raise IndexOutOfRange("generator on a different point set")
            gens.append(g)
        else:
            gens.append(Transformation(n_points, tuple(g)))
    ident = Transformation.identity(n_points)
    index = {ident.mapping: 0}
    elements = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                c = t.then(g)
                if c.mapping not in index:
                    if len(elements) >= cap:
                        raise SizeCapExceeded(
                            f"transformation closure exceeds cap {cap}")
                    index[c.mapping] = len(elements)
                    elements.append(c)
                    nxt.append(c)
        frontier = nxt
    rows = [[index[a.then(b).mapping] for b in elements] for a in elements]
    gen_index = [index[g.mapping] for g in gens]
    return elements, rows, gen_index


def transition_monoid(n_points, generators, gen_labels=None,
                      cap=DEFAULT_SIZE_CAP):
    """Monoid generated by transformations, with the letter map.

    The elements are exactly the distinct compositions of the
    generators plus the adjoined identity.
    """
    elements, rows, gen_index = close_transformations(n_points, generators,
                                                      cap=cap)
    letter_map = {}
    if gen_labels is not None:
        letter_map = {a: gen_index[i] for i, a in enumerate(gen_labels)}
    monoid = Monoid(rows, 0, _trusted=True)
    return monoid, letter_map
