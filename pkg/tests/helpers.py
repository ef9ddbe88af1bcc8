"""Independent oracles and shared property-suite runners.

Everything here deliberately avoids the code paths it is used to
check: the regex matcher walks the AST directly, the closure oracle is
a fixed-point scan over full product sets, and the formula-semantics
pool works on truth vectors instead of automata.
"""

from functools import lru_cache
from itertools import product

from twhier import rankers
from twhier.rankers import equivalent


def all_words(alphabet, max_len):
    """Every word up to the length bound, shortest first."""
    letters = sorted(alphabet)
    out = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + a for w in frontier for a in letters]
        out.extend(frontier)
    return out


def naive_regex_match(node, word):
    """Backtracking AST matcher; the oracle for the automaton pipeline."""

    @lru_cache(maxsize=None)
    def match(n, w):
        if n.kind == "empty":
            return False
        if n.kind == "epsilon":
            return w == ""
        if n.kind == "lit":
            return w == n.a
        if n.kind == "union":
            return match(n.a, w) or match(n.b, w)
        if n.kind == "cat":
            return any(match(n.a, w[:i]) and match(n.b, w[i:])
                       for i in range(len(w) + 1))
        if w == "":
            return True
        return any(match(n.a, w[:i]) and match(n, w[i:])
                   for i in range(1, len(w) + 1))

    return match(node, word)


def naive_transformation_closure(n_points, generators):
    """Fixed-point closure by repeated full products; closure oracle."""
    ident = tuple(range(n_points))
    elems = {ident} | {tuple(g) for g in generators}
    while True:
        new = {tuple(g[x] for x in f) for f in elems for g in elems}
        if new <= elems:
            return elems
        elems |= new


def brute_force_assoc_violation(rows):
    """First (x, y, z) with (xy)z != x(yz) in scan order, or None."""
    n = len(rows)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
                    return (x, y, z)
    return None


# -- ranker lemma suites -----------------------------------------------


def one_block_order_suite(alphabet, max_len, max_depth_sum):
    """Order comparisons of one-directional rankers transfer along
    one-block equivalence.  Returns the number of comparisons checked;
    raises AssertionError on any violation."""
    words = all_words(alphabet, max_len)
    letters = sorted(alphabet)
    pairs_checked = 0
    shapes = [(lr, ls) for lr in range(1, max_depth_sum)
              for ls in range(1, max_depth_sum) if lr + ls <= max_depth_sum]
    forward = {lr: [rankers.Ranker(tuple(("X", a) for a in seq))
                    for seq in product(letters, repeat=lr)]
               for lr in {s[0] for s in shapes}}
    backward = {ls: [rankers.Ranker(tuple(("Y", a) for a in seq))
                     for seq in product(letters, repeat=ls)]
                for ls in {s[1] for s in shapes}}
    for u in words:
        for v in words:
            for lr, ls in shapes:
                depth = lr + ls
                if not equivalent(u, v, alphabet, 1, depth, "full"):
                    continue
                for r in forward[lr]:
                    ru, rv = rankers.eval_ranker(r, u), rankers.eval_ranker(r, v)
                    if (ru is None) != (rv is None):
                        raise AssertionError(
                            f"definedness of {r} differs on {u!r}/{v!r}")
                    if ru is None:
                        continue
                    for s in backward[ls]:
                        su = rankers.eval_ranker(s, u)
                        sv = rankers.eval_ranker(s, v)
                        if (su is None) != (sv is None):
                            raise AssertionError(
                                f"definedness of {s} differs on {u!r}/{v!r}")
                        if su is None:
                            continue
                        assert (ru < su) == (rv < sv), \
                            f"order of {r},{s} differs on {u!r}/{v!r}"
                        assert (ru > su) == (rv > sv), \
                            f"order of {r},{s} differs on {u!r}/{v!r}"
                        pairs_checked += 1
    return pairs_checked


def split_transfer_suite(alphabet, max_len, ms, max_n):
    """First/last-letter splits lower the depth bound by one.

    Checks the four one-sided implications on every word pair and every
    split letter; returns the number of implications exercised.
    """
    words = all_words(alphabet, max_len)
    checked = 0
    for u in words:
        for v in words:
            common = sorted(set(u) & set(v))
            for a in common:
                # partition at the first / last occurrence keeps the
                # split letter out of the outer part on both words
                u0, _, u1 = u.partition(a)
                v0, _, v1 = v.partition(a)
                u0l, _, u1l = u.rpartition(a)
                v0l, _, v1l = v.rpartition(a)
                for m in ms:
                    for n in range(1, max_n + 1):
                        if equivalent(u, v, alphabet, m, n, "X"):
                            assert equivalent(u0, v0, alphabet, m, n - 1, "X")
                            assert equivalent(u1, v1, alphabet, m, n - 1, "X")
                            assert equivalent(u0l, v0l, alphabet, m, n - 1, "X")
                            checked += 2
                        if equivalent(u, v, alphabet, m, n, "Y"):
                            assert equivalent(u1, v1, alphabet, m, n - 1, "Y")
                            assert equivalent(u0l, v0l, alphabet, m, n - 1, "Y")
                            assert equivalent(u1l, v1l, alphabet, m, n - 1, "Y")
                            checked += 2
    return checked


def _prefix_positions(ranker, word):
    out = []
    for k in range(1, len(ranker.instructions) + 1):
        p = rankers.eval_ranker(rankers.Ranker(ranker.instructions[:k]), word)
        if p is None:
            return None
        out.append(p)
    return out


def aligned_instances(alphabet, max_len, r_shapes, s_shapes):
    """Word pairs with factorizations aligned by ranker prefix visits.

    Yields (u, v, u_parts, v_parts, n_markers) where both words
    factorize over the same markers, every ranker prefix lands on the
    same marker index in both words, and every marker is hit by some
    prefix.
    """
    words = all_words(alphabet, max_len)
    letters = sorted(alphabet)
    shapes = []
    for lr in r_shapes:
        for seq in product(letters, repeat=lr):
            shapes.append((tuple(("X", a) for a in seq), None))
    for ls in s_shapes:
        for seq in product(letters, repeat=ls):
            shapes.append((None, tuple(("Y", a) for a in seq)))
            for lr in r_shapes:
                for seq2 in product(letters, repeat=lr):
                    shapes.append((tuple(("X", a) for a in seq2),
                                   tuple(("Y", a) for a in seq)))
    out = []
    for r_instr, s_instr in shapes:
        r = rankers.Ranker(r_instr) if r_instr else None
        s = rankers.Ranker(s_instr) if s_instr else None
        for u in words:
            pos_u = []
            if r is not None:
                pr = _prefix_positions(r, u)
                if pr is None:
                    continue
                pos_u += pr
            if s is not None:
                ps = _prefix_positions(s, u)
                if ps is None:
                    continue
                pos_u += ps
            if not pos_u:
                continue
            marks_u = sorted(set(pos_u))
            for v in words:
                pos_v = []
                if r is not None:
                    pr = _prefix_positions(r, v)
                    if pr is None:
                        continue
                    pos_v = pr[:]
                if s is not None:
                    ps = _prefix_positions(s, v)
                    if ps is None:
                        continue
                    pos_v += ps
                marks_v = sorted(set(pos_v))
                if len(marks_u) != len(marks_v):
                    continue
                iu = {p: i for i, p in enumerate(marks_u)}
                iv = {p: i for i, p in enumerate(marks_v)}
                if any(iu[pu] != iv[pv] for pu, pv in zip(pos_u, pos_v)):
                    continue
                if any(u[pu - 1] != v[pv - 1]
                       for pu, pv in zip(marks_u, marks_v)):
                    continue
                out.append((u, v, _split_at(u, marks_u), _split_at(v, marks_v),
                            len(marks_u)))
    return out


def _split_at(word, positions):
    parts = []
    prev = 0
    for p in positions:
        parts.append(word[prev:p - 1])
        prev = p
    parts.append(word[prev:])
    return parts


def factor_relativization_suite(alphabet, max_len, m, max_n):
    """Aligned factorizations relativize equivalence to the factors,
    dropping one block and the marker overhead from the bounds."""
    instances = aligned_instances(alphabet, max_len, (1, 2), (1,))
    checked = 0
    for u, v, u_parts, v_parts, n_markers in instances:
        for n in range(0, max_n + 1):
            if not equivalent(u, v, alphabet, m, n + n_markers + 1, "full"):
                continue
            for up, vp in zip(u_parts, v_parts):
                assert equivalent(up, vp, alphabet, m - 1, n, "full"), (
                    f"factor {up!r}/{vp!r} of {u!r}/{v!r} not equivalent "
                    f"at ({m - 1}, {n})")
            checked += 1
    return checked, len(instances)


# -- formula semantics pool --------------------------------------------


def formula_semantics_pool(words, letters, max_size):
    """Pareto-pruned truth vectors of all formulas up to an AST size.

    Returns {vector: [(turns, depth, size), ...]} over the given closed
    word universe (closed: every first/last-letter split part of a word
    is itself in the universe).  Agreement of two words on a formula
    depends only on its truth vector, so testing one representative per
    vector covers every AST.
    """
    index = {w: i for i, w in enumerate(words)}
    mask = (1 << len(words)) - 1
    fsplit = {}
    lsplit = {}
    for w in words:
        for a in letters:
            i = w.find(a)
            fsplit[w, a] = (index[w[:i]], index[w[i + 1:]]) if i >= 0 else None
            i = w.rfind(a)
            lsplit[w, a] = (index[w[:i]], index[w[i + 1:]]) if i >= 0 else None

    pool = {}
    by_size = {s: [] for s in range(1, max_size + 1)}

    def add(vec, t, d, s):
        entries = pool.setdefault(vec, [])
        for t0, d0, s0 in entries:
            if t0 <= t and d0 <= d and s0 <= s:
                return
        entries[:] = [(t0, d0, s0) for t0, d0, s0 in entries
                      if not (t <= t0 and d <= d0 and s <= s0)]
        entries.append((t, d, s))
        by_size[s].append((vec, t, d))

    add(mask, 0, 0, 1)
    add(0, 0, 0, 1)
    for s in range(2, max_size + 1):
        for vec, t, d in by_size[s - 1]:
            add(vec ^ mask, t, d, s)
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            for v1, t1, d1 in by_size[s1]:
                for v2, t2, d2 in by_size[s2]:
                    add(v1 | v2, max(t1, t2), max(d1, d2), s)
                    add(v1 & v2, max(t1, t2), max(d1, d2), s)
                    for a in letters:
                        fv = 0
                        lv = 0
                        for w, i in index.items():
                            sp = fsplit[w, a]
                            if sp and v1 >> sp[0] & 1 and v2 >> sp[1] & 1:
                                fv |= 1 << i
                            sp = lsplit[w, a]
                            if sp and v1 >> sp[0] & 1 and v2 >> sp[1] & 1:
                                lv |= 1 << i
                        add(fv, max(t1 + 1, t2), max(d1, d2) + 1, s)
                        add(lv, max(t1, t2 + 1), max(d1, d2) + 1, s)
    return pool


def fragment_vectors(pool, m, n, max_size):
    """Vectors achievable inside the fragment within the size budget."""
    return [vec for vec, entries in pool.items()
            if any(t <= m and d <= n and s <= max_size
                   for t, d, s in entries)]
