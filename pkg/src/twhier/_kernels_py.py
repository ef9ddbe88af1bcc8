"""Pure-Python implementations of the hot kernels.

Mirrors the API of the compiled ``_kernels`` extension exactly; the
active backend is chosen in ``_backend``.  These loops are the runtime
bottlenecks (brute-force assignment scans and ranker signatures), so
they are written against flat arrays rather than the object model.
"""

# Straight-line program opcodes for identity evaluation.  A program is a
# flat int array of stride 3: (op, a, b).  Register j holds the value of
# instruction j.
OP_ONE = 0      # load the monoid identity
OP_VAR = 1      # load variable a of the current assignment
OP_MUL = 2      # multiply registers a and b
OP_OMEGA = 3    # idempotent power of register a


def first_nonassociative(table, n):
    """Return x*n*n + y*n + z for the first triple with (xy)z != x(yz), or -1.

    ``table`` is the flat row-major multiplication table.
    """
    for x in range(n):
        rx = x * n
        for y in range(n):
            xy_row = table[rx + y] * n
            ry = y * n
            for z in range(n):
                if table[xy_row + z] != table[rx + table[ry + z]]:
                    return (rx + y) * n + z
    return -1


def scan_identity(table, omega, size, identity, prog, n_instr,
                  lhs_reg, rhs_reg, nvars, start, count):
    """Scan ``count`` assignments from mixed-radix index ``start``.

    Assignments enumerate the ordered variable list in base ``size`` with
    the first variable most significant, so increasing indices are
    lexicographic.  Returns the absolute index of the first assignment
    where the two sides evaluate differently, or -1 if none in range.
    """
    digits = [0] * nvars
    rem = start
    for k in range(nvars - 1, -1, -1):
        digits[k] = rem % size
        rem //= size
    regs = [0] * n_instr
    for step in range(count):
        for j in range(n_instr):
            op = prog[3 * j]
            a = prog[3 * j + 1]
            if op == OP_MUL:
                regs[j] = table[regs[a] * size + regs[prog[3 * j + 2]]]
            elif op == OP_VAR:
                regs[j] = digits[a]
            elif op == OP_OMEGA:
                regs[j] = omega[regs[a]]
            else:
                regs[j] = identity
        if regs[lhs_reg] != regs[rhs_reg]:
            return start + step
        k = nvars - 1
        while k >= 0:
            digits[k] += 1
            if digits[k] == size:
                digits[k] = 0
                k -= 1
            else:
                break
    return -1


def condensed_flags(word, n_letters, dirs, letters, offsets, n_rankers):
    """Flag, per ranker, whether it is condensed on ``word``.

    ``word`` is a sequence of letter codes in [0, n_letters).  Rankers are
    packed: ranker i is instructions [offsets[i], offsets[i+1]) of the
    parallel arrays ``dirs`` (0 = forward-to-next, 1 = back-to-previous)
    and ``letters``.  Returns a bytearray of 0/1 flags.

    Positions are 1-based; 0 and len+1 are the virtual boundaries the
    first instruction starts from.  A position value of 0 in the
    occurrence tables means "no such occurrence".
    """
    n = len(word)
    # next_tab[x][a]: smallest position y > x carrying a (x in 0..n)
    # prev_tab[x][a]: largest position y < x carrying a (x in 1..n+1,
    # stored at row x-1)
    next_tab = [[0] * n_letters for _ in range(n + 1)]
    for x in range(n - 1, -1, -1):
        row = next_tab[x]
        row[:] = next_tab[x + 1]
        row[word[x]] = x + 1
    prev_tab = [[0] * n_letters for _ in range(n + 1)]
    for x in range(2, n + 2):
        row = prev_tab[x - 1]
        row[:] = prev_tab[x - 2]
        row[word[x - 2]] = x - 1
    out = bytearray(n_rankers)
    for i in range(n_rankers):
        lo = 0
        hi = n + 1
        pos = -1
        ok = True
        for j in range(offsets[i], offsets[i + 1]):
            a = letters[j]
            if pos < 0:
                p = next_tab[0][a] if dirs[j] == 0 else prev_tab[n][a]
            elif dirs[j] == 0:
                p = next_tab[pos][a]
            else:
                p = prev_tab[pos - 1][a]
            if p == 0:
                ok = False
                break
            if pos >= 0:
                # no previously visited position may be overrun
                if not lo < p < hi:
                    ok = False
                    break
                if p > pos:
                    lo = pos
                else:
                    hi = pos
            pos = p
        if ok:
            out[i] = 1
    return out
