# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops.

Same API as ``_kernels_py``; see there for the semantics.  The
assignment scan releases the GIL so range partitions can run on real
threads.
"""

from libc.stdlib cimport free, malloc

OP_ONE = 0
OP_VAR = 1
OP_MUL = 2
OP_OMEGA = 3


def first_nonassociative(const int[::1] table, int n):
    cdef long long res
    with nogil:
        res = _first_nonassociative(table, n)
    return res


cdef long long _first_nonassociative(const int[::1] table, int n) nogil:
    cdef int x, y, z, xy_row, rx, ry
    for x in range(n):
        rx = x * n
        for y in range(n):
            xy_row = table[rx + y] * n
            ry = y * n
            for z in range(n):
                if table[xy_row + z] != table[rx + table[ry + z]]:
                    return (<long long> (rx + y)) * n + z
    return -1


def scan_identity(const int[::1] table, const int[::1] omega, int size,
                  int identity, const int[::1] prog, int n_instr,
                  int lhs_reg, int rhs_reg, int nvars,
                  long long start, long long count):
    cdef long long res
    with nogil:
        res = _scan_identity(table, omega, size, identity, prog, n_instr,
                             lhs_reg, rhs_reg, nvars, start, count)
    if res == -2:
        raise MemoryError
    return res


cdef long long _scan_identity(const int[::1] table, const int[::1] omega,
                              int size, int identity, const int[::1] prog,
                              int n_instr, int lhs_reg, int rhs_reg,
                              int nvars, long long start,
                              long long count) nogil:
    cdef int *digits = <int *> malloc(nvars * sizeof(int))
    cdef int *regs = <int *> malloc(n_instr * sizeof(int))
    cdef long long rem, step, found = -1
    cdef int j, k, op, a
    if digits == NULL or regs == NULL:
        free(digits)
        free(regs)
        return -2
    rem = start
    for k in range(nvars - 1, -1, -1):
        digits[k] = <int> (rem % size)
        rem //= size
    for step in range(count):
        for j in range(n_instr):
            op = prog[3 * j]
            a = prog[3 * j + 1]
            if op == 2:
                regs[j] = table[regs[a] * size + regs[prog[3 * j + 2]]]
            elif op == 1:
                regs[j] = digits[a]
            elif op == 3:
                regs[j] = omega[regs[a]]
            else:
                regs[j] = identity
        if regs[lhs_reg] != regs[rhs_reg]:
            found = start + step
            break
        k = nvars - 1
        while k >= 0:
            digits[k] += 1
            if digits[k] == size:
                digits[k] = 0
                k -= 1
            else:
                break
    free(digits)
    free(regs)
    return found


def condensed_flags(const int[::1] word, int n_letters,
                    const int[::1] dirs, const int[::1] letters,
                    const int[::1] offsets, int n_rankers):
    cdef int n = word.shape[0]
    out = bytearray(n_rankers)
    cdef unsigned char[::1] out_view = out
    cdef int *next_tab = <int *> malloc((n + 1) * n_letters * sizeof(int))
    cdef int *prev_tab = <int *> malloc((n + 1) * n_letters * sizeof(int))
    if next_tab == NULL or prev_tab == NULL:
        free(next_tab)
        free(prev_tab)
        raise MemoryError
    cdef int x, a, i, j, p, pos, lo, hi, ok
    with nogil:
        for a in range(n_letters):
            next_tab[n * n_letters + a] = 0
            prev_tab[a] = 0
        for x in range(n - 1, -1, -1):
            for a in range(n_letters):
                next_tab[x * n_letters + a] = next_tab[(x + 1) * n_letters + a]
            next_tab[x * n_letters + word[x]] = x + 1
        for x in range(2, n + 2):
            for a in range(n_letters):
                prev_tab[(x - 1) * n_letters + a] = prev_tab[(x - 2) * n_letters + a]
            prev_tab[(x - 1) * n_letters + word[x - 2]] = x - 1
        for i in range(n_rankers):
            lo = 0
            hi = n + 1
            pos = -1
            ok = 1
            for j in range(offsets[i], offsets[i + 1]):
                a = letters[j]
                if pos < 0:
                    if dirs[j] == 0:
                        p = next_tab[a]
                    else:
                        p = prev_tab[n * n_letters + a]
                elif dirs[j] == 0:
                    p = next_tab[pos * n_letters + a]
                else:
                    p = prev_tab[(pos - 1) * n_letters + a]
                if p == 0:
                    ok = 0
                    break
                if pos >= 0:
                    if p <= lo or p >= hi:
                        ok = 0
                        break
                    if p > pos:
                        lo = pos
                    else:
                        hi = pos
                pos = p
            out_view[i] = <unsigned char> ok
    free(next_tab)
    free(prev_tab)
    return out
