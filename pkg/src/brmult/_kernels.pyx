# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for monomial ideal arithmetic.

Drop-in replacements for the functions in ``_pykernels``. Exponents are
copied into C ``long long`` buffers; callers must keep them below 2**62
(``brmult.kernels`` checks this and falls back otherwise).
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64* _pack(list rows, Py_ssize_t d) except NULL:
    cdef Py_ssize_t n = len(rows), i, j
    cdef i64* buf = <i64*> malloc((n * d + 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        row = rows[i]
        for j in range(d):
            buf[i * d + j] = row[j]
    return buf


def minimal_generators(gens):
    cdef list cands = sorted(set(gens), key=lambda g: (sum(g), g))
    cdef Py_ssize_t n = len(cands)
    if n == 0:
        return []
    cdef Py_ssize_t d = len(cands[0])
    cdef i64* buf = _pack(cands, d)
    cdef Py_ssize_t* kept = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t nkept = 0, i, k, j, h
    cdef bint divides
    if kept == NULL:
        free(buf)
        raise MemoryError()
    try:
        for i in range(n):
            divides = False
            for k in range(nkept):
                h = kept[k]
                divides = True
                for j in range(d):
                    if buf[h * d + j] > buf[i * d + j]:
                        divides = False
                        break
                if divides:
                    break
            if not divides:
                kept[nkept] = i
                nkept += 1
        out = [cands[kept[k]] for k in range(nkept)]
    finally:
        free(buf)
        free(kept)
    out.sort()
    return out


def count_standard(gens, bounds):
    cdef Py_ssize_t d = len(bounds)
    cdef i64 top = bounds[d - 1]
    if d == 1:
        return top
    cdef list rows = list(gens)
    cdef Py_ssize_t n = len(rows), i, j
    cdef i64* buf = _pack(rows, d)
    cdef i64* box = _pack([tuple(bounds)], d)
    cdef i64* a = <i64*> malloc(d * sizeof(i64))
    cdef i64 h, total = 0
    cdef bint ok
    if a == NULL:
        free(buf)
        free(box)
        raise MemoryError()
    try:
        for j in range(d):
            a[j] = 0
            if box[j] <= 0:
                return 0
        while True:
            h = top
            for i in range(n):
                if buf[i * d + d - 1] < h:
                    ok = True
                    for j in range(d - 1):
                        if buf[i * d + j] > a[j]:
                            ok = False
                            break
                    if ok:
                        h = buf[i * d + d - 1]
            total += h
            # odometer over the first d - 1 coordinates
            j = d - 2
            while j >= 0:
                a[j] += 1
                if a[j] < box[j]:
                    break
                a[j] = 0
                j -= 1
            if j < 0:
                break
    finally:
        free(buf)
        free(box)
        free(a)
    return total


def pairwise_sums(left, right):
    cdef list ls = list(left), rs = list(right)
    cdef Py_ssize_t nl = len(ls), nr = len(rs)
    if nl == 0 or nr == 0:
        return []
    cdef Py_ssize_t d = len(ls[0]), i, k, j
    cdef i64* lb = _pack(ls, d)
    cdef i64* rb = _pack(rs, d)
    cdef list out = []
    try:
        for i in range(nl):
            for k in range(nr):
                out.append(tuple([lb[i * d + j] + rb[k * d + j] for j in range(d)]))
    finally:
        free(lb)
        free(rb)
    return out
