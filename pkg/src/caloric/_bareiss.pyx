# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free elimination kernel (see ``_bareiss_py`` for the reference)."""

from math import gcd


def forward_eliminate(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, best
    cdef long bits, best_bits
    cdef list row, prow
    cdef object prev = 1, p, a, b, x, v
    cdef list pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_bits = 0
        for i in range(r, nrows):
            v = (<list>rows[i])[c]
            if v:
                bits = v.bit_length()
                if best < 0 or bits < best_bits:
                    best = i
                    best_bits = bits
                    if bits == 1:
                        break
        if best < 0:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
        prow = <list>rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = <list>rows[i]
            a = row[c]
            if a:
                row[c] = 0
                for j in range(c + 1, ncols):
                    x = row[j]
                    b = prow[j]
                    if b:
                        row[j] = (p * x - a * b) // prev
                    elif x:
                        row[j] = p * x // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    x = row[j]
                    if x:
                        row[j] = p * x // prev
        prev = p
        pivots.append(c)
        r += 1
    return pivots


cdef _make_primitive(list row, Py_ssize_t lead):
    cdef object g = 0, x
    cdef Py_ssize_t j, n = len(row)
    for j in range(n):
        x = row[j]
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if row[lead] < 0:
        g = -g
    if g != 1:
        for j in range(n):
            x = row[j]
            if x:
                row[j] = x // g


def back_substitute(list rows, list pivots):
    cdef Py_ssize_t rank = len(pivots)
    cdef Py_ssize_t k, i, j, c, ncols
    cdef list prow, row, support
    cdef object p, a, x
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        prow = <list>rows[k]
        _make_primitive(prow, c)
        p = prow[c]
        ncols = len(prow)
        support = [j for j in range(ncols) if prow[j]]
        for i in range(k):
            row = <list>rows[i]
            a = row[c]
            if a:
                if p != 1:
                    for j in range(ncols):
                        x = row[j]
                        if x:
                            row[j] = x * p
                for j in support:
                    row[j] = row[j] - a * prow[j]
                _make_primitive(row, pivots[i])
