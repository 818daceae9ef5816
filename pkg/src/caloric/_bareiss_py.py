"""Pure-Python fraction-free elimination kernel.

Mirrors ``_bareiss.pyx`` statement for statement; used when the compiled
module is unavailable or ``CALORIC_PURE_PYTHON`` is set.
"""

from math import gcd


def forward_eliminate(rows, ncols):
    """Bareiss forward elimination on integer rows, in place.

    Pivot rows are chosen by smallest bit length among the candidates in
    each column. Returns the list of pivot columns; ``rows[:rank]`` is then
    an integer echelon form and the remaining rows are zero.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_bits = 0
        for i in range(r, nrows):
            v = rows[i][c]
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
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
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


def _make_primitive(row, lead):
    # divide by the content and make the entry at ``lead`` positive
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if row[lead] < 0:
        g = -g
    if g != 1:
        for j in range(len(row)):
            if row[j]:
                row[j] //= g


def back_substitute(rows, pivots):
    """Clear every pivot column above its pivot, in place, over the integers.

    After this each pivot row is primitive with a positive pivot and zero in
    every other pivot column; dividing a row by its pivot gives the reduced
    row echelon form.
    """
    rank = len(pivots)
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        prow = rows[k]
        _make_primitive(prow, c)
        p = prow[c]
        ncols = len(prow)
        support = [j for j in range(ncols) if prow[j]]
        for i in range(k):
            row = rows[i]
            a = row[c]
            if a:
                if p != 1:
                    for j in range(ncols):
                        if row[j]:
                            row[j] *= p
                for j in support:
                    row[j] -= a * prow[j]
                _make_primitive(row, pivots[i])
