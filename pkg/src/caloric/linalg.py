"""Exact dense linear algebra over the rationals.

Rows are cleared to integers and reduced with fraction-free (Bareiss)
elimination; back-substitution then yields the reduced row echelon form.
The elimination kernel is compiled when the ``_bareiss`` extension is
built and falls back to ``_bareiss_py`` otherwise. Setting
``CALORIC_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _bareiss_py

if os.environ.get("CALORIC_PURE_PYTHON"):
    _kernel = _bareiss_py
    BACKEND = "python"
else:
    try:
        from . import _bareiss as _kernel  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _kernel = _bareiss_py
        BACKEND = "python"

KERNELS = {"python": _bareiss_py}
if BACKEND == "cython":
    KERNELS["cython"] = _kernel


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry array does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        entries = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [
            [sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols_t]
            for row in self.entries
        ]
        return ExactMatrix.from_rows(out, other.cols)

    def transpose(self) -> "ExactMatrix":
        if not self.rows:
            return ExactMatrix.zeros(self.cols, 0)
        return ExactMatrix.from_rows([list(c) for c in zip(*self.entries)], self.rows)


def _integer_rows(entries) -> list[list[int]]:
    out = []
    for row in entries:
        den = 1
        for v in row:
            if v:
                den = lcm(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def _blocks(rows: list[list[int]], ncols: int) -> list[tuple[list[int], list[int]]]:
    """Split into independent blocks: components of the row/column incidence graph."""
    parent = list(range(ncols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    row_anchor = []
    for row in rows:
        nz = [j for j, v in enumerate(row) if v]
        row_anchor.append(nz[0] if nz else -1)
        for j in nz[1:]:
            ra, rb = find(nz[0]), find(j)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for j in range(ncols):
        groups.setdefault(find(j), ([], []))[1].append(j)
    for i, anchor in enumerate(row_anchor):
        if anchor >= 0:
            groups[find(anchor)][0].append(i)
    return [groups[k] for k in sorted(groups)]


def echelon(entries, ncols: int, *, kernel=None, split_blocks: bool = True):
    """Reduced row echelon form of a rational matrix.

    Returns ``(pivot_rows, pivots)`` where ``pivot_rows[k]`` is the RREF row
    (list of Fractions) whose leading 1 sits in column ``pivots[k]``.
    Pivots are sorted ascending.
    """
    kern = kernel or _kernel
    rows = _integer_rows(entries)
    parts = _blocks(rows, ncols) if split_blocks else [(list(range(len(rows))), list(range(ncols)))]
    found: list[tuple[int, list[Fraction]]] = []
    for row_ids, col_ids in parts:
        if not row_ids:
            continue
        sub = [[rows[i][j] for j in col_ids] for i in row_ids]
        piv = kern.forward_eliminate(sub, len(col_ids))
        sub = sub[: len(piv)]
        kern.back_substitute(sub, piv)
        for k, c in enumerate(piv):
            lead = sub[k][c]
            full = [Fraction(0)] * ncols
            for jj, v in enumerate(sub[k]):
                if v:
                    full[col_ids[jj]] = Fraction(v, lead)
            found.append((col_ids[c], full))
    found.sort(key=lambda item: item[0])
    return [r for _, r in found], [c for c, _ in found]


def rank(M: ExactMatrix, **kw) -> int:
    if not M.rows or not M.cols:
        return 0
    return len(echelon(M.entries, M.cols, **kw)[1])


def nullspace(M: ExactMatrix, **kw) -> list[list[Fraction]]:
    """Kernel basis in reduced form.

    One vector per non-pivot column f: entry 1 at f, zero at every other
    non-pivot column. This is the unique such basis for the kernel.
    """
    n = M.cols
    if M.rows:
        pivot_rows, pivots = echelon(M.entries, n, **kw)
    else:
        pivot_rows, pivots = [], []
    pivot_set = set(pivots)
    out = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(pivot_rows, pivots):
            if row[f]:
                v[c] = -row[f]
        out.append(v)
    return out


def inverse(M: ExactMatrix, **kw) -> ExactMatrix:
    """Inverse of a square matrix via RREF of [M | I]."""
    n = M.rows
    if M.cols != n:
        raise ValueError("matrix is not square")
    aug = [list(M.entries[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivot_rows, pivots = echelon(aug, 2 * n, **kw)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return ExactMatrix.from_rows([row[n:] for row in pivot_rows[:n]], n)
