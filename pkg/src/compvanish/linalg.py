"""Exact rational matrices and nullspaces.

Elimination runs on integer rows (denominators cleared up front, gcd
normalised after every update), which is several times faster than
``Fraction`` arithmetic and stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction

# Large prime for cheap rank screening; only ever used to prove full rank.
_SCREEN_PRIME = (1 << 61) - 1


def as_fraction(x: Number | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number | str]]) -> "RationalMatrix":
        return cls(tuple(tuple(as_fraction(x) for x in row) for row in rows))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "RationalMatrix":
        m = n if m is None else m
        return cls(tuple((Fraction(0),) * m for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        cols = list(zip(*other.rows))
        return RationalMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols)
            for row in self.rows))

    def apply(self, x: Sequence[Number]) -> tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(row, x) if a and b), Fraction(0))
                     for row in self.rows)

    def scaled(self, k: Number) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(k * x for x in row) for row in self.rows))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i]
                              for i in range(n) for j in range(i))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def first_nonzero(self) -> tuple[int, int] | None:
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x:
                    return i, j
        return None

    def permuted(self, perm: Sequence[int]) -> "RationalMatrix":
        """Move row/column ``v`` to position ``perm[v]``."""
        n = self.order
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i]][perm[j]] = self.rows[i][j]
        return RationalMatrix(tuple(map(tuple, out)))

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return "\n".join(" ".join(format_rational(x) for x in row) for row in self.rows)


def block_diag(*blocks: RationalMatrix) -> RationalMatrix:
    n = sum(b.order for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[off + i][off:off + len(row)] = row
        off += b.order
    return RationalMatrix(tuple(map(tuple, out)))


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal entries are not accepted: {text!r}")
    return Fraction(text)


# -- elimination ----------------------------------------------------------------


def _integer_row(row: Sequence[Number]) -> list[int]:
    den = reduce(lcm, (as_fraction(x).denominator for x in row), 1)
    return [int(as_fraction(x) * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [x // g for x in row]
    return row


def rref_integer(rows: Sequence[Sequence[Number]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced echelon form with integer rows.

    Returns ``(rows, pivots)``: row ``r`` has a positive value at column
    ``pivots[r]`` and zeros in every other pivot column.
    """
    work = [_primitive(_integer_row(r)) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(work)):
            if work[r][col]:
                if sel is None or abs(work[r][col]) < abs(work[sel][col]):
                    sel = r
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        prow = work[rank]
        if prow[col] < 0:
            prow = [-x for x in prow]
            work[rank] = prow
        p = prow[col]
        for r in range(len(work)):
            if r == rank:
                continue
            c = work[r][col]
            if c:
                g = gcd(p, c)
                mp, mc = p // g, c // g
                work[r] = _primitive([mp * x - mc * y for x, y in zip(work[r], prow)])
        pivots.append(col)
        rank += 1
        work = work[:rank] + [r for r in work[rank:] if any(r)]
    return work[:rank], pivots


def nullspace(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[int]]:
    """Integer basis of the right kernel, one primitive vector per free column."""
    red, pivots = rref_integer(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        # x_f = 1, x_pivot = -red[r][f] / red[r][pivot]
        den = reduce(lcm, (red[r][p] for r, p in enumerate(pivots) if red[r][f]), 1)
        vec = [0] * ncols
        vec[f] = den
        for r, p in enumerate(pivots):
            if red[r][f]:
                vec[p] = -red[r][f] * (den // red[r][p])
        basis.append(_primitive(vec))
    return basis


def rank(rows: Sequence[Sequence[Number]], ncols: int) -> int:
    return len(rref_integer(rows, ncols)[1])


def full_rank_mod_p(rows: Sequence[Sequence[int]]) -> bool:
    """True only if the square integer matrix is certainly nonsingular.

    Rank modulo a prime never exceeds the rational rank, so a ``True``
    answer is exact; ``False`` may rarely be a false alarm.
    """
    p = _SCREEN_PRIME
    work = [[x % p for x in row] for row in rows]
    n = len(work)
    for col in range(n):
        sel = next((r for r in range(col, n) if work[r][col]), None)
        if sel is None:
            return False
        work[col], work[sel] = work[sel], work[col]
        inv = pow(work[col][col], p - 2, p)
        prow = work[col]
        for r in range(col + 1, n):
            c = work[r][col]
            if c:
                f = c * inv % p
                work[r] = [(x - f * y) % p for x, y in zip(work[r], prow)]
    return True
