"""Dense exact matrices over the rationals.

Everything here is plain Gauss-Jordan on `fractions.Fraction` entries.  The
matrices in this library are tiny (one row per irreducible component of a
fiber), so there is no point in sparse storage or pivoting heuristics beyond
"first nonzero".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class RationalMatrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]) -> None:
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not data or any(len(r) != len(data[0]) for r in data):
            raise ValueError("rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "RationalMatrix":
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"RationalMatrix[{body}]"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([x * c for x in row] for row in self.rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return RationalMatrix(
            [sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows
        )

    def mat_vec(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.n_cols:
            raise ValueError("shape mismatch")
        v = [Fraction(x) for x in vec]
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows))

    def is_symmetric(self) -> bool:
        return self.rows == tuple(zip(*self.rows))

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row) for row in self.rows)

    def rank(self) -> int:
        work = [list(row) for row in self.rows]
        n, m = len(work), len(work[0])
        r = 0
        for col in range(m):
            pivot = next((i for i in range(r, n) if work[i][col] != 0), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv = 1 / work[r][col]
            work[r] = [x * inv for x in work[r]]
            for i in range(n):
                if i != r and work[i][col] != 0:
                    f = work[i][col]
                    work[i] = [x - f * y for x, y in zip(work[i], work[r])]
            r += 1
            if r == n:
                break
        return r

    def inverse(self) -> "RationalMatrix":
        """Gauss-Jordan inverse; raises ValueError on a singular matrix."""
        n = self.n_rows
        if n != self.n_cols:
            raise ValueError("inverse of a non-square matrix")
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)]
                for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
            if pivot is None:
                raise ValueError("singular matrix")
            work[col], work[pivot] = work[pivot], work[col]
            inv = 1 / work[col][col]
            work[col] = [x * inv for x in work[col]]
            for i in range(n):
                if i != col and work[i][col] != 0:
                    f = work[i][col]
                    work[i] = [x - f * y for x, y in zip(work[i], work[col])]
        return RationalMatrix(row[n:] for row in work)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]
