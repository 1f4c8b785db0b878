"""Linear coordinate frames.

A frame records an invertible substitution matrix M and a flag size s. The
framed polynomial is g(z) = f(M z): row i of M expresses the old variable x_i
in the new coordinates. The first s new coordinates z_0..z_{s-1} play the role
of the family directions; the ideal (z_0, ..., z_{s-1}) cuts the transversal
slice.

Compositions act on the right: apply_frame(apply_frame(f, A), B) equals
apply_frame(f, A.compose(B)). A composition preserves the flag when its matrix
is block lower triangular with respect to the first s coordinates, i.e. the
span of z_0..z_{s-1} is sent into itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, RingError, SingularMatrixError
from .poly import Polynomial

Matrix = tuple[tuple[Fraction, ...], ...]


def _to_matrix(rows) -> Matrix:
    mat = tuple(tuple(Fraction(c) for c in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise RingError("frame matrix must be square")
    return mat


def _determinant(mat: Matrix) -> Fraction:
    n = len(mat)
    m = [list(row) for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def _inverse(mat: Matrix) -> Matrix:
    n = len(mat)
    m = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError("frame matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [c * inv for c in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True, slots=True)
class CoordinateFrame:
    matrix: Matrix
    s: int

    def __post_init__(self):
        mat = _to_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if not 0 <= self.s <= len(mat):
            raise InputError(f"flag size {self.s} out of range for arity {len(mat)}")
        if _determinant(mat) == 0:
            raise SingularMatrixError("frame matrix is singular")

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    @staticmethod
    def identity(nvars: int, s: int) -> "CoordinateFrame":
        rows = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(nvars))
            for i in range(nvars)
        )
        return CoordinateFrame(rows, s)

    @staticmethod
    def from_rows(rows, s: int) -> "CoordinateFrame":
        return CoordinateFrame(_to_matrix(rows), s)

    @staticmethod
    def random(nvars: int, s: int, rng: random.Random, bound: int = 100) -> "CoordinateFrame":
        """Random frame for generic-position sampling: identity plus a random
        upper-right s x (n+1-s) block with entries uniform in [-bound, bound].

        Every invariant attached to a frame depends only on the span of
        columns s..n of the matrix, and the blocks realized here form a dense
        chart of those spans, so this draws a generic frame while keeping the
        substituted polynomial sparse (only the first s variables are mixed).
        """
        rows = tuple(
            tuple(
                Fraction(rng.randint(-bound, bound)) if (i < s <= j)
                else Fraction(1 if i == j else 0)
                for j in range(nvars)
            )
            for i in range(nvars)
        )
        return CoordinateFrame(rows, s)

    @staticmethod
    def random_invertible(nvars: int, s: int, rng: random.Random,
                          bound: int = 100) -> "CoordinateFrame":
        """Fully random invertible matrix (dense); redraws until nonsingular."""
        while True:
            rows = tuple(
                tuple(Fraction(rng.randint(-bound, bound)) for _ in range(nvars))
                for _ in range(nvars)
            )
            if _determinant(rows) != 0:
                return CoordinateFrame(rows, s)

    @staticmethod
    def random_flag_preserving(nvars: int, s: int, rng: random.Random,
                               bound: int = 100) -> "CoordinateFrame":
        """Random invertible matrix with zero upper-right s x (n+1-s) block, so
        composing with it fixes the span of the first s coordinates."""
        while True:
            rows = tuple(
                tuple(
                    Fraction(0) if (i < s <= j) else Fraction(rng.randint(-bound, bound))
                    for j in range(nvars)
                )
                for i in range(nvars)
            )
            if _determinant(rows) != 0:
                return CoordinateFrame(rows, s)

    def is_identity(self) -> bool:
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.nvars)
            for j in range(self.nvars)
        )

    def compose(self, other: "CoordinateFrame") -> "CoordinateFrame":
        if other.nvars != self.nvars:
            raise RingError("frame arity mismatch")
        return CoordinateFrame(_matmul(self.matrix, other.matrix), self.s)

    def inverse(self) -> "CoordinateFrame":
        return CoordinateFrame(_inverse(self.matrix), self.s)

    def preserves_flag(self, s: int | None = None) -> bool:
        k = self.s if s is None else s
        return all(
            self.matrix[i][j] == 0 for i in range(k) for j in range(k, self.nvars)
        )

    def label(self) -> str:
        if self.is_identity():
            return "identity"
        rows = ";".join(",".join(str(c) for c in row) for row in self.matrix)
        return rows

    def rows_as_strings(self) -> list[list[str]]:
        return [[str(c) for c in row] for row in self.matrix]


def apply_frame(f: Polynomial, frame: CoordinateFrame) -> Polynomial:
    """The framed polynomial g(z) = f(M z)."""
    if frame.nvars != f.ring.nvars:
        raise RingError("frame arity does not match the ring")
    return f.substitute_linear(frame.matrix)


def parse_frame_rows(text: str, s: int) -> CoordinateFrame:
    """Parse 'a,b,c;d,e,f;g,h,i' (entries are integers or fractions p/q)."""
    try:
        rows = [
            [Fraction(cell.strip()) for cell in row.split(",")]
            for row in text.split(";")
            if row.strip()
        ]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad frame matrix text: {exc}") from None
    return CoordinateFrame.from_rows(rows, s)
