"""Abelianization through the integer Smith normal form of the relation matrix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z_{d1} x ... x Z_{dk} x Z^free_rank`` with ``d1 | d2 | ...`` and every ``di > 1``."""

    torsion: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"torsion factors must exceed 1, got {d}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion factors {a}, {b} break the divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Order of the abelianization, ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


@dataclass(frozen=True)
class SmithForm:
    """``left @ matrix @ right == diag`` with ``left``, ``right`` unimodular."""

    matrix: IntMatrix
    left: IntMatrix
    right: IntMatrix
    diag: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.diag[i][i] for i in range(min(len(self.diag), len(self.diag[0]) if self.diag else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent sums: row per relator, column per generator."""
    n = len(p.generators)
    rows = []
    for rel in p.relators:
        row = [0] * n
        for letter in rel:
            row[letter.generator.index] += letter.sign
        rows.append(row)
    return rows


def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix, inner: int | None = None) -> IntMatrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def smith_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with its unimodular transforms.

    Pivots are chosen by smallest nonzero absolute value, ties broken by
    row-major position.  ``ncols`` is needed only for matrices with no rows.
    """
    rows = len(m)
    cols = len(m[0]) if rows else (ncols or 0)
    a = [[int(x) for x in row] for row in m]
    for row in a:
        if len(row) != cols:
            raise ValueError("matrix is not rectangular")
    left = identity_matrix(rows)
    right = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    form = SmithForm([list(map(int, r)) for r in m], left, right, a)
    if rows and cols:
        check = matmul(matmul(left, form.matrix), right)
        if check != a:  # pragma: no cover - guards the bookkeeping above
            raise AssertionError("Smith transforms do not reproduce the diagonal")
    return form


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (length ``min(rows, cols)``)."""
    return smith_form(m).diagonal


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    m = relation_matrix(p)
    form = smith_form(m, ncols=len(p.generators))
    diagonal = form.diagonal
    torsion = tuple(d for d in diagonal if d > 1)
    return AbelianInvariants(torsion, len(p.generators) - form.rank)


def maps_onto_Z(p: Presentation) -> bool:
    """True iff the abelianization has positive free rank, i.e. ``G`` surjects onto ``Z``."""
    return abelian_invariants(p).free_rank >= 1


def exponent_sum_homomorphism(p: Presentation, weights: Sequence[int]) -> bool:
    """Whether ``g_i -> t^weights[i]`` kills every relator, hence defines ``G -> Z``.

    The map is onto ``Z`` exactly when the weights have gcd 1.
    """
    if len(weights) != len(p.generators):
        raise ValueError("need one weight per generator")
    for row in relation_matrix(p):
        if sum(w * e for w, e in zip(weights, row)):
            return False
    return True
