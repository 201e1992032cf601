"""Todd-Coxeter coset enumeration and queries on complete coset tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .presentation import Presentation
from .words import Word

DEFAULT_MAX_COSETS = 100_000


class IncompleteTable(ValueError):
    pass


def letter_column(code: int) -> int:
    """Table column for a signed letter code ``±(index + 1)``."""
    return 2 * (code - 1) if code > 0 else 2 * (-code - 1) + 1


def word_columns(w: Word) -> np.ndarray:
    return np.array([letter_column(c) for c in w.codes()], dtype=np.int32)


def _flatten(words: Sequence[Word]) -> tuple[np.ndarray, np.ndarray]:
    cols = [word_columns(w) for w in words]
    offsets = np.zeros(len(cols) + 1, dtype=np.int64)
    if cols:
        offsets[1:] = np.cumsum([len(c) for c in cols])
        flat = np.concatenate(cols).astype(np.int32)
    else:
        flat = np.zeros(0, dtype=np.int32)
    return flat, offsets


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Action of the generators on the cosets of a subgroup.

    ``table[c, 2*g]`` is the image of coset ``c`` under generator ``g`` and
    ``table[c, 2*g + 1]`` its image under ``g^-1``; ``-1`` means undefined.
    Coset 0 is the subgroup itself.
    """

    presentation: Presentation
    subgroup: tuple[Word, ...]
    table: np.ndarray
    complete: bool = True

    def __post_init__(self):
        self.table.setflags(write=False)

    @property
    def live_count(self) -> int:
        return self.table.shape[0]

    @property
    def index(self) -> int:
        return self.live_count

    def __eq__(self, other):
        if not isinstance(other, CosetTable):
            return NotImplemented
        return (self.presentation == other.presentation and self.subgroup == other.subgroup
                and self.complete == other.complete and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.presentation, self.subgroup, self.table.tobytes()))

    def act(self, coset: int, w: Word) -> int:
        """Image of ``coset`` under ``w``, or -1 if the trace hits an undefined entry."""
        return int(_kernels.trace(self.table, coset, word_columns(w)))

    def permutation(self, w: Word) -> np.ndarray:
        """The permutation of cosets induced by ``w`` (requires a complete table)."""
        self._require_complete()
        perm = np.arange(self.live_count)
        for col in word_columns(w):
            perm = self.table[perm, col]
        return perm

    def _require_complete(self):
        if not self.complete or (self.table < 0).any():
            raise IncompleteTable("operation needs a complete coset table")

    def check(self) -> list[str]:
        """Violations of the complete-table invariants; empty when the table is valid."""
        problems = []
        t = self.table
        n = self.live_count
        if (t < 0).any():
            problems.append("undefined entries")
            return problems
        if (t >= n).any():
            problems.append("entries out of range")
            return problems
        for col in range(t.shape[1]):
            back = t[t[:, col], col ^ 1]
            if not np.array_equal(back, np.arange(n)):
                problems.append(f"column {col} is not inverse to column {col ^ 1}")
        for j, rel in enumerate(self.presentation.relators):
            if not np.array_equal(self.permutation(rel), np.arange(n)):
                problems.append(f"relator {j} does not close at every coset")
        for j, h in enumerate(self.subgroup):
            if self.act(0, h) != 0:
                problems.append(f"subgroup generator {j} moves coset 0")
        return problems


@dataclass(frozen=True)
class Complete:
    table: CosetTable
    index: int
    stats: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Overflow:
    max_cosets: int
    stats: dict = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return f"coset budget of {self.max_cosets} exhausted"


EnumerationOutcome = Union[Complete, Overflow]


def coset_enumerate(p: Presentation, subgroup: Sequence[Word] = (),
                    max_cosets: int = DEFAULT_MAX_COSETS) -> EnumerationOutcome:
    """HLT coset enumeration of ``p`` over the subgroup generated by ``subgroup``.

    ``max_cosets`` bounds the number of table rows in simultaneous use; dead
    rows are reclaimed by compaction, after a relator lookahead if needed.
    ``Overflow`` means only that the budget ran out.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    subgroup = tuple(subgroup)
    declared = set(p.generators)
    for h in subgroup:
        if not h.generators() <= declared:
            raise ValueError(f"subgroup word {h} is not over the presentation's generators")
    rel_flat, rel_off = _flatten(p.relators)
    sub_flat, sub_off = _flatten([h for h in subgroup if h])
    ncols = 2 * len(p.generators)
    if ncols == 0:
        table = CosetTable(p, subgroup, np.zeros((1, 0), dtype=np.int32))
        return Complete(table, 1)
    status, raw, n, stats = _kernels.hlt_enumerate(ncols, rel_flat, rel_off, sub_flat, sub_off,
                                                   int(max_cosets))
    info = {"defined": int(stats[_kernels.STAT_DEFINED]),
            "max_live": int(stats[_kernels.STAT_MAX_LIVE]),
            "compactions": int(stats[_kernels.STAT_COMPACTIONS]),
            "lookaheads": int(stats[_kernels.STAT_LOOKAHEADS])}
    if status == _kernels.OVERFLOW:
        return Overflow(int(max_cosets), info)
    table = CosetTable(p, subgroup, np.array(raw[:n], dtype=np.int32))
    return Complete(table, int(n), info)


def regular_table(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable | Overflow:
    outcome = coset_enumerate(p, (), max_cosets)
    return outcome.table if isinstance(outcome, Complete) else outcome


def group_order(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int | Overflow:
    outcome = coset_enumerate(p, (), max_cosets)
    return outcome.index if isinstance(outcome, Complete) else outcome


def _require_regular(t: CosetTable):
    t._require_complete()
    if any(t.subgroup):
        raise ValueError("expected a table over the trivial subgroup")


def word_acts_trivially(t: CosetTable, w: Word) -> bool:
    """True iff ``w`` fixes coset 0; on a regular table this means ``w == 1``."""
    _require_regular(t)
    return t.act(0, w) == 0


def permutation_order(perm: np.ndarray) -> int:
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        c = start
        while not seen[c]:
            seen[c] = True
            c = perm[c]
            length += 1
        order = math.lcm(order, length)
    return order


def element_order(t: CosetTable, w: Word) -> int:
    _require_regular(t)
    return permutation_order(t.permutation(w))


def is_cyclic(t: CosetTable) -> bool:
    """Whether the finite group with regular table ``t`` is cyclic."""
    _require_regular(t)
    n = t.live_count
    return any(permutation_order(t.permutation(w)) == n for w in transversal(t))


def transversal(t: CosetTable) -> list[Word]:
    """Breadth-first shortest representatives; entry ``c`` maps coset 0 to ``c``."""
    gens = t.presentation.generators
    reps: list[Word | None] = [None] * t.live_count
    reps[0] = Word()
    queue = [0]
    for c in queue:
        for col in range(t.table.shape[1]):
            d = int(t.table[c, col])
            if d >= 0 and reps[d] is None:
                g = gens[col // 2]
                reps[d] = reps[c] * Word.generator(g, 1 if col % 2 == 0 else -1)
                queue.append(d)
    return reps

