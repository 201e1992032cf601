"""Low-index subgroups and Reidemeister-Schreier rewriting.

These supply infiniteness witnesses for groups whose abelianization is
finite: a finite-index subgroup with infinite abelianization proves the
whole group infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .abelian import abelian_invariants
from .cosets import CosetTable, IncompleteTable, transversal
from .presentation import Presentation
from .words import GeneratorId, Letter, Word, make_generator

DEFAULT_MAX_INDEX = 8
SCHREIER_HINT = "s"


@dataclass(frozen=True)
class SubgroupRecord:
    index: int
    table: CosetTable
    presentation_of_subgroup: Presentation

    def __post_init__(self):
        if not self.table.complete:
            raise ValueError("subgroup record needs a complete table")
        if self.index != self.table.live_count:
            raise ValueError("index disagrees with the table size")


@dataclass(frozen=True)
class SchreierRewrite:
    """Raw Reidemeister-Schreier output before empty relators are dropped."""

    generators: tuple[GeneratorId, ...]
    # (coset, generator index) labelling each Schreier generator
    labels: tuple[tuple[int, int], ...]
    relators: tuple[Word, ...]

    def presentation(self) -> Presentation:
        return Presentation(self.generators, tuple(r for r in self.relators if r))


# -- low-index search --------------------------------------------------------

class _Search:
    def __init__(self, p: Presentation, max_index: int):
        self.p = p
        self.N = max_index
        self.ncols = 2 * len(p.generators)
        self.rels = [[_col(c) for c in r.codes()] for r in p.relators]
        self.found: list[list[list[int]]] = []

    def run(self):
        table = [[-1] * self.ncols]
        if self._deduce(table):
            self._extend(table)
        return self.found

    def _extend(self, table):
        pos = _first_gap(table)
        if pos is None:
            if self._canonical(table, len(table)):
                self.found.append(table)
            return
        c, x = pos
        n = len(table)
        targets = [d for d in range(n) if table[d][x ^ 1] < 0]
        if n < self.N:
            targets.append(n)
        for d in targets:
            t = [row[:] for row in table]
            if d == n:
                t.append([-1] * self.ncols)
            t[c][x] = d
            t[d][x ^ 1] = c
            if self._deduce(t) and self._canonical(t, len(t)):
                self._extend(t)

    def _deduce(self, t) -> bool:
        """Close one-letter gaps in relator traces; False on a contradiction."""
        changed = True
        while changed:
            changed = False
            for start in range(len(t)):
                for w in self.rels:
                    f, i = start, 0
                    j = len(w) - 1
                    b = start
                    while i <= j and t[f][w[i]] >= 0:
                        f = t[f][w[i]]
                        i += 1
                    if i > j:
                        if f != start:
                            return False
                        continue
                    while j >= i and t[b][w[j] ^ 1] >= 0:
                        b = t[b][w[j] ^ 1]
                        j -= 1
                    if j < i:
                        if f != b:
                            return False
                        continue
                    if i == j:
                        if t[f][w[i]] >= 0 or t[b][w[i] ^ 1] >= 0:
                            return False
                        t[f][w[i]] = b
                        t[b][w[i] ^ 1] = f
                        changed = True
        return True

    def _canonical(self, t, n) -> bool:
        """False if renumbering from some other base coset gives a smaller table."""
        for beta in range(1, n):
            fwd = {beta: 0}
            back = [beta]
            verdict = 0
            i = 0
            while i < len(back) and verdict == 0:
                old = back[i]
                for x in range(self.ncols):
                    img = t[old][x]
                    ref = t[i][x]
                    if img < 0 or ref < 0:
                        verdict = 1
                        break
                    if img not in fwd:
                        fwd[img] = len(back)
                        back.append(img)
                    new = fwd[img]
                    if new < ref:
                        return False
                    if new > ref:
                        verdict = 1
                        break
                i += 1
        return True


def _col(code: int) -> int:
    return 2 * (code - 1) if code > 0 else 2 * (-code - 1) + 1


def _first_gap(table):
    for c, row in enumerate(table):
        for x, v in enumerate(row):
            if v < 0:
                return c, x
    return None


def low_index_subgroups(p: Presentation, max_index: int) -> list[SubgroupRecord]:
    """One subgroup per conjugacy class of index at most ``max_index``.

    Ordered by index, then by the standardized table read row by row.
    """
    if max_index < 1:
        raise ValueError("max_index must be positive")
    return _records(p, _search(p, max_index))


def iter_low_index_subgroups(p: Presentation, max_index: int) -> Iterator[SubgroupRecord]:
    """Same records and order as :func:`low_index_subgroups`, produced one index at a time."""
    if max_index < 1:
        raise ValueError("max_index must be positive")
    for n in range(1, max_index + 1):
        yield from _records(p, [t for t in _search(p, n) if len(t) == n])


def _search(p: Presentation, max_index: int) -> list:
    if not p.generators:
        return [[[]]]
    return _Search(p, max_index).run()


def _records(p: Presentation, tables: list) -> list[SubgroupRecord]:
    tables = sorted(tables, key=lambda t: (len(t), [v for row in t for v in row]))
    records = []
    for t in tables:
        arr = np.array(t, dtype=np.int32).reshape(len(t), -1)
        ct = CosetTable(p, stabilizer_generators(p, arr), arr)
        records.append(SubgroupRecord(ct.live_count, ct, rewrite_subgroup(p, ct)))
    return records


def stabilizer_generators(p: Presentation, table: np.ndarray) -> tuple[Word, ...]:
    """Schreier generators of the stabilizer of coset 0, as words in ``p``."""
    ct = CosetTable(p, (), table.copy())
    reps = transversal(ct)
    out = []
    for c in range(ct.live_count):
        for g in p.generators:
            d = int(table[c, 2 * g.index])
            w = reps[c] * Word.generator(g) * reps[d].inverse()
            if w:
                out.append(w)
    return tuple(out)


# -- Reidemeister-Schreier ---------------------------------------------------

def schreier_rewrite(p: Presentation, table: CosetTable) -> SchreierRewrite:
    t = table.table
    if not table.complete or (t < 0).any():
        raise IncompleteTable("Reidemeister-Schreier needs a complete coset table")
    reps = transversal(table)
    labels: list[tuple[int, int]] = []
    index: dict[tuple[int, int], GeneratorId] = {}
    for c in range(table.live_count):
        for g in p.generators:
            d = int(t[c, 2 * g.index])
            if not (reps[c] * Word.generator(g) * reps[d].inverse()):
                continue
            name = f"{SCHREIER_HINT}{len(labels)}"
            index[(c, g.index)] = make_generator(len(labels), name)
            labels.append((c, g.index))
    gens = tuple(index[key] for key in labels)
    relators = []
    for c in range(table.live_count):
        for rel in p.relators:
            letters = []
            e = c
            for letter in rel:
                gi = letter.generator.index
                if letter.sign > 0:
                    s = index.get((e, gi))
                    if s is not None:
                        letters.append(Letter(s, 1))
                    e = int(t[e, 2 * gi])
                else:
                    e = int(t[e, 2 * gi + 1])
                    s = index.get((e, gi))
                    if s is not None:
                        letters.append(Letter(s, -1))
            relators.append(Word(tuple(letters)))
    return SchreierRewrite(gens, tuple(labels), tuple(relators))


def rewrite_subgroup(p: Presentation, table: CosetTable) -> Presentation:
    """Presentation of the subgroup stabilizing coset 0, on Schreier generators.

    Schreier generators that the transversal makes trivial are dropped, as
    are rewritten relators that reduce to the identity.
    """
    return schreier_rewrite(p, table).presentation()


def find_infinite_abelianization_subgroup(p: Presentation,
                                          max_index: int = DEFAULT_MAX_INDEX) -> SubgroupRecord | None:
    for rec in iter_low_index_subgroups(p, max_index):
        if abelian_invariants(rec.presentation_of_subgroup).free_rank >= 1:
            return rec
    return None


def permutation_witness(p: Presentation, w: Word, max_index: int = DEFAULT_MAX_INDEX) -> SubgroupRecord | None:
    """A subgroup of index at most ``max_index`` on whose cosets ``w`` acts nontrivially.

    Such a coset action is a finite quotient in which ``w`` survives, so it
    proves ``w != 1`` in the group.
    """
    for rec in iter_low_index_subgroups(p, max_index):
        perm = rec.table.permutation(w)
        if (perm != np.arange(rec.index)).any():
            return rec
    return None
