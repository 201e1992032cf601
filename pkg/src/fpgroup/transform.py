"""Replace every relator by a pair of Neumann relators over a fresh generator.

For a relator ``r`` and new generator ``b`` the pair is::

    r^-1 b r = b^2        (stored as r^-1*b*r*b^-2)
    b^-1 r b = r^2        (stored as b^-1*r*b*r^-2)

Together they force ``b = 1`` and ``r = 1``, so the group is unchanged,
while deleting either one leaves an infinite group when the input is an
irredundant presentation of a non-cyclic finite group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import DEFAULT_MAX_COSETS, Complete, coset_enumerate, is_cyclic
from .presentation import Presentation, add_generators, fresh_generator
from .words import GeneratorId, Letter, Word, make_generator

FRESH_HINT = "b"


@dataclass(frozen=True)
class RelatorPair:
    relator_index: int
    generator: GeneratorId
    output_indices: tuple[int, int]

    @property
    def conjugated_b(self) -> int:
        """Output index of ``r^-1 b r b^-2``; deleting it leaves a map onto ``Z``."""
        return self.output_indices[0]

    @property
    def conjugated_r(self) -> int:
        """Output index of ``b^-1 r b r^-2``; deleting it leaves an amalgam."""
        return self.output_indices[1]


@dataclass(frozen=True)
class TransformRecord:
    input: Presentation
    output: Presentation
    pairs: tuple[RelatorPair, ...]

    def __post_init__(self):
        n_in = len(self.input.relators)
        if len(self.output.relators) != 2 * n_in:
            raise ValueError("output must have two relators per input relator")
        if len(self.output.generators) != len(self.input.generators) + n_in:
            raise ValueError("output must add one generator per input relator")

    def pair_for_output(self, j: int) -> tuple[RelatorPair, int]:
        """The pair owning output relator ``j`` and its position (0 or 1) in it."""
        pair = self.pairs[j // 2]
        return pair, j % 2


def neumann_relators(r: Word, b: GeneratorId) -> tuple[Word, Word]:
    if not r:
        raise ValueError("the relator must be a nonempty word")
    if b in r.generators():
        raise ValueError(f"generator {b.name!r} already occurs in the relator")
    bw = Word.generator(b)
    ri = r.inverse()
    return (Word(ri.letters + bw.letters + r.letters + (bw ** -2).letters),
            Word(bw.inverse().letters + r.letters + bw.letters + (ri ** 2).letters))


def just_finite_transform(p: Presentation) -> TransformRecord:
    current = p
    fresh: list[GeneratorId] = []
    for _ in p.relators:
        g = fresh_generator(current, FRESH_HINT)
        fresh.append(g)
        current = add_generators(current, [g])
    relators: list[Word] = []
    pairs: list[RelatorPair] = []
    for i, (r, b) in enumerate(zip(p.relators, fresh)):
        relators.extend(neumann_relators(r, b))
        pairs.append(RelatorPair(i, b, (2 * i, 2 * i + 1)))
    output = Presentation(p.generators + tuple(fresh), tuple(relators))
    return TransformRecord(p, output, tuple(pairs))


def recover_transform(q: Presentation) -> TransformRecord | None:
    """Recognise ``q`` as the exact output of :func:`just_finite_transform`.

    The last ``len(q.relators) // 2`` generators must be the added ones (any
    names) and relators ``2i``, ``2i+1`` must be literally the Neumann pair
    for some word ``r_i`` over the remaining generators.  Returns the
    reconstructed record, or ``None`` if ``q`` does not have this shape.
    """
    if len(q.relators) % 2:
        return None
    n = len(q.relators) // 2
    k = len(q.generators) - n
    if k < 0 or (n == 0):
        return None
    base = q.generators[:k]
    fresh = q.generators[k:]
    originals = []
    for i, b in enumerate(fresh):
        first = q.relators[2 * i]
        tail = first.letters[-2:]
        if tail != (Letter(b, -1), Letter(b, -1)):
            return None
        body = first.letters[:-2]
        marks = [pos for pos, l in enumerate(body) if l.generator == b]
        if len(marks) != 1 or body[marks[0]].sign != 1:
            return None
        r = Word(body[marks[0] + 1:])
        if not r or not r.generators() <= set(base):
            return None
        if neumann_relators(r, b) != (q.relators[2 * i], q.relators[2 * i + 1]):
            return None
        originals.append(r)
    pairs = tuple(RelatorPair(i, b, (2 * i, 2 * i + 1)) for i, b in enumerate(fresh))
    return TransformRecord(Presentation(base, tuple(originals)), q, pairs)


def cyclic_shortcut(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> Presentation | None:
    """``< x | x^n >`` when ``p`` enumerates to a finite cyclic group of order ``n``."""
    outcome = coset_enumerate(p, (), max_cosets)
    if not isinstance(outcome, Complete) or not is_cyclic(outcome.table):
        return None
    x = make_generator(0, "x")
    return Presentation((x,), (Word.generator(x, outcome.index),))
