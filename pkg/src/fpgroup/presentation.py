"""Finite presentations and the structural edits the construction needs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import GeneratorId, Word, make_generator


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators ``X`` and an ordered list of nonempty relators ``R``.

    Relators are an ordered sequence rather than a set so that each one has a
    stable index; duplicates are allowed.
    """

    generators: tuple[GeneratorId, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        names = set()
        for i, gen in enumerate(self.generators):
            if gen.index != i:
                raise PresentationError(f"generator {gen.name!r} has index {gen.index}, expected {i}")
            if gen.name in names:
                raise PresentationError(f"duplicate generator name {gen.name!r}")
            names.add(gen.name)
        declared = set(self.generators)
        for j, rel in enumerate(self.relators):
            if not rel:
                raise PresentationError(f"relator {j} is the empty word")
            stray = rel.generators() - declared
            if stray:
                raise PresentationError(
                    f"relator {j} uses undeclared generator(s) "
                    + ", ".join(sorted(g.name for g in stray)))

    @classmethod
    def from_names(cls, names: Sequence[str], relators: Iterable[Word] = ()) -> Presentation:
        gens = tuple(make_generator(i, n) for i, n in enumerate(names))
        return cls(gens, tuple(relators))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def generator(self, name: str) -> GeneratorId:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def word(self, text: str) -> Word:
        """Parse ``text`` as a word over this presentation's generators."""
        from .syntax import parse_word
        return parse_word(text, self.generators)

    def __str__(self) -> str:
        from .syntax import print_presentation
        return print_presentation(self)


def remove_relator(p: Presentation, i: int) -> Presentation:
    if not 0 <= i < len(p.relators):
        raise IndexError(f"relator index {i} out of range for {len(p.relators)} relators")
    return Presentation(p.generators, p.relators[:i] + p.relators[i + 1:])


def deficiency(p: Presentation) -> int:
    return len(p.generators) - len(p.relators)


def fresh_generator(p: Presentation, hint: str) -> GeneratorId:
    """First unused name among ``hint``, ``hint1``, ``hint2``, ...; index is the next slot."""
    taken = set(p.names)
    name, n = hint, 0
    while name in taken:
        n += 1
        name = f"{hint}{n}"
    return make_generator(len(p.generators), name)


def add_generators(p: Presentation, gens: Sequence[GeneratorId],
                   relators: Iterable[Word] = ()) -> Presentation:
    return Presentation(p.generators + tuple(gens), p.relators + tuple(relators))


def with_relators(p: Presentation, relators: Iterable[Word]) -> Presentation:
    return Presentation(p.generators, tuple(relators))
