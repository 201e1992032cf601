"""Words in a free group on named generators.

A word is an immutable, freely reduced sequence of letters.  Each letter
carries its generator (index and display name) and an exponent sign.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class AlphabetMismatch(ValueError):
    """Two words disagree about which name belongs to which generator index."""


class GeneratorId(NamedTuple):
    index: int
    name: str


class Letter(NamedTuple):
    generator: GeneratorId
    sign: int

    def inverse(self) -> Letter:
        return Letter(self.generator, -self.sign)

    @property
    def code(self) -> int:
        """Signed integer code ``±(index + 1)``."""
        return self.sign * (self.generator.index + 1)


def make_generator(index: int, name: str) -> GeneratorId:
    if index < 0:
        raise ValueError(f"generator index must be nonnegative, got {index}")
    if not IDENT_RE.match(name):
        raise ValueError(f"invalid generator name {name!r}")
    return GeneratorId(index, name)


def _cancels(a: Letter, b: Letter) -> bool:
    return a.generator == b.generator and a.sign == -b.sign


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for letter in letters:
        if letter.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {letter.sign}")
        if out and _cancels(out[-1], letter):
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def identity(cls) -> Word:
        return cls(())

    @classmethod
    def generator(cls, gen: GeneratorId, power: int = 1) -> Word:
        sign = 1 if power > 0 else -1
        return cls((Letter(gen, sign),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __pow__(self, n: int) -> Word:
        return power(self, n)

    def inverse(self) -> Word:
        return invert(self)

    def codes(self) -> tuple[int, ...]:
        return tuple(letter.code for letter in self.letters)

    def generators(self) -> set[GeneratorId]:
        return {letter.generator for letter in self.letters}

    def exponent_sum(self, index: int) -> int:
        return sum(l.sign for l in self.letters if l.generator.index == index)

    def rename(self, mapping: dict[int, GeneratorId]) -> Word:
        """Replace generators by index; indices missing from ``mapping`` are kept."""
        return Word(tuple(Letter(mapping.get(l.generator.index, l.generator), l.sign)
                          for l in self.letters))

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def free_reduce(letters: Sequence[Letter]) -> Word:
    return Word(tuple(letters))


def check_alphabets(*words: Word) -> None:
    """Raise AlphabetMismatch if the words use one index or name inconsistently."""
    by_index: dict[int, str] = {}
    by_name: dict[str, int] = {}
    for w in words:
        for gen in w.generators():
            if by_index.setdefault(gen.index, gen.name) != gen.name:
                raise AlphabetMismatch(
                    f"generator index {gen.index} named both "
                    f"{by_index[gen.index]!r} and {gen.name!r}")
            if by_name.setdefault(gen.name, gen.index) != gen.index:
                raise AlphabetMismatch(
                    f"generator {gen.name!r} has indices {by_name[gen.name]} and {gen.index}")


def invert(w: Word) -> Word:
    return Word(tuple(l.inverse() for l in reversed(w.letters)))


def multiply(a: Word, b: Word) -> Word:
    check_alphabets(a, b)
    return Word(a.letters + b.letters)


def power(w: Word, n: int) -> Word:
    base = w if n >= 0 else invert(w)
    return Word(base.letters * abs(n))


def conjugate(w: Word, g: Word) -> Word:
    """Return ``g^-1 w g``."""
    check_alphabets(w, g)
    return Word(invert(g).letters + w.letters + g.letters)


def cyclically_reduce(w: Word) -> Word:
    return cyclic_reduction(w)[0]


def cyclic_reduction(w: Word) -> tuple[Word, Word]:
    """Return ``(c, s)`` with ``c`` cyclically reduced and ``w == s c s^-1``."""
    letters = w.letters
    lo, hi = 0, len(letters) - 1
    while lo < hi and _cancels(letters[lo], letters[hi]):
        lo += 1
        hi -= 1
    return Word(letters[lo:hi + 1]), Word(letters[:lo])


def format_word(w: Word) -> str:
    """Render in the presentation grammar, e.g. ``t^-1*s*t*s^-3``; identity is ``1``."""
    if not w.letters:
        return "1"
    parts = []
    run_gen, run_exp = None, 0
    for letter in w.letters:
        if letter.generator == run_gen and (run_exp > 0) == (letter.sign > 0):
            run_exp += letter.sign
            continue
        if run_gen is not None:
            parts.append(_factor(run_gen.name, run_exp))
        run_gen, run_exp = letter.generator, letter.sign
    parts.append(_factor(run_gen.name, run_exp))
    return "*".join(parts)


def _factor(name: str, exp: int) -> str:
    return name if exp == 1 else f"{name}^{exp}"
