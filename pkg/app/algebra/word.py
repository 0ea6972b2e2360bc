"""
Free-group words over named generators.

A word is an immutable tuple of letters (name, sign) with sign in {+1, -1}. The
wire grammar is deliberately tiny:

    word := atom (WS atom)* | ""
    atom := name | name "^" int
    name := [A-Za-z][A-Za-z0-9_]*
    int  := "-"? [1-9][0-9]*

Rendering always emits expanded single letters, `^-1` marking inverses, so
parse_word(render_word(w)) == w for every freely reduced w.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from app.core.exceptions import UnknownGeneratorError, WordSyntaxError

Letter = tuple[str, int]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
ATOM_RE = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9_]*)(?:\^(?P<exp>-?[1-9][0-9]*))?$")
_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True, slots=True)
class Word:
    """Ordered sequence of (generator, ±1) letters. Not reduced unless built so."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, *names: str) -> "Word":
        """Positive word from generator names, `Word.of("a1", "b")`."""
        return cls(tuple((name, 1) for name in names))

    @classmethod
    def letter(cls, name: str, sign: int = 1) -> "Word":
        return cls(((name, sign),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __str__(self) -> str:
        return render_word(self)

    def inverse(self) -> "Word":
        return invert(self)

    def generators(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.letters)


EMPTY = Word()


def free_reduce(w: Word) -> Word:
    """Cancel adjacent g g^-1 pairs with a stack; the result is unique."""
    stack: list[Letter] = []
    for name, sign in w.letters:
        if stack and stack[-1][0] == name and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((name, sign))
    if len(stack) == len(w.letters):
        return w
    return Word(tuple(stack))


def is_freely_reduced(w: Word) -> bool:
    return all(
        not (a[0] == b[0] and a[1] == -b[1])
        for a, b in zip(w.letters, w.letters[1:])
    )


def invert(w: Word) -> Word:
    return Word(tuple((name, -sign) for name, sign in reversed(w.letters)))


def concat(*words: Word) -> Word:
    """Concatenate and freely reduce."""
    letters: list[Letter] = []
    for w in words:
        letters.extend(w.letters)
    return free_reduce(Word(tuple(letters)))


def power(w: Word, k: int) -> Word:
    base = w if k >= 0 else invert(w)
    return free_reduce(Word(base.letters * abs(k)))


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1, freely reduced."""
    return concat(x, y, invert(x), invert(y))


def exponent_sum(w: Word, name: str) -> int:
    return sum(sign for g, sign in w.letters if g == name)


def generators_of(words: Iterable[Word]) -> frozenset[str]:
    found: set[str] = set()
    for w in words:
        found.update(name for name, _ in w.letters)
    return frozenset(found)


def render_word(w: Word) -> str:
    return " ".join(name if sign > 0 else f"{name}^-1" for name, sign in w.letters)


def parse_word(text: str, context: Optional[Iterable[str]] = None) -> Word:
    """
    Parse text in the word grammar and return the freely reduced word.

    Args:
        text: whitespace separated atoms `name` or `name^k`
        context: allowed generator names; None accepts any well-formed name

    Returns:
        Freely reduced Word

    Raises:
        WordSyntaxError: malformed atom or exponent
        UnknownGeneratorError: name outside the context
    """
    allowed = None if context is None else frozenset(context)
    letters: list[Letter] = []
    for match in _TOKEN_RE.finditer(text):
        token, position = match.group(0), match.start()
        atom = ATOM_RE.match(token)
        if atom is None:
            if "^" in token:
                name, _, exponent = token.partition("^")
                if not exponent:
                    raise WordSyntaxError(f"empty exponent in atom {token!r}", position)
                if NAME_RE.fullmatch(name):
                    raise WordSyntaxError(f"malformed exponent {exponent!r}", position + len(name) + 1)
                if not name:
                    raise WordSyntaxError(f"empty atom before exponent in {token!r}", position)
            raise WordSyntaxError(f"malformed atom {token!r}", position)
        name = atom.group("name")
        if allowed is not None and name not in allowed:
            raise UnknownGeneratorError(name, position)
        exponent = int(atom.group("exp") or 1)
        sign = 1 if exponent > 0 else -1
        letters.extend([(name, sign)] * abs(exponent))
    return free_reduce(Word(tuple(letters)))


class GeneratorMap:
    """Assignment generator -> word, total on its declared source set."""

    __slots__ = ("_images",)

    def __init__(self, assignments: Mapping[str, Word]):
        self._images = dict(assignments)

    @classmethod
    def identity(cls, names: Iterable[str]) -> "GeneratorMap":
        return cls({name: Word.letter(name) for name in names})

    @property
    def source(self) -> frozenset[str]:
        return frozenset(self._images)

    def image(self, name: str) -> Word:
        try:
            return self._images[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def items(self):
        return self._images.items()

    def __getitem__(self, name: str) -> Word:
        return self.image(name)

    def __contains__(self, name: str) -> bool:
        return name in self._images

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorMap):
            return NotImplemented
        return self._images == other._images

    def __repr__(self) -> str:
        inner = ", ".join(f"{k} -> {render_word(v) or '1'}" for k, v in self._images.items())
        return f"GeneratorMap({inner})"

    def updated(self, **changes: Word) -> "GeneratorMap":
        images = dict(self._images)
        images.update(changes)
        return GeneratorMap(images)

    def compose(self, inner: "GeneratorMap") -> "GeneratorMap":
        """(self ∘ inner)(g) = apply_map(self, inner(g)) for g in inner's source."""
        return GeneratorMap({name: apply_map(self, w) for name, w in inner.items()})

    def to_dict(self) -> dict[str, str]:
        return {name: render_word(w) for name, w in self._images.items()}


def apply_map(m: GeneratorMap, w: Word) -> Word:
    """Substitute every letter by its image (inverted for negative letters), then reduce."""
    letters: list[Letter] = []
    for name, sign in w.letters:
        image = m.image(name)
        letters.extend(image.letters if sign > 0 else invert(image).letters)
    return free_reduce(Word(tuple(letters)))


def words_from_names(names: Sequence[str]) -> list[Word]:
    return [Word.letter(name) for name in names]
