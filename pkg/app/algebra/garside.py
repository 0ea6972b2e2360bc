"""
garside: left-greedy normal forms in the Artin groups of spherical type whose
Coxeter groups are modelled in `coxeter` (B_n = A(A_{n-1}) and A(D4)).

An element is stored as Δ^inf · x1 ... xk with every xi a simple element (an
element of W), never the identity and never w0, and each consecutive pair
left-weighted: every left descent of x(i+1) is a right descent of x(i).
Two words are equal in the Artin group iff their normal forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from app.algebra.coxeter import CoxElement, CoxeterSystem
from app.algebra.word import Word, concat, invert
from app.core.exceptions import UnknownGeneratorError


@dataclass(frozen=True, slots=True)
class GarsideElement:
    inf: int
    factors: tuple[CoxElement, ...] = ()

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_delta_power(self) -> bool:
        return not self.factors

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def to_dict(self) -> dict:
        return {"inf": self.inf, "factors": [list(f) for f in self.factors]}

    def render(self, s: CoxeterSystem) -> str:
        inner = ", ".join(" ".join(s.reduced_word(f)) for f in self.factors)
        return f"Δ^{self.inf} · [{inner}]"

    def to_word(self, s: CoxeterSystem) -> Word:
        """A word in the atoms for this element."""
        delta = Word.of(*s.reduced_word(s.w0))
        head = delta ** self.inf
        body = Word.of(*(a for f in self.factors for a in s.reduced_word(f)))
        return concat(head, body)


class NormalFormTable:
    """Memoised renormalisation of factor pairs for one Coxeter system."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._renorm: dict[tuple[CoxElement, CoxElement], tuple[CoxElement, CoxElement]] = {}
        self.left_complement: dict[str, CoxElement] = {
            s: system.product(system.w0, system.generator[s]) for s in system.atoms
        }

    def renorm(self, x: CoxElement, y: CoxElement) -> tuple[CoxElement, CoxElement]:
        """While some s lies in L(y) but not R(x), replace (x, y) by (x s, s y)."""
        key = (x, y)
        cached = self._renorm.get(key)
        if cached is not None:
            return cached
        s = self.system
        w, z = x, y
        while diff := s.left_descents(z) - s.right_descents(w):
            atom = min(diff, key=s.atoms.index)
            g = s.generator[atom]
            w = s.product(w, g)
            z = s.product(g, z)
        self._renorm[key] = (w, z)
        return w, z

    def is_left_weighted(self, x: CoxElement, y: CoxElement) -> bool:
        return self.system.left_descents(y) <= self.system.right_descents(x)

    def normalise_factors(self, seq: Sequence[CoxElement]) -> tuple[int, tuple[CoxElement, ...]]:
        """
        Left-weight an arbitrary sequence of simple factors, returning the
        number of leading w0 factors and the remaining factors.
        """
        s = self.system
        factors = [f for f in seq if f != s.identity]
        changed = True
        while changed:
            changed = False
            for i in range(len(factors) - 1):
                x, y = self.renorm(factors[i], factors[i + 1])
                if x != factors[i]:
                    factors[i], factors[i + 1] = x, y
                    changed = True
            if changed:
                factors = [f for f in factors if f != s.identity]

        lead = 0
        if s.w0 != s.identity:
            while lead < len(factors) and factors[lead] == s.w0:
                lead += 1
        return lead, tuple(factors[lead:])


_TABLES: dict[int, NormalFormTable] = {}


def table_for(s: CoxeterSystem) -> NormalFormTable:
    table = _TABLES.get(id(s))
    if table is None or table.system is not s:
        table = _TABLES[id(s)] = NormalFormTable(s)
    return table


def normal_form(s: CoxeterSystem, w: Word) -> GarsideElement:
    """
    Garside normal form of a word in the atoms of s.

    A negative letter a^-1 is rewritten as Δ^-1 · (w0 a); every Δ^-1 is then
    pulled to the front, conjugating the factors it passes by τ.

    Raises:
        UnknownGeneratorError: letter is not an atom of s
    """
    table = table_for(s)
    factors: list[CoxElement] = []
    negative: list[bool] = []
    for name, sign in w.letters:
        if name not in s.generator:
            raise UnknownGeneratorError(name)
        if sign > 0:
            factors.append(s.generator[name])
            negative.append(False)
        else:
            factors.append(table.left_complement[name])
            negative.append(True)

    delta_pow = 0
    for i in range(len(factors) - 1, -1, -1):
        if delta_pow % 2:
            factors[i] = s.tau_element(factors[i])
        if negative[i]:
            delta_pow += 1

    lead, rest = table.normalise_factors(factors)
    return GarsideElement(lead - delta_pow, rest)


def equal_words(s: CoxeterSystem, u: Word, v: Word) -> bool:
    return normal_form(s, u) == normal_form(s, v)


def is_trivial(s: CoxeterSystem, w: Word) -> bool:
    return normal_form(s, w).is_identity()


def delta_power_of(s: CoxeterSystem, w: Word) -> Optional[int]:
    nf = normal_form(s, w)
    return nf.inf if nf.is_delta_power() else None


def is_central(s: CoxeterSystem, w: Word) -> bool:
    """Centrality against every atom; atoms generate the group."""
    for atom in s.atoms:
        a = Word.letter(atom)
        if normal_form(s, w * a) != normal_form(s, a * w):
            return False
    return True


def is_left_weighted(s: CoxeterSystem, factors: Sequence[CoxElement]) -> bool:
    """No atom can move from the front of a factor onto its predecessor."""
    for x, y in zip(factors, factors[1:]):
        for atom in s.atoms:
            g = s.generator[atom]
            if s.length(s.product(x, g)) == s.length(x) + 1 and s.length(s.product(g, y)) == s.length(y) - 1:
                return False
    return True


def multiply(s: CoxeterSystem, u: GarsideElement, v: GarsideElement) -> GarsideElement:
    return normal_form(s, u.to_word(s) * v.to_word(s))


def inverse(s: CoxeterSystem, u: GarsideElement) -> GarsideElement:
    return normal_form(s, invert(u.to_word(s)))


def delta_word(s: CoxeterSystem) -> Word:
    return Word.of(*s.reduced_word(s.w0))


def positive_words(atoms: Iterable[str], length: int) -> Iterable[Word]:
    """All positive words of the given length, in lexicographic atom order."""
    atoms = tuple(atoms)
    if length == 0:
        yield Word()
        return
    for prefix in positive_words(atoms, length - 1):
        for a in atoms:
            yield prefix * Word.letter(a)
