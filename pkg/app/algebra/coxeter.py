"""
Finite Coxeter groups of type A_{n-1} (the symmetric group S_n) and D4 (even
signed permutations of {1, 2, 3, 4}) in permutation models.

Elements are tuples x with x[i-1] = x(i); signed permutations extend by
x(-i) = -x(i). Products compose right to left: (x * y)(i) = x(y(i)).

D4 atoms follow the star graph with centre b:
    a1 = (1 2), a2 = (3 4), a3 = (1 -2)(2 -1), b = (2 3).
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from typing import Iterable, Optional, Sequence

from app.core.exceptions import CoxeterModelError
from app.core.logging import logger

CoxElement = tuple[int, ...]


def _act(x: CoxElement, v: int) -> int:
    return x[v - 1] if v > 0 else -x[-v - 1]


def perm_product(x: CoxElement, y: CoxElement) -> CoxElement:
    return tuple(_act(x, v) for v in y)


def perm_inverse(x: CoxElement) -> CoxElement:
    inv = [0] * len(x)
    for i, v in enumerate(x, start=1):
        inv[abs(v) - 1] = i if v > 0 else -i
    return tuple(inv)


def inversions(x: CoxElement) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(x)), 2) if x[i] > x[j])


def negative_sum_pairs(x: CoxElement) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(x)), 2) if x[i] + x[j] < 0)


class CoxeterSystem:
    """
    A finite Coxeter system with its full enumeration cached.

    Built once by `type_a` / `type_d4`; read-only afterwards.
    """

    def __init__(self, kind: str, degree: int, atoms: Sequence[str], generators: Sequence[CoxElement]):
        if len(atoms) != len(generators):
            raise CoxeterModelError("atoms and generators differ in length")
        self.kind = kind
        self.degree = degree
        self.atoms: tuple[str, ...] = tuple(atoms)
        self.generator: dict[str, CoxElement] = dict(zip(self.atoms, generators))
        self.identity: CoxElement = tuple(range(1, degree + 1))
        self.coxeter_matrix = self._coxeter_matrix()
        self._distance = self._breadth_first()
        self._check_length_formula()
        self.order = len(self._distance)
        self.w0 = max(self._distance, key=lambda x: (self._distance[x], x))
        self.tau = self._tau()
        logger.debug(f"Coxeter system {self.name}: order {self.order}, length(w0) {self.length(self.w0)}")

    @property
    def name(self) -> str:
        return f"A{self.degree - 1}" if self.kind == "A" else "D4"

    @property
    def rank(self) -> int:
        return len(self.atoms)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name}, atoms={self.atoms})"

    def _coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for s in self.atoms:
            row = []
            for t in self.atoms:
                if s == t:
                    row.append(1)
                    continue
                x = perm_product(self.generator[s], self.generator[t])
                power, order = x, 1
                while power != self.identity:
                    power = perm_product(power, x)
                    order += 1
                row.append(order)
            rows.append(tuple(row))
        return tuple(rows)

    def _breadth_first(self) -> dict[CoxElement, int]:
        distance = {self.identity: 0}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in self.atoms:
                y = perm_product(x, self.generator[s])
                if y not in distance:
                    distance[y] = distance[x] + 1
                    queue.append(y)
        return distance

    def _check_length_formula(self) -> None:
        for x, d in self._distance.items():
            if self.length(x) != d:
                raise CoxeterModelError(
                    f"{self.name}: closed-form length {self.length(x)} != BFS distance {d} for {x}"
                )

    def _tau(self) -> dict[str, str]:
        by_element = {g: s for s, g in self.generator.items()}
        w0_inv = perm_inverse(self.w0)
        tau = {}
        for s in self.atoms:
            conj = perm_product(perm_product(self.w0, self.generator[s]), w0_inv)
            if conj not in by_element:
                raise CoxeterModelError(f"{self.name}: w0 {s} w0^-1 is not an atom")
            tau[s] = by_element[conj]
        return tau

    def contains(self, x: CoxElement) -> bool:
        return x in self._distance

    def elements(self) -> Iterable[CoxElement]:
        return iter(self._distance)

    def product(self, x: CoxElement, y: CoxElement) -> CoxElement:
        return perm_product(x, y)

    def inverse(self, x: CoxElement) -> CoxElement:
        return perm_inverse(x)

    def length(self, x: CoxElement) -> int:
        if self.kind == "A":
            return inversions(x)
        return inversions(x) + negative_sum_pairs(x)

    @functools.lru_cache(maxsize=None)
    def left_descents(self, x: CoxElement) -> frozenset[str]:
        base = self.length(x)
        return frozenset(
            s for s in self.atoms if self.length(perm_product(self.generator[s], x)) < base
        )

    @functools.lru_cache(maxsize=None)
    def right_descents(self, x: CoxElement) -> frozenset[str]:
        base = self.length(x)
        return frozenset(
            s for s in self.atoms if self.length(perm_product(x, self.generator[s])) < base
        )

    def from_word(self, atoms: Iterable[str]) -> CoxElement:
        x = self.identity
        for s in atoms:
            x = perm_product(x, self.generator[s])
        return x

    def reduced_word(self, x: CoxElement) -> tuple[str, ...]:
        """Reduced word by peeling left descents in atom order."""
        word = []
        while x != self.identity:
            s = next(a for a in self.atoms if a in self.left_descents(x))
            word.append(s)
            x = perm_product(self.generator[s], x)
        return tuple(word)

    def tau_element(self, x: CoxElement) -> CoxElement:
        """Conjugation by the longest element, w0 x w0^-1."""
        return perm_product(perm_product(self.w0, x), perm_inverse(self.w0))


def cox_product(s: CoxeterSystem, x: CoxElement, y: CoxElement) -> CoxElement:
    if not (s.contains(x) and s.contains(y)):
        raise CoxeterModelError(f"element outside {s.name}")
    return s.product(x, y)


def length_and_descents(s: CoxeterSystem, x: CoxElement) -> tuple[int, frozenset[str], frozenset[str]]:
    if not s.contains(x):
        raise CoxeterModelError(f"element {x} outside {s.name}")
    return s.length(x), s.left_descents(x), s.right_descents(x)


def enumerate_with_w0(s: CoxeterSystem) -> tuple[int, CoxElement, dict[str, str]]:
    return s.order, s.w0, dict(s.tau)


def _transposition(n: int, k: int) -> CoxElement:
    x = list(range(1, n + 1))
    x[k - 1], x[k] = x[k], x[k - 1]
    return tuple(x)


@functools.lru_cache(maxsize=None)
def type_a(n: int, atom_names: Optional[tuple[str, ...]] = None) -> CoxeterSystem:
    """S_n with atoms s1..s{n-1} (or the given names) as adjacent transpositions."""
    if n < 1:
        raise CoxeterModelError(f"type A needs n >= 1 (got {n})")
    names = atom_names or tuple(f"s{k}" for k in range(1, n))
    if len(names) != n - 1:
        raise CoxeterModelError(f"type A{n - 1} needs {n - 1} atom names")
    return CoxeterSystem("A", n, names, [_transposition(n, k) for k in range(1, n)])


@functools.lru_cache(maxsize=None)
def type_d4() -> CoxeterSystem:
    return CoxeterSystem(
        "D",
        4,
        ("a1", "a2", "a3", "b"),
        [
            (2, 1, 3, 4),
            (1, 2, 4, 3),
            (-2, -1, 3, 4),
            (1, 3, 2, 4),
        ],
    )


# The A3 sub-diagram a1 - b - a2 of the mapping-class generators (so B4 = A(A3)).
B4_ATOMS = ("a1", "b", "a2")


def type_b4_handles() -> CoxeterSystem:
    return type_a(4, B4_ATOMS)


def system_by_name(name: str) -> CoxeterSystem:
    """
    Resolve a group name: `d4` is A(D4); `b4` and `a3` are B4 on the handle
    atoms (a1, b, a2); `bN` is B_N on s1..s{N-1}.

    Raises:
        CoxeterModelError: unknown name
    """
    key = name.strip().lower()
    if key == "d4":
        return type_d4()
    if key in ("b4", "a3"):
        return type_b4_handles()
    if key.startswith("b") and key[1:].isdigit() and int(key[1:]) >= 1:
        return type_a(int(key[1:]))
    raise CoxeterModelError(f"unknown group {name!r}; expected a3, b4, d4 or bN")
