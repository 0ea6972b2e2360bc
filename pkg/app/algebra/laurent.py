"""
Exact bivariate Laurent polynomials in q and t over the integers, and square
matrices of them.

A polynomial keeps only nonzero terms in a dict {(dq, dt): coefficient};
the empty dict is zero. Coefficients are Python ints, so nothing overflows
and nothing is ever rounded.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Optional, Sequence, Union

Exponent = tuple[int, int]
Scalar = Union[int, "LaurentPoly"]

_TERM_RE = re.compile(
    r"(?P<sign>[+-])?\s*(?P<coef>\d+)?\s*\*?\s*(?P<vars>(?:[qt](?:\^-?\d+)?\s*\*?\s*)*)"
)


class LaurentPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, int]] = None):
        self.terms: dict[Exponent, int] = {k: v for k, v in (terms or {}).items() if v != 0}
        self._hash: Optional[int] = None

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0): c}) if c else cls()

    @classmethod
    def monomial(cls, coefficient: int = 1, dq: int = 0, dt: int = 0) -> "LaurentPoly":
        return cls({(dq, dt): coefficient})

    @classmethod
    def coerce(cls, value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentPoly")

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    def as_unit(self) -> Optional[tuple[int, int, int]]:
        """(sign, dq, dt) if self is ±q^dq t^dt, the units of Z[q^±, t^±]."""
        if len(self.terms) != 1:
            return None
        (exp, coef), = self.terms.items()
        if coef not in (1, -1):
            return None
        return coef, exp[0], exp[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not self.terms or not other.terms:
            return LaurentPoly()
        out: dict[Exponent, int] = {}
        for (q1, t1), c1 in self.terms.items():
            for (q2, t2), c2 in other.terms.items():
                k = (q1 + q2, t1 + t2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            unit = self.as_unit()
            if unit is None:
                raise ZeroDivisionError("only units have negative powers in the Laurent ring")
            sign, dq, dt = unit
            return LaurentPoly.monomial(sign ** (-k), dq * k, dt * k)
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, dq: int, dt: int, sign: int = 1) -> "LaurentPoly":
        """Multiply by the unit sign * q^dq t^dt."""
        return LaurentPoly({(a + dq, b + dt): sign * c for (a, b), c in self.terms.items()})

    def to_entries(self) -> list[list]:
        return [[dq, dt, str(c)] for (dq, dt), c in sorted(self.terms.items())]

    @classmethod
    def from_entries(cls, entries: Iterable[Sequence]) -> "LaurentPoly":
        return cls({(int(dq), int(dt)): int(c) for dq, dt, c in entries})

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (dq, dt), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            factors = []
            if dq:
                factors.append("q" if dq == 1 else f"q^{dq}")
            if dt:
                factors.append("t" if dt == 1 else f"t^{dt}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the printed form, e.g. `1 - q + t*q^2 - 2*q^-1*t^3`."""
        compact = text.replace(" ", "")
        if compact in ("", "0"):
            return cls()
        out = cls()
        pos = 0
        while pos < len(compact):
            m = _TERM_RE.match(compact, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse Laurent polynomial at {compact[pos:]!r}")
            sign = -1 if m.group("sign") == "-" else 1
            coef = int(m.group("coef")) if m.group("coef") else 1
            dq = dt = 0
            for var, exp in re.findall(r"([qt])(?:\^(-?\d+))?", m.group("vars")):
                e = int(exp) if exp else 1
                if var == "q":
                    dq += e
                else:
                    dt += e
            out = out + cls.monomial(sign * coef, dq, dt)
            pos = m.end()
        return out


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1, 1, 0)
T = LaurentPoly.monomial(1, 0, 1)


class PolyMatrix:
    """Square matrix over LaurentPoly, stored as a tuple of row tuples."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        self.dim = len(rows)
        self.rows: tuple[tuple[LaurentPoly, ...], ...] = tuple(
            tuple(LaurentPoly.coerce(v) for v in row) for row in rows
        )
        if any(len(row) != self.dim for row in self.rows):
            raise ValueError("PolyMatrix must be square")

    @classmethod
    def identity(cls, dim: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def scalar(cls, dim: int, value: Scalar) -> "PolyMatrix":
        value = LaurentPoly.coerce(value)
        return cls([[value if i == j else ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Scalar]], dim: int) -> "PolyMatrix":
        """Matrix whose j-th column holds the sparse image {i: coeff} of basis vector j."""
        rows = [[ZERO] * dim for _ in range(dim)]
        for j, column in enumerate(columns):
            for i, v in column.items():
                rows[i][j] = rows[i][j] + LaurentPoly.coerce(v)
        return cls(rows)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        dim = sum(b.dim for b in blocks)
        rows = [[ZERO] * dim for _ in range(dim)]
        offset = 0
        for b in blocks:
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[offset + i][offset + j] = b.rows[i][j]
            offset += b.dim
        return cls(rows)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c: Scalar) -> "PolyMatrix":
        c = LaurentPoly.coerce(c)
        return PolyMatrix([[c * a for a in row] for row in self.rows])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
        n = self.dim
        columns = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        out = []
        for row in self.rows:
            nonzero = [(k, a) for k, a in enumerate(row) if a.terms]
            new_row = []
            for col in columns:
                acc = ZERO
                for k, a in nonzero:
                    b = col[k]
                    if b.terms:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return PolyMatrix(out)

    def is_identity(self) -> bool:
        return all(
            (v.is_one() if i == j else v.is_zero())
            for i, row in enumerate(self.rows)
            for j, v in enumerate(row)
        )

    def commutes_with(self, other: "PolyMatrix") -> bool:
        return self @ other == other @ self

    def to_json_entries(self) -> list[list[list[list]]]:
        return [[v.to_entries() for v in row] for row in self.rows]

    def __repr__(self) -> str:
        return f"PolyMatrix(dim={self.dim})"

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.rows)


def monomial_scalar_of(m: PolyMatrix) -> Optional[tuple[int, int, int]]:
    """(sign, dq, dt) if m = ±q^dq t^dt · I, else None."""
    if m.dim == 0:
        return 1, 0, 0
    unit = m.rows[0][0].as_unit()
    if unit is None:
        return None
    diagonal = m.rows[0][0]
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if i == j:
                if v != diagonal:
                    return None
            elif v.terms:
                return None
    return unit


def projectively_equal(m1: PolyMatrix, m2: PolyMatrix) -> bool:
    """
    m1 = u · m2 for a unit u of the Laurent ring.

    Cross-multiplication: pick the first nonzero entry of m2, read the unit
    from the matching entry of m1, then compare every entry.
    """
    if m1.dim != m2.dim:
        return False
    pivot = next(
        ((i, j) for i, row in enumerate(m2.rows) for j, v in enumerate(row) if v.terms),
        None,
    )
    if pivot is None:
        return all(v.is_zero() for row in m1.rows for v in row)
    i, j = pivot
    a, b = m1.rows[i][j], m2.rows[i][j]
    b_unit = b.as_unit()
    if b_unit is not None:
        sign, dq, dt = b_unit
        ratio = a.shift(-dq, -dt, sign)
    else:
        ratio = _exact_unit_ratio(a, b)
    if ratio is None or ratio.as_unit() is None:
        return False
    return all(
        m1.rows[r][c] == ratio * m2.rows[r][c] for r in range(m1.dim) for c in range(m1.dim)
    )


def _exact_unit_ratio(a: LaurentPoly, b: LaurentPoly) -> Optional[LaurentPoly]:
    """The unit u with a = u b, comparing extreme terms; None if there is none."""
    if len(a.terms) != len(b.terms) or not a.terms:
        return None
    ka, kb = min(a.terms), min(b.terms)
    ca, cb = a.terms[ka], b.terms[kb]
    if ca not in (cb, -cb):
        return None
    u = LaurentPoly.monomial(ca // cb, ka[0] - kb[0], ka[1] - kb[1])
    return u if u * b == a else None
