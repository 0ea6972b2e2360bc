"""
Parenthesized-power sugar for word arguments: `(a1 b a2)^4`, nested groups and
negative exponents, expanded into the plain word grammar before parsing.
"""

import re
from typing import Iterable, List, Optional

from app.algebra.word import Word, parse_word
from app.core.exceptions import WordSyntaxError

_TOKEN_RE = re.compile(r"\(|\)(?:\^(-?\d+))?|[^\s()]+")


def _invert_atom(atom: str) -> str:
    name, _, exponent = atom.partition("^")
    k = -int(exponent) if exponent else -1
    return name if k == 1 else f"{name}^{k}"


def expand_powers(text: str) -> str:
    """
    Rewrite every `( ... )^k` as its expanded atom sequence.

    Raises:
        WordSyntaxError: unbalanced parentheses or a zero exponent on a group
    """
    stack: List[List[str]] = [[]]
    opened: List[int] = []
    for match in _TOKEN_RE.finditer(text):
        token = match.group(0)
        if token == "(":
            stack.append([])
            opened.append(match.start())
        elif token.startswith(")"):
            if len(stack) == 1:
                raise WordSyntaxError("unmatched ')'", match.start())
            group = stack.pop()
            opened.pop()
            k = int(match.group(1)) if match.group(1) is not None else 1
            if k == 0:
                raise WordSyntaxError("zero exponent on a parenthesized group", match.start())
            if k < 0:
                group = [_invert_atom(a) for a in reversed(group)]
            stack[-1].extend(group * abs(k))
        else:
            stack[-1].append(token)
    if len(stack) != 1:
        raise WordSyntaxError("unclosed '('", opened[-1])
    return " ".join(stack[0])


def parse_sugared(text: str, context: Optional[Iterable[str]] = None) -> Word:
    return parse_word(expand_powers(text), context)
