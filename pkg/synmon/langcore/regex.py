"""Regex parsing and conversion to minimal DFAs by Brzozowski derivatives.

Grammar (whitespace ignored)::

    union  ::= concat ('|' concat)*
    concat ::= star+
    star   ::= atom '*'*
    atom   ::= letter | 'ε' | '∅' | '(' union ')' | '(' ')'
"""
import logging
from collections import deque
from typing import Dict, List, Sequence

from synmon.errors import AlphabetError, RegexSyntaxError
from synmon.langcore.automata import minimize
from synmon.langcore.models import (
    RESERVED_SYMBOLS,
    Concat,
    Dfa,
    Empty,
    Epsilon,
    Literal,
    Regex,
    Star,
    Union,
    normalize_alphabet,
)

logger = logging.getLogger(__name__)


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.tokens = [(i, c) for i, c in enumerate(text) if not c.isspace()]
        self.end = len(text)
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def position(self) -> int:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else self.end

    def advance(self) -> str:
        symbol = self.tokens[self.pos][1]
        self.pos += 1
        return symbol

    def parse(self) -> Regex:
        if not self.tokens:
            raise RegexSyntaxError("Empty expression", 0)
        expression = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"Unexpected {self.peek()!r}", self.position())
        return expression

    def union(self) -> Regex:
        expression = self.concat()
        while self.peek() == "|":
            self.advance()
            expression = Union(left=expression, right=self.concat())
        return expression

    def concat(self) -> Regex:
        if self.peek() in (None, "|", ")", "*"):
            found = "end of input" if self.peek() is None else repr(self.peek())
            raise RegexSyntaxError(f"Expected an expression, found {found}", self.position())
        expression = self.star()
        while self.peek() not in (None, "|", ")"):
            expression = Concat(left=expression, right=self.star())
        return expression

    def star(self) -> Regex:
        expression = self.atom()
        while self.peek() == "*":
            self.advance()
            expression = Star(inner=expression)
        return expression

    def atom(self) -> Regex:
        position = self.position()
        symbol = self.peek()
        if symbol is None:
            raise RegexSyntaxError("Unexpected end of input", position)
        if symbol == "(":
            self.advance()
            if self.peek() == ")":
                self.advance()
                return Epsilon()
            expression = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("Missing ')'", self.position())
            self.advance()
            return expression
        if symbol == "ε":
            self.advance()
            return Epsilon()
        if symbol == "∅":
            self.advance()
            return Empty()
        if symbol in RESERVED_SYMBOLS:
            raise RegexSyntaxError(f"Unexpected {symbol!r}", position)
        if symbol not in self.alphabet:
            raise AlphabetError(
                f"Letter {symbol!r} at position {position} is not in alphabet {''.join(self.alphabet)}"
            )
        self.advance()
        return Literal(letter=symbol)


def parse_regex(text: str, alphabet: Sequence[str]) -> Regex:
    """Parse `text` into a syntax tree over the given alphabet."""
    return _Parser(text, normalize_alphabet(alphabet)).parse()


# Smart constructors normalizing modulo associativity, commutativity and
# idempotence of union; this keeps the set of derivatives finite.


def _alternatives(regex: Regex) -> List[Regex]:
    if isinstance(regex, Union):
        return _alternatives(regex.left) + _alternatives(regex.right)
    return [regex]


def _union(left: Regex, right: Regex) -> Regex:
    members = {r for r in _alternatives(left) + _alternatives(right) if not isinstance(r, Empty)}
    if not members:
        return Empty()
    ordered = sorted(members, key=str)
    result = ordered[-1]
    for regex in reversed(ordered[:-1]):
        result = Union(left=regex, right=result)
    return result


def _concat(left: Regex, right: Regex) -> Regex:
    if isinstance(left, Empty) or isinstance(right, Empty):
        return Empty()
    if isinstance(left, Epsilon):
        return right
    if isinstance(right, Epsilon):
        return left
    if isinstance(left, Concat):
        return Concat(left=left.left, right=_concat(left.right, right))
    return Concat(left=left, right=right)


def _star(inner: Regex) -> Regex:
    if isinstance(inner, (Empty, Epsilon)):
        return Epsilon()
    if isinstance(inner, Star):
        return inner
    return Star(inner=inner)


def normalize(regex: Regex) -> Regex:
    if isinstance(regex, Union):
        return _union(normalize(regex.left), normalize(regex.right))
    if isinstance(regex, Concat):
        return _concat(normalize(regex.left), normalize(regex.right))
    if isinstance(regex, Star):
        return _star(normalize(regex.inner))
    return regex


def nullable(regex: Regex) -> bool:
    if isinstance(regex, (Epsilon, Star)):
        return True
    if isinstance(regex, Union):
        return nullable(regex.left) or nullable(regex.right)
    if isinstance(regex, Concat):
        return nullable(regex.left) and nullable(regex.right)
    return False


def derivative(regex: Regex, letter: str) -> Regex:
    """Brzozowski derivative of a normalized regex, normalized again."""
    if isinstance(regex, Literal):
        return Epsilon() if regex.letter == letter else Empty()
    if isinstance(regex, Union):
        return _union(derivative(regex.left, letter), derivative(regex.right, letter))
    if isinstance(regex, Concat):
        head = _concat(derivative(regex.left, letter), regex.right)
        if nullable(regex.left):
            return _union(head, derivative(regex.right, letter))
        return head
    if isinstance(regex, Star):
        return _concat(derivative(regex.inner, letter), regex)
    return Empty()


def regex_to_min_dfa(regex: Regex, alphabet: Sequence[str]) -> Dfa:
    """Minimal canonical DFA of the regex language."""
    letters = normalize_alphabet(alphabet)
    stray = regex.letters() - set(letters)
    if stray:
        raise AlphabetError(f"Regex uses letters outside the alphabet: {''.join(sorted(stray))}")

    start = normalize(regex)
    index: Dict[Regex, int] = {start: 0}
    states = [start]
    rows = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        row = []
        for letter in letters:
            successor = derivative(current, letter)
            if successor not in index:
                index[successor] = len(states)
                states.append(successor)
                queue.append(successor)
            row.append(index[successor])
        rows.append(row)
    finals = [i for i, state in enumerate(states) if nullable(state)]
    logger.debug(f"Derivative automaton of {regex} has {len(states)} states")
    return minimize(Dfa(alphabet=letters, states=len(states), initial=0, finals=finals, trans=rows))


def compile_regex(text: str, alphabet: Sequence[str]) -> Dfa:
    """Parse and compile in one step."""
    return regex_to_min_dfa(parse_regex(text, alphabet), alphabet)
