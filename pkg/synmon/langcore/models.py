"""Models for regular expressions and classical deterministic automata."""
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from synmon.errors import AlphabetError

# Characters with a meaning in the regex grammar; never usable as letters.
RESERVED_SYMBOLS = frozenset("()|*∅ε \t\n")

Word = str


def normalize_alphabet(alphabet: Iterable[str]) -> Tuple[str, ...]:
    """Validate an ordered alphabet of single-character letters."""
    letters = tuple(alphabet)
    if not letters:
        raise AlphabetError("Alphabet must not be empty")
    for letter in letters:
        if not isinstance(letter, str) or len(letter) != 1:
            raise AlphabetError(f"Letters must be single symbols, got {letter!r}")
        if letter in RESERVED_SYMBOLS:
            raise AlphabetError(f"Letter {letter!r} is reserved by the regex grammar")
    if len(set(letters)) != len(letters):
        raise AlphabetError(f"Alphabet contains duplicate letters: {''.join(letters)}")
    return letters


def check_word(word: Word, alphabet: Sequence[str]) -> Word:
    """Raise AlphabetError if the word uses a letter outside the alphabet."""
    for position, letter in enumerate(word):
        if letter not in alphabet:
            raise AlphabetError(
                f"Letter {letter!r} at position {position} is not in alphabet {''.join(alphabet)}"
            )
    return word


# Regex syntax tree


class Regex(BaseModel):
    """Base class of regex syntax tree nodes."""

    model_config = ConfigDict(frozen=True)

    def letters(self) -> FrozenSet[str]:
        return frozenset()


class Empty(Regex):
    def __str__(self) -> str:
        return "∅"


class Epsilon(Regex):
    def __str__(self) -> str:
        return "ε"


class Literal(Regex):
    letter: str

    def letters(self) -> FrozenSet[str]:
        return frozenset(self.letter)

    def __str__(self) -> str:
        return self.letter


class Union(Regex):
    left: Regex
    right: Regex

    def letters(self) -> FrozenSet[str]:
        return self.left.letters() | self.right.letters()

    def __str__(self) -> str:
        return f"({self.left}|{self.right})"


class Concat(Regex):
    left: Regex
    right: Regex

    def letters(self) -> FrozenSet[str]:
        return self.left.letters() | self.right.letters()

    def __str__(self) -> str:
        return f"{self.left}{self.right}"


class Star(Regex):
    inner: Regex

    def letters(self) -> FrozenSet[str]:
        return self.inner.letters()

    def __str__(self) -> str:
        if isinstance(self.inner, (Empty, Epsilon, Literal, Union)):
            return f"{self.inner}*"
        return f"({self.inner})*"


# Deterministic automata


class Dfa(BaseModel):
    """A total deterministic automaton over an ordered alphabet.

    States are the integers ``0 .. states-1``; ``trans[q][i]`` is the successor of
    ``q`` on ``alphabet[i]``. Serializes to the JSON schema
    ``{alphabet, states, initial, finals, trans}``.
    """

    model_config = ConfigDict(frozen=True)

    alphabet: Tuple[str, ...]
    states: int = Field(..., ge=1, description="Number of states")
    initial: int = Field(0, description="Initial state")
    finals: Tuple[int, ...] = Field(default_factory=tuple, description="Accepting states, sorted")
    trans: Tuple[Tuple[int, ...], ...] = Field(..., description="One row per state, one column per letter")
    minimal: bool = Field(False, exclude=True, description="Set only by minimization")

    @field_validator("alphabet", mode="before")
    @classmethod
    def _check_alphabet(cls, value):
        return normalize_alphabet(value)

    @field_validator("finals", mode="before")
    @classmethod
    def _sort_finals(cls, value):
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def _check_tables(self):
        if not 0 <= self.initial < self.states:
            raise ValueError(f"Initial state {self.initial} not in 0..{self.states - 1}")
        for q in self.finals:
            if not 0 <= q < self.states:
                raise ValueError(f"Final state {q} not in 0..{self.states - 1}")
        if len(self.trans) != self.states:
            raise ValueError(f"Expected {self.states} transition rows, got {len(self.trans)}")
        for q, row in enumerate(self.trans):
            if len(row) != len(self.alphabet):
                raise ValueError(f"Row {q} has {len(row)} entries for {len(self.alphabet)} letters")
            for target in row:
                if not 0 <= target < self.states:
                    raise ValueError(f"Transition target {target} of state {q} out of range")
        return self

    @cached_property
    def index(self) -> Dict[str, int]:
        return {letter: i for i, letter in enumerate(self.alphabet)}

    @cached_property
    def final_set(self) -> FrozenSet[int]:
        return frozenset(self.finals)

    def letter_index(self, letter: str) -> int:
        try:
            return self.index[letter]
        except KeyError:
            raise AlphabetError(
                f"Letter {letter!r} is not in alphabet {''.join(self.alphabet)}"
            ) from None

    def step(self, state: int, letter: str) -> int:
        return self.trans[state][self.letter_index(letter)]

    def run(self, word: Word, start: Optional[int] = None) -> int:
        """State reached on `word` from `start` (default: the initial state)."""
        state = self.initial if start is None else start
        for letter in word:
            state = self.trans[state][self.letter_index(letter)]
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.final_set
