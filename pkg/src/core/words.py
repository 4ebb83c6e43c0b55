from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import WordSyntaxError

# Labels are opaque identifiers; the alphabet bound only guards against typos.
MAX_LABEL = 1 << 16


@dataclass(frozen=True)
class StarLetter:
    """A single letter T^{eps}(u) of an operator word."""
    starred: bool
    label: int = 1

    def __post_init__(self):
        if not 0 <= self.label < MAX_LABEL:
            raise WordSyntaxError(f"Label {self.label} outside alphabet [0, {MAX_LABEL})")

    def flipped(self) -> "StarLetter":
        return StarLetter(not self.starred, self.label)

    def __str__(self) -> str:
        return f"{'*' if self.starred else ''}{self.label}"


@dataclass(frozen=True)
class StarWord:
    """An ordered sequence of star letters. Positions are reported 1-based."""
    letters: Tuple[StarLetter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        return self.letters[index]

    def at(self, position: int) -> StarLetter:
        """Letter at a 1-based position."""
        return self.letters[position - 1]

    @property
    def labels(self) -> List[int]:
        """Distinct labels in first-occurrence order."""
        seen: List[int] = []
        for letter in self.letters:
            if letter.label not in seen:
                seen.append(letter.label)
        return seen

    def adjoint(self) -> "StarWord":
        """Word of the adjoint operator: reversed, every star flipped."""
        return StarWord(tuple(letter.flipped() for letter in reversed(self.letters)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[bool, int]]) -> "StarWord":
        return cls(tuple(StarLetter(bool(s), int(u)) for s, u in pairs))

    @classmethod
    def parse(cls, text: str) -> "StarWord":
        """
        Parse the comma-separated token syntax, e.g. ``*1,1,*1,1``.

        Args:
            text: Tokens ``*<label>`` (starred) or ``<label>``; blank text is the empty word

        Returns:
            Parsed StarWord

        Raises:
            WordSyntaxError: If a token is malformed
        """
        text = (text or "").strip()
        if not text:
            return cls()
        letters = []
        for raw in text.split(","):
            token = raw.strip()
            starred = token.startswith("*")
            digits = token[1:] if starred else token
            if not (digits.isascii() and digits.isdigit()):
                raise WordSyntaxError(f"Malformed word token {raw!r} in {text!r}")
            letters.append(StarLetter(starred, int(digits)))
        return cls(tuple(letters))

    @classmethod
    def tt_power(cls, n: int, label: int = 1) -> "StarWord":
        """The alternating word (*u, u)^n describing (T*T)^n."""
        return cls(tuple(StarLetter(i % 2 == 0, label) for i in range(2 * n)))

    def __str__(self) -> str:
        return ",".join(str(letter) for letter in self.letters)


def as_word(word) -> StarWord:
    """Accept a StarWord, a token string or a sequence of (starred, label) pairs."""
    if isinstance(word, StarWord):
        return word
    if isinstance(word, str):
        return StarWord.parse(word)
    if isinstance(word, Sequence):
        return StarWord.from_pairs(word)
    raise WordSyntaxError(f"Cannot interpret {word!r} as a star word")
