"""User-extensible vocabulary for the controlled-English wiki.

Every content word belongs to exactly one of four categories: proper names
(individuals), nouns (concepts), transitive verbs (roles), and of-constructs
(roles written as "<noun> of"). Surfaces are unique across the whole lexicon
and must never collide with the fixed function-word inventory, so that any
token stream can be resolved unambiguously.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class WordCategory(Enum):
    PROPER_NAME = "pn"
    NOUN = "noun"
    TRANSITIVE_VERB = "tv"
    OF_CONSTRUCT = "of"

    @classmethod
    def from_code(cls, code: str) -> "WordCategory":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"unknown word category {code!r}") from None


#: Fixed function words. These can never be added to the lexicon.
#: "an" is the vowel-conditioned variant of the indefinite article.
RESERVED_WORDS = frozenset(
    {
        "every", "no", "a", "an", "something", "everything",
        "is", "not", "does", "if", "then", "and", "or",
        "it", "false", "that", "who", "of",
        "X", "Y", "Z", ".",
    }
)

#: Variable names usable for in-sentence references.
VARIABLE_NAMES = ("X", "Y", "Z")

_SURFACE_RE = re.compile(r"^[A-Za-z0-9-]+$")


class LexiconError(Exception):
    """Base class for lexicon failures."""


class DuplicateSurface(LexiconError):
    def __init__(self, surface: str):
        super().__init__(f"surface {surface!r} is already taken")
        self.surface = surface


class ReservedWord(LexiconError):
    def __init__(self, surface: str):
        super().__init__(f"{surface!r} is a reserved function word")
        self.surface = surface


class InvalidSurface(LexiconError):
    def __init__(self, surface: str):
        super().__init__(
            f"invalid surface {surface!r}: use letters, digits and hyphens only"
        )
        self.surface = surface


class UnknownWord(LexiconError):
    def __init__(self, what):
        super().__init__(f"unknown word: {what!r}")
        self.what = what


class WordInUse(LexiconError):
    def __init__(self, surface: str, count: int):
        super().__init__(f"word {surface!r} is used by {count} stored sentence(s)")
        self.surface = surface
        self.count = count


@dataclass(frozen=True)
class Word:
    """One lexicon entry. Of-construct surfaces are stored without the
    trailing "of" (surface "part" renders as "part of").

    Identity is (category, surface); the id is storage bookkeeping only.
    """

    id: int = field(compare=False)
    category: WordCategory = field(compare=True)
    surface: str = field(compare=True)

    def rendered(self) -> str:
        if self.category is WordCategory.OF_CONSTRUCT:
            return f"{self.surface} of"
        return self.surface


def _sort_key(word: Word) -> tuple[str, str]:
    # Case-insensitive alphabetical with a deterministic tie-break.
    return (word.surface.casefold(), word.surface)


class Lexicon:
    """Surface-indexed word store.

    Mutations are serialized by the owning wiki store; reads are safe under
    concurrent use of a snapshot.
    """

    def __init__(self):
        self._by_surface: dict[str, Word] = {}
        self._by_id: dict[int, Word] = {}
        self._order: list[int] = []
        self._next_id = 1

    def __len__(self) -> int:
        return len(self._by_id)

    def __contains__(self, surface: str) -> bool:
        return surface in self._by_surface

    def add_word(self, category: WordCategory, surface: str) -> Word:
        if not surface or not _SURFACE_RE.match(surface):
            raise InvalidSurface(surface)
        if surface in RESERVED_WORDS:
            raise ReservedWord(surface)
        if surface in self._by_surface:
            raise DuplicateSurface(surface)
        word = Word(self._next_id, category, surface)
        self._next_id += 1
        self._by_surface[surface] = word
        self._by_id[word.id] = word
        self._order.append(word.id)
        return word

    def lookup(self, surface: str) -> Word | None:
        return self._by_surface.get(surface)

    def get(self, word_id: int) -> Word | None:
        return self._by_id.get(word_id)

    def remove_word(self, word_id: int) -> None:
        """Remove a word by id. The caller (wiki store) is responsible for
        checking that no stored sentence references it."""
        word = self._by_id.get(word_id)
        if word is None:
            raise UnknownWord(word_id)
        del self._by_id[word_id]
        del self._by_surface[word.surface]
        self._order.remove(word_id)

    def words(self) -> list[Word]:
        """All words in insertion order."""
        return [self._by_id[i] for i in self._order]

    def of_category(self, category: WordCategory) -> list[Word]:
        """All words of one category, alphabetical (case-insensitive)."""
        found = [w for w in self._by_id.values() if w.category is category]
        return sorted(found, key=_sort_key)

    def complete_prefix(self, prefix: str, category: WordCategory) -> list[Word]:
        return [
            w for w in self.of_category(category) if w.surface.startswith(prefix)
        ]
