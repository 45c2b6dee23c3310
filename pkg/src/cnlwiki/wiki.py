"""Wiki content model and mutation pipeline.

One article per lexicon word; the stored content is the set of sentences,
each kept with its derived syntax tree, axiom and pattern. Articles are pure
views (a sentence appears in the article of every content word it mentions),
so nothing is stored twice. All mutations run under a single writer lock and
keep the lexicon, knowledge base and sentence store consistent; the knowledge
base holds exactly the OWL-compatible axioms of the stored sentences.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field

from . import grammar, logic, reasoner
from .grammar import (
    DEFAULT_GRAMMAR, Grammar, GrammarError, LexicalError, Prediction,
    SentenceAst, Token, TokenKind, restrict, sentence_text, tokenize,
)
from .lexicon import (
    Lexicon, LexiconError, UnknownWord, Word, WordCategory, WordInUse,
)
from .logic import Axiom, SentencePattern, BOX_PATTERNS
from .reasoner import KnowledgeBase, assert_axiom, retract_axiom


class WikiError(Exception):
    pass


class UnknownSentence(WikiError):
    def __init__(self, sentence_id: int):
        super().__init__(f"unknown sentence id {sentence_id}")
        self.sentence_id = sentence_id


class VersionConflict(WikiError):
    def __init__(self, sentence_id: int, expected: int, actual: int):
        super().__init__(
            f"sentence {sentence_id}: expected version {expected}, found {actual}"
        )
        self.sentence_id = sentence_id
        self.expected = expected
        self.actual = actual


class StaleRevision(WikiError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected wiki revision {expected}, found {actual}")
        self.expected = expected
        self.actual = actual


class ParseFailed(WikiError):
    def __init__(self, cause: Exception):
        super().__init__(f"sentence rejected: {cause}")
        self.cause = cause
        self.position = getattr(cause, "position", None)


class FormatError(WikiError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownWordInSentence(WikiError):
    def __init__(self, line: int, word: str):
        super().__init__(f"line {line}: word {word!r} not declared")
        self.line = line
        self.word = word


class AnnotationForUnknownSentence(WikiError):
    def __init__(self, sentence_id):
        super().__init__(f"annotation for unknown sentence {sentence_id!r}")
        self.sentence_id = sentence_id


@dataclass(frozen=True)
class Sentence:
    id: int
    tokens: tuple[Token, ...]
    ast: SentenceAst
    axiom: Axiom
    pattern: SentencePattern
    version: int

    @property
    def text(self) -> str:
        return sentence_text(self.tokens)

    def mentions(self, surface: str) -> bool:
        return any(
            t.kind is TokenKind.WORD and t.text == surface for t in self.tokens
        )


@dataclass(frozen=True)
class Article:
    """Derived view of one word: linguistic header, pattern boxes in fixed
    order, then the unrestricted sentences, then informal notes."""
    word: Word
    boxes: dict[str, tuple[Sentence, ...]]
    unrestricted: tuple[Sentence, ...]
    comments: tuple[tuple[int, str], ...]


BOX_ORDER = ("Hierarchy", "Assignments", "DomainRange")


@dataclass(frozen=True)
class StatsReport:
    pattern_counts: dict[SentencePattern, int]
    neg_or_impl_fraction: float
    total: int
    s: int | None = None
    s_plus: int | None = None
    s_minus: int | None = None
    ratio: float | None = None


def _derive(tokens: list[Token], lexicon: Lexicon,
            gram: Grammar) -> tuple[SentenceAst, Axiom, SentencePattern]:
    try:
        ast = grammar.parse(tokens, grammar=gram, lexicon=lexicon)
    except GrammarError as exc:
        raise ParseFailed(exc) from exc
    axiom = logic.classify(logic.ast_to_drs(ast))
    pattern = logic.pattern_of(ast)
    return ast, axiom, pattern


class Wiki:
    """The wiki state: lexicon + sentences + saturated knowledge base.

    Single-writer/multi-reader: every mutation takes the writer lock,
    increments the global revision, and (when a path is configured) writes
    the whole wiki back to disk.
    """

    def __init__(self, persist_path: str | None = None):
        self.lexicon = Lexicon()
        self.sentences: dict[int, Sentence] = {}
        self.kb: KnowledgeBase = KnowledgeBase.empty()
        self.revision = 0
        self.notes: list[tuple[str, str]] = []
        self.persist_path = persist_path
        self._order: list[int] = []
        self._axiom_counts: Counter[Axiom] = Counter()
        self._next_id = 1
        self._lock = threading.RLock()

    # -- internal helpers ---------------------------------------------------

    def _bump(self):
        self.revision += 1
        if self.persist_path:
            with open(self.persist_path, "w", encoding="utf-8") as fh:
                fh.write(self.export_text())

    def _count_axiom(self, axiom: Axiom):
        if not axiom.owl_compatible:
            return
        self._axiom_counts[axiom] += 1
        if self._axiom_counts[axiom] == 1:
            self.kb = assert_axiom(self.kb, axiom)

    def _discount_axiom(self, axiom: Axiom):
        if not axiom.owl_compatible:
            return
        self._axiom_counts[axiom] -= 1
        if self._axiom_counts[axiom] == 0:
            del self._axiom_counts[axiom]
            self.kb = retract_axiom(self.kb, axiom)

    # -- lexicon ------------------------------------------------------------

    def add_word(self, category: WordCategory, surface: str) -> Word:
        with self._lock:
            word = self.lexicon.add_word(category, surface)
            self._bump()
            return word

    def remove_word(self, word_id: int) -> None:
        with self._lock:
            word = self.lexicon.get(word_id)
            if word is None:
                raise UnknownWord(word_id)
            used = sum(
                1 for s in self.sentences.values() if s.mentions(word.surface)
            )
            if used:
                raise WordInUse(word.surface, used)
            self.lexicon.remove_word(word_id)
            self._bump()

    # -- sentences ----------------------------------------------------------

    def _grammar_for(self, patterns) -> Grammar:
        if not patterns:
            return DEFAULT_GRAMMAR
        return restrict(DEFAULT_GRAMMAR, patterns)

    def create_sentence(self, token_texts: list[str], patterns=None,
                        expected_revision: int | None = None) -> Sentence:
        with self._lock:
            if expected_revision is not None and \
                    expected_revision != self.revision:
                raise StaleRevision(expected_revision, self.revision)
            try:
                tokens = tokenize(token_texts, self.lexicon)
            except LexicalError as exc:
                raise ParseFailed(exc) from exc
            ast, axiom, pattern = _derive(tokens, self.lexicon,
                                          self._grammar_for(patterns))
            sentence = Sentence(self._next_id, tuple(tokens), ast, axiom,
                                pattern, version=1)
            self._next_id += 1
            self.sentences[sentence.id] = sentence
            self._order.append(sentence.id)
            self._count_axiom(axiom)
            self._bump()
            return sentence

    def edit_sentence(self, sentence_id: int, expected_version: int,
                      token_texts: list[str], patterns=None) -> Sentence:
        with self._lock:
            old = self.sentences.get(sentence_id)
            if old is None:
                raise UnknownSentence(sentence_id)
            if old.version != expected_version:
                raise VersionConflict(sentence_id, expected_version, old.version)
            try:
                tokens = tokenize(token_texts, self.lexicon)
            except LexicalError as exc:
                raise ParseFailed(exc) from exc
            ast, axiom, pattern = _derive(tokens, self.lexicon,
                                          self._grammar_for(patterns))
            new = Sentence(old.id, tuple(tokens), ast, axiom, pattern,
                           version=old.version + 1)
            self._discount_axiom(old.axiom)
            self.sentences[sentence_id] = new
            self._count_axiom(axiom)
            self._bump()
            return new

    def delete_sentence(self, sentence_id: int, expected_version: int) -> None:
        with self._lock:
            old = self.sentences.get(sentence_id)
            if old is None:
                raise UnknownSentence(sentence_id)
            if old.version != expected_version:
                raise VersionConflict(sentence_id, expected_version, old.version)
            del self.sentences[sentence_id]
            self._order.remove(sentence_id)
            self._discount_axiom(old.axiom)
            self._bump()

    def get_sentence(self, sentence_id: int) -> Sentence:
        sentence = self.sentences.get(sentence_id)
        if sentence is None:
            raise UnknownSentence(sentence_id)
        return sentence

    def sentences_in_order(self) -> list[Sentence]:
        return [self.sentences[i] for i in self._order]

    # -- articles -----------------------------------------------------------

    def render_article(self, surface: str) -> Article:
        with self._lock:
            word = self.lexicon.lookup(surface)
            if word is None:
                raise UnknownWord(surface)
            boxes: dict[str, list[Sentence]] = {b: [] for b in BOX_ORDER}
            unrestricted: list[Sentence] = []
            for sentence in self.sentences_in_order():
                if not sentence.mentions(surface):
                    continue
                for box in BOX_ORDER:
                    if sentence.pattern in BOX_PATTERNS[box]:
                        boxes[box].append(sentence)
                        break
                else:
                    unrestricted.append(sentence)
            comments = tuple(
                (i, text)
                for i, (w, text) in enumerate(self.notes)
                if w == surface
            )
            return Article(
                word=word,
                boxes={b: tuple(v) for b, v in boxes.items()},
                unrestricted=tuple(unrestricted),
                comments=comments,
            )

    def add_note(self, surface: str, text: str) -> None:
        with self._lock:
            if self.lexicon.lookup(surface) is None:
                raise UnknownWord(surface)
            self.notes.append((surface, text))
            self._bump()

    # -- prediction ---------------------------------------------------------

    def predict(self, prefix_texts: list[str], patterns=None) -> Prediction:
        """Grammar prediction with reasoner-ranked word menus."""
        tokens = tokenize(prefix_texts, self.lexicon)
        pred = grammar.predict(tokens, self.lexicon,
                               self._grammar_for(patterns))
        context = self._object_role_context(tokens)
        if context is None:
            return pred
        role, position = context
        menus = dict(pred.category_menus)
        menus[WordCategory.PROPER_NAME] = tuple(reasoner.rank_individuals(
            self.kb, role, position, list(menus[WordCategory.PROPER_NAME])))
        menus[WordCategory.NOUN] = tuple(reasoner.rank_concepts(
            self.kb, role, position, list(menus[WordCategory.NOUN])))
        return Prediction(
            category_menus=menus,
            function_menu=pred.function_menu,
            var_ref_menu=pred.var_ref_menu,
            var_intro_names=pred.var_intro_names,
            var_intro_allowed=pred.var_intro_allowed,
            can_finish=pred.can_finish,
        )

    def _object_role_context(self, tokens: list[Token]):
        """When the prefix sits inside a role's object, the governing role
        word and the position to rank for."""
        i = len(tokens) - 1
        if i >= 0 and tokens[i].kind is TokenKind.FUNCTION and \
                tokens[i].text in ("a", "an"):
            i -= 1
        if i < 0:
            return None
        tok = tokens[i]
        if tok.kind is TokenKind.WORD and \
                tok.category is WordCategory.TRANSITIVE_VERB:
            return self.lexicon.lookup(tok.text), "object"
        if tok.kind is TokenKind.FUNCTION and tok.text == "of" and i > 0:
            prev = tokens[i - 1]
            if prev.kind is TokenKind.WORD and \
                    prev.category is WordCategory.OF_CONSTRUCT:
                return self.lexicon.lookup(prev.text), "object"
        return None

    # -- persistence --------------------------------------------------------

    def export_text(self) -> str:
        with self._lock:
            lines = ["# cnlwiki 1"]
            for word in self.lexicon.words():
                lines.append(f"word {word.category.value} {word.surface}")
            for sentence in self.sentences_in_order():
                lines.append(f"sentence {sentence.text}")
            for surface, text in self.notes:
                lines.append(f"note {surface} {text}")
            return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, persist_path: str | None = None) -> "Wiki":
        wiki = cls(persist_path=None)
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(" ")
            if head == "word":
                code, _, surface = rest.partition(" ")
                try:
                    category = WordCategory.from_code(code)
                except ValueError as exc:
                    raise FormatError(line_no, str(exc)) from exc
                if not surface or " " in surface:
                    raise FormatError(line_no, "expected: word <pn|noun|tv|of> <surface>")
                try:
                    wiki.lexicon.add_word(category, surface)
                except LexiconError as exc:
                    raise FormatError(line_no, str(exc)) from exc
            elif head == "sentence":
                if not rest:
                    raise FormatError(line_no, "empty sentence")
                try:
                    tokens = tokenize(rest, wiki.lexicon)
                except LexicalError as exc:
                    raise UnknownWordInSentence(line_no, exc.text) from exc
                try:
                    ast, axiom, pattern = _derive(tokens, wiki.lexicon,
                                                  DEFAULT_GRAMMAR)
                except ParseFailed as exc:
                    raise FormatError(line_no, str(exc.cause)) from exc
                sentence = Sentence(wiki._next_id, tuple(tokens), ast, axiom,
                                    pattern, version=1)
                wiki._next_id += 1
                wiki.sentences[sentence.id] = sentence
                wiki._order.append(sentence.id)
                wiki._count_axiom(axiom)
            elif head == "note":
                surface, _, note_text = rest.partition(" ")
                if wiki.lexicon.lookup(surface) is None:
                    raise FormatError(line_no, f"note for unknown word {surface!r}")
                wiki.notes.append((surface, note_text))
            else:
                raise FormatError(line_no, f"unknown line kind {head!r}")
        wiki.persist_path = persist_path
        return wiki

    def import_text(self, text: str) -> None:
        """Replace the whole wiki atomically; nothing changes on error."""
        incoming = Wiki.from_text(text)
        with self._lock:
            self.lexicon = incoming.lexicon
            self.sentences = incoming.sentences
            self.kb = incoming.kb
            self.notes = incoming.notes
            self._order = incoming._order
            self._axiom_counts = incoming._axiom_counts
            self._next_id = incoming._next_id
            self._bump()

    # -- statistics ---------------------------------------------------------

    def corpus_stats(self, annotations: dict[int, bool] | None = None) -> StatsReport:
        with self._lock:
            counts = {p: 0 for p in SentencePattern}
            marked = 0
            ordered = self.sentences_in_order()
            for sentence in ordered:
                counts[sentence.pattern] += 1
                neg, impl = logic.contains_neg_or_impl(sentence.ast)
                if neg or impl:
                    marked += 1
            total = len(ordered)
            fraction = (marked / total) if total else 0.0
            if annotations is None:
                return StatsReport(counts, fraction, total)
            for sid in annotations:
                if sid not in self.sentences:
                    raise AnnotationForUnknownSentence(sid)
            s_plus = sum(1 for sid, ok in annotations.items() if ok)
            s_minus = total - s_plus
            ratio = (s_plus / total) if total else 0.0
            return StatsReport(counts, fraction, total,
                               s=total, s_plus=s_plus, s_minus=s_minus,
                               ratio=ratio)
