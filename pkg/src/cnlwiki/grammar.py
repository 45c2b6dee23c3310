"""Grammar engine for the controlled English subset.

The module owns four operations:

* ``parse``     -- token sequence to the unique syntax tree,
* ``predict``   -- for any sentence prefix, exactly the tokens that can
                   legally continue it (the predictive-editor core),
* ``verbalize`` -- syntax tree back to tokens (round-trip inverse of parse),
* ``restrict``  -- reduced grammars that accept only fixed sentence patterns.

Recognition is chart-based (Earley) with an explicit completability check so
that every menu entry offered by ``predict`` is guaranteed to extend to a full
sentence under the current lexicon. Parsing proper enumerates derivations
top-down, which doubles as the ambiguity check: exactly one derivation must
exist for every accepted token list.

Variables (X, Y, Z) are the one non-context-free feature. An occurrence
directly after "something" or after a noun introduces a variable; any other
occurrence is a reference and must point to an introduction that is visible
under discourse-structure scoping (references cannot escape a negated
predicate or a disjunction branch).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .lexicon import Lexicon, RESERVED_WORDS, VARIABLE_NAMES, Word, WordCategory

VOWELS = "AEIOUaeiou"

#: Multi-word function phrases offered as single menu entries.
COMPOSITE_PHRASES = (
    "it is false that",
    "does not",
    "is not a",
    "is not an",
    "is a",
    "is an",
)


def indefinite_article(surface: str) -> str:
    return "an" if surface[0] in VOWELS else "a"


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

class TokenKind(Enum):
    FUNCTION = "function"
    WORD = "word"
    VARIABLE = "variable"
    PERIOD = "period"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    category: WordCategory | None = None


PERIOD_TOKEN = Token(TokenKind.PERIOD, ".")


def function_token(text: str) -> Token:
    return Token(TokenKind.FUNCTION, text)


def word_token(word: Word) -> Token:
    return Token(TokenKind.WORD, word.surface, word.category)


def var_token(name: str) -> Token:
    return Token(TokenKind.VARIABLE, name)


class GrammarError(Exception):
    """Base class for grammar failures."""


class LexicalError(GrammarError):
    def __init__(self, position: int, text: str):
        super().__init__(f"unknown word {text!r} at token {position}")
        self.position = position
        self.text = text


class SentenceSyntaxError(GrammarError):
    def __init__(self, position: int, expected: tuple[str, ...]):
        super().__init__(
            f"syntax error at token {position}; expected one of: "
            + (", ".join(expected) if expected else "(nothing)")
        )
        self.position = position
        self.expected = expected


class UnboundVariableError(GrammarError):
    def __init__(self, position: int, name: str):
        super().__init__(f"variable {name} at token {position} is not bound here")
        self.position = position
        self.name = name


class AmbiguousSentenceError(GrammarError):
    def __init__(self, count: int):
        super().__init__(f"internal error: {count} derivations for one sentence")
        self.count = count


class DeadPrefixError(GrammarError):
    def __init__(self, position: int | None = None):
        msg = "prefix cannot be extended to any sentence"
        if position is not None:
            msg += f" (stuck at token {position})"
        super().__init__(msg)
        self.position = position


class EmptyPatternSetError(GrammarError):
    def __init__(self):
        super().__init__("cannot restrict a grammar to an empty pattern set")


class UnsupportedPatternError(GrammarError):
    def __init__(self, name: str):
        super().__init__(f"pattern {name} has no reduced grammar")
        self.name = name


class PatternViolationError(GrammarError):
    def __init__(self, pattern_name: str, allowed: tuple[str, ...]):
        super().__init__(
            f"sentence pattern {pattern_name} not allowed here"
            f" (allowed: {', '.join(allowed)})"
        )
        self.pattern_name = pattern_name
        self.allowed = allowed


def tokenize(pieces: Sequence[str] | str, lexicon: Lexicon) -> list[Token]:
    """Turn surface strings into typed tokens, resolving words against the
    lexicon. Raises LexicalError for anything unresolvable."""
    if isinstance(pieces, str):
        pieces = pieces.split()
    out: list[Token] = []
    for i, piece in enumerate(pieces):
        if piece == ".":
            out.append(PERIOD_TOKEN)
        elif piece in VARIABLE_NAMES:
            out.append(var_token(piece))
        elif piece in RESERVED_WORDS:
            out.append(function_token(piece))
        else:
            word = lexicon.lookup(piece)
            if word is None:
                raise LexicalError(i, piece)
            out.append(word_token(word))
    return out


def sentence_text(tokens: Iterable[Token]) -> str:
    return " ".join(t.text for t in tokens)


# ---------------------------------------------------------------------------
# Syntax trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObjProper:
    word: Word


@dataclass(frozen=True)
class ObjA:
    noun: Word
    var: str | None = None


@dataclass(frozen=True)
class ObjSomething:
    var: str | None = None


@dataclass(frozen=True)
class ObjEverything:
    pass


@dataclass(frozen=True)
class ObjVarRef:
    name: str


ObjectNp = Union[ObjProper, ObjA, ObjSomething, ObjEverything, ObjVarRef]


@dataclass(frozen=True)
class Rel:
    """Relative clause on a subject noun: "who"/"that" + verb + object."""
    pronoun: str
    verb: Word
    obj: ObjectNp


@dataclass(frozen=True)
class SubjProper:
    word: Word


@dataclass(frozen=True)
class SubjEvery:
    noun: Word
    rel: Rel | None = None


@dataclass(frozen=True)
class SubjNo:
    noun: Word
    rel: Rel | None = None


@dataclass(frozen=True)
class SubjA:
    noun: Word
    rel: Rel | None = None


@dataclass(frozen=True)
class SubjSomething:
    var: str | None = None


@dataclass(frozen=True)
class SubjEverything:
    pass


SubjectNp = Union[SubjProper, SubjEvery, SubjNo, SubjA, SubjSomething, SubjEverything]


@dataclass(frozen=True)
class PredIsA:
    noun: Word


@dataclass(frozen=True)
class PredIsNotA:
    noun: Word


@dataclass(frozen=True)
class PredIsRoleOf:
    of_word: Word
    obj: ObjectNp


@dataclass(frozen=True)
class PredIsNotRoleOf:
    of_word: Word
    obj: ObjectNp


@dataclass(frozen=True)
class PredVerb:
    verb: Word
    obj: ObjectNp


@dataclass(frozen=True)
class PredDoesNotVerb:
    verb: Word
    obj: ObjectNp


Predicate = Union[PredIsA, PredIsNotA, PredIsRoleOf, PredIsNotRoleOf,
                  PredVerb, PredDoesNotVerb]


@dataclass(frozen=True)
class PredicateList:
    """Predicates joined pairwise by "and"/"or"; associates to the left."""
    preds: tuple[Predicate, ...]
    connectives: tuple[str, ...] = ()

    def __post_init__(self):
        assert len(self.connectives) == len(self.preds) - 1


@dataclass(frozen=True)
class CsSomething:
    var: str | None = None


@dataclass(frozen=True)
class CsA:
    noun: Word
    var: str | None = None


@dataclass(frozen=True)
class CsVarRef:
    name: str


ClauseSubject = Union[CsSomething, CsA, CsVarRef]


@dataclass(frozen=True)
class Clause:
    subject: ClauseSubject
    preds: PredicateList


@dataclass(frozen=True)
class Simple:
    subject: SubjectNp
    preds: PredicateList


@dataclass(frozen=True)
class Negated:
    """"it is false that" + simple sentence."""
    inner: Simple


@dataclass(frozen=True)
class Conditional:
    if_clauses: tuple[Clause, ...]
    then_clause: Clause


SentenceAst = Union[Simple, Negated, Conditional]


# ---------------------------------------------------------------------------
# Grammar rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Terminal:
    kind: str                  # fw | cat | vi | vr | end
    value: str | None = None   # function word / category tag / fixed var name


def fw(word: str) -> Terminal:
    return Terminal("fw", word)


T_END = Terminal("end")
T_PN = Terminal("cat", "pn")
T_NOUN = Terminal("cat", "noun")
T_NOUN_C = Terminal("cat", "noun_c")
T_NOUN_V = Terminal("cat", "noun_v")
T_TV = Terminal("cat", "tv")
T_OF_C = Terminal("cat", "of_c")
T_OF_V = Terminal("cat", "of_v")
T_VI = Terminal("vi")
T_VR = Terminal("vr")


def vi(name: str) -> Terminal:
    return Terminal("vi", name)


def vr(name: str) -> Terminal:
    return Terminal("vr", name)


Symbol = Union[Terminal, str]

# The concrete controlled-English subset. "a"/"an" agree with the first
# letter of the following noun, which keeps token-level round trips exact.
_RULES: dict[str, tuple[tuple[Symbol, ...], ...]] = {
    "S": (("STMT", T_END),),
    "STMT": (("NEG",), ("COND",), ("SIMPLE",)),
    "NEG": ((fw("it"), fw("is"), fw("false"), fw("that"), "SIMPLE"),),
    "SIMPLE": (("SUBJ", "PREDS"),),
    "SUBJ": (
        (T_PN,),
        (fw("every"), T_NOUN, "RELOPT"),
        (fw("no"), T_NOUN, "RELOPT"),
        (fw("a"), T_NOUN_C, "RELOPT"),
        (fw("an"), T_NOUN_V, "RELOPT"),
        (fw("something"), "VIOPT"),
        (fw("everything"),),
    ),
    "RELOPT": ((), ("REL",)),
    "REL": ((fw("who"), "VERBPRED"), (fw("that"), "VERBPRED")),
    "VERBPRED": ((T_TV, "OBJ"),),
    "VIOPT": ((), (T_VI,)),
    "PREDS": (("PRED", "PREDTAIL"),),
    "PREDTAIL": ((), (fw("and"), "PRED", "PREDTAIL"), (fw("or"), "PRED", "PREDTAIL")),
    "PRED": (
        (fw("is"), "NOTOPT", "CLASSIF"),
        (T_TV, "OBJ"),
        (fw("does"), fw("not"), T_TV, "OBJ"),
    ),
    "NOTOPT": ((), (fw("not"),)),
    "CLASSIF": (
        (fw("a"), T_NOUN_C),
        (fw("an"), T_NOUN_V),
        (fw("a"), T_OF_C, fw("of"), "OBJ"),
        (fw("an"), T_OF_V, fw("of"), "OBJ"),
    ),
    "OBJ": (
        (T_PN,),
        (fw("a"), T_NOUN_C, "VIOPT"),
        (fw("an"), T_NOUN_V, "VIOPT"),
        (fw("something"), "VIOPT"),
        (fw("everything"),),
        (T_VR,),
    ),
    "COND": ((fw("if"), "CLAUSE", "CLTAIL", fw("then"), "THEN"),),
    "CLTAIL": ((), (fw("and"), "CLAUSE", "CLTAIL")),
    "CLAUSE": (("CSUBJ", "PREDS"),),
    "CSUBJ": (
        (fw("something"), "VIOPT"),
        (fw("a"), T_NOUN_C, "VIOPT"),
        (fw("an"), T_NOUN_V, "VIOPT"),
        (T_VR,),
    ),
    "THEN": (("TSUBJ", "PREDS"),),
    "TSUBJ": (
        (T_VR,),
        (fw("something"),),
        (fw("a"), T_NOUN_C),
        (fw("an"), T_NOUN_V),
    ),
}


@dataclass(frozen=True, eq=False)
class Grammar:
    """Rule set plus an optional sentence-pattern restriction.

    A restricted grammar accepts exactly the sentences of the unrestricted
    grammar whose pattern is in ``patterns``; its rule set is a reduced
    recognizer used for prediction.
    """
    rules: dict[str, tuple[tuple[Symbol, ...], ...]]
    start: str = "S"
    patterns: frozenset | None = None


DEFAULT_GRAMMAR = Grammar(_RULES)


# ---------------------------------------------------------------------------
# Variable scoping
# ---------------------------------------------------------------------------

class ScopeScan:
    """Walks a (valid) token stream left to right and tracks variable
    bindings.

    ``introduced`` holds every variable name bound so far; ``accessible``
    only those that a reference at the current position may legally use.
    An introduction inside a negated predicate ("does not ...", "is not a
    ... of ...") or inside a disjunction branch is invisible to the rest of
    the sentence; everything else (subjects, if-part material, conjoined
    predicates) stays visible.
    """

    def __init__(self):
        self.introduced: set[str] = set()
        self.accessible: set[str] = set()
        self._base: set[str] = set()
        self._region = "body"           # body | if | then
        self._zone = "subject"          # subject | pred
        self._neg_pred = False
        self._after_or = False
        self._relmode = False
        self._rel_verb_seen = False
        self._neg_phrase_until = -1
        self._idx = 0
        self._prev: Token | None = None
        self.bad_ref: tuple[int, str] | None = None

    def _start_predlist(self, negated: bool):
        self._zone = "pred"
        self._base = set(self.accessible)
        self._after_or = False
        self._neg_pred = negated
        self._relmode = False

    def step(self, tok: Token, nxt: Token | None):
        i = self._idx
        prev = self._prev
        if tok.kind is TokenKind.VARIABLE:
            is_intro = prev is not None and (
                (prev.kind is TokenKind.FUNCTION and prev.text == "something")
                or (prev.kind is TokenKind.WORD and prev.category is WordCategory.NOUN)
            )
            if is_intro and tok.text not in self.introduced:
                self.introduced.add(tok.text)
                visible = self._zone == "subject" or (
                    not self._neg_pred and not self._after_or
                )
                if visible:
                    self.accessible.add(tok.text)
            else:
                if tok.text not in self.accessible and self.bad_ref is None:
                    self.bad_ref = (i, tok.text)
        elif tok.kind is TokenKind.FUNCTION:
            t = tok.text
            if i < self._neg_phrase_until:
                pass
            elif t == "it" and i == 0:
                self._neg_phrase_until = 4
            elif t == "if" and i == 0:
                self._region = "if"
                self._zone = "subject"
            elif t == "then":
                self._region = "then"
                self._zone = "subject"
            elif t in ("who", "that") and self._zone == "subject":
                self._relmode = True
                self._rel_verb_seen = False
            elif t == "is" or t == "does":
                if self._zone == "subject":
                    self._start_predlist(negated=(t == "does"))
                elif prev is not None and prev.kind is TokenKind.FUNCTION and \
                        prev.text in ("and", "or"):
                    self._neg_pred = t == "does"
            elif t == "not":
                if prev is not None and prev.kind is TokenKind.FUNCTION and \
                        prev.text == "is":
                    self._neg_pred = True
            elif t == "or":
                self.accessible = set(self._base)
                self._after_or = True
            elif t == "and":
                starts_clause = nxt is not None and (
                    nxt.kind is TokenKind.VARIABLE
                    or (nxt.kind is TokenKind.FUNCTION
                        and nxt.text in ("something", "a", "an"))
                )
                if self._region == "if" and self._zone == "pred" and starts_clause:
                    self._zone = "subject"
                else:
                    self._after_or = False
        elif tok.kind is TokenKind.WORD:
            if tok.category is WordCategory.TRANSITIVE_VERB:
                if self._zone == "subject":
                    if self._relmode and not self._rel_verb_seen:
                        self._rel_verb_seen = True
                    else:
                        self._start_predlist(negated=False)
                elif prev is not None and prev.kind is TokenKind.FUNCTION and \
                        prev.text in ("and", "or"):
                    self._neg_pred = False
        self._prev = tok
        self._idx += 1

    def copy(self) -> "ScopeScan":
        dup = ScopeScan.__new__(ScopeScan)
        dup.introduced = set(self.introduced)
        dup.accessible = set(self.accessible)
        dup._base = set(self._base)
        dup._region = self._region
        dup._zone = self._zone
        dup._neg_pred = self._neg_pred
        dup._after_or = self._after_or
        dup._relmode = self._relmode
        dup._rel_verb_seen = self._rel_verb_seen
        dup._neg_phrase_until = self._neg_phrase_until
        dup._idx = self._idx
        dup._prev = self._prev
        dup.bad_ref = self.bad_ref
        return dup


def _scan_tokens(tokens: Sequence[Token]) -> ScopeScan:
    scan = ScopeScan()
    for i, tok in enumerate(tokens):
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        scan.step(tok, nxt)
    return scan


# ---------------------------------------------------------------------------
# Category signature of a lexicon (drives productivity)
# ---------------------------------------------------------------------------

_CAT_TAGS = ("pn", "noun", "noun_c", "noun_v", "tv", "of_c", "of_v")


def _lexicon_signature(lexicon: Lexicon) -> frozenset[str]:
    present = set()
    for word in lexicon.words():
        if word.category is WordCategory.PROPER_NAME:
            present.add("pn")
        elif word.category is WordCategory.NOUN:
            present.add("noun")
            present.add("noun_v" if word.surface[0] in VOWELS else "noun_c")
        elif word.category is WordCategory.TRANSITIVE_VERB:
            present.add("tv")
        elif word.category is WordCategory.OF_CONSTRUCT:
            present.add("of_v" if word.surface[0] in VOWELS else "of_c")
    return frozenset(present)


def _token_matches(term: Terminal, tok: Token, accessible: set[str],
                   introduced: set[str]) -> bool:
    if term.kind == "fw":
        return tok.kind is TokenKind.FUNCTION and tok.text == term.value
    if term.kind == "end":
        return tok.kind is TokenKind.PERIOD
    if term.kind == "cat":
        if tok.kind is not TokenKind.WORD:
            return False
        tag, c = term.value, tok.category
        if tag == "pn":
            return c is WordCategory.PROPER_NAME
        if tag == "noun":
            return c is WordCategory.NOUN
        if tag == "noun_c":
            return c is WordCategory.NOUN and tok.text[0] not in VOWELS
        if tag == "noun_v":
            return c is WordCategory.NOUN and tok.text[0] in VOWELS
        if tag == "tv":
            return c is WordCategory.TRANSITIVE_VERB
        if tag == "of_c":
            return c is WordCategory.OF_CONSTRUCT and tok.text[0] not in VOWELS
        if tag == "of_v":
            return c is WordCategory.OF_CONSTRUCT and tok.text[0] in VOWELS
        return False
    if term.kind == "vi":
        if tok.kind is not TokenKind.VARIABLE or tok.text in introduced:
            return False
        return term.value is None or term.value == tok.text
    if term.kind == "vr":
        if tok.kind is not TokenKind.VARIABLE or tok.text not in accessible:
            return False
        return term.value is None or term.value == tok.text
    return False


# ---------------------------------------------------------------------------
# Earley recognizer (powers predict and error diagnosis)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Item:
    lhs: str
    alt: int
    dot: int
    origin: int


class _Engine:
    """Incremental Earley recognizer over one grammar and one lexicon."""

    def __init__(self, grammar: Grammar, lexicon: Lexicon):
        self.grammar = grammar
        self.rules = grammar.rules
        self.lexicon = lexicon
        self.signature = _lexicon_signature(lexicon)
        self.nullable = _nullable_set(grammar)
        self.scan = ScopeScan()
        self.cols: list[set[_Item]] = [set()]
        self.tokens: list[Token] = []
        for alt in range(len(self.rules[grammar.start])):
            self.cols[0].add(_Item(grammar.start, alt, 0, 0))
        self._close(0)

    def _body(self, item: _Item) -> tuple[Symbol, ...]:
        return self.rules[item.lhs][item.alt]

    def _next_symbol(self, item: _Item) -> Symbol | None:
        body = self._body(item)
        return body[item.dot] if item.dot < len(body) else None

    def _close(self, col: int):
        items = self.cols[col]
        work = list(items)
        while work:
            item = work.pop()
            nxt = self._next_symbol(item)
            if nxt is None:
                # completion
                for parent in list(self.cols[item.origin]):
                    if self._next_symbol(parent) == item.lhs:
                        adv = _Item(parent.lhs, parent.alt, parent.dot + 1,
                                    parent.origin)
                        if adv not in items:
                            items.add(adv)
                            work.append(adv)
            elif isinstance(nxt, str):
                for alt in range(len(self.rules[nxt])):
                    new = _Item(nxt, alt, 0, col)
                    if new not in items:
                        items.add(new)
                        work.append(new)
                if nxt in self.nullable:
                    adv = _Item(item.lhs, item.alt, item.dot + 1, item.origin)
                    if adv not in items:
                        items.add(adv)
                        work.append(adv)

    def feed(self, tok: Token, nxt: Token | None) -> bool:
        """Scan one token. Returns False when the prefix dies."""
        col = len(self.cols) - 1
        new: set[_Item] = set()
        for item in self.cols[col]:
            sym = self._next_symbol(item)
            if isinstance(sym, Terminal) and _token_matches(
                    sym, tok, self.scan.accessible, self.scan.introduced):
                new.add(_Item(item.lhs, item.alt, item.dot + 1, item.origin))
        if not new:
            return False
        self.cols.append(new)
        self.tokens.append(tok)
        self.scan.step(tok, nxt)
        self._close(len(self.cols) - 1)
        return True

    def copy(self) -> "_Engine":
        dup = _Engine.__new__(_Engine)
        dup.grammar = self.grammar
        dup.rules = self.rules
        dup.lexicon = self.lexicon
        dup.signature = self.signature
        dup.nullable = self.nullable
        dup.scan = self.scan.copy()
        dup.cols = list(self.cols)
        dup.tokens = list(self.tokens)
        return dup

    # -- completability ----------------------------------------------------

    def _terminal_productive(self, term: Terminal) -> bool:
        if term.kind in ("fw", "end"):
            return True
        if term.kind == "cat":
            return term.value in self.signature
        scan = self.scan
        if term.kind == "vi":
            if term.value is not None:
                return term.value not in scan.introduced
            return len(scan.introduced) < len(VARIABLE_NAMES)
        if term.kind == "vr":
            # Accessible now, or introducible later (named references in
            # reduced grammars are always preceded by their introduction).
            if term.value is not None:
                return term.value in scan.accessible or \
                    term.value not in scan.introduced
            return bool(scan.accessible) or \
                len(scan.introduced) < len(VARIABLE_NAMES)
        return False

    def _symbols_productive(self, syms: Iterable[Symbol],
                            nt_prod: dict[str, bool]) -> bool:
        return all(
            nt_prod[s] if isinstance(s, str) else self._terminal_productive(s)
            for s in syms
        )

    def _nt_productivity(self) -> dict[str, bool]:
        prod = {name: False for name in self.rules}
        changed = True
        while changed:
            changed = False
            for name, alts in self.rules.items():
                if prod[name]:
                    continue
                for alt in alts:
                    if self._symbols_productive(alt, prod):
                        prod[name] = True
                        changed = True
                        break
        return prod

    def offered_terminals(self) -> set[Terminal]:
        """Exactly the terminals that can extend the current prefix to some
        complete sentence."""
        nt_prod = self._nt_productivity()
        col = len(self.cols) - 1
        up_memo: dict[tuple[str, int], bool] = {}

        def up(lhs: str, origin: int) -> bool:
            if lhs == self.grammar.start and origin == 0:
                return True
            key = (lhs, origin)
            if key in up_memo:
                return up_memo[key]
            up_memo[key] = False  # cycle guard
            ok = False
            for parent in self.cols[origin]:
                if self._next_symbol(parent) != lhs:
                    continue
                rest = self._body(parent)[parent.dot + 1:]
                if self._symbols_productive(rest, nt_prod) and \
                        up(parent.lhs, parent.origin):
                    ok = True
                    break
            up_memo[key] = ok
            return ok

        offered: set[Terminal] = set()
        for item in self.cols[col]:
            sym = self._next_symbol(item)
            if not isinstance(sym, Terminal) or sym in offered:
                continue
            if not self._terminal_productive(sym):
                continue
            rest = self._body(item)[item.dot + 1:]
            if self._symbols_productive(rest, nt_prod) and \
                    up(item.lhs, item.origin):
                offered.add(sym)
        return offered


@lru_cache(maxsize=None)
def _nullable_for(rules_id: int, rules_items: tuple) -> frozenset[str]:
    rules = dict(rules_items)
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for name, alts in rules.items():
            if name in nullable:
                continue
            for alt in alts:
                if all(isinstance(s, str) and s in nullable for s in alt):
                    nullable.add(name)
                    changed = True
                    break
    return frozenset(nullable)


def _nullable_set(grammar: Grammar) -> frozenset[str]:
    return _nullable_for(id(grammar.rules), tuple(grammar.rules.items()))


# ---------------------------------------------------------------------------
# Parsing (derivation enumeration + variable validation)
# ---------------------------------------------------------------------------

def _introduced_before(tokens: Sequence[Token]) -> list[frozenset[str]]:
    out = []
    seen: set[str] = set()
    prev: Token | None = None
    for tok in tokens:
        out.append(frozenset(seen))
        if tok.kind is TokenKind.VARIABLE and prev is not None and (
            (prev.kind is TokenKind.FUNCTION and prev.text == "something")
            or (prev.kind is TokenKind.WORD and prev.category is WordCategory.NOUN)
        ):
            seen.add(tok.text)
        prev = tok
    return out


def _enumerate_trees(tokens: Sequence[Token], rules, start: str):
    intro = _introduced_before(tokens)
    n = len(tokens)
    memo: dict[tuple[int, str, int], list] = {}

    def derive_nt(name: str, i: int):
        key = (0, name, i)
        if key in memo:
            return memo[key]
        memo[key] = results = []
        for alt_idx, alt in enumerate(rules[name]):
            for children, j in derive_seq(alt, i):
                results.append((("nt", name, alt_idx, children), j))
        return results

    def derive_seq(syms: tuple[Symbol, ...], i: int):
        if not syms:
            return [((), i)]
        head, rest = syms[0], syms[1:]
        out = []
        if isinstance(head, Terminal):
            if i < n and _token_matches(head, tokens[i], set(intro[i]),
                                        set(intro[i])):
                for children, j in derive_seq(rest, i + 1):
                    out.append(((("t", head, tokens[i], i),) + children, j))
        else:
            for node, k in derive_nt(head, i):
                for children, j in derive_seq(rest, k):
                    out.append(((node,) + children, j))
        return out

    return [node for node, j in derive_nt(start, 0) if j == n]


def _diagnose(tokens: Sequence[Token], grammar: Grammar, lexicon: Lexicon):
    """Raise the most precise error for an unparseable token list."""
    engine = _Engine(grammar, lexicon)
    for i, tok in enumerate(tokens):
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if not engine.feed(tok, nxt):
            if tok.kind is TokenKind.VARIABLE and \
                    tok.text not in engine.scan.accessible:
                raise UnboundVariableError(i, tok.text)
            raise SentenceSyntaxError(i, _expected_at(engine))
    raise SentenceSyntaxError(len(tokens), _expected_at(engine))


def _expected_at(engine: _Engine) -> tuple[str, ...]:
    names = set()
    for term in engine.offered_terminals():
        if term.kind == "fw":
            names.add(term.value)
        elif term.kind == "end":
            names.add(".")
        elif term.kind == "cat":
            names.add({
                "pn": "proper name", "noun": "noun", "noun_c": "noun",
                "noun_v": "noun", "tv": "transitive verb",
                "of_c": "of-construct", "of_v": "of-construct",
            }[term.value])
        elif term.kind == "vi":
            names.add("new variable")
        else:
            names.add("variable reference")
    return tuple(sorted(names))


def _check_lexical(tokens: Sequence[Token], lexicon: Lexicon | None):
    for i, tok in enumerate(tokens):
        if tok.kind is TokenKind.WORD:
            if lexicon is not None:
                live = lexicon.lookup(tok.text)
                if live is None or live.category is not tok.category:
                    raise LexicalError(i, tok.text)
        elif tok.kind is TokenKind.FUNCTION and tok.text not in RESERVED_WORDS:
            raise LexicalError(i, tok.text)
        elif tok.kind is TokenKind.VARIABLE and tok.text not in VARIABLE_NAMES:
            raise LexicalError(i, tok.text)


def parse(tokens: Sequence[Token], grammar: Grammar | None = None,
          lexicon: Lexicon | None = None) -> SentenceAst:
    """Parse a period-terminated token list into its unique syntax tree."""
    grammar = grammar or DEFAULT_GRAMMAR
    _check_lexical(tokens, lexicon)
    trees = _enumerate_trees(tokens, _RULES, "S")
    if not trees:
        lex = lexicon if lexicon is not None else Lexicon()
        _diagnose(tokens, DEFAULT_GRAMMAR, lex)
    scan = _scan_tokens(tokens)
    if scan.bad_ref is not None:
        raise UnboundVariableError(*scan.bad_ref)
    if len(trees) > 1:
        raise AmbiguousSentenceError(len(trees))
    ast = _build_ast(trees[0])
    if grammar.patterns is not None:
        from .logic import pattern_of
        pat = pattern_of(ast)
        if pat not in grammar.patterns:
            raise PatternViolationError(
                pat.name, tuple(sorted(p.name for p in grammar.patterns)))
    return ast


def derivation_count(tokens: Sequence[Token]) -> int:
    """Number of distinct derivations, for the determinism check."""
    return len(_enumerate_trees(tokens, _RULES, "S"))


# -- tree -> AST ------------------------------------------------------------

def _leaf_word(node) -> Word:
    _, _, tok, _ = node
    return Word(0, tok.category, tok.text)


def _build_ast(tree) -> SentenceAst:
    _, name, alt, children = tree
    stmt = children[0]
    return _build_stmt(stmt)


def _child_nts(node):
    return [c for c in node[3] if c[0] == "nt"]


def _build_stmt(node):
    _, name, alt, children = node
    inner = children[0]
    kind = inner[1]
    if kind == "NEG":
        simple = _build_simple(_child_nts(inner)[0])
        return Negated(simple)
    if kind == "COND":
        return _build_cond(inner)
    return _build_simple(inner)


def _token_of(node):
    # node is ("t", terminal, token, pos)
    return node[2]


def _word_of(node) -> Word:
    tok = _token_of(node)
    return Word(0, tok.category, tok.text)


def _build_simple(node) -> Simple:
    subj_node, preds_node = _child_nts(node)
    return Simple(_build_subject(subj_node), _build_predlist(preds_node))


def _build_subject(node) -> SubjectNp:
    _, _, alt, children = node
    first = children[0]
    if first[0] == "t" and first[1].kind == "cat":
        return SubjProper(_word_of(first))
    if first[0] == "t" and first[1].kind == "fw":
        head = first[2].text
        if head in ("every", "no", "a", "an"):
            noun = _word_of(children[1])
            rel = _build_relopt(children[2])
            cls = {"every": SubjEvery, "no": SubjNo}.get(head, SubjA)
            return cls(noun, rel)
        if head == "something":
            return SubjSomething(_opt_var(children[1]))
        if head == "everything":
            return SubjEverything()
    raise AssertionError("unreachable subject shape")


def _build_relopt(node) -> Rel | None:
    _, _, alt, children = node
    if not children:
        return None
    rel_node = children[0]
    _, _, _, rel_children = rel_node
    pronoun = rel_children[0][2].text
    verbpred = rel_children[1]
    _, _, _, vp_children = verbpred
    verb = _word_of(vp_children[0])
    obj = _build_object(vp_children[1])
    return Rel(pronoun, verb, obj)


def _opt_var(viopt_node) -> str | None:
    _, _, _, children = viopt_node
    if not children:
        return None
    return children[0][2].text


def _build_object(node) -> ObjectNp:
    _, _, alt, children = node
    first = children[0]
    if first[0] == "t" and first[1].kind == "cat":
        return ObjProper(_word_of(first))
    if first[0] == "t" and first[1].kind in ("vr", "vi"):
        return ObjVarRef(first[2].text)
    head = first[2].text
    if head in ("a", "an"):
        return ObjA(_word_of(children[1]), _opt_var(children[2]))
    if head == "something":
        return ObjSomething(_opt_var(children[1]))
    return ObjEverything()


def _build_predlist(node) -> PredicateList:
    _, _, _, children = node
    preds = [_build_pred(children[0])]
    connectives: list[str] = []
    tail = children[1]
    while True:
        _, _, _, tail_children = tail
        if not tail_children:
            break
        connectives.append(tail_children[0][2].text)
        preds.append(_build_pred(tail_children[1]))
        tail = tail_children[2]
    return PredicateList(tuple(preds), tuple(connectives))


def _build_pred(node) -> Predicate:
    _, _, alt, children = node
    first = children[0]
    if first[0] == "t" and first[1].kind == "cat":       # TV OBJ
        return PredVerb(_word_of(first), _build_object(children[1]))
    head = first[2].text
    if head == "does":
        return PredDoesNotVerb(_word_of(children[2]), _build_object(children[3]))
    # is NOTOPT CLASSIF
    negated = bool(children[1][3])
    classif = children[2]
    _, _, c_alt, c_children = classif
    word = _word_of(c_children[1])
    if word.category is WordCategory.NOUN:
        return PredIsNotA(word) if negated else PredIsA(word)
    obj = _build_object(c_children[3])
    if negated:
        return PredIsNotRoleOf(word, obj)
    return PredIsRoleOf(word, obj)


def _build_cond(node) -> Conditional:
    _, _, _, children = node
    clause = _build_clause(children[1])
    clauses = [clause]
    tail = children[2]
    while True:
        _, _, _, tail_children = tail
        if not tail_children:
            break
        clauses.append(_build_clause(tail_children[1]))
        tail = tail_children[2]
    then_clause = _build_clause(children[4])
    return Conditional(tuple(clauses), then_clause)


def _build_clause(node) -> Clause:
    _, name, _, children = node
    subj_node, preds_node = children[0], children[1]
    _, _, _, s_children = subj_node
    first = s_children[0]
    if first[0] == "t" and first[1].kind in ("vr", "vi"):
        subject: ClauseSubject = CsVarRef(first[2].text)
    else:
        head = first[2].text
        if head == "something":
            var = _opt_var(s_children[1]) if len(s_children) > 1 else None
            subject = CsSomething(var)
        else:  # a / an
            noun = _word_of(s_children[1])
            var = _opt_var(s_children[2]) if len(s_children) > 2 else None
            subject = CsA(noun, var)
    return Clause(subject, _build_predlist(preds_node))


# ---------------------------------------------------------------------------
# Prediction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Prediction:
    """Menus for one prefix position.

    ``category_menus`` always carries all four word categories (possibly
    empty); ``function_menu`` mixes single function words with the composite
    phrases from COMPOSITE_PHRASES. ``can_finish`` is true when the period is
    a legal next token.
    """
    category_menus: dict[WordCategory, tuple[Word, ...]]
    function_menu: tuple[str, ...]
    var_ref_menu: tuple[str, ...]
    var_intro_names: tuple[str, ...]
    var_intro_allowed: bool
    can_finish: bool

    def offered_first_tokens(self) -> set[str]:
        """Every token that some menu entry starts with (plus "." when the
        sentence may finish). Used for step validation and testing."""
        out: set[str] = set()
        for words in self.category_menus.values():
            out.update(w.surface for w in words)
        for entry in self.function_menu:
            out.add(entry.split()[0])
        out.update(self.var_ref_menu)
        out.update(self.var_intro_names)
        if self.can_finish:
            out.add(".")
        return out


def _alive(engine: _Engine) -> bool:
    return bool(engine.offered_terminals())


def _phrase_viable(engine: _Engine, words: Sequence[str]) -> bool:
    sim = engine.copy()
    for k, w in enumerate(words):
        nxt = function_token(words[k + 1]) if k + 1 < len(words) else None
        if not sim.feed(function_token(w), nxt):
            return False
    return _alive(sim)


def predict(prefix: Sequence[Token], lexicon: Lexicon,
            grammar: Grammar | None = None) -> Prediction:
    """Compute the sound-and-complete continuation menus for a prefix."""
    grammar = grammar or DEFAULT_GRAMMAR
    _check_lexical(prefix, lexicon)
    engine = _Engine(grammar, lexicon)
    for i, tok in enumerate(prefix):
        nxt = prefix[i + 1] if i + 1 < len(prefix) else None
        if not engine.feed(tok, nxt):
            raise DeadPrefixError(i)

    offered = engine.offered_terminals()
    can_finish = any(t.kind == "end" for t in offered)
    if not offered:
        raise DeadPrefixError(len(prefix))

    cat_tags = {t.value for t in offered if t.kind == "cat"}
    menus: dict[WordCategory, tuple[Word, ...]] = {}
    menus[WordCategory.PROPER_NAME] = tuple(
        lexicon.of_category(WordCategory.PROPER_NAME)) if "pn" in cat_tags else ()

    def _initial_filter(words, tags, c_tag, v_tag, any_tag=None):
        take_c = c_tag in tags or (any_tag in tags if any_tag else False)
        take_v = v_tag in tags or (any_tag in tags if any_tag else False)
        return tuple(
            w for w in words
            if (w.surface[0] in VOWELS and take_v)
            or (w.surface[0] not in VOWELS and take_c)
        )

    menus[WordCategory.NOUN] = _initial_filter(
        lexicon.of_category(WordCategory.NOUN), cat_tags, "noun_c", "noun_v",
        any_tag="noun")
    menus[WordCategory.TRANSITIVE_VERB] = tuple(
        lexicon.of_category(WordCategory.TRANSITIVE_VERB)) if "tv" in cat_tags else ()
    menus[WordCategory.OF_CONSTRUCT] = _initial_filter(
        lexicon.of_category(WordCategory.OF_CONSTRUCT), cat_tags, "of_c", "of_v")

    offered_fw = {t.value for t in offered if t.kind == "fw"}
    covered: set[str] = set()
    entries: list[str] = []
    for phrase in COMPOSITE_PHRASES:
        words = phrase.split()
        if words[0] in offered_fw and _phrase_viable(engine, words):
            entries.append(phrase)
            covered.add(words[0])
    entries.extend(sorted(offered_fw - covered))
    entries.sort()

    ref_names: set[str] = set()
    intro_names: set[str] = set()
    for t in offered:
        if t.kind == "vr":
            pool = engine.scan.accessible
            ref_names.update(pool if t.value is None else pool & {t.value})
        elif t.kind == "vi":
            pool = set(VARIABLE_NAMES) - engine.scan.introduced
            intro_names.update(pool if t.value is None else pool & {t.value})

    return Prediction(
        category_menus=menus,
        function_menu=tuple(entries),
        var_ref_menu=tuple(sorted(ref_names)),
        var_intro_names=tuple(sorted(intro_names)),
        var_intro_allowed=bool(intro_names),
        can_finish=can_finish,
    )


# ---------------------------------------------------------------------------
# Verbalization
# ---------------------------------------------------------------------------

def verbalize(ast: SentenceAst) -> list[Token]:
    """Render a syntax tree back to its token list; inverse of parse."""
    out: list[Token] = []
    _verb_stmt(ast, out)
    out.append(PERIOD_TOKEN)
    return out


def _verb_stmt(ast: SentenceAst, out: list[Token]):
    if isinstance(ast, Negated):
        out.extend(function_token(w) for w in ("it", "is", "false", "that"))
        _verb_simple(ast.inner, out)
    elif isinstance(ast, Conditional):
        out.append(function_token("if"))
        for i, clause in enumerate(ast.if_clauses):
            if i:
                out.append(function_token("and"))
            _verb_clause(clause, out)
        out.append(function_token("then"))
        _verb_clause(ast.then_clause, out)
    else:
        _verb_simple(ast, out)


def _verb_simple(simple: Simple, out: list[Token]):
    _verb_subject(simple.subject, out)
    _verb_predlist(simple.preds, out)


def _append_indef(noun: Word, out: list[Token]):
    out.append(function_token(indefinite_article(noun.surface)))
    out.append(word_token(noun))


def _verb_subject(subj: SubjectNp, out: list[Token]):
    if isinstance(subj, SubjProper):
        out.append(word_token(subj.word))
    elif isinstance(subj, (SubjEvery, SubjNo)):
        out.append(function_token("every" if isinstance(subj, SubjEvery) else "no"))
        out.append(word_token(subj.noun))
        _verb_rel(subj.rel, out)
    elif isinstance(subj, SubjA):
        _append_indef(subj.noun, out)
        _verb_rel(subj.rel, out)
    elif isinstance(subj, SubjSomething):
        out.append(function_token("something"))
        if subj.var:
            out.append(var_token(subj.var))
    else:
        out.append(function_token("everything"))


def _verb_rel(rel: Rel | None, out: list[Token]):
    if rel is None:
        return
    out.append(function_token(rel.pronoun))
    out.append(word_token(rel.verb))
    _verb_object(rel.obj, out)


def _verb_object(obj: ObjectNp, out: list[Token]):
    if isinstance(obj, ObjProper):
        out.append(word_token(obj.word))
    elif isinstance(obj, ObjA):
        _append_indef(obj.noun, out)
        if obj.var:
            out.append(var_token(obj.var))
    elif isinstance(obj, ObjSomething):
        out.append(function_token("something"))
        if obj.var:
            out.append(var_token(obj.var))
    elif isinstance(obj, ObjEverything):
        out.append(function_token("everything"))
    else:
        out.append(var_token(obj.name))


def _verb_predlist(preds: PredicateList, out: list[Token]):
    for i, pred in enumerate(preds.preds):
        if i:
            out.append(function_token(preds.connectives[i - 1]))
        _verb_pred(pred, out)


def _verb_pred(pred: Predicate, out: list[Token]):
    if isinstance(pred, (PredIsA, PredIsNotA)):
        out.append(function_token("is"))
        if isinstance(pred, PredIsNotA):
            out.append(function_token("not"))
        _append_indef(pred.noun, out)
    elif isinstance(pred, (PredIsRoleOf, PredIsNotRoleOf)):
        out.append(function_token("is"))
        if isinstance(pred, PredIsNotRoleOf):
            out.append(function_token("not"))
        _append_indef(pred.of_word, out)
        out.append(function_token("of"))
        _verb_object(pred.obj, out)
    elif isinstance(pred, PredVerb):
        out.append(word_token(pred.verb))
        _verb_object(pred.obj, out)
    else:
        out.append(function_token("does"))
        out.append(function_token("not"))
        out.append(word_token(pred.verb))
        _verb_object(pred.obj, out)


def _verb_clause(clause: Clause, out: list[Token]):
    subj = clause.subject
    if isinstance(subj, CsVarRef):
        out.append(var_token(subj.name))
    elif isinstance(subj, CsSomething):
        out.append(function_token("something"))
        if subj.var:
            out.append(var_token(subj.var))
    else:
        _append_indef(subj.noun, out)
        if subj.var:
            out.append(var_token(subj.var))
    _verb_predlist(clause.preds, out)


# ---------------------------------------------------------------------------
# Reduced (pattern-restricted) grammars
# ---------------------------------------------------------------------------

def _role_pred_alts(obj_syms: tuple[Symbol, ...]) -> tuple[tuple[Symbol, ...], ...]:
    # A role predicate is either a transitive verb or an of-construct.
    return (
        (T_TV,) + obj_syms,
        (fw("is"), fw("a"), T_OF_C, fw("of")) + obj_syms,
        (fw("is"), fw("an"), T_OF_V, fw("of")) + obj_syms,
    )


def _pattern_rules(names: frozenset[str]) -> dict:
    rules: dict[str, tuple[tuple[Symbol, ...], ...]] = {}
    start_alts: list[tuple[Symbol, ...]] = []

    def add(name: str, alts):
        rules[name] = tuple(alts)

    add("R:AN_NOUN", ((fw("a"), T_NOUN_C), (fw("an"), T_NOUN_V)))
    add("R:ISA", ((fw("is"), "R:AN_NOUN"),))
    add("R:OF_PN", ((fw("a"), T_OF_C, fw("of"), T_PN),
                    (fw("an"), T_OF_V, fw("of"), T_PN)))
    ci_body: tuple[Symbol, ...] = (fw("every"), T_NOUN, fw("is"), "R:AN_NOUN")
    neg_phrase: tuple[Symbol, ...] = (fw("it"), fw("is"), fw("false"), fw("that"))

    if "ConceptInclusion" in names:
        start_alts.append(ci_body)
    if "ConceptInclusionNegated" in names:
        start_alts.append(neg_phrase + ci_body)
    if "IndividualAssignment" in names:
        start_alts.append((T_PN, fw("is"), "R:AN_NOUN"))
    if "IndividualAssignmentNegated" in names:
        start_alts.append((T_PN, fw("is"), fw("not"), "R:AN_NOUN"))
        start_alts.append(neg_phrase + (T_PN, fw("is"), "R:AN_NOUN"))
    if "RoleInstance" in names:
        start_alts.append((T_PN, T_TV, T_PN))
        start_alts.append((T_PN, fw("is"), "R:OF_PN"))
    if "RoleInstanceNegated" in names:
        start_alts.append((T_PN, fw("does"), fw("not"), T_TV, T_PN))
        start_alts.append((T_PN, fw("is"), fw("not"), "R:OF_PN"))
        start_alts.append(neg_phrase + (T_PN, T_TV, T_PN))
        start_alts.append(neg_phrase + (T_PN, fw("is"), "R:OF_PN"))

    for u, v in itertools.permutations(VARIABLE_NAMES, 2):
        rp_intro = f"R:RP_INTRO_{v}"
        rp_ref = f"R:RP_REF_{v}"
        if rp_intro not in rules:
            add(rp_intro, _role_pred_alts((fw("something"), vi(v))))
            add(rp_ref, _role_pred_alts((vr(v),)))
        if "RoleInclusion" in names:
            start_alts.append((fw("if"), fw("something"), vi(u), rp_intro,
                               fw("then"), vr(u), rp_ref))
        if "DomainRestriction" in names:
            start_alts.append((fw("if"), fw("something"), vi(u), rp_intro,
                               fw("then"), vr(u), "R:ISA"))
        if "RangeRestriction" in names:
            start_alts.append((fw("if"), fw("something"), vi(u), rp_intro,
                               fw("then"), vr(v), "R:ISA"))
    if "R:RP_PLAIN" not in rules and (
            "DomainRestriction" in names or "RangeRestriction" in names):
        add("R:RP_PLAIN", _role_pred_alts((fw("something"),)))
    for u in VARIABLE_NAMES:
        if "DomainRestriction" in names:
            start_alts.append((fw("if"), fw("something"), vi(u), "R:RP_PLAIN",
                               fw("then"), vr(u), "R:ISA"))
        if "RangeRestriction" in names:
            start_alts.append((fw("if"), fw("something"), f"R:RP_INTRO_{u}",
                               fw("then"), vr(u), "R:ISA"))

    if "Existential" in names:
        add("X:ASUBJ", ((fw("a"), T_NOUN_C, "RELOPT"),
                        (fw("an"), T_NOUN_V, "RELOPT")))
        start_alts.append(("X:ASUBJ", "PREDS"))
        for shared in ("RELOPT", "REL", "VERBPRED", "VIOPT", "PREDS",
                       "PREDTAIL", "PRED", "NOTOPT", "CLASSIF", "OBJ"):
            rules[shared] = _RULES[shared]

    add("BODY", tuple(start_alts))
    add("S", (("BODY", T_END),))
    return rules


def restrict(grammar: Grammar, patterns) -> Grammar:
    """Reduce a grammar to fixed sentence patterns (wiki box editing)."""
    from .logic import SentencePattern

    pats = frozenset(patterns)
    if not pats:
        raise EmptyPatternSetError()
    for p in pats:
        if not isinstance(p, SentencePattern):
            raise UnsupportedPatternError(str(p))
    if SentencePattern.OTHER in pats:
        # "Other" is the complement of the fixed shapes; there is no reduced
        # grammar for it and no wiki box ever needs one.
        raise UnsupportedPatternError(SentencePattern.OTHER.name)
    names = frozenset(p.name_for_wire() for p in pats)
    return Grammar(rules=_pattern_rules(names), patterns=pats)
