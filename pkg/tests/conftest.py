import pytest

from cnlwiki.lexicon import Lexicon, WordCategory
from cnlwiki.wiki import Wiki

#: Words behind the classification corpus (from the working examples the
#: engine has to reproduce).
CORPUS_WORDS = [
    ("pn", "Zurich"), ("pn", "Bob-Dylan"), ("pn", "Limmat"),
    ("pn", "Winston-Churchill"), ("pn", "Denmark"), ("pn", "Matterhorn"),
    ("noun", "canal"), ("noun", "waterbody"), ("noun", "city"),
    ("noun", "woman"), ("noun", "animal"), ("noun", "mammal"),
    ("noun", "landscape-element"), ("noun", "person"), ("noun", "author"),
    ("noun", "country"), ("noun", "continent"), ("noun", "mountain"),
    ("tv", "flows-through"), ("tv", "protects"), ("tv", "shelters"),
    ("tv", "writes"),
    ("of", "prime-minister"), ("of", "part"),
]

#: (sentence, expected axiom kind, expected full axiom text or None,
#:  owl-compatible, expected pattern)
CORPUS = [
    ("every canal is a waterbody .",
     "SubClassOf", "SubClassOf(canal, waterbody)", True, "ConceptInclusion"),
    ("Zurich is a city .",
     "ClassAssertion", "ClassAssertion(city, Zurich)", True,
     "IndividualAssignment"),
    ("Bob-Dylan is not a woman .",
     "NegativeClassAssertion", "NegativeClassAssertion(woman, Bob-Dylan)",
     True, "IndividualAssignmentNegated"),
    ("Limmat flows-through Zurich .",
     "RoleAssertion", "RoleAssertion(flows-through, Limmat, Zurich)", True,
     "RoleInstance"),
    ("it is false that Winston-Churchill is a prime-minister of Denmark .",
     "NegativeRoleAssertion",
     "NegativeRoleAssertion(prime-minister-of, Winston-Churchill, Denmark)",
     True, "RoleInstanceNegated"),
    ("if something X protects something Y then X shelters Y .",
     "SubRoleOf", "SubRoleOf(protects, shelters)", True, "RoleInclusion"),
    ("if something flows-through something Y then Y is a city .",
     "RoleRange", "RoleRange(flows-through, city)", True, "RangeRestriction"),
    ("it is false that every animal is a mammal .",
     "NotOwl", "NotOwl", False, "ConceptInclusionNegated"),
    ("a city is a landscape-element .",
     "AnonymousAssertion", None, True, "Existential"),
    ("every person who writes something is an author .",
     "SubClassOf", "SubClassOf(and(person, some(writes, Thing)), author)",
     True, "Other"),
    ("every country is a part of a continent .",
     "SubClassOf", "SubClassOf(country, some(part-of, continent))", True,
     "Other"),
]


def build_corpus_lexicon() -> Lexicon:
    lex = Lexicon()
    for code, surface in CORPUS_WORDS:
        lex.add_word(WordCategory.from_code(code), surface)
    return lex


def build_corpus_wiki() -> Wiki:
    wiki = Wiki()
    for code, surface in CORPUS_WORDS:
        wiki.add_word(WordCategory.from_code(code), surface)
    for text, *_ in CORPUS:
        wiki.create_sentence(text.split())
    return wiki


@pytest.fixture
def corpus_lexicon() -> Lexicon:
    return build_corpus_lexicon()


@pytest.fixture
def corpus_wiki() -> Wiki:
    return build_corpus_wiki()
