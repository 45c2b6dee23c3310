import itertools
import random

import pytest

from cnlwiki.grammar import parse, tokenize
from cnlwiki.logic import (
    AxiomKind, ConceptAtom, Const, Disjunction, Drs, Implication,
    Interpretation, Negation, RoleAtom, SentencePattern, Var, ast_to_drs,
    axiom_well_formed, classify, contains_neg_or_impl, evaluate, pattern_of,
)
from conftest import CORPUS

from oracles import OracleLexicon, Walker, ast_truth, models_for
from vecsem import sentence_symbols


def _ast(text, lex):
    return parse(tokenize(text, lex), lexicon=lex)


# -- discourse structures -----------------------------------------------------

def test_existential_reading_of_indefinite_subject(corpus_lexicon):
    drs = ast_to_drs(_ast("a city is a landscape-element .", corpus_lexicon))
    assert drs.referents == ("x1",)
    assert drs.conditions == (
        ConceptAtom("city", Var("x1")),
        ConceptAtom("landscape-element", Var("x1")),
    )


def test_universal_becomes_implication(corpus_lexicon):
    drs = ast_to_drs(_ast("every canal is a waterbody .", corpus_lexicon))
    assert drs.referents == ()
    impl = drs.conditions[0]
    assert isinstance(impl, Implication)
    assert impl.antecedent == Drs(("x1",), (ConceptAtom("canal", Var("x1")),))
    assert impl.consequent == Drs((), (ConceptAtom("waterbody", Var("x1")),))


def test_negative_assignment_shape(corpus_lexicon):
    drs = ast_to_drs(_ast("Bob-Dylan is not a woman .", corpus_lexicon))
    assert drs == Drs((), (Negation(
        Drs((), (ConceptAtom("woman", Const("Bob-Dylan")),))),))


def test_no_negates_whole_consequent(corpus_lexicon):
    drs = ast_to_drs(_ast("no city is a person and is a woman .",
                          corpus_lexicon))
    impl = drs.conditions[0]
    neg = impl.consequent.conditions[0]
    assert isinstance(neg, Negation)
    assert len(neg.body.conditions) == 2


def test_object_existential_is_local_to_negation(corpus_lexicon):
    drs = ast_to_drs(_ast("Zurich does not protects a city .", corpus_lexicon))
    neg = drs.conditions[0]
    assert isinstance(neg, Negation)
    assert neg.body.referents != ()
    assert drs.referents == ()


def test_disjunction_nests_left(corpus_lexicon):
    drs = ast_to_drs(_ast(
        "Zurich is a city or is a canal or is a waterbody .", corpus_lexicon))
    outer = drs.conditions[0]
    assert isinstance(outer, Disjunction)
    assert isinstance(outer.left.conditions[0], Disjunction)


def test_conditional_referent_scope(corpus_lexicon):
    drs = ast_to_drs(_ast(
        "if something X protects something Y then X shelters Y .",
        corpus_lexicon))
    impl = drs.conditions[0]
    assert impl.antecedent.referents == ("X", "Y")
    assert impl.consequent == Drs(
        (), (RoleAtom("shelters", Var("X"), Var("Y")),))


# -- classification -----------------------------------------------------------

@pytest.mark.parametrize(
    "text,kind,axiom_text,owl,_pattern", CORPUS,
    ids=[row[0][:30] for row in CORPUS])
def test_corpus_classification(text, kind, axiom_text, owl, _pattern,
                               corpus_lexicon):
    axiom = classify(ast_to_drs(_ast(text, corpus_lexicon)))
    assert axiom.kind.value == kind
    if axiom_text is not None:
        assert axiom.text() == axiom_text
    assert axiom.owl_compatible is owl
    assert axiom_well_formed(axiom)


@pytest.mark.parametrize("text,expected", [
    ("no city is a person .", "DisjointClasses(city, person)"),
    ("every city is not a person .", "DisjointClasses(city, person)"),
    ("no city that protects Zurich is a person .",
     "SubClassOf(and(city, someValue(protects, Zurich)), not(person))"),
    ("Zurich is a city and is a capital-like-thing .", None),
    ("Zurich protects a city .",
     "ClassAssertion(some(protects, city), Zurich)"),
    ("a city protects Zurich .",
     "AnonymousAssertion(and(city, someValue(protects, Zurich)))"),
    ("every city is a city or is a waterbody .",
     "SubClassOf(city, or(city, waterbody))"),
    ("everything is a city .", "SubClassOf(Thing, city)"),
    ("if something X protects something then X is a person .",
     "RoleDomain(protects, person)"),
    ("something is a city .", "AnonymousAssertion(city)"),
    ("it is false that Zurich is a city .",
     "NegativeClassAssertion(city, Zurich)"),
    ("Zurich does not protects Limmat .",
     "NegativeRoleAssertion(protects, Zurich, Limmat)"),
])
def test_classification_shapes(text, expected, corpus_lexicon):
    if expected is None:
        corpus_lexicon.add_word(
            corpus_lexicon.lookup("city").category, "capital-like-thing")
        axiom = classify(ast_to_drs(_ast(text, corpus_lexicon)))
        assert axiom.kind is AxiomKind.CLASS_ASSERTION
        assert axiom.text() == \
            "ClassAssertion(and(city, capital-like-thing), Zurich)"
        return
    axiom = classify(ast_to_drs(_ast(text, corpus_lexicon)))
    assert axiom.text() == expected
    assert axiom_well_formed(axiom)


@pytest.mark.parametrize("text", [
    # negated universal
    "it is false that every animal is a mammal .",
    # inverse role inclusion
    "if something X protects something Y then Y shelters X .",
    # role chain
    "if something X protects something Y and Y protects something Z then X protects Z .",
    # universal object: no value restriction in the axiom grammar
    "every city protects everything .",
    # self-application of a role
    "something X protects X .",
    # shared referent across two role atoms
    "Zurich protects a city X and shelters X .",
    # rich antecedent on a two-variable rule
    "if a city X protects something Y then X shelters Y .",
])
def test_not_owl_shapes(text, corpus_lexicon):
    axiom = classify(ast_to_drs(_ast(text, corpus_lexicon)))
    assert axiom.kind is AxiomKind.NOT_OWL
    assert not axiom.owl_compatible


def test_classification_stable_under_renaming(corpus_lexicon):
    drs = ast_to_drs(_ast(
        "if something X protects something Y then X shelters Y .",
        corpus_lexicon))

    def rename(d, mapping):
        def term(t):
            return Var(mapping.get(t.name, t.name)) if isinstance(t, Var) else t

        def cond(c):
            if isinstance(c, ConceptAtom):
                return ConceptAtom(c.concept, term(c.term))
            if isinstance(c, RoleAtom):
                return RoleAtom(c.role, term(c.subject), term(c.object))
            if isinstance(c, Negation):
                return Negation(rename(c.body, mapping))
            if isinstance(c, Implication):
                return Implication(rename(c.antecedent, mapping),
                                   rename(c.consequent, mapping))
            return Disjunction(rename(c.left, mapping), rename(c.right, mapping))

        return Drs(tuple(mapping.get(r, r) for r in d.referents),
                   tuple(cond(c) for c in d.conditions))

    renamed = rename(drs, {"X": "v7", "Y": "v9"})
    assert classify(drs) == classify(renamed)


# -- patterns -----------------------------------------------------------------

@pytest.mark.parametrize(
    "text,_kind,_axiom,_owl,pattern", CORPUS,
    ids=[row[0][:30] for row in CORPUS])
def test_corpus_patterns(text, _kind, _axiom, _owl, pattern, corpus_lexicon):
    assert pattern_of(_ast(text, corpus_lexicon)).value == pattern


@pytest.mark.parametrize("text,pattern", [
    ("Zurich is a part of Denmark .", SentencePattern.ROLE_INSTANCE),
    ("Zurich is not a part of Denmark .",
     SentencePattern.ROLE_INSTANCE_NEGATED),
    ("if something X is a part of something Y then X is a part of Y .",
     SentencePattern.ROLE_INCLUSION),
    ("if something X protects something Y then Y is a city .",
     SentencePattern.RANGE_RESTRICTION),
    ("if something X protects something Y then X is a city .",
     SentencePattern.DOMAIN_RESTRICTION),
    ("if something X protects something Y then Y shelters X .",
     SentencePattern.OTHER),
    ("a city that protects Zurich is a waterbody .",
     SentencePattern.EXISTENTIAL),
    ("no city is a person .", SentencePattern.OTHER),
    ("something is a city .", SentencePattern.OTHER),
    ("every canal is a waterbody and is a city .", SentencePattern.OTHER),
    ("it is false that Zurich is not a city .", SentencePattern.OTHER),
])
def test_pattern_shapes(text, pattern, corpus_lexicon):
    assert pattern_of(_ast(text, corpus_lexicon)) is pattern


def test_box_pattern_classification_agreement(corpus_lexicon):
    """Box-eligible patterns land on the matching axiom kinds."""
    implications = {
        SentencePattern.ROLE_INCLUSION: {AxiomKind.SUB_ROLE_OF},
        SentencePattern.CONCEPT_INCLUSION: {AxiomKind.SUB_CLASS_OF},
        SentencePattern.INDIVIDUAL_ASSIGNMENT: {AxiomKind.CLASS_ASSERTION},
        SentencePattern.DOMAIN_RESTRICTION: {AxiomKind.ROLE_DOMAIN},
        SentencePattern.RANGE_RESTRICTION: {AxiomKind.ROLE_RANGE},
        SentencePattern.ROLE_INSTANCE: {AxiomKind.ROLE_ASSERTION,
                                        AxiomKind.CLASS_ASSERTION},
    }
    olex = OracleLexicon(pn=("Rhine",), noun=("city", "area"),
                         tv=("overlaps",), of=("part",))
    from cnlwiki.lexicon import Lexicon, WordCategory
    lex = Lexicon()
    lex.add_word(WordCategory.PROPER_NAME, "Rhine")
    lex.add_word(WordCategory.NOUN, "city")
    lex.add_word(WordCategory.NOUN, "area")
    lex.add_word(WordCategory.TRANSITIVE_VERB, "overlaps")
    lex.add_word(WordCategory.OF_CONSTRUCT, "part")
    walker = Walker(olex)
    seen = set()
    for shape in walker.enumerate_shape_sentences(11):
        sent = walker.instantiate(shape)
        ast = parse(tokenize(list(sent), lex), lexicon=lex)
        pat = pattern_of(ast)
        if pat in implications:
            kind = classify(ast_to_drs(ast)).kind
            assert kind in implications[pat], (sent, pat, kind)
            seen.add(pat)
    assert seen >= {SentencePattern.CONCEPT_INCLUSION,
                    SentencePattern.ROLE_INCLUSION,
                    SentencePattern.RANGE_RESTRICTION}


# -- negation / implication markers --------------------------------------------

@pytest.mark.parametrize("text,neg,impl", [
    ("Zurich is a city .", False, False),
    ("no city is a person .", True, True),
    ("it is false that every animal is a mammal .", True, True),
    ("every canal is a waterbody .", False, True),
    ("Bob-Dylan is not a woman .", True, False),
    ("Zurich does not protects Limmat .", True, False),
    ("if something X protects something Y then X shelters Y .", False, True),
    ("if something X protects something Y then X does not shelters Y .",
     True, True),
    ("a city is a landscape-element .", False, False),
])
def test_contains_neg_or_impl(text, neg, impl, corpus_lexicon):
    assert contains_neg_or_impl(_ast(text, corpus_lexicon)) == (neg, impl)


# -- semantics ----------------------------------------------------------------

def test_evaluate_against_reference_small():
    """Scalar spot check: discourse-structure evaluation equals the
    independent syntax-tree semantics over all tiny models (full sweep is in
    the acceptance suite)."""
    olex = OracleLexicon(pn=("Rhine",), noun=("city", "area"),
                         tv=("overlaps",), of=("part",))
    from cnlwiki.lexicon import Lexicon, WordCategory
    lex = Lexicon()
    lex.add_word(WordCategory.PROPER_NAME, "Rhine")
    lex.add_word(WordCategory.NOUN, "city")
    lex.add_word(WordCategory.NOUN, "area")
    lex.add_word(WordCategory.TRANSITIVE_VERB, "overlaps")
    lex.add_word(WordCategory.OF_CONSTRUCT, "part")
    walker = Walker(olex)
    rng = random.Random(11)
    shapes = walker.enumerate_shape_sentences(8)
    for shape in rng.sample(shapes, 60):
        sent = walker.instantiate(shape)
        ast = parse(tokenize(list(sent), lex), lexicon=lex)
        drs = ast_to_drs(ast)
        syms = sentence_symbols(list(sent), lex)
        n = 0
        for model in models_for(syms, max_size=2):
            assert evaluate(drs, model) == ast_truth(ast, model), \
                (sent, model)
            n += 1
        assert n > 0
