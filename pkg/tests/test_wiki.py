import pytest

from cnlwiki.lexicon import UnknownWord, WordCategory, WordInUse
from cnlwiki.logic import SentencePattern
from cnlwiki.reasoner import KnowledgeBase
from cnlwiki.wiki import (
    AnnotationForUnknownSentence, FormatError, ParseFailed, StaleRevision,
    UnknownSentence, UnknownWordInSentence, VersionConflict, Wiki,
)
from conftest import CORPUS, build_corpus_wiki

PN = WordCategory.PROPER_NAME
NOUN = WordCategory.NOUN
TV = WordCategory.TRANSITIVE_VERB


def small_wiki() -> Wiki:
    wiki = Wiki()
    wiki.add_word(PN, "Zurich")
    wiki.add_word(NOUN, "city")
    wiki.add_word(NOUN, "canal")
    wiki.add_word(NOUN, "waterbody")
    wiki.add_word(TV, "protects")
    return wiki


def test_create_sentence_derives_everything():
    wiki = small_wiki()
    s = wiki.create_sentence("every canal is a waterbody .".split())
    assert s.pattern is SentencePattern.CONCEPT_INCLUSION
    assert s.axiom.text() == "SubClassOf(canal, waterbody)"
    assert s.axiom.owl_compatible
    assert s.version == 1
    assert s.axiom in wiki.kb.axioms
    assert wiki.kb.ancestors("canal") == {"canal", "waterbody"}


def test_sentence_appears_in_all_mentioning_articles():
    wiki = small_wiki()
    s = wiki.create_sentence("every canal is a waterbody .".split())
    assert s in wiki.render_article("canal").boxes["Hierarchy"]
    assert s in wiki.render_article("waterbody").boxes["Hierarchy"]
    assert s not in wiki.render_article("city").boxes["Hierarchy"]


def test_not_owl_sentence_goes_to_unrestricted_without_kb_entry():
    wiki = small_wiki()
    wiki.add_word(NOUN, "animal")
    wiki.add_word(NOUN, "mammal")
    s = wiki.create_sentence(
        "it is false that every animal is a mammal .".split())
    assert not s.axiom.owl_compatible
    article = wiki.render_article("animal")
    assert s in article.unrestricted
    assert all(not box for box in article.boxes.values())
    assert s.axiom not in wiki.kb.axioms


def test_duplicate_sentences_get_distinct_ids():
    wiki = small_wiki()
    a = wiki.create_sentence("Zurich is a city .".split())
    b = wiki.create_sentence("Zurich is a city .".split())
    assert a.id != b.id
    assert wiki.get_sentence(a.id).text == wiki.get_sentence(b.id).text


def test_duplicate_axiom_survives_single_delete():
    wiki = small_wiki()
    a = wiki.create_sentence("Zurich is a city .".split())
    b = wiki.create_sentence("Zurich is a city .".split())
    wiki.delete_sentence(a.id, expected_version=1)
    assert b.axiom in wiki.kb.axioms
    wiki.delete_sentence(b.id, expected_version=1)
    assert b.axiom not in wiki.kb.axioms


def test_parse_failure_leaves_state_unchanged():
    wiki = small_wiki()
    before = wiki.export_text()
    revision = wiki.revision
    with pytest.raises(ParseFailed):
        wiki.create_sentence("city every is .".split())
    with pytest.raises(ParseFailed):
        wiki.create_sentence("Zurich is a unicorn .".split())
    assert wiki.export_text() == before
    assert wiki.revision == revision


def test_edit_swaps_axiom_and_bumps_version():
    wiki = small_wiki()
    s = wiki.create_sentence("a city is a waterbody .".split())
    assert s.pattern is SentencePattern.EXISTENTIAL
    edited = wiki.edit_sentence(s.id, 1, "every city is a waterbody .".split())
    assert edited.pattern is SentencePattern.CONCEPT_INCLUSION
    assert edited.version == 2
    assert edited.axiom in wiki.kb.axioms
    assert s.axiom not in wiki.kb.axioms


def test_edit_to_identical_tokens_increments_version():
    wiki = small_wiki()
    s = wiki.create_sentence("Zurich is a city .".split())
    edited = wiki.edit_sentence(s.id, 1, "Zurich is a city .".split())
    assert edited.version == 2
    assert edited.axiom in wiki.kb.axioms


def test_version_conflicts():
    wiki = small_wiki()
    s = wiki.create_sentence("Zurich is a city .".split())
    before = wiki.export_text()
    with pytest.raises(VersionConflict):
        wiki.edit_sentence(s.id, 99, "Zurich is a city .".split())
    with pytest.raises(VersionConflict):
        wiki.delete_sentence(s.id, 99)
    with pytest.raises(UnknownSentence):
        wiki.edit_sentence(999, 1, "Zurich is a city .".split())
    assert wiki.export_text() == before


def test_stale_revision_on_create():
    wiki = small_wiki()
    with pytest.raises(StaleRevision):
        wiki.create_sentence("Zurich is a city .".split(),
                             expected_revision=wiki.revision + 5)
    wiki.create_sentence("Zurich is a city .".split(),
                         expected_revision=wiki.revision)


def test_delete_keeps_word_and_article():
    wiki = small_wiki()
    s = wiki.create_sentence("every canal is a waterbody .".split())
    wiki.delete_sentence(s.id, 1)
    article = wiki.render_article("canal")
    assert article.word.surface == "canal"
    assert not article.boxes["Hierarchy"]
    with pytest.raises(UnknownSentence):
        wiki.get_sentence(s.id)


def test_word_removal_guard():
    wiki = small_wiki()
    wiki.create_sentence("Zurich is a city .".split())
    word = wiki.lexicon.lookup("city")
    with pytest.raises(WordInUse):
        wiki.remove_word(word.id)
    unused = wiki.lexicon.lookup("protects")
    wiki.remove_word(unused.id)
    assert wiki.lexicon.lookup("protects") is None
    with pytest.raises(UnknownWord):
        wiki.remove_word(unused.id)


def test_revision_strictly_increases():
    wiki = small_wiki()
    seen = [wiki.revision]
    wiki.add_word(NOUN, "area")
    seen.append(wiki.revision)
    s = wiki.create_sentence("Zurich is a city .".split())
    seen.append(wiki.revision)
    wiki.edit_sentence(s.id, 1, "Zurich is a city .".split())
    seen.append(wiki.revision)
    wiki.delete_sentence(s.id, 2)
    seen.append(wiki.revision)
    assert seen == sorted(set(seen))


def test_notes_render_in_articles():
    wiki = small_wiki()
    wiki.add_note("city", "Informal background remark, never parsed.")
    article = wiki.render_article("city")
    assert article.comments == ((0, "Informal background remark, never parsed."),)
    with pytest.raises(UnknownWord):
        wiki.add_note("nonexistent", "text")


def test_derivation_coherence_after_operations(corpus_wiki):
    from cnlwiki import grammar, logic

    sentence = corpus_wiki.sentences_in_order()[0]
    corpus_wiki.edit_sentence(sentence.id, 1, sentence.text.split())
    corpus_wiki.create_sentence("Zurich is a city .".split())
    for s in corpus_wiki.sentences_in_order():
        ast = grammar.parse(list(s.tokens), lexicon=corpus_wiki.lexicon)
        assert ast == s.ast
        assert logic.classify(logic.ast_to_drs(ast)) == s.axiom
        assert logic.pattern_of(ast) is s.pattern


def test_kb_equals_rebuilt_from_sentences(corpus_wiki):
    expected = KnowledgeBase.from_axioms(
        s.axiom for s in corpus_wiki.sentences_in_order()
        if s.axiom.owl_compatible)
    assert corpus_wiki.kb.axioms == expected.axioms


def test_article_closure(corpus_wiki):
    for word in corpus_wiki.lexicon.words():
        article = corpus_wiki.render_article(word.surface)
        listed = {s.id for box in article.boxes.values() for s in box} | \
            {s.id for s in article.unrestricted}
        expected = {s.id for s in corpus_wiki.sentences_in_order()
                    if s.mentions(word.surface)}
        assert listed == expected


# -- persistence ---------------------------------------------------------------

def test_export_import_roundtrip(corpus_wiki):
    corpus_wiki.add_note("city", "a note")
    text = corpus_wiki.export_text()
    clone = Wiki.from_text(text)
    assert clone.export_text() == text
    assert clone.kb.axioms == corpus_wiki.kb.axioms
    assert [s.text for s in clone.sentences_in_order()] == \
        [s.text for s in corpus_wiki.sentences_in_order()]


def test_empty_wiki_exports_header_only():
    assert Wiki().export_text() == "# cnlwiki 1\n"
    assert Wiki.from_text("# cnlwiki 1\n").export_text() == "# cnlwiki 1\n"


def test_import_replaces_atomically(corpus_wiki):
    old_revision = corpus_wiki.revision
    corpus_wiki.import_text("# anything\nword noun tree\n")
    assert corpus_wiki.revision == old_revision + 1
    assert [w.surface for w in corpus_wiki.lexicon.words()] == ["tree"]
    assert corpus_wiki.sentences == {}


def test_import_error_reports_line_and_changes_nothing(corpus_wiki):
    before = corpus_wiki.export_text()
    bad = "word noun tree\nsentence tree is ?? broken\n"
    with pytest.raises(UnknownWordInSentence) as err:
        corpus_wiki.import_text(bad)
    assert err.value.line == 2
    with pytest.raises(FormatError) as err2:
        corpus_wiki.import_text("wibble nonsense\n")
    assert err2.value.line == 1
    assert corpus_wiki.export_text() == before


def test_import_requires_declared_words():
    with pytest.raises(UnknownWordInSentence):
        Wiki.from_text("sentence Zurich is a city .\n")


def test_persistence_write_through(tmp_path):
    path = tmp_path / "wiki.txt"
    wiki = Wiki(persist_path=str(path))
    wiki.add_word(PN, "Zurich")
    wiki.add_word(NOUN, "city")
    wiki.create_sentence("Zurich is a city .".split())
    on_disk = path.read_text(encoding="utf-8")
    assert on_disk == wiki.export_text()
    reloaded = Wiki.from_text(on_disk)
    assert [s.text for s in reloaded.sentences_in_order()] == \
        ["Zurich is a city ."]


# -- statistics -----------------------------------------------------------------

def test_stats_patterns_and_fraction(corpus_wiki):
    report = corpus_wiki.corpus_stats()
    assert report.total == len(CORPUS)
    assert sum(report.pattern_counts.values()) == report.total
    counts = {p.value: n for p, n in report.pattern_counts.items() if n}
    assert counts == {
        "ConceptInclusion": 1, "IndividualAssignment": 1,
        "IndividualAssignmentNegated": 1, "RoleInstance": 1,
        "RoleInstanceNegated": 1, "RoleInclusion": 1, "RangeRestriction": 1,
        "ConceptInclusionNegated": 1, "Existential": 1, "Other": 2,
    }
    # hand count over the corpus: 8 of 11 carry negation or implication
    assert report.neg_or_impl_fraction == pytest.approx(8 / 11)


def test_stats_all_positive_assignments():
    wiki = small_wiki()
    wiki.create_sentence("Zurich is a city .".split())
    wiki.create_sentence("Zurich is a city .".split())
    report = wiki.corpus_stats()
    assert report.pattern_counts[SentencePattern.INDIVIDUAL_ASSIGNMENT] == 2
    assert report.neg_or_impl_fraction == 0.0


def test_stats_with_annotations(corpus_wiki):
    ids = [s.id for s in corpus_wiki.sentences_in_order()]
    annotations = {sid: True for sid in ids[:8]}
    annotations.update({sid: False for sid in ids[8:]})
    report = corpus_wiki.corpus_stats(annotations)
    assert (report.s, report.s_plus, report.s_minus) == (11, 8, 3)
    assert report.ratio == pytest.approx(8 / 11)
    with pytest.raises(AnnotationForUnknownSentence):
        corpus_wiki.corpus_stats({9999: True})


def test_box_restricted_creation():
    wiki = small_wiki()
    wiki.create_sentence(
        "every canal is a waterbody .".split(),
        patterns=[SentencePattern.CONCEPT_INCLUSION])
    with pytest.raises(ParseFailed):
        wiki.create_sentence(
            "Zurich is a city .".split(),
            patterns=[SentencePattern.CONCEPT_INCLUSION])


def test_ranked_prediction(corpus_wiki):
    corpus_wiki.create_sentence(
        "if something flows-through something Y then Y is a city .".split())
    corpus_wiki.create_sentence("Zurich is a city .".split())
    corpus_wiki.create_sentence("Matterhorn is a mountain .".split())
    pred = corpus_wiki.predict(["Limmat", "flows-through"])
    names = [w.surface for w in pred.category_menus[PN]]
    assert names[0] == "Zurich"
    assert names.index("Zurich") < names.index("Matterhorn")
    # concept menu after the article ranks by subsumption in the range
    pred2 = corpus_wiki.predict(["Limmat", "flows-through", "a"])
    nouns = [w.surface for w in pred2.category_menus[NOUN]]
    assert nouns[0] == "city"
