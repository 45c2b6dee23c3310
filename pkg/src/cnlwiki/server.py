"""HTTP/JSON API over the wiki: browsing, prediction, and mutations.

All mutating endpoints funnel through the wiki's single-writer lock; every
response carries the global revision in the X-Wiki-Revision header. Errors
are uniform ApiError bodies: {"code", "message", "position"?} with codes
mirroring the module error names (documented in API.md).
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .grammar import (
    DeadPrefixError, EmptyPatternSetError, GrammarError, LexicalError,
    PatternViolationError, Prediction, SentenceSyntaxError,
    UnboundVariableError, UnsupportedPatternError,
)
from .lexicon import (
    DuplicateSurface, InvalidSurface, LexiconError, ReservedWord, UnknownWord,
    Word, WordCategory, WordInUse,
)
from .logic import SentencePattern
from .reasoner import UnknownAxiom
from .wiki import (
    AnnotationForUnknownSentence, Article, FormatError, ParseFailed,
    Sentence, StaleRevision, UnknownSentence, UnknownWordInSentence,
    VersionConflict, Wiki, WikiError,
)

_CATEGORY_KEYS = {
    WordCategory.PROPER_NAME: "properName",
    WordCategory.NOUN: "noun",
    WordCategory.TRANSITIVE_VERB: "transitiveVerb",
    WordCategory.OF_CONSTRUCT: "ofConstruct",
}

_ERROR_MAP: list[tuple[type, int, str]] = [
    (UnknownWord, 404, "UnknownWord"),
    (UnknownSentence, 404, "UnknownSentence"),
    (DuplicateSurface, 409, "DuplicateSurface"),
    (VersionConflict, 409, "VersionConflict"),
    (StaleRevision, 409, "StaleRevision"),
    (ReservedWord, 400, "ReservedWord"),
    (InvalidSurface, 400, "InvalidSurface"),
    (WordInUse, 409, "WordInUse"),
    (ParseFailed, 400, "ParseFailed"),
    (LexicalError, 400, "LexicalError"),
    (SentenceSyntaxError, 400, "SyntaxError"),
    (UnboundVariableError, 400, "UnboundVariable"),
    (DeadPrefixError, 400, "DeadPrefix"),
    (PatternViolationError, 400, "PatternViolation"),
    (EmptyPatternSetError, 400, "EmptyPatternSet"),
    (UnsupportedPatternError, 400, "UnsupportedPattern"),
    (UnknownWordInSentence, 400, "UnknownWordInSentence"),
    (FormatError, 400, "FormatError"),
    (AnnotationForUnknownSentence, 400, "AnnotationForUnknownSentence"),
    (UnknownAxiom, 400, "UnknownAxiom"),
]


class WordIn(BaseModel):
    category: str
    surface: str


class SentenceIn(BaseModel):
    tokens: list[str]
    restrict: list[str] | None = None
    expectedRevision: int | None = None


class SentenceUpdate(BaseModel):
    tokens: list[str]
    expectedVersion: int
    restrict: list[str] | None = None


class PredictIn(BaseModel):
    prefix: list[str]
    restrict: list[str] | None = None


class UnknownPattern(Exception):
    def __init__(self, name: str):
        super().__init__(f"unknown sentence pattern {name!r}")
        self.name = name


def _patterns_arg(names: list[str] | None):
    if names is None:
        return None
    out = []
    for name in names:
        try:
            out.append(SentencePattern.from_wire(name))
        except ValueError:
            raise UnknownPattern(name) from None
    return out


def word_json(word: Word) -> dict:
    return {
        "id": word.id,
        "surface": word.surface,
        "category": word.category.value,
        "display": word.rendered(),
    }


def sentence_json(sentence: Sentence) -> dict:
    return {
        "id": sentence.id,
        "text": sentence.text,
        "tokens": [t.text for t in sentence.tokens],
        "pattern": sentence.pattern.value,
        "axiom": sentence.axiom.text(),
        "owl": sentence.axiom.owl_compatible,
        "version": sentence.version,
    }


def article_json(article: Article) -> dict:
    return {
        "word": word_json(article.word),
        "boxes": {
            "hierarchy": [sentence_json(s) for s in article.boxes["Hierarchy"]],
            "assignments": [sentence_json(s) for s in article.boxes["Assignments"]],
            "domainRange": [sentence_json(s) for s in article.boxes["DomainRange"]],
        },
        "unrestricted": [sentence_json(s) for s in article.unrestricted],
        "comments": [
            {"position": pos, "text": text, "italic": True}
            for pos, text in article.comments
        ],
    }


def prediction_json(pred: Prediction) -> dict:
    return {
        "categoryMenus": {
            key: [word_json(w) for w in pred.category_menus[cat]]
            for cat, key in _CATEGORY_KEYS.items()
        },
        "functionMenu": list(pred.function_menu),
        "varRefMenu": list(pred.var_ref_menu),
        "varIntroNames": list(pred.var_intro_names),
        "varIntroAllowed": pred.var_intro_allowed,
        "canFinish": pred.can_finish,
    }


def create_app(wiki: Wiki, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="cnlwiki", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )

    def _error_response(exc: Exception) -> JSONResponse:
        for klass, status, code in _ERROR_MAP:
            if isinstance(exc, klass):
                body = {"code": code, "message": str(exc)}
                position = getattr(exc, "position", None)
                if position is not None:
                    body["position"] = position
                return JSONResponse(body, status_code=status)
        if isinstance(exc, UnknownPattern):
            return JSONResponse(
                {"code": "UnknownPattern", "message": str(exc)}, status_code=400)
        raise exc

    @app.exception_handler(WikiError)
    @app.exception_handler(LexiconError)
    @app.exception_handler(GrammarError)
    @app.exception_handler(UnknownAxiom)
    @app.exception_handler(UnknownPattern)
    async def _domain_error(request: Request, exc: Exception):
        return _error_response(exc)

    @app.middleware("http")
    async def _revision_header(request: Request, call_next):
        response = await call_next(request)
        response.headers["X-Wiki-Revision"] = str(wiki.revision)
        return response

    @app.get("/words")
    def list_words():
        return [word_json(w) for w in wiki.lexicon.words()]

    @app.post("/words", status_code=201)
    def add_word(body: WordIn):
        try:
            category = WordCategory.from_code(body.category)
        except ValueError as exc:
            return JSONResponse(
                {"code": "UnknownCategory", "message": str(exc)},
                status_code=400)
        word = wiki.add_word(category, body.surface)
        return word_json(word)

    @app.get("/articles/{surface}")
    def get_article(surface: str):
        return article_json(wiki.render_article(surface))

    @app.get("/sentences/{sentence_id}")
    def get_sentence(sentence_id: int):
        return sentence_json(wiki.get_sentence(sentence_id))

    @app.post("/sentences", status_code=201)
    def create_sentence(body: SentenceIn):
        sentence = wiki.create_sentence(
            body.tokens, patterns=_patterns_arg(body.restrict),
            expected_revision=body.expectedRevision)
        return sentence_json(sentence)

    @app.put("/sentences/{sentence_id}")
    def edit_sentence(sentence_id: int, body: SentenceUpdate):
        sentence = wiki.edit_sentence(
            sentence_id, body.expectedVersion, body.tokens,
            patterns=_patterns_arg(body.restrict))
        return sentence_json(sentence)

    @app.delete("/sentences/{sentence_id}", status_code=204)
    def delete_sentence(sentence_id: int, expectedVersion: int):
        wiki.delete_sentence(sentence_id, expectedVersion)
        return Response(status_code=204)

    @app.post("/predict")
    def predict(body: PredictIn):
        pred = wiki.predict(body.prefix, patterns=_patterns_arg(body.restrict))
        return prediction_json(pred)

    @app.get("/export")
    def export_wiki():
        return PlainTextResponse(wiki.export_text())

    @app.post("/import")
    async def import_wiki(request: Request):
        text = (await request.body()).decode("utf-8")
        wiki.import_text(text)
        return {"revision": wiki.revision}

    @app.get("/stats")
    def stats():
        report = wiki.corpus_stats()
        return {
            "patternCounts": {
                p.value: n for p, n in report.pattern_counts.items()
            },
            "negOrImplFraction": report.neg_or_impl_fraction,
            "total": report.total,
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
