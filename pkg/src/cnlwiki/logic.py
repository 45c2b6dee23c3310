"""Logical layer: discourse structures, axiom classification, patterns.

Every parsed sentence is translated to a discourse representation structure
(referents plus conditions, a first-order form). The structure is then
classified: either it fits the supported axiom grammar

    ce := concept | not(ce) | and(ce, ce) | or(ce, ce)
        | some(role, ce) | someValue(role, individual) | Thing

and one of the axiom kinds below, or it is marked NotOwl. The classification
drives the blue/red markers in the wiki and feeds the reasoner.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union

from .grammar import (
    Clause, Conditional, CsA, CsSomething, CsVarRef, Negated, ObjA,
    ObjEverything, ObjProper, ObjSomething, ObjVarRef, ObjectNp,
    PredDoesNotVerb, PredIsA, PredIsNotA, PredIsNotRoleOf, PredIsRoleOf,
    PredVerb, Predicate, PredicateList, Rel, SentenceAst, Simple, SubjA,
    SubjEvery, SubjEverything, SubjNo, SubjProper, SubjSomething,
)
from .lexicon import Word, WordCategory


def role_name(word: Word) -> str:
    """Role identifier: verbs keep their surface, of-constructs get "-of"
    appended ("part" -> "part-of")."""
    if word.category is WordCategory.OF_CONSTRUCT:
        return f"{word.surface}-of"
    return word.surface


# ---------------------------------------------------------------------------
# Discourse representation structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


Term = Union[Const, Var]


@dataclass(frozen=True)
class ConceptAtom:
    concept: str
    term: Term


@dataclass(frozen=True)
class RoleAtom:
    role: str
    subject: Term
    object: Term


@dataclass(frozen=True)
class Negation:
    body: "Drs"


@dataclass(frozen=True)
class Implication:
    antecedent: "Drs"
    consequent: "Drs"


@dataclass(frozen=True)
class Disjunction:
    left: "Drs"
    right: "Drs"


Condition = Union[ConceptAtom, RoleAtom, Negation, Implication, Disjunction]


@dataclass(frozen=True)
class Drs:
    referents: tuple[str, ...]
    conditions: tuple[Condition, ...]


class _Fresh:
    def __init__(self):
        self.n = 0

    def __call__(self) -> str:
        self.n += 1
        return f"x{self.n}"


def ast_to_drs(ast: SentenceAst) -> Drs:
    """Translate a syntax tree to its discourse structure.

    Universal subjects become implications ("no" additionally negates the
    consequent), indefinite and "something" subjects become top-level
    existentials, and indefinite objects become existentials local to the
    structure their predicate lives in.
    """
    fresh = _Fresh()
    if isinstance(ast, Negated):
        return Drs((), (Negation(_simple_drs(ast.inner, fresh)),))
    if isinstance(ast, Conditional):
        ante_refs: list[str] = []
        ante_conds: list[Condition] = []
        for clause in ast.if_clauses:
            _clause_into(clause, ante_refs, ante_conds, fresh)
        cons_refs: list[str] = []
        cons_conds: list[Condition] = []
        _clause_into(ast.then_clause, cons_refs, cons_conds, fresh)
        impl = Implication(Drs(tuple(ante_refs), tuple(ante_conds)),
                           Drs(tuple(cons_refs), tuple(cons_conds)))
        return Drs((), (impl,))
    return _simple_drs(ast, fresh)


def _simple_drs(simple: Simple, fresh: _Fresh) -> Drs:
    subj = simple.subject
    if isinstance(subj, SubjProper):
        refs, conds = _predlist_bundle(simple.preds, Const(subj.word.surface), fresh)
        return Drs(tuple(refs), tuple(conds))
    if isinstance(subj, (SubjEvery, SubjNo)):
        x = fresh()
        restr: list[Condition] = [ConceptAtom(subj.noun.surface, Var(x))]
        restr_refs = [x]
        if subj.rel is not None:
            _rel_into(subj.rel, Var(x), restr_refs, restr, fresh)
        refs, conds = _predlist_bundle(simple.preds, Var(x), fresh)
        consequent = Drs(tuple(refs), tuple(conds))
        if isinstance(subj, SubjNo):
            consequent = Drs((), (Negation(consequent),))
        impl = Implication(Drs(tuple(restr_refs), tuple(restr)), consequent)
        return Drs((), (impl,))
    if isinstance(subj, SubjA):
        x = fresh()
        top_refs = [x]
        top: list[Condition] = [ConceptAtom(subj.noun.surface, Var(x))]
        if subj.rel is not None:
            _rel_into(subj.rel, Var(x), top_refs, top, fresh)
        refs, conds = _predlist_bundle(simple.preds, Var(x), fresh)
        return Drs(tuple(top_refs + refs), tuple(top + conds))
    if isinstance(subj, SubjSomething):
        x = subj.var or fresh()
        refs, conds = _predlist_bundle(simple.preds, Var(x), fresh)
        return Drs(tuple([x] + refs), tuple(conds))
    # everything
    x = fresh()
    refs, conds = _predlist_bundle(simple.preds, Var(x), fresh)
    impl = Implication(Drs((x,), ()), Drs(tuple(refs), tuple(conds)))
    return Drs((), (impl,))


def _rel_into(rel: Rel, subject: Term, refs: list[str],
              conds: list[Condition], fresh: _Fresh):
    if isinstance(rel.obj, ObjEverything):
        y = fresh()
        conds.append(Implication(
            Drs((y,), ()),
            Drs((), (RoleAtom(role_name(rel.verb), subject, Var(y)),))))
        return
    obj_term, obj_refs, obj_conds = _object_parts(rel.obj, fresh)
    conds.append(RoleAtom(role_name(rel.verb), subject, obj_term))
    refs.extend(obj_refs)
    conds.extend(obj_conds)


def _clause_into(clause: Clause, refs: list[str], conds: list[Condition],
                 fresh: _Fresh):
    subj = clause.subject
    if isinstance(subj, CsVarRef):
        term: Term = Var(subj.name)
    elif isinstance(subj, CsSomething):
        x = subj.var or fresh()
        refs.append(x)
        term = Var(x)
    else:
        x = subj.var or fresh()
        refs.append(x)
        conds.append(ConceptAtom(subj.noun.surface, Var(x)))
        term = Var(x)
    p_refs, p_conds = _predlist_bundle(clause.preds, term, fresh)
    refs.extend(p_refs)
    conds.extend(p_conds)


def _object_parts(obj: ObjectNp, fresh: _Fresh):
    """Term plus the referents/conditions the object itself contributes.
    "everything" objects are handled by the predicate builder."""
    if isinstance(obj, ObjProper):
        return Const(obj.word.surface), [], []
    if isinstance(obj, ObjA):
        x = obj.var or fresh()
        return Var(x), [x], [ConceptAtom(obj.noun.surface, Var(x))]
    if isinstance(obj, ObjSomething):
        x = obj.var or fresh()
        return Var(x), [x], []
    if isinstance(obj, ObjVarRef):
        return Var(obj.name), [], []
    raise AssertionError("everything-object handled by caller")


def _pred_bundle(pred: Predicate, subject: Term, fresh: _Fresh):
    if isinstance(pred, PredIsA):
        return [], [ConceptAtom(pred.noun.surface, subject)]
    if isinstance(pred, PredIsNotA):
        inner = Drs((), (ConceptAtom(pred.noun.surface, subject),))
        return [], [Negation(inner)]
    if isinstance(pred, (PredVerb, PredIsRoleOf)):
        word = pred.verb if isinstance(pred, PredVerb) else pred.of_word
        return _role_bundle(role_name(word), subject, pred.obj, fresh,
                            negated=False)
    word = pred.verb if isinstance(pred, PredDoesNotVerb) else pred.of_word
    return _role_bundle(role_name(word), subject, pred.obj, fresh, negated=True)


def _role_bundle(role: str, subject: Term, obj: ObjectNp, fresh: _Fresh,
                 negated: bool):
    if isinstance(obj, ObjEverything):
        y = fresh()
        impl = Implication(Drs((y,), ()),
                           Drs((), (RoleAtom(role, subject, Var(y)),)))
        cond: Condition = Negation(Drs((), (impl,))) if negated else impl
        return [], [cond]
    obj_term, obj_refs, obj_conds = _object_parts(obj, fresh)
    atom = RoleAtom(role, subject, obj_term)
    if negated:
        return [], [Negation(Drs(tuple(obj_refs), tuple([atom] + obj_conds)))]
    return obj_refs, [atom] + obj_conds


def _predlist_bundle(preds: PredicateList, subject: Term, fresh: _Fresh):
    refs, conds = _pred_bundle(preds.preds[0], subject, fresh)
    for conn, pred in zip(preds.connectives, preds.preds[1:]):
        p_refs, p_conds = _pred_bundle(pred, subject, fresh)
        if conn == "and":
            refs = refs + p_refs
            conds = conds + p_conds
        else:
            left = Drs(tuple(refs), tuple(conds))
            right = Drs(tuple(p_refs), tuple(p_conds))
            refs, conds = [], [Disjunction(left, right)]
    return refs, conds


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CeAtom:
    name: str


@dataclass(frozen=True)
class CeThing:
    pass


@dataclass(frozen=True)
class CeNot:
    inner: "ClassExpr"


@dataclass(frozen=True)
class CeAnd:
    left: "ClassExpr"
    right: "ClassExpr"


@dataclass(frozen=True)
class CeOr:
    left: "ClassExpr"
    right: "ClassExpr"


@dataclass(frozen=True)
class CeSome:
    role: str
    inner: "ClassExpr"


@dataclass(frozen=True)
class CeSomeValue:
    role: str
    individual: str


ClassExpr = Union[CeAtom, CeThing, CeNot, CeAnd, CeOr, CeSome, CeSomeValue]

THING = CeThing()


def ce_text(ce: ClassExpr) -> str:
    if isinstance(ce, CeAtom):
        return ce.name
    if isinstance(ce, CeThing):
        return "Thing"
    if isinstance(ce, CeNot):
        return f"not({ce_text(ce.inner)})"
    if isinstance(ce, CeAnd):
        return f"and({ce_text(ce.left)}, {ce_text(ce.right)})"
    if isinstance(ce, CeOr):
        return f"or({ce_text(ce.left)}, {ce_text(ce.right)})"
    if isinstance(ce, CeSome):
        return f"some({ce.role}, {ce_text(ce.inner)})"
    return f"someValue({ce.role}, {ce.individual})"


class AxiomKind(Enum):
    SUB_CLASS_OF = "SubClassOf"
    DISJOINT_CLASSES = "DisjointClasses"
    CLASS_ASSERTION = "ClassAssertion"
    NEGATIVE_CLASS_ASSERTION = "NegativeClassAssertion"
    ROLE_ASSERTION = "RoleAssertion"
    NEGATIVE_ROLE_ASSERTION = "NegativeRoleAssertion"
    SUB_ROLE_OF = "SubRoleOf"
    ROLE_DOMAIN = "RoleDomain"
    ROLE_RANGE = "RoleRange"
    ANONYMOUS_ASSERTION = "AnonymousAssertion"
    NOT_OWL = "NotOwl"


@dataclass(frozen=True)
class Axiom:
    kind: AxiomKind
    args: tuple = ()
    drs: Drs | None = None

    @property
    def owl_compatible(self) -> bool:
        return self.kind is not AxiomKind.NOT_OWL

    def text(self) -> str:
        if self.kind is AxiomKind.NOT_OWL:
            return "NotOwl"
        rendered = [a if isinstance(a, str) else ce_text(a) for a in self.args]
        return f"{self.kind.value}({', '.join(rendered)})"


def _free_terms(drs: Drs, bound: frozenset[str] = frozenset()) -> set[Term]:
    """Constants plus variables not bound by any enclosing referent list."""
    bound = bound | frozenset(drs.referents)
    out: set[Term] = set()
    for cond in drs.conditions:
        out |= _free_terms_cond(cond, bound)
    return out


def _free_terms_cond(cond: Condition, bound: frozenset[str]) -> set[Term]:
    def of_term(t: Term) -> set[Term]:
        if isinstance(t, Var) and t.name in bound:
            return set()
        return {t}

    if isinstance(cond, ConceptAtom):
        return of_term(cond.term)
    if isinstance(cond, RoleAtom):
        return of_term(cond.subject) | of_term(cond.object)
    if isinstance(cond, Negation):
        return _free_terms(cond.body, bound)
    if isinstance(cond, Implication):
        inner_bound = bound | frozenset(cond.antecedent.referents)
        return _free_terms(cond.antecedent, bound) | \
            _free_terms(cond.consequent, inner_bound)
    return _free_terms(cond.left, bound) | _free_terms(cond.right, bound)


def _extract_ce(conditions: Iterable[Condition], dist: Term,
                local_refs: Iterable[str]) -> ClassExpr | None:
    """Try to read a set of conditions as a class expression about ``dist``.

    Local existential referents may each be consumed by exactly one role
    atom; anything left unattributed (shared referents, inverse positions,
    embedded universals) makes the conditions inexpressible.
    """
    conds = list(conditions)
    available = set(local_refs)
    used: set[int] = set()

    def build(term: Term) -> ClassExpr | None:
        parts: list[ClassExpr] = []
        for idx, cond in enumerate(conds):
            if idx in used:
                continue
            if isinstance(cond, ConceptAtom):
                if cond.term == term:
                    used.add(idx)
                    parts.append(CeAtom(cond.concept))
            elif isinstance(cond, RoleAtom):
                if cond.subject == term:
                    used.add(idx)
                    obj = cond.object
                    if isinstance(obj, Const):
                        parts.append(CeSomeValue(cond.role, obj.name))
                    elif isinstance(obj, Var) and obj.name in available:
                        available.discard(obj.name)
                        sub = build(obj)
                        if sub is None:
                            return None
                        parts.append(CeSome(cond.role, sub))
                    else:
                        return None
                elif cond.object == term:
                    return None
            elif isinstance(cond, (Negation, Disjunction)):
                body_free = (_free_terms(cond.body)
                             if isinstance(cond, Negation)
                             else _free_terms(cond.left) | _free_terms(cond.right))
                if term not in body_free:
                    continue
                if body_free != {term}:
                    return None
                used.add(idx)
                if isinstance(cond, Negation):
                    inner = _extract_ce(cond.body.conditions, term,
                                        cond.body.referents)
                    if inner is None:
                        return None
                    parts.append(CeNot(inner))
                else:
                    left = _extract_ce(cond.left.conditions, term,
                                       cond.left.referents)
                    right = _extract_ce(cond.right.conditions, term,
                                        cond.right.referents)
                    if left is None or right is None:
                        return None
                    parts.append(CeOr(left, right))
            else:  # Implication (an "everything" object): no universal ce
                body_free = _free_terms_cond(cond, frozenset())
                if term not in body_free:
                    continue
                return None
        if not parts:
            return THING
        ce = parts[0]
        for p in parts[1:]:
            ce = CeAnd(ce, p)
        return ce

    ce = build(dist)
    if ce is None or len(used) != len(conds):
        return None
    return ce


def _first_const(conds: Iterable[Condition]) -> str | None:
    for cond in conds:
        if isinstance(cond, ConceptAtom):
            if isinstance(cond.term, Const):
                return cond.term.name
        elif isinstance(cond, RoleAtom):
            if isinstance(cond.subject, Const):
                return cond.subject.name
            if isinstance(cond.object, Const):
                return cond.object.name
        elif isinstance(cond, Negation):
            found = _first_const(cond.body.conditions)
            if found:
                return found
        elif isinstance(cond, Implication):
            found = _first_const(cond.antecedent.conditions) or \
                _first_const(cond.consequent.conditions)
            if found:
                return found
        elif isinstance(cond, Disjunction):
            found = _first_const(cond.left.conditions) or \
                _first_const(cond.right.conditions)
            if found:
                return found
    return None


def classify(drs: Drs) -> Axiom:
    """Classify a discourse structure, first match wins:

    1. ground atoms become assertions,
    2. negated ground atoms become negative assertions,
    3. implications become DisjointClasses / SubRoleOf / RoleDomain /
       RoleRange when they have the dedicated shapes, otherwise a general
       SubClassOf over extracted class expressions,
    4. whatever is expressible as a class expression about one named
       individual becomes a ClassAssertion,
    5. a top-level existential expressible about its first referent becomes
       an AnonymousAssertion,
    6. everything else is NotOwl.
    """
    conds = drs.conditions
    if not drs.referents and len(conds) == 1:
        cond = conds[0]
        if isinstance(cond, RoleAtom) and isinstance(cond.subject, Const) \
                and isinstance(cond.object, Const):
            return Axiom(AxiomKind.ROLE_ASSERTION,
                         (cond.role, cond.subject.name, cond.object.name))
        if isinstance(cond, ConceptAtom) and isinstance(cond.term, Const):
            return Axiom(AxiomKind.CLASS_ASSERTION,
                         (CeAtom(cond.concept), cond.term.name))
        if isinstance(cond, Negation):
            body = cond.body
            if not body.referents and len(body.conditions) == 1:
                inner = body.conditions[0]
                if isinstance(inner, RoleAtom) and \
                        isinstance(inner.subject, Const) and \
                        isinstance(inner.object, Const):
                    return Axiom(AxiomKind.NEGATIVE_ROLE_ASSERTION,
                                 (inner.role, inner.subject.name,
                                  inner.object.name))
                if isinstance(inner, ConceptAtom) and \
                        isinstance(inner.term, Const):
                    return Axiom(AxiomKind.NEGATIVE_CLASS_ASSERTION,
                                 (inner.concept, inner.term.name))
        if isinstance(cond, Implication):
            return _classify_implication(cond, drs)

    subject = _first_const(conds)
    if subject is not None:
        ce = _extract_ce(conds, Const(subject), drs.referents)
        if ce is not None:
            return Axiom(AxiomKind.CLASS_ASSERTION, (ce, subject))
    if drs.referents:
        ce = _extract_ce(conds, Var(drs.referents[0]), drs.referents[1:])
        if ce is not None:
            return Axiom(AxiomKind.ANONYMOUS_ASSERTION, (ce,))
    return Axiom(AxiomKind.NOT_OWL, (), drs)


def _classify_implication(impl: Implication, whole: Drs) -> Axiom:
    ante, cons = impl.antecedent, impl.consequent

    if len(ante.referents) == 2 and len(ante.conditions) == 1:
        atom = ante.conditions[0]
        x, y = ante.referents
        if isinstance(atom, RoleAtom) and atom.subject == Var(x) and \
                atom.object == Var(y):
            if not cons.referents and len(cons.conditions) == 1:
                cc = cons.conditions[0]
                if isinstance(cc, RoleAtom) and cc.subject == Var(x) and \
                        cc.object == Var(y):
                    return Axiom(AxiomKind.SUB_ROLE_OF, (atom.role, cc.role))
                if isinstance(cc, ConceptAtom) and cc.term == Var(x):
                    return Axiom(AxiomKind.ROLE_DOMAIN,
                                 (atom.role, cc.concept))
                if isinstance(cc, ConceptAtom) and cc.term == Var(y):
                    return Axiom(AxiomKind.ROLE_RANGE, (atom.role, cc.concept))

    if len(ante.referents) == 1 and len(ante.conditions) == 1 and \
            not cons.referents and len(cons.conditions) == 1:
        a_cond, c_cond = ante.conditions[0], cons.conditions[0]
        x = ante.referents[0]
        if isinstance(a_cond, ConceptAtom) and a_cond.term == Var(x) and \
                isinstance(c_cond, Negation) and not c_cond.body.referents and \
                len(c_cond.body.conditions) == 1:
            inner = c_cond.body.conditions[0]
            if isinstance(inner, ConceptAtom) and inner.term == Var(x):
                return Axiom(AxiomKind.DISJOINT_CLASSES,
                             (a_cond.concept, inner.concept))

    if ante.referents:
        x = ante.referents[0]
        ce_a = _extract_ce(ante.conditions, Var(x), ante.referents[1:])
        ce_c = _extract_ce(cons.conditions, Var(x), cons.referents)
        if ce_a is not None and ce_c is not None:
            return Axiom(AxiomKind.SUB_CLASS_OF, (ce_a, ce_c))
    return Axiom(AxiomKind.NOT_OWL, (), whole)


def axiom_well_formed(axiom: Axiom) -> bool:
    """Check an axiom's arguments against the axiom grammar."""
    def ce_ok(ce) -> bool:
        if isinstance(ce, (CeAtom, CeThing)):
            return True
        if isinstance(ce, CeNot):
            return ce_ok(ce.inner)
        if isinstance(ce, (CeAnd, CeOr)):
            return ce_ok(ce.left) and ce_ok(ce.right)
        if isinstance(ce, CeSome):
            return isinstance(ce.role, str) and ce_ok(ce.inner)
        if isinstance(ce, CeSomeValue):
            return isinstance(ce.role, str) and isinstance(ce.individual, str)
        return False

    k = axiom.kind
    a = axiom.args
    if k is AxiomKind.NOT_OWL:
        return a == ()
    shapes = {
        AxiomKind.SUB_CLASS_OF: ("ce", "ce"),
        AxiomKind.DISJOINT_CLASSES: ("name", "name"),
        AxiomKind.CLASS_ASSERTION: ("ce", "name"),
        AxiomKind.NEGATIVE_CLASS_ASSERTION: ("name", "name"),
        AxiomKind.ROLE_ASSERTION: ("name", "name", "name"),
        AxiomKind.NEGATIVE_ROLE_ASSERTION: ("name", "name", "name"),
        AxiomKind.SUB_ROLE_OF: ("name", "name"),
        AxiomKind.ROLE_DOMAIN: ("name", "name"),
        AxiomKind.ROLE_RANGE: ("name", "name"),
        AxiomKind.ANONYMOUS_ASSERTION: ("ce",),
    }
    shape = shapes[k]
    if len(a) != len(shape):
        return False
    for arg, want in zip(a, shape):
        if want == "name" and not isinstance(arg, str):
            return False
        if want == "ce" and not ce_ok(arg):
            return False
    return True


# ---------------------------------------------------------------------------
# Sentence patterns
# ---------------------------------------------------------------------------

class SentencePattern(Enum):
    CONCEPT_INCLUSION = "ConceptInclusion"
    CONCEPT_INCLUSION_NEGATED = "ConceptInclusionNegated"
    INDIVIDUAL_ASSIGNMENT = "IndividualAssignment"
    INDIVIDUAL_ASSIGNMENT_NEGATED = "IndividualAssignmentNegated"
    ROLE_INSTANCE = "RoleInstance"
    ROLE_INSTANCE_NEGATED = "RoleInstanceNegated"
    ROLE_INCLUSION = "RoleInclusion"
    DOMAIN_RESTRICTION = "DomainRestriction"
    RANGE_RESTRICTION = "RangeRestriction"
    EXISTENTIAL = "Existential"
    OTHER = "Other"

    def name_for_wire(self) -> str:
        return self.value

    @classmethod
    def from_wire(cls, name: str) -> "SentencePattern":
        return cls(name)


def _positive_simple_pattern(simple: Simple) -> SentencePattern:
    subj, plist = simple.subject, simple.preds
    if isinstance(subj, SubjA):
        return SentencePattern.EXISTENTIAL
    if len(plist.preds) != 1:
        return SentencePattern.OTHER
    pred = plist.preds[0]
    if isinstance(subj, SubjEvery) and subj.rel is None and \
            isinstance(pred, PredIsA):
        return SentencePattern.CONCEPT_INCLUSION
    if isinstance(subj, SubjProper):
        if isinstance(pred, PredIsA):
            return SentencePattern.INDIVIDUAL_ASSIGNMENT
        if isinstance(pred, PredIsNotA):
            return SentencePattern.INDIVIDUAL_ASSIGNMENT_NEGATED
        if isinstance(pred, (PredVerb, PredIsRoleOf)) and \
                isinstance(pred.obj, ObjProper):
            return SentencePattern.ROLE_INSTANCE
        if isinstance(pred, (PredDoesNotVerb, PredIsNotRoleOf)) and \
                isinstance(pred.obj, ObjProper):
            return SentencePattern.ROLE_INSTANCE_NEGATED
    return SentencePattern.OTHER


def _role_pred(pred: Predicate):
    """(role word, object) when the predicate is a positive role use."""
    if isinstance(pred, PredVerb):
        return pred.verb, pred.obj
    if isinstance(pred, PredIsRoleOf):
        return pred.of_word, pred.obj
    return None


def pattern_of(ast: SentenceAst) -> SentencePattern:
    """Total classification into the fixed wiki-box shapes; anything not
    matching exactly falls into Other."""
    if isinstance(ast, Negated):
        inner = _positive_simple_pattern(ast.inner)
        mapping = {
            SentencePattern.CONCEPT_INCLUSION:
                SentencePattern.CONCEPT_INCLUSION_NEGATED,
            SentencePattern.INDIVIDUAL_ASSIGNMENT:
                SentencePattern.INDIVIDUAL_ASSIGNMENT_NEGATED,
            SentencePattern.ROLE_INSTANCE:
                SentencePattern.ROLE_INSTANCE_NEGATED,
        }
        return mapping.get(inner, SentencePattern.OTHER)
    if isinstance(ast, Conditional):
        if len(ast.if_clauses) != 1:
            return SentencePattern.OTHER
        cond = ast.if_clauses[0]
        then = ast.then_clause
        if not isinstance(cond.subject, CsSomething) or \
                len(cond.preds.preds) != 1 or len(then.preds.preds) != 1 or \
                not isinstance(then.subject, CsVarRef):
            return SentencePattern.OTHER
        rp = _role_pred(cond.preds.preds[0])
        if rp is None or not isinstance(rp[1], ObjSomething):
            return SentencePattern.OTHER
        u = cond.subject.var
        v = rp[1].var
        w = then.subject.name
        then_pred = then.preds.preds[0]
        then_rp = _role_pred(then_pred)
        if then_rp is not None and isinstance(then_rp[1], ObjVarRef):
            if u is not None and v is not None and (w, then_rp[1].name) == (u, v):
                return SentencePattern.ROLE_INCLUSION
            return SentencePattern.OTHER
        if isinstance(then_pred, PredIsA):
            if u is not None and w == u:
                return SentencePattern.DOMAIN_RESTRICTION
            if v is not None and w == v:
                return SentencePattern.RANGE_RESTRICTION
        return SentencePattern.OTHER
    return _positive_simple_pattern(ast)


#: Patterns that have a dedicated article box.
BOX_PATTERNS = {
    "Hierarchy": frozenset({SentencePattern.CONCEPT_INCLUSION,
                            SentencePattern.ROLE_INCLUSION}),
    "Assignments": frozenset({SentencePattern.INDIVIDUAL_ASSIGNMENT}),
    "DomainRange": frozenset({SentencePattern.DOMAIN_RESTRICTION,
                              SentencePattern.RANGE_RESTRICTION}),
}


def contains_neg_or_impl(ast: SentenceAst) -> tuple[bool, bool]:
    """Whether the sentence uses a negation marker ("does not", "is not",
    "no", "it is false that") and/or an implication marker ("if ... then",
    "every", "no")."""
    has_neg = False
    has_impl = False

    def scan_preds(plist: PredicateList):
        nonlocal has_neg
        for p in plist.preds:
            if isinstance(p, (PredIsNotA, PredIsNotRoleOf, PredDoesNotVerb)):
                has_neg = True

    def scan_simple(simple: Simple):
        nonlocal has_neg, has_impl
        if isinstance(simple.subject, SubjNo):
            has_neg = True
            has_impl = True
        if isinstance(simple.subject, SubjEvery):
            has_impl = True
        scan_preds(simple.preds)

    if isinstance(ast, Negated):
        has_neg = True
        scan_simple(ast.inner)
    elif isinstance(ast, Conditional):
        has_impl = True
        for clause in ast.if_clauses:
            scan_preds(clause.preds)
        scan_preds(ast.then_clause.preds)
    else:
        scan_simple(ast)
    return has_neg, has_impl


# ---------------------------------------------------------------------------
# Model evaluation (brute-force, used by tests and debugging)
# ---------------------------------------------------------------------------

@dataclass
class Interpretation:
    """A finite first-order model over a domain {0..size-1}."""
    size: int
    concepts: dict[str, frozenset[int]]
    roles: dict[str, frozenset[tuple[int, int]]]
    constants: dict[str, int]


def evaluate(drs: Drs, model: Interpretation) -> bool:
    """Truth of a discourse structure in a finite model: referents are
    existential, implications universally quantify their antecedent
    referents."""
    domain = range(model.size)

    def term_val(t: Term, env: dict[str, int]) -> int:
        if isinstance(t, Const):
            return model.constants[t.name]
        return env[t.name]

    def sat_drs(d: Drs, env: dict[str, int]) -> bool:
        for combo in itertools.product(domain, repeat=len(d.referents)):
            env2 = dict(env)
            env2.update(zip(d.referents, combo))
            if all(sat_cond(c, env2) for c in d.conditions):
                return True
        return False

    def sat_cond(c: Condition, env: dict[str, int]) -> bool:
        if isinstance(c, ConceptAtom):
            return term_val(c.term, env) in model.concepts.get(c.concept,
                                                               frozenset())
        if isinstance(c, RoleAtom):
            pair = (term_val(c.subject, env), term_val(c.object, env))
            return pair in model.roles.get(c.role, frozenset())
        if isinstance(c, Negation):
            return not sat_drs(c.body, env)
        if isinstance(c, Disjunction):
            return sat_drs(c.left, env) or sat_drs(c.right, env)
        ante = c.antecedent
        for combo in itertools.product(domain, repeat=len(ante.referents)):
            env2 = dict(env)
            env2.update(zip(ante.referents, combo))
            if all(sat_cond(a, env2) for a in ante.conditions):
                if not sat_drs(c.consequent, env2):
                    return False
        return True

    return sat_drs(drs, {})
