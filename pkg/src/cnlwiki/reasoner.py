"""Forward-chaining reasoner over the wiki's axioms.

Keeps a saturated view of concept/role hierarchies, domain/range axioms and
assertions, and uses it to rank editor suggestions: candidates provably in a
role's domain/range class come first. No consistency checking is done;
negative and disjointness axioms are stored but inert.

The knowledge base is an immutable snapshot: every mutation builds a fresh
one, so readers never see intermediate states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .lexicon import Word
from .logic import Axiom, AxiomKind, CeAtom, role_name


class UnknownAxiom(Exception):
    def __init__(self, axiom: Axiom):
        super().__init__(f"axiom not asserted: {axiom.text()}")
        self.axiom = axiom


def _atom_name(arg) -> str | None:
    if isinstance(arg, str):
        return arg
    if isinstance(arg, CeAtom):
        return arg.name
    return None


@dataclass(frozen=True, eq=False)
class KnowledgeBase:
    axioms: frozenset[Axiom]
    superclasses: Mapping[str, frozenset[str]] = field(default_factory=dict)
    superroles: Mapping[str, frozenset[str]] = field(default_factory=dict)
    instances: Mapping[str, frozenset[str]] = field(default_factory=dict)
    domains: Mapping[str, frozenset[str]] = field(default_factory=dict)
    ranges: Mapping[str, frozenset[str]] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "KnowledgeBase":
        return cls.from_axioms(())

    @classmethod
    def from_axioms(cls, axioms: Iterable[Axiom]) -> "KnowledgeBase":
        axiom_set = frozenset(a for a in axioms if a.owl_compatible)
        return cls(axiom_set, *_saturate(axiom_set))

    # -- queries ------------------------------------------------------------

    def ancestors(self, concept: str) -> frozenset[str]:
        """Reflexive-transitive superclass closure."""
        return self.superclasses.get(concept, frozenset({concept}))

    def role_ancestors(self, role: str) -> frozenset[str]:
        return self.superroles.get(role, frozenset({role}))

    def instances_of(self, concept: str) -> frozenset[str]:
        return self.instances.get(concept, frozenset())


def _saturate(axioms: frozenset[Axiom]):
    """Compute the derived tables from scratch: subclass/subrole transitive
    closure, then domain/range firing on role assertions, then instance
    propagation upward through the subclass closure."""
    sub_c: dict[str, set[str]] = {}
    sub_r: dict[str, set[str]] = {}
    direct_inst: list[tuple[str, str]] = []          # (individual, concept)
    role_asserts: list[tuple[str, str, str]] = []    # (role, subj, obj)
    domains: dict[str, set[str]] = {}
    ranges: dict[str, set[str]] = {}

    def edge(table: dict[str, set[str]], sub: str, sup: str):
        table.setdefault(sub, set()).add(sup)
        table.setdefault(sup, set())

    for ax in axioms:
        if ax.kind is AxiomKind.SUB_CLASS_OF:
            a, b = _atom_name(ax.args[0]), _atom_name(ax.args[1])
            if a is not None and b is not None:
                edge(sub_c, a, b)
        elif ax.kind is AxiomKind.SUB_ROLE_OF:
            edge(sub_r, ax.args[0], ax.args[1])
        elif ax.kind is AxiomKind.CLASS_ASSERTION:
            c = _atom_name(ax.args[0])
            if c is not None:
                direct_inst.append((ax.args[1], c))
        elif ax.kind is AxiomKind.ROLE_ASSERTION:
            role_asserts.append((ax.args[0], ax.args[1], ax.args[2]))
        elif ax.kind is AxiomKind.ROLE_DOMAIN:
            domains.setdefault(ax.args[0], set()).add(ax.args[1])
        elif ax.kind is AxiomKind.ROLE_RANGE:
            ranges.setdefault(ax.args[0], set()).add(ax.args[1])
        # DisjointClasses, negative assertions, AnonymousAssertion: inert.

    superclasses = {c: _closure(c, sub_c) for c in sub_c}
    superroles = {r: _closure(r, sub_r) for r in sub_r}

    facts: set[tuple[str, str]] = set(direct_inst)
    for role, subj, obj in role_asserts:
        for sup_role in superroles.get(role, frozenset({role})):
            for c in domains.get(sup_role, ()):
                facts.add((subj, c))
            for c in ranges.get(sup_role, ()):
                facts.add((obj, c))

    instances: dict[str, set[str]] = {}
    for ind, concept in facts:
        for sup in superclasses.get(concept, frozenset({concept})):
            instances.setdefault(sup, set()).add(ind)

    return (
        {c: frozenset(s) for c, s in superclasses.items()},
        {r: frozenset(s) for r, s in superroles.items()},
        {c: frozenset(s) for c, s in instances.items()},
        {r: frozenset(s) for r, s in domains.items()},
        {r: frozenset(s) for r, s in ranges.items()},
    )


def _closure(start: str, edges: dict[str, set[str]]) -> frozenset[str]:
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nxt in edges.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


def assert_axiom(kb: KnowledgeBase, axiom: Axiom) -> KnowledgeBase:
    """Add one axiom; duplicates and NotOwl are no-ops."""
    if not axiom.owl_compatible or axiom in kb.axioms:
        return kb
    return KnowledgeBase.from_axioms(kb.axioms | {axiom})


def retract_axiom(kb: KnowledgeBase, axiom: Axiom) -> KnowledgeBase:
    """Remove one axiom and recompute the fixpoint from scratch."""
    if axiom not in kb.axioms:
        raise UnknownAxiom(axiom)
    return KnowledgeBase.from_axioms(kb.axioms - {axiom})


# ---------------------------------------------------------------------------
# Suggestion ranking
# ---------------------------------------------------------------------------

def _target_concepts(kb: KnowledgeBase, role: Word, position: str) -> frozenset[str]:
    table = kb.domains if position == "subject" else kb.ranges
    targets: set[str] = set()
    for sup_role in kb.role_ancestors(role_name(role)):
        targets.update(table.get(sup_role, ()))
    return frozenset(targets)


def _ranked(candidates: list[Word], suitable) -> list[Word]:
    # Stable two-partition order; both halves keep the alphabetical order
    # the lexicon menus already have.
    first = [w for w in candidates if suitable(w)]
    rest = [w for w in candidates if not suitable(w)]
    return first + rest


def rank_individuals(kb: KnowledgeBase, role: Word, position: str,
                     candidates: list[Word]) -> list[Word]:
    """Proper names provably in the role's domain (subject position) or
    range (object position) class come first."""
    targets = _target_concepts(kb, role, position)
    if not targets:
        return list(candidates)
    suitable_inds: set[str] = set()
    for c in targets:
        suitable_inds.update(kb.instances_of(c))
    return _ranked(list(candidates), lambda w: w.surface in suitable_inds)


def rank_concepts(kb: KnowledgeBase, role: Word, position: str,
                  candidates: list[Word]) -> list[Word]:
    """Nouns subsumed by the role's domain/range concept come first."""
    targets = _target_concepts(kb, role, position)
    if not targets:
        return list(candidates)
    return _ranked(
        list(candidates),
        lambda w: bool(kb.ancestors(w.surface) & targets),
    )
