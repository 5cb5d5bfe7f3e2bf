"""Fact graph extraction and description-shaped interrelation queries.

The graph holds a node per function element, referenced concept,
enumerated individual, and quality instance (keyed quality@subject).
Query strings are ordinary descriptions; atoms are matched against node
types by structural subsumption, so axioms sharpen query answers the
same way they sharpen entailment. Matching is three-valued: a node is
in the answer only on a Proved match, and Unknown matches are kept
aside as tentative for lenient callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import E_QUERY, ERROR, Diagnostic
from .reasoner.normal import ReasonerContext
from .reasoner.regions import region_subset
from .reasoner.subsume import subsumes
from .reasoner.verdict import Unknown, is_proved
from .syntax import ast
from .syntax.parser import DescBody, QualityBody, parse_description

# Relations that exist independently of any recorded fact.
BUILTIN_RELATIONS = frozenset(
    {"inheres_in", "has_quality", "observed_by", "has_value_in"})


@dataclass(frozen=True)
class Fact:
    subject: str
    relation: str
    object: object  # a node id, or a region expression for has_value_in
    source: str     # id of the element the fact was read from


@dataclass
class Node:
    ident: str
    type_desc: ast.Description


@dataclass
class FactGraph:
    nodes: dict[str, Node] = field(default_factory=dict)
    facts: list[Fact] = field(default_factory=list)
    # relation -> subject -> target ids, deduplicated, in file order
    edges: dict[str, dict[str, list[str]]] = field(default_factory=dict)
    # quality instance -> declared regions, deduplicated
    regions: dict[str, list[ast.RegionExpr]] = field(default_factory=dict)

    @property
    def relations(self) -> frozenset[str]:
        return frozenset(self.edges) | BUILTIN_RELATIONS

    def add_node(self, ident: str, type_desc: ast.Description) -> str:
        if ident not in self.nodes:
            self.nodes[ident] = Node(ident, type_desc)
        return ident

    def add_edge(self, subject: str, relation: str, target: str,
                 source: str):
        self.facts.append(Fact(subject, relation, target, source))
        targets = self.edges.setdefault(relation, {}).setdefault(subject, [])
        if target not in targets:
            targets.append(target)

    def add_region(self, instance: str, region: ast.RegionExpr, source: str):
        self.facts.append(Fact(instance, "has_value_in", region, source))
        rs = self.regions.setdefault(instance, [])
        if region not in rs:
            rs.append(region)


def _inverse(relation: str) -> str:
    if relation == "inheres_in":
        return "has_quality"
    if relation == "has_quality":
        return "inheres_in"
    return f"is_{relation}_of"


# ---------------------------------------------------------------------------
# Extraction.


def extract_facts(model) -> FactGraph:
    """Read the active elements of a model into a fact graph."""
    g = FactGraph()
    actives = model.active_elements()
    # Functions first, so a quality subject naming one reuses its node.
    for e in actives:
        if e.kind == "f" and isinstance(e.body, DescBody):
            g.add_node(e.ident, e.body.desc)
    for e in actives:
        if e.kind == "f" and isinstance(e.body, DescBody):
            _function_facts(g, e)
    for e in actives:
        if e.kind in ("qg", "qc") and isinstance(e.body, QualityBody):
            _quality_facts(g, e)
    for fact in list(g.facts):
        if isinstance(fact.object, str):
            g.add_edge(fact.object, _inverse(fact.relation), fact.subject,
                       fact.source)
    return g


def _function_facts(g: FactGraph, e):
    for part in ast.and_parts(e.body.desc):
        if not isinstance(part, ast.Slot):
            continue
        if isinstance(part.modifier, ast.Only):
            continue  # closure constraints assert no filler
        lo, _ = ast.modifier_bounds(part.modifier)
        if lo < 1:
            continue  # nothing is asserted to exist
        for target in _filler_targets(g, part.filler):
            g.add_edge(e.ident, part.slot, target, e.ident)


def _filler_targets(g: FactGraph, filler: ast.Description) -> list[str]:
    """Node ids for the filler's top-level concepts and individuals.

    Nested structure below those names is deliberately dropped; queries
    recover it only as far as structural subsumption can prove it.
    """
    out = []
    for part in ast.and_parts(filler):
        if isinstance(part, ast.Atom) and part.name not in ("Anything",
                                                            "Nothing"):
            out.append(g.add_node(part.name, part))
        elif isinstance(part, ast.Enum):
            for member in part.members:
                out.append(g.add_node(member, ast.Enum((member,))))
    return out


def _quality_facts(g: FactGraph, e):
    subject = _subject_node(g, e.body.subject)
    if subject is None:
        return
    instance = g.add_node(f"{e.body.quality}@{subject}",
                          ast.Atom(e.body.quality))
    g.add_edge(instance, "inheres_in", subject, e.ident)
    g.add_region(instance, e.body.region, e.ident)
    if e.body.observer is not None:
        for target in _filler_targets(g, e.body.observer):
            g.add_edge(instance, "observed_by", target, e.ident)


def _subject_node(g: FactGraph, subject: ast.Description) -> str | None:
    if isinstance(subject, ast.Atom):
        return g.add_node(subject.name, subject)
    if isinstance(subject, ast.Enum) and len(subject.members) == 1:
        member = subject.members[0]
        return g.add_node(member, ast.Enum((member,)))
    return None


# ---------------------------------------------------------------------------
# Evaluation.


@dataclass
class QueryResult:
    sure: list[str]
    tentative: list[str]
    diagnostics: list[Diagnostic] = field(default_factory=list)


def run_query(model, text: str) -> QueryResult:
    """Parse and evaluate a query against the model's fact graph.

    Parse failures in the query text raise, like `parse_description`.
    """
    return eval_query(model, parse_description(text))


def eval_query(model, desc: ast.Description,
               graph: FactGraph | None = None) -> QueryResult:
    g = graph if graph is not None else extract_facts(model)
    diags: list[Diagnostic] = []
    sure, maybe = _eval(g, desc, model.context(), diags)
    return QueryResult(sorted(sure), sorted(maybe - sure), diags)


def _eval(g, d, ctx, diags):
    """Evaluate to (sure, maybe) node-id sets."""
    if isinstance(d, ast.And):
        s1, m1 = _eval(g, d.left, ctx, diags)
        s2, m2 = _eval(g, d.right, ctx, diags)
        sure = s1 & s2
        return sure, ((s1 | m1) & (s2 | m2)) - sure
    if isinstance(d, ast.Or):
        s1, m1 = _eval(g, d.left, ctx, diags)
        s2, m2 = _eval(g, d.right, ctx, diags)
        sure = s1 | s2
        return sure, (m1 | m2) - sure
    if isinstance(d, ast.Diff):
        s1, m1 = _eval(g, d.left, ctx, diags)
        s2, m2 = _eval(g, d.right, ctx, diags)
        sure = s1 - (s2 | m2)
        return sure, (s1 | m1) - s2 - sure
    if isinstance(d, ast.Slot):
        return _eval_slot(g, d, ctx, diags)
    if isinstance(d, ast.Proj):
        return _eval_proj(g, d, ctx, diags)
    if isinstance(d, (ast.Atom, ast.Enum)):
        return _match_nodes(g, d, ctx)
    return set(), set()  # regions and variables name no nodes directly


def _match_nodes(g, d, ctx):
    sure, maybe = set(), set()
    for node in g.nodes.values():
        if isinstance(d, ast.Atom) and node.ident == d.name:
            sure.add(node.ident)
            continue
        if isinstance(d, ast.Enum) and node.ident in d.members:
            sure.add(node.ident)
            continue
        v = subsumes(node.type_desc, d, ctx)
        if is_proved(v):
            sure.add(node.ident)
        elif isinstance(v, Unknown):
            maybe.add(node.ident)
    return sure, maybe


def _unknown_relation(diags, slot):
    diags.append(Diagnostic(ERROR, E_QUERY, None,
                            f"unknown relation {slot!r} in query"))


def _query_bounds(mod: ast.CardModifier):
    # A bare <s: D> in a query reads existentially over recorded facts;
    # explicit count modifiers are honored as written.
    if isinstance(mod, ast.ExactlyOne):
        return 1, None
    return ast.modifier_bounds(mod)


def _eval_slot(g, d, ctx, diags):
    if d.slot == "has_value_in":
        return _eval_region_slot(g, d, ctx)
    if d.slot not in g.relations:
        _unknown_relation(diags, d.slot)
        return set(), set()
    f_sure, f_maybe = _eval(g, d.filler, ctx, diags)
    sure, maybe = set(), set()
    for subject, targets in g.edges.get(d.slot, {}).items():
        n_sure = sum(t in f_sure for t in targets)
        n_poss = sum(t in f_sure or t in f_maybe for t in targets)
        if isinstance(d.modifier, ast.Only):
            # Closure over the recorded facts of this subject.
            if n_sure == len(targets):
                sure.add(subject)
            elif n_poss == len(targets):
                maybe.add(subject)
            continue
        lo, hi = _query_bounds(d.modifier)
        if n_sure >= lo and (hi is None or n_poss <= hi):
            sure.add(subject)
        elif n_poss >= lo and (hi is None or n_sure <= hi):
            maybe.add(subject)
    return sure, maybe


def _query_region(filler: ast.Description) -> ast.RegionExpr | None:
    if isinstance(filler, ast.Region):
        return filler.expr
    if isinstance(filler, ast.Atom):
        return ast.Named(filler.name)
    return None


def _eval_region_slot(g, d, ctx):
    """has_value_in is matched strictly: the declared region must equal
    the queried one. Instances whose region provably sits inside the
    queried one are only tentative answers."""
    region = _query_region(d.filler)
    if region is None:
        return set(), set()
    sure, maybe = set(), set()
    for instance, declared in g.regions.items():
        if any(r == region for r in declared):
            sure.add(instance)
        elif any(region_subset(r, region, ctx.region_edges)
                 for r in declared):
            maybe.add(instance)
    return sure, maybe


def _eval_proj(g, d, ctx, diags):
    if d.slot not in g.relations:
        _unknown_relation(diags, d.slot)
        return set(), set()
    base_sure, base_maybe = _eval(g, d.base, ctx, diags)
    sure, maybe = set(), set()
    for subject, targets in g.edges.get(d.slot, {}).items():
        if subject in base_sure:
            sure.update(targets)
        elif subject in base_maybe:
            maybe.update(targets)
    return sure, maybe - sure
