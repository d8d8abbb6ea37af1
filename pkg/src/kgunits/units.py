"""Partitioning a data graph into statement units.

Every data-layer quad ends up in exactly one statement unit: identification
triples are swept into per-resource identification units, schema matches
claim their instantiations, and whatever remains becomes a singleton
fallback unit. Quads already homed in a declared unit data graph are
adopted unchanged, which makes partitioning idempotent and lets organized
datasets round-trip through the pipeline stages.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from . import vocab
from .errors import (
    AmbiguousResourceKindError,
    ClassificationError,
    OverlapConflictError,
    UnknownResourceError,
)
from .schemas import (
    QUALITATIVE,
    QUANTITATIVE,
    StatementSchema,
    TripleTemplate,
    Var,
)
from .store import (
    Iri,
    Literal,
    Quad,
    QuadDataset,
    ResourceKind,
    Term,
    VocabularyCatalog,
    classify_resource,
    local_name,
)

log = logging.getLogger(__name__)

ARGUMENT = "argument"
ADJUNCT = "adjunct"

_KIND_TO_IDENTIFICATION_CLASS = {
    "type": vocab.NAMED_INDIVIDUAL_IDENTIFICATION_UNIT,
    "someInstanceOf": vocab.SOME_INSTANCE_IDENTIFICATION_UNIT,
    "everyInstanceOf": vocab.EVERY_INSTANCE_IDENTIFICATION_UNIT,
}

_CATEGORY_BY_KIND = {
    ResourceKind.NAMED_INDIVIDUAL: vocab.ASSERTIONAL_STATEMENT_UNIT,
    ResourceKind.SEMANTIC_UNIT_RESOURCE: vocab.ASSERTIONAL_STATEMENT_UNIT,
    ResourceKind.SOME_INSTANCE: vocab.CONTINGENT_STATEMENT_UNIT,
    ResourceKind.EVERY_INSTANCE: vocab.UNIVERSAL_STATEMENT_UNIT,
}


@dataclass(frozen=True)
class UnitObject:
    term: Term
    role: str
    var: str | None = None


@dataclass(frozen=True)
class StatementUnit:
    upri: str
    classes: frozenset[str]
    subject: str
    objects: tuple[UnitObject, ...]
    quads: tuple[Quad, ...]
    schema_class: str | None = None
    anchor_predicate: str | None = None
    bindings: tuple[tuple[str, Term], ...] = ()
    adopted: bool = False

    @property
    def is_identification(self) -> bool:
        return bool(self.classes & vocab.IDENTIFICATION_UNIT_CLASSES)

    @property
    def identification_kind(self) -> str | None:
        for cls in (
            vocab.NAMED_INDIVIDUAL_IDENTIFICATION_UNIT,
            vocab.SOME_INSTANCE_IDENTIFICATION_UNIT,
            vocab.EVERY_INSTANCE_IDENTIFICATION_UNIT,
        ):
            if cls in self.classes:
                return cls
        return None

    def argument_terms(self) -> tuple[Term, ...]:
        return tuple(o.term for o in self.objects if o.role == ARGUMENT)

    def argument_iris(self) -> tuple[str, ...]:
        return tuple(
            o.term.value
            for o in self.objects
            if o.role == ARGUMENT and isinstance(o.term, Iri)
        )

    def binding(self, var: str) -> Term | None:
        for name, term in self.bindings:
            if name == var:
                return term
        return None


@dataclass(frozen=True)
class Classification:
    relation: str
    subject_category: str
    markers: frozenset[str]


@dataclass(frozen=True)
class PartitionResult:
    units: tuple[StatementUnit, ...]
    triple_map: dict
    fallback_units: tuple[StatementUnit, ...]
    dataset: QuadDataset
    warnings: tuple[str, ...] = ()

    def by_upri(self, upri: str) -> StatementUnit:
        for u in self.units:
            if u.upri == upri:
                return u
        raise KeyError(upri)

    def identification_units(self) -> tuple[StatementUnit, ...]:
        return tuple(u for u in self.units if u.is_identification)

    def identification_for(self, resource: str) -> StatementUnit | None:
        for u in self.units:
            if u.is_identification and u.subject == resource:
                return u
        return None


# ---------------------------------------------------------------------------
# Schema matching
# ---------------------------------------------------------------------------


def _builtin_schemas(
    schemas: list[StatementSchema], catalog: VocabularyCatalog
) -> list[StatementSchema]:
    """Schemas every partition understands without declaration: frame-of-
    reference boundaries (is-about) and collection membership (child)."""
    anchored = {s.anchor_predicate for s in schemas}
    extra = []
    if catalog.is_about not in anchored:
        extra.append(
            StatementSchema(
                unit_class=vocab.IS_ABOUT_STATEMENT_UNIT,
                anchor_predicate=catalog.is_about,
                templates=(TripleTemplate(Var("s"), catalog.is_about, Var("o")),),
                subject_var="s",
                argument_vars=("o",),
                label_template="{s} is about {o}",
            )
        )
    if catalog.child not in anchored:
        extra.append(
            StatementSchema(
                unit_class=vocab.MEMBERSHIP_STATEMENT_UNIT,
                anchor_predicate=catalog.child,
                templates=(TripleTemplate(Var("s"), catalog.child, Var("o")),),
                subject_var="s",
                argument_vars=("o",),
                label_template="{s} has member {o}",
            )
        )
    return schemas + extra


def _unify(binding: dict[str, Term], var: str, term: Term) -> dict[str, Term] | None:
    bound = binding.get(var)
    if bound is None:
        out = dict(binding)
        out[var] = term
        return out
    return binding if bound == term else None


def _match_template(
    schema: StatementSchema,
    template: TripleTemplate,
    quad: Quad,
    binding: dict[str, Term],
) -> dict[str, Term] | None:
    if template.predicate != quad.predicate:
        return None
    if isinstance(template.subject, Var):
        binding = _unify(binding, template.subject.name, Iri(quad.subject))
        if binding is None:
            return None
    elif template.subject != quad.subject:
        return None
    obj = template.object
    if isinstance(obj, Var):
        term = quad.object
        if obj.name in schema.numeric_vars:
            if not (
                isinstance(term, Literal) and term.datatype in vocab.NUMERIC_DATATYPES
            ):
                return None
        elif obj.name in schema.argument_vars and schema.relation == QUALITATIVE:
            # Arguments of a qualitative statement are always resources.
            if not isinstance(term, Iri):
                return None
        return _unify(binding, obj.name, term)
    return binding if obj == quad.object else None


@dataclass
class _Candidate:
    schema: StatementSchema
    binding: dict[str, Term]
    claimed: dict[tuple, Quad]
    templates_matched: int
    unbound_adjuncts: int

    @property
    def rank(self) -> tuple:
        return (-self.templates_matched, self.unbound_adjuncts, self.schema.unit_class)

    @property
    def order_key(self) -> tuple:
        return self.rank + (sorted(self.claimed),)


def _enumerate_candidates(
    schema: StatementSchema, quads_by_pred: dict[str, list[Quad]]
) -> list[_Candidate]:
    anchor = schema.anchor_template
    required = list(schema.required_templates())
    if anchor not in required:
        required.insert(0, anchor)
    candidates: list[_Candidate] = []
    for anchor_quad in quads_by_pred.get(anchor.predicate, ()):
        binding = _match_template(schema, anchor, anchor_quad, {})
        if binding is None:
            continue
        # One schema instantiation never spans input graphs: the graph is
        # the locality boundary that keeps co-occurring n-ary statements
        # (e.g. two measurements of one quality) apart.
        locality = anchor_quad.graph
        partials = [(binding, {anchor_quad.key(): anchor_quad})]
        dead = False
        for template in required:
            if template is anchor:
                continue
            extended = []
            for b, claimed in partials:
                for quad in quads_by_pred.get(template.predicate, ()):
                    if quad.graph != locality:
                        continue
                    nb = _match_template(schema, template, quad, b)
                    if nb is not None:
                        nc = dict(claimed)
                        nc[quad.key()] = quad
                        extended.append((nb, nc))
            if not extended:
                dead = True
                break
            partials = extended
        if dead:
            continue
        for b, claimed in partials:
            matched = len(required)
            unbound = 0
            for template in schema.adjunct_templates():
                hits = 0
                for quad in quads_by_pred.get(template.predicate, ()):
                    if quad.graph != locality:
                        continue
                    nb = _match_template(schema, template, quad, b)
                    if nb is not None:
                        claimed = dict(claimed)
                        claimed[quad.key()] = quad
                        hits += 1
                        # First match (in canonical quad order) binds the
                        # adjunct variables for label rendering.
                        if hits == 1:
                            b = nb
                if hits:
                    matched += 1
                else:
                    unbound += 1
            candidates.append(
                _Candidate(
                    schema=schema,
                    binding=b,
                    claimed=claimed,
                    templates_matched=matched,
                    unbound_adjuncts=unbound,
                )
            )
    # Deduplicate candidates that claim exactly the same quads for the same
    # schema (possible with constant-only templates).
    unique: dict[tuple, _Candidate] = {}
    for cand in candidates:
        key = (schema.unit_class, tuple(sorted(cand.claimed)))
        unique.setdefault(key, cand)
    return list(unique.values())


def _resolve_overlaps(candidates: list[_Candidate]) -> list[_Candidate]:
    claimed_by: dict[tuple, _Candidate] = {}
    winners: list[_Candidate] = []
    for cand in sorted(candidates, key=lambda c: c.order_key):
        conflicts = {id(claimed_by[k]): claimed_by[k] for k in cand.claimed if k in claimed_by}
        if not conflicts:
            for k in cand.claimed:
                claimed_by[k] = cand
            winners.append(cand)
            continue
        for other in conflicts.values():
            if other.rank == cand.rank:
                shared = sorted(set(cand.claimed) & set(other.claimed))[0]
                raise OverlapConflictError(
                    f"triple {shared} claimed by two equally ranked matches of "
                    f"{other.schema.unit_class} and {cand.schema.unit_class}"
                )
        # Every conflicting claim is strictly better ranked; drop this match.
    return winners


# ---------------------------------------------------------------------------
# Partition
# ---------------------------------------------------------------------------


def partition(
    dataset: QuadDataset,
    schemas: list[StatementSchema],
    catalog: VocabularyCatalog,
    minter=None,
) -> PartitionResult:
    """Map every data-layer quad to exactly one statement unit.

    Newly formed units receive freshly minted identifiers and their quads
    are re-homed into the graph named by that identifier; units already
    declared in the input are adopted as they stand. Semantic-units-layer
    quads are never partitioned.
    """
    if minter is None:
        from .fdo import UpriMinter

        minter = UpriMinter(vocab.DEFAULT_MINT_NS)

    data, units_layer = dataset.split_layers(catalog)
    unit_graphs = dataset.unit_graphs(catalog)
    warnings: list[str] = []

    adopted_quads = [q for q in data if q.graph in unit_graphs]
    fresh_quads = [q for q in data if q.graph not in unit_graphs]

    category_of = _category_index(dataset, catalog)
    adopted_units = _adopt_units(adopted_quads, units_layer, schemas, catalog)
    adopted_units = [
        _enrich_adopted(u, category_of, catalog) for u in adopted_units
    ]

    id_groups, remaining = _identification_pass(fresh_quads, catalog)

    all_schemas = _builtin_schemas(list(schemas), catalog)
    quads_by_pred: dict[str, list[Quad]] = {}
    for q in remaining:
        quads_by_pred.setdefault(q.predicate, []).append(q)
    for quads in quads_by_pred.values():
        quads.sort(key=lambda q: q.key())

    candidates: list[_Candidate] = []
    for schema in sorted(all_schemas, key=lambda s: s.unit_class):
        candidates.extend(_enumerate_candidates(schema, quads_by_pred))
    winners = _resolve_overlaps(candidates)

    claimed_keys = set()
    for cand in winners:
        claimed_keys.update(cand.claimed)
    leftovers = [q for q in remaining if q.key() not in claimed_keys]

    # Assemble new units in a deterministic order, then mint.
    pending: list[dict] = []
    for (resource, kind), quads in sorted(id_groups.items()):
        pending.append(_pending_identification(resource, kind, quads, catalog))
    for cand in sorted(winners, key=lambda c: c.order_key):
        pending.append(_pending_schema_unit(cand))
    for quad in sorted(leftovers, key=lambda q: q.key()):
        pending.append(_pending_fallback(quad))

    units: list[StatementUnit] = list(adopted_units)
    fallback_units: list[StatementUnit] = []
    triple_map: dict[tuple, str] = {}
    for u in adopted_units:
        for q in u.quads:
            triple_map[q.key()] = u.upri

    for draft in pending:
        upri = minter()
        quads = tuple(q.rehome(upri) for q in draft["quads"])
        classes = set(draft["classes"])
        category = category_of(draft["subject"])
        if category is None and draft.get("needs_category"):
            warnings.append(
                f"subject {draft['subject']} of unit {upri} has no identification unit"
            )
        if category:
            classes.add(category)
        unit = StatementUnit(
            upri=upri,
            classes=frozenset(classes),
            subject=draft["subject"],
            objects=draft["objects"],
            quads=quads,
            schema_class=draft.get("schema_class"),
            anchor_predicate=draft.get("anchor_predicate"),
            bindings=draft.get("bindings", ()),
        )
        units.append(unit)
        if vocab.UNTYPED_STATEMENT_UNIT in unit.classes:
            fallback_units.append(unit)
        for q in draft["quads"]:
            triple_map[q.key()] = upri

    units = _derive_disagreements(units)

    organized = QuadDataset(
        [q for u in units for q in u.quads]
        + list(units_layer)
        + list(_units_layer_quads(units, catalog))
    )
    return PartitionResult(
        units=tuple(units),
        triple_map=triple_map,
        fallback_units=tuple(fallback_units),
        dataset=organized,
        warnings=tuple(warnings),
    )


def _identification_pass(
    quads: list[Quad], catalog: VocabularyCatalog
) -> tuple[dict, list[Quad]]:
    """Sweep class-affiliation, label, and cardinality triples into one
    identification unit per (resource, kind)."""
    kind_of: dict[str, str] = {}
    kind_preds = {
        catalog.type: "type",
        catalog.some_instance_of: "someInstanceOf",
        catalog.every_instance_of: "everyInstanceOf",
    }
    for q in quads:
        kind = kind_preds.get(q.predicate)
        if kind and isinstance(q.object, Iri):
            existing = kind_of.get(q.subject)
            if existing is not None and existing != kind:
                raise AmbiguousResourceKindError(
                    f"{q.subject} has both {existing} and {kind} class affiliations"
                )
            kind_of[q.subject] = kind

    groups: dict[tuple[str, str], list[Quad]] = {}
    remaining: list[Quad] = []
    for q in quads:
        kind = kind_of.get(q.subject)
        if kind and (
            kind_preds.get(q.predicate)
            or q.predicate in (catalog.label, catalog.qualified_cardinality)
        ):
            groups.setdefault((q.subject, kind), []).append(q)
        else:
            remaining.append(q)
    return groups, remaining


def _pending_identification(
    resource: str, kind: str, quads: list[Quad], catalog: VocabularyCatalog
) -> dict:
    unit_class = _KIND_TO_IDENTIFICATION_CLASS[kind]
    classes = {unit_class, vocab.QUALITATIVE_STATEMENT_UNIT}
    objects: list[UnitObject] = []
    bindings: list[tuple[str, Term]] = [("s", Iri(resource))]
    for q in sorted(quads, key=lambda q: q.key()):
        if q.predicate in (catalog.type, catalog.some_instance_of, catalog.every_instance_of):
            objects.append(UnitObject(q.object, ARGUMENT, "c"))
            if not any(n == "c" for n, _ in bindings):
                bindings.append(("c", q.object))
        elif q.predicate == catalog.label:
            objects.append(UnitObject(q.object, ADJUNCT, "l"))
            if not any(n == "l" for n, _ in bindings):
                bindings.append(("l", q.object))
        elif q.predicate == catalog.qualified_cardinality:
            objects.append(UnitObject(q.object, ADJUNCT, "n"))
            bindings.append(("n", q.object))
            classes.add(vocab.CARDINALITY_RESTRICTION_UNIT)
    return {
        "subject": resource,
        "classes": classes,
        "objects": tuple(objects),
        "quads": sorted(quads, key=lambda q: q.key()),
        "schema_class": unit_class,
        "anchor_predicate": {
            "type": catalog.type,
            "someInstanceOf": catalog.some_instance_of,
            "everyInstanceOf": catalog.every_instance_of,
        }[kind],
        "bindings": tuple(bindings),
    }


def _pending_schema_unit(cand: _Candidate) -> dict:
    schema = cand.schema
    subject_term = cand.binding.get(schema.subject_var)
    subject = subject_term.value if isinstance(subject_term, Iri) else str(subject_term)
    objects: list[UnitObject] = []
    for var in schema.argument_vars:
        term = cand.binding.get(var)
        if term is not None:
            objects.append(UnitObject(term, ARGUMENT, var))
    for var in schema.adjunct_vars:
        term = cand.binding.get(var)
        if term is not None:
            objects.append(UnitObject(term, ADJUNCT, var))
    classes = {schema.unit_class}
    classes.add(
        vocab.QUANTITATIVE_STATEMENT_UNIT
        if schema.relation == QUANTITATIVE
        else vocab.QUALITATIVE_STATEMENT_UNIT
    )
    return {
        "subject": subject,
        "classes": classes,
        "objects": tuple(objects),
        "quads": sorted(cand.claimed.values(), key=lambda q: q.key()),
        "schema_class": schema.unit_class,
        "anchor_predicate": schema.anchor_predicate,
        "bindings": tuple(sorted(cand.binding.items())),
        "needs_category": True,
    }


def _pending_fallback(quad: Quad) -> dict:
    relation = (
        vocab.QUANTITATIVE_STATEMENT_UNIT
        if isinstance(quad.object, Literal)
        and quad.object.datatype in vocab.NUMERIC_DATATYPES
        else vocab.QUALITATIVE_STATEMENT_UNIT
    )
    return {
        "subject": quad.subject,
        "classes": {vocab.UNTYPED_STATEMENT_UNIT, relation},
        "objects": (UnitObject(quad.object, ARGUMENT, None),),
        "quads": [quad],
        "schema_class": None,
        "anchor_predicate": quad.predicate,
    }


def _category_index(dataset: QuadDataset, catalog: VocabularyCatalog):
    """One-pass subject-category lookup; equivalent to classifying every
    subject individually but linear in the dataset size."""
    data, _ = dataset.split_layers(catalog)
    unit_resources = dataset.unit_resources(catalog)
    tags: dict[str, str] = {}
    mixed: set[str] = set()
    kind_preds = {
        catalog.type: vocab.ASSERTIONAL_STATEMENT_UNIT,
        catalog.some_instance_of: vocab.CONTINGENT_STATEMENT_UNIT,
        catalog.every_instance_of: vocab.UNIVERSAL_STATEMENT_UNIT,
    }
    for q in data:
        category = kind_preds.get(q.predicate)
        if category is None or not isinstance(q.object, Iri):
            continue
        previous = tags.get(q.subject)
        if previous is not None and previous != category:
            mixed.add(q.subject)
        tags[q.subject] = category

    def lookup(subject: str) -> str | None:
        if subject in unit_resources:
            return vocab.ASSERTIONAL_STATEMENT_UNIT
        if subject in mixed:
            return None
        return tags.get(subject)

    return lookup


def _enrich_adopted(
    unit: StatementUnit, category_of, catalog: VocabularyCatalog
) -> StatementUnit:
    """Fill in derivable classes a hand-declared unit may have omitted."""
    classes = set(unit.classes)
    if not classes & vocab.SUBJECT_CATEGORY_CLASSES:
        category = category_of(unit.subject)
        if category:
            classes.add(category)
    if (
        vocab.QUALITATIVE_STATEMENT_UNIT not in classes
        and vocab.QUANTITATIVE_STATEMENT_UNIT not in classes
    ):
        numeric = any(
            o.role == ARGUMENT
            and isinstance(o.term, Literal)
            and o.term.datatype in vocab.NUMERIC_DATATYPES
            for o in unit.objects
        )
        classes.add(
            vocab.QUANTITATIVE_STATEMENT_UNIT if numeric else vocab.QUALITATIVE_STATEMENT_UNIT
        )
    if any(
        q.predicate == catalog.qualified_cardinality for q in unit.quads
    ) and unit.is_identification:
        classes.add(vocab.CARDINALITY_RESTRICTION_UNIT)
    if classes == unit.classes:
        return unit
    return replace(unit, classes=frozenset(classes))


def _derive_disagreements(units: list[StatementUnit]) -> list[StatementUnit]:
    """A statement unit whose data graph types another unit as a negation
    unit is a disagreement unit."""
    unit_upris = {u.upri for u in units}
    out = []
    for u in units:
        targets_negation = any(
            q.predicate == vocab.RDF_TYPE
            and isinstance(q.object, Iri)
            and q.object.value == vocab.NEGATION_UNIT
            and q.subject in unit_upris
            and q.subject != u.upri
            for q in u.quads
        )
        if targets_negation and vocab.DISAGREEMENT_UNIT not in u.classes:
            u = replace(u, classes=u.classes | {vocab.DISAGREEMENT_UNIT})
        out.append(u)
    return out


def _units_layer_quads(units: list[StatementUnit], catalog: VocabularyCatalog):
    graph = vocab.UNITS_GRAPH
    for u in units:
        yield Quad(u.upri, catalog.has_semantic_unit_subject, Iri(u.subject), graph)
        for cls in sorted(u.classes):
            yield Quad(u.upri, catalog.type, Iri(cls), graph)


# ---------------------------------------------------------------------------
# Adoption of pre-declared units
# ---------------------------------------------------------------------------


def _adopt_units(
    adopted_quads: list[Quad],
    units_layer: tuple[Quad, ...],
    schemas: list[StatementSchema],
    catalog: VocabularyCatalog,
) -> list[StatementUnit]:
    by_graph: dict[str, list[Quad]] = {}
    for q in adopted_quads:
        by_graph.setdefault(q.graph, []).append(q)

    subjects: dict[str, str] = {}
    classes: dict[str, set[str]] = {}
    for q in units_layer:
        if q.predicate == catalog.has_semantic_unit_subject and isinstance(q.object, Iri):
            subjects.setdefault(q.subject, q.object.value)
        elif q.predicate == catalog.type and isinstance(q.object, Iri):
            classes.setdefault(q.subject, set()).add(q.object.value)

    by_class: dict[str, StatementSchema] = {s.unit_class: s for s in schemas}
    out: list[StatementUnit] = []
    for upri in sorted(by_graph):
        quads = sorted(by_graph[upri], key=lambda q: q.key())
        declared = classes.get(upri, set())
        subject = subjects.get(upri) or quads[0].subject
        objects: tuple[UnitObject, ...]
        bindings: tuple[tuple[str, Term], ...] = ()
        schema_class = None
        anchor = None
        id_class = declared & vocab.IDENTIFICATION_UNIT_CLASSES
        schema = next((by_class[c] for c in sorted(declared) if c in by_class), None)
        if id_class:
            kind_class = sorted(id_class)[0]
            schema_class = kind_class
            rebuilt = _rebuild_identification(subject, quads, kind_class, catalog)
            objects, bindings, anchor = rebuilt
        elif schema is not None:
            schema_class = schema.unit_class
            anchor = schema.anchor_predicate
            objects, bindings = _rebind_schema(schema, quads)
        else:
            anchor = quads[0].predicate
            objects = tuple(
                UnitObject(q.object, ARGUMENT, None) for q in quads if q.subject == subject
            )
        out.append(
            StatementUnit(
                upri=upri,
                classes=frozenset(declared) if declared else frozenset({vocab.UNTYPED_STATEMENT_UNIT}),
                subject=subject,
                objects=objects,
                quads=tuple(quads),
                schema_class=schema_class,
                anchor_predicate=anchor,
                bindings=bindings,
                adopted=True,
            )
        )
    return out


def _rebuild_identification(
    subject: str, quads: list[Quad], kind_class: str, catalog: VocabularyCatalog
):
    objects: list[UnitObject] = []
    bindings: list[tuple[str, Term]] = [("s", Iri(subject))]
    anchor = catalog.type
    for q in quads:
        if q.predicate in (catalog.type, catalog.some_instance_of, catalog.every_instance_of):
            objects.append(UnitObject(q.object, ARGUMENT, "c"))
            anchor = q.predicate
            if not any(n == "c" for n, _ in bindings):
                bindings.append(("c", q.object))
        elif q.predicate == catalog.label:
            objects.append(UnitObject(q.object, ADJUNCT, "l"))
            if not any(n == "l" for n, _ in bindings):
                bindings.append(("l", q.object))
        elif q.predicate == catalog.qualified_cardinality:
            objects.append(UnitObject(q.object, ADJUNCT, "n"))
            bindings.append(("n", q.object))
    return tuple(objects), tuple(bindings), anchor


def _rebind_schema(schema: StatementSchema, quads: list[Quad]):
    quads_by_pred: dict[str, list[Quad]] = {}
    for q in quads:
        quads_by_pred.setdefault(q.predicate, []).append(q)
    cands = _enumerate_candidates(schema, quads_by_pred)
    if not cands:
        subject = quads[0].subject
        return (
            tuple(UnitObject(q.object, ARGUMENT, None) for q in quads if q.subject == subject),
            (),
        )
    best = sorted(cands, key=lambda c: c.order_key)[0]
    objects: list[UnitObject] = []
    for var in schema.argument_vars:
        term = best.binding.get(var)
        if term is not None:
            objects.append(UnitObject(term, ARGUMENT, var))
    for var in schema.adjunct_vars:
        term = best.binding.get(var)
        if term is not None:
            objects.append(UnitObject(term, ADJUNCT, var))
    return tuple(objects), tuple(sorted(best.binding.items()))


# ---------------------------------------------------------------------------
# Classification and labels
# ---------------------------------------------------------------------------


def classify_unit(
    unit: StatementUnit, dataset: QuadDataset, catalog: VocabularyCatalog
) -> Classification:
    """Dual-axis classification of one statement unit."""
    if vocab.QUANTITATIVE_STATEMENT_UNIT in unit.classes:
        relation = QUANTITATIVE
    else:
        relation = QUALITATIVE
    try:
        kind = classify_resource(dataset, unit.subject, catalog)
    except (UnknownResourceError, AmbiguousResourceKindError) as exc:
        raise ClassificationError(
            f"subject kind of {unit.subject} unresolvable: {exc}"
        ) from exc
    category = _CATEGORY_BY_KIND.get(kind)
    if category is None:
        raise ClassificationError(
            f"subject {unit.subject} of {unit.upri} is a {kind.value}; "
            f"statement units need an instance-like subject"
        )
    markers = frozenset(unit.classes & vocab.MARKER_CLASSES)
    return Classification(
        relation=relation,
        subject_category={
            vocab.ASSERTIONAL_STATEMENT_UNIT: "assertional",
            vocab.CONTINGENT_STATEMENT_UNIT: "contingent",
            vocab.UNIVERSAL_STATEMENT_UNIT: "universal",
        }[category],
        markers=markers,
    )


def label_index(dataset: QuadDataset, catalog: VocabularyCatalog) -> dict[str, str]:
    """First (in canonical order) label literal per resource."""
    out: dict[str, str] = {}
    for q in dataset:
        if q.predicate == catalog.label and isinstance(q.object, Literal):
            out.setdefault(q.subject, q.object.lexical)
    return out


_BUILTIN_LABELS = {
    vocab.NAMED_INDIVIDUAL_IDENTIFICATION_UNIT: "{s} is an instance of {c}",
    vocab.SOME_INSTANCE_IDENTIFICATION_UNIT: "{s} is some instance of {c}",
    vocab.EVERY_INSTANCE_IDENTIFICATION_UNIT: "{s} is every instance of {c}",
}


def render_dynamic_label(
    unit: StatementUnit,
    dataset: QuadDataset,
    catalog: VocabularyCatalog,
    schemas: list[StatementSchema] | None = None,
) -> str:
    """Substitute resource labels into the unit's label template.

    Resources without a label fall back to their IRI local name (with a
    logged warning); literals render as their lexical form.
    """
    from .errors import LabelError

    template = ""
    if unit.schema_class:
        for s in _builtin_schemas(list(schemas or []), catalog):
            if s.unit_class == unit.schema_class:
                template = s.label_template
                break
    if not template:
        template = _BUILTIN_LABELS.get(unit.schema_class or "", "")
    if not template:
        parts = ["{s}", local_name(unit.anchor_predicate or "relates to")]
        bound = [o for o in unit.objects if o.var]
        if bound:
            parts.extend("{%s}" % o.var for o in bound)
        elif unit.objects:
            parts.append("{o}")
        template = " ".join(parts)

    labels = label_index(dataset, catalog)
    bindings = dict(unit.bindings)
    bindings.setdefault("s", Iri(unit.subject))
    if unit.objects and "o" not in bindings:
        bindings["o"] = unit.objects[0].term

    def substitute(name: str) -> str:
        if name not in bindings:
            raise LabelError(
                f"label template for {unit.upri} references unbound placeholder {{{name}}}"
            )
        term = bindings[name]
        if isinstance(term, Literal):
            return term.lexical
        label = labels.get(term.value)
        if label is None:
            log.warning("no label for %s; using local name", term.value)
            return local_name(term.value)
        return label

    out = []
    i = 0
    while i < len(template):
        ch = template[i]
        if ch == "{":
            j = template.index("}", i)
            name = template[i + 1 : j].lstrip("?")
            out.append(substitute(name))
            i = j + 1
        else:
            out.append(ch)
            i += 1
    return "".join(out)
