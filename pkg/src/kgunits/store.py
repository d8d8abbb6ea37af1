"""Blank-node-free quad model and the two-layer view of a knowledge graph.

A dataset is an immutable snapshot of quads. Every quad carries an explicit
graph name; the graph name of a statement unit's data graph is the unit's
own identifier, so referring to the graph refers to the unit. The split
between the data graph layer and the semantic-units graph layer is derived
on demand rather than stored, so there is no second source of truth to keep
in sync.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Union

from . import vocab
from .errors import (
    AmbiguousResourceKindError,
    CatalogError,
    UnknownResourceError,
)

_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:[^\x00-\x20<>\"{}|^`\\]*$")


def is_absolute_iri(value: str) -> bool:
    """True for syntactically valid absolute IRIs (scheme + body, no spaces)."""
    return bool(value) and _IRI_RE.match(value) is not None


def local_name(iri: str) -> str:
    """Fragment or last path segment of an IRI, for fallback display."""
    for sep in ("#", "/", ":"):
        head, _, tail = iri.rpartition(sep)
        if head and tail:
            return tail
    return iri


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str = vocab.XSD_STRING
    language: str | None = None

    def __post_init__(self):
        if self.language is not None:
            object.__setattr__(self, "datatype", vocab.RDF_LANGSTRING)

    def __str__(self) -> str:
        return self.lexical


Term = Union[Iri, Literal]


def term_key(term: Term) -> tuple:
    """Total order over terms: IRIs before literals, then lexicographic."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    return (1, term.lexical, term.datatype, term.language or "")


@dataclass(frozen=True)
class Quad:
    subject: str
    predicate: str
    object: Term
    graph: str

    def key(self) -> tuple:
        return (self.graph, self.subject, self.predicate) + term_key(self.object)

    def rehome(self, graph: str) -> "Quad":
        return Quad(self.subject, self.predicate, self.object, graph)


class QuadDataset:
    """Immutable, duplicate-free collection of quads.

    Insertion order is irrelevant: iteration and serialization follow the
    canonical (graph, subject, predicate, object) order.
    """

    __slots__ = ("_quads", "_index")

    def __init__(self, quads: Iterable[Quad] = ()):
        seen: dict[tuple, Quad] = {}
        for quad in quads:
            seen.setdefault(quad.key(), quad)
        self._quads = tuple(seen[k] for k in sorted(seen))
        self._index = frozenset(seen)

    @property
    def quads(self) -> tuple[Quad, ...]:
        return self._quads

    def __len__(self) -> int:
        return len(self._quads)

    def __iter__(self) -> Iterator[Quad]:
        return iter(self._quads)

    def __contains__(self, quad: Quad) -> bool:
        return quad.key() in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadDataset) and self._quads == other._quads

    def __hash__(self) -> int:
        return hash(self._quads)

    def merge(self, *extra: Iterable[Quad]) -> "QuadDataset":
        quads: list[Quad] = list(self._quads)
        for chunk in extra:
            quads.extend(chunk)
        return QuadDataset(quads)

    def graph(self, name: str) -> tuple[Quad, ...]:
        return tuple(q for q in self._quads if q.graph == name)

    def graph_names(self) -> tuple[str, ...]:
        return tuple(sorted({q.graph for q in self._quads}))

    def resources(self) -> frozenset[str]:
        """All IRIs occurring in subject, predicate, object, or graph position."""
        out: set[str] = set()
        for q in self._quads:
            out.add(q.subject)
            out.add(q.predicate)
            out.add(q.graph)
            if isinstance(q.object, Iri):
                out.add(q.object.value)
        return frozenset(out)

    # -- layer split -------------------------------------------------------

    def unit_graphs(self, catalog: "VocabularyCatalog") -> frozenset[str]:
        """Graph names declared as semantic-unit data graphs."""
        declared = set()
        for q in self._quads:
            if q.predicate in (
                catalog.has_semantic_unit_subject,
                catalog.has_associated_semantic_unit,
            ):
                declared.add(q.subject)
        return frozenset(declared)

    def unit_resources(self, catalog: "VocabularyCatalog") -> frozenset[str]:
        """Resources that stand for semantic units."""
        out: set[str] = set()
        for q in self._quads:
            if q.predicate == catalog.has_semantic_unit_subject:
                out.add(q.subject)
            elif q.predicate in (
                catalog.has_associated_semantic_unit,
                catalog.has_linked_semantic_unit,
                catalog.object_described_by_semantic_unit,
            ):
                out.add(q.subject)
                if isinstance(q.object, Iri):
                    out.add(q.object.value)
        return frozenset(out)

    def split_layers(
        self, catalog: "VocabularyCatalog"
    ) -> tuple[tuple[Quad, ...], tuple[Quad, ...]]:
        """Partition the quads into (data layer, semantic-units layer).

        A quad belongs to the semantic-units layer when its predicate is one
        of the structural properties, or when it mentions a semantic-unit
        resource outside any declared unit data graph. Quads inside a
        declared unit data graph always belong to the data layer, which is
        what lets data graphs talk about other units (statements about
        statements) without being swallowed by the organizational layer.
        """
        structural = catalog.structural_properties
        unit_graphs = self.unit_graphs(catalog)
        unit_resources = self.unit_resources(catalog)
        data: list[Quad] = []
        units: list[Quad] = []
        for q in self._quads:
            if q.predicate in structural:
                units.append(q)
            elif q.graph not in unit_graphs and (
                q.subject in unit_resources
                or (isinstance(q.object, Iri) and q.object.value in unit_resources)
            ):
                units.append(q)
            else:
                data.append(q)
        return tuple(data), tuple(units)

    def data_quads(self, catalog: "VocabularyCatalog") -> tuple[Quad, ...]:
        return self.split_layers(catalog)[0]

    def units_quads(self, catalog: "VocabularyCatalog") -> tuple[Quad, ...]:
        return self.split_layers(catalog)[1]


# ---------------------------------------------------------------------------
# Vocabulary catalog
# ---------------------------------------------------------------------------

_REQUIRED_TERMS = (
    "hasSemanticUnitSubject",
    "hasAssociatedSemanticUnit",
    "hasLinkedSemanticUnit",
    "objectDescribedBySemanticUnit",
    "someInstanceOf",
    "everyInstanceOf",
    "isAbout",
    "type",
    "label",
    "qualifiedCardinality",
    "index",
    "child",
)

_DEFAULT_TERMS: dict[str, str] = {
    "hasSemanticUnitSubject": vocab.HAS_SEMANTIC_UNIT_SUBJECT,
    "hasAssociatedSemanticUnit": vocab.HAS_ASSOCIATED_SEMANTIC_UNIT,
    "hasLinkedSemanticUnit": vocab.HAS_LINKED_SEMANTIC_UNIT,
    "objectDescribedBySemanticUnit": vocab.OBJECT_DESCRIBED_BY_SEMANTIC_UNIT,
    "someInstanceOf": vocab.SOME_INSTANCE_OF,
    "everyInstanceOf": vocab.EVERY_INSTANCE_OF,
    "isAbout": vocab.IS_ABOUT,
    "type": vocab.RDF_TYPE,
    "label": vocab.RDFS_LABEL,
    "qualifiedCardinality": vocab.QUALIFIED_CARDINALITY,
    "index": vocab.INDEX,
    "child": vocab.CHILD,
    "mentions": vocab.MENTIONS,
    "description": vocab.DESCRIPTION,
}


@dataclass(frozen=True)
class VocabularyCatalog:
    """Immutable key→IRI table plus the registered partial-order predicates."""

    terms: Mapping[str, str] = field(default_factory=lambda: dict(_DEFAULT_TERMS))
    partial_orders: tuple[str, ...] = ()
    prefixes: Mapping[str, str] = field(default_factory=lambda: dict(vocab.PREFIXES))

    def __post_init__(self):
        for key in _REQUIRED_TERMS:
            if key not in self.terms:
                raise CatalogError(f"catalog misses required term: {key}")
        values = list(self.terms.values())
        if len(values) != len(set(values)):
            dupes = sorted({v for v in values if values.count(v) > 1})
            raise CatalogError(f"catalog entries not distinct: {', '.join(dupes)}")
        for key, iri in self.terms.items():
            if not is_absolute_iri(iri):
                raise CatalogError(f"catalog term {key} is not an absolute IRI: {iri}")
        for iri in self.partial_orders:
            if not is_absolute_iri(iri):
                raise CatalogError(f"partial-order predicate is not an IRI: {iri}")

    def term(self, key: str) -> str:
        try:
            return self.terms[key]
        except KeyError:
            raise CatalogError(f"unknown catalog term: {key}") from None

    @property
    def has_semantic_unit_subject(self) -> str:
        return self.terms["hasSemanticUnitSubject"]

    @property
    def has_associated_semantic_unit(self) -> str:
        return self.terms["hasAssociatedSemanticUnit"]

    @property
    def has_linked_semantic_unit(self) -> str:
        return self.terms["hasLinkedSemanticUnit"]

    @property
    def object_described_by_semantic_unit(self) -> str:
        return self.terms["objectDescribedBySemanticUnit"]

    @property
    def some_instance_of(self) -> str:
        return self.terms["someInstanceOf"]

    @property
    def every_instance_of(self) -> str:
        return self.terms["everyInstanceOf"]

    @property
    def is_about(self) -> str:
        return self.terms["isAbout"]

    @property
    def type(self) -> str:
        return self.terms["type"]

    @property
    def label(self) -> str:
        return self.terms["label"]

    @property
    def qualified_cardinality(self) -> str:
        return self.terms["qualifiedCardinality"]

    @property
    def index(self) -> str:
        return self.terms["index"]

    @property
    def child(self) -> str:
        return self.terms["child"]

    @property
    def mentions(self) -> str:
        return self.terms.get("mentions", vocab.MENTIONS)

    @property
    def description(self) -> str:
        return self.terms.get("description", vocab.DESCRIPTION)

    @property
    def structural_properties(self) -> frozenset[str]:
        return frozenset(
            {
                self.has_semantic_unit_subject,
                self.has_associated_semantic_unit,
                self.has_linked_semantic_unit,
                self.object_described_by_semantic_unit,
                self.index,
            }
        )

    @property
    def kind_predicates(self) -> frozenset[str]:
        return frozenset({self.type, self.some_instance_of, self.every_instance_of})


DEFAULT_CATALOG = VocabularyCatalog()


def load_catalog(text: str) -> VocabularyCatalog:
    """Parse the declarative catalog format.

    Lines: ``term <key> <iri>``, ``partial-order <iri>``,
    ``prefix <name:> <iri>``. Unknown required terms fall back to the
    defaults; ``#`` starts a comment.
    """
    terms = dict(_DEFAULT_TERMS)
    partial_orders: list[str] = []
    prefixes = dict(vocab.PREFIXES)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "term" and len(parts) == 3:
            terms[parts[1]] = _strip_angle(parts[2], lineno)
        elif parts[0] == "partial-order" and len(parts) == 2:
            partial_orders.append(_strip_angle(parts[1], lineno))
        elif parts[0] == "prefix" and len(parts) == 3:
            prefixes[parts[1].rstrip(":")] = _strip_angle(parts[2], lineno)
        else:
            raise CatalogError(f"line {lineno}: cannot parse catalog line: {raw!r}")
    return VocabularyCatalog(
        terms=terms, partial_orders=tuple(dict.fromkeys(partial_orders)), prefixes=prefixes
    )


def _strip_angle(token: str, lineno: int) -> str:
    if token.startswith("<") and token.endswith(">"):
        token = token[1:-1]
    if not is_absolute_iri(token):
        raise CatalogError(f"line {lineno}: not an absolute IRI: {token}")
    return token


# ---------------------------------------------------------------------------
# Resource kinds
# ---------------------------------------------------------------------------


class ResourceKind(Enum):
    NAMED_INDIVIDUAL = "named-individual"
    SOME_INSTANCE = "some-instance"
    EVERY_INSTANCE = "every-instance"
    ONTOLOGY_CLASS = "ontology-class"
    PROPERTY_RESOURCE = "property-resource"
    SEMANTIC_UNIT_RESOURCE = "semantic-unit-resource"


def classify_resource(
    dataset: QuadDataset, resource: str, catalog: VocabularyCatalog
) -> ResourceKind:
    """Resolve the kind of a resource occurring in the dataset.

    The three instance kinds (named individual, some-instance,
    every-instance) are mutually exclusive; holding two of them is an
    error. A resource that stands for a semantic unit keeps that kind even
    when a data graph types it, since units are the individuals the
    discursive layer talks about.
    """
    if resource not in dataset.resources():
        raise UnknownResourceError(f"resource does not occur in dataset: {resource}")

    if resource in dataset.unit_resources(catalog):
        return ResourceKind.SEMANTIC_UNIT_RESOURCE

    data, _ = dataset.split_layers(catalog)
    subject_kind_preds: set[str] = set()
    typed_subject = False
    class_position = False
    non_predicate_occurrence = False
    predicate_occurrence = False
    for q in data:
        if q.predicate == resource:
            predicate_occurrence = True
        # A label for the resource does not count as a node occurrence, so
        # labelled properties still classify as property resources.
        if (q.subject == resource and q.predicate != catalog.label) or (
            isinstance(q.object, Iri) and q.object.value == resource
        ):
            non_predicate_occurrence = True
        if q.subject == resource:
            if q.predicate == catalog.some_instance_of:
                subject_kind_preds.add("some")
            elif q.predicate == catalog.every_instance_of:
                subject_kind_preds.add("every")
            elif q.predicate == catalog.type:
                typed_subject = True
        if (
            q.predicate in catalog.kind_predicates
            and isinstance(q.object, Iri)
            and q.object.value == resource
        ):
            class_position = True

    if len(subject_kind_preds) > 1 or (subject_kind_preds and typed_subject):
        raise AmbiguousResourceKindError(
            f"{resource} carries more than one mutually exclusive class affiliation"
        )
    instance_kind: ResourceKind | None = None
    if "some" in subject_kind_preds:
        instance_kind = ResourceKind.SOME_INSTANCE
    elif "every" in subject_kind_preds:
        instance_kind = ResourceKind.EVERY_INSTANCE
    elif typed_subject:
        instance_kind = ResourceKind.NAMED_INDIVIDUAL

    if instance_kind is not None and class_position:
        raise AmbiguousResourceKindError(
            f"{resource} occurs both as an instance and as an ontology class"
        )
    if instance_kind is not None:
        return instance_kind
    if class_position:
        return ResourceKind.ONTOLOGY_CLASS
    if predicate_occurrence and not non_predicate_occurrence:
        return ResourceKind.PROPERTY_RESOURCE
    if predicate_occurrence and non_predicate_occurrence:
        raise AmbiguousResourceKindError(
            f"{resource} occurs both as a predicate and as a node"
        )
    raise UnknownResourceError(
        f"resource kind of {resource} cannot be resolved from the dataset"
    )
