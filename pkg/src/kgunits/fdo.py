"""FAIR-digital-object plumbing: identifier minting, provenance records,
nanopublication packaging, and access-policy filtering.

A nanopublication wraps one semantic unit in four named graphs: the head
graph wires the other three together, the assertion graph is the unit's
data graph (empty for compound units, whose head carries the associations
instead), and the provenance/publication-info graphs serialize the two
metadata records.
"""

from __future__ import annotations

import hashlib
import re
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone

from . import vocab
from .errors import MintError, NanopubError, PolicyError, ProvenanceError
from .store import (
    Iri,
    Literal,
    Quad,
    QuadDataset,
    VocabularyCatalog,
    is_absolute_iri,
)


class UpriMinter:
    """Mints unique identifiers under a namespace.

    Unseeded minters derive identifiers from random UUIDs; a seeded minter
    produces the same sequence on every run, which is what makes pipeline
    outputs reproducible. The counter is the only mutable state here.
    """

    def __init__(self, namespace: str = vocab.DEFAULT_MINT_NS, seed: int | None = None):
        if not is_absolute_iri(namespace):
            raise MintError(f"namespace is not an absolute IRI: {namespace}")
        self.namespace = namespace if namespace.endswith(("/", "#", ":")) else namespace + "/"
        self.seed = seed
        self._count = 0
        if seed is not None:
            digest = hashlib.sha256(str(seed).encode("utf-8")).hexdigest()
            self._run_tag = digest[:10]
        else:
            self._run_tag = None

    def __call__(self) -> str:
        return self.mint()

    def mint(self) -> str:
        self._count += 1
        if self._run_tag is not None:
            return f"{self.namespace}u{self._run_tag}-{self._count:05d}"
        return f"{self.namespace}u{uuid.uuid4().hex}"


def mint_upri(namespace: str, seed: int | None = None) -> str:
    """One-shot mint; prefer holding a :class:`UpriMinter` for sequences."""
    return UpriMinter(namespace, seed).mint()


# ---------------------------------------------------------------------------
# Provenance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProvenanceRecord:
    creator: str
    created: str  # ISO-8601 timestamp
    application: str | None = None
    title: str | None = None
    contributors: tuple[str, ...] = ()
    last_updated: str | None = None

    def validate(self, now: datetime | None = None):
        if not self.creator:
            raise ProvenanceError("creator is mandatory")
        if not self.created:
            raise ProvenanceError("creation date is mandatory")
        reference = now or datetime.now(timezone.utc)
        for label, value in (("created", self.created), ("last_updated", self.last_updated)):
            if value is None:
                continue
            stamp = _parse_timestamp(value)
            if stamp > reference:
                raise ProvenanceError(f"{label} date {value} lies in the future")


def _parse_timestamp(value: str) -> datetime:
    try:
        stamp = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ProvenanceError(f"not an ISO-8601 timestamp: {value}") from exc
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp


def _agent_term(value: str):
    return Iri(value) if is_absolute_iri(value) else Literal(value)


def _record_quads(record: ProvenanceRecord, about: str, graph: str) -> list[Quad]:
    quads = [
        Quad(about, vocab.META_CREATOR, _agent_term(record.creator), graph),
        Quad(
            about,
            vocab.META_CREATED,
            Literal(record.created, datatype=vocab.XSD_DATETIME),
            graph,
        ),
    ]
    if record.application:
        quads.append(Quad(about, vocab.META_APPLICATION, Literal(record.application), graph))
    if record.title:
        quads.append(Quad(about, vocab.META_TITLE, Literal(record.title), graph))
    for contributor in record.contributors:
        quads.append(Quad(about, vocab.META_CONTRIBUTOR, _agent_term(contributor), graph))
    if record.last_updated:
        quads.append(
            Quad(
                about,
                vocab.META_UPDATED,
                Literal(record.last_updated, datatype=vocab.XSD_DATETIME),
                graph,
            )
        )
    return quads


def _record_from_quads(quads: list[Quad]) -> ProvenanceRecord:
    creator = ""
    created = ""
    application = None
    title = None
    contributors: list[str] = []
    last_updated = None
    for q in sorted(quads, key=lambda q: q.key()):
        value = q.object.value if isinstance(q.object, Iri) else q.object.lexical
        if q.predicate == vocab.META_CREATOR:
            creator = value
        elif q.predicate == vocab.META_CREATED:
            created = value
        elif q.predicate == vocab.META_APPLICATION:
            application = value
        elif q.predicate == vocab.META_TITLE:
            title = value
        elif q.predicate == vocab.META_CONTRIBUTOR:
            contributors.append(value)
        elif q.predicate == vocab.META_UPDATED:
            last_updated = value
    return ProvenanceRecord(
        creator=creator,
        created=created,
        application=application,
        title=title,
        contributors=tuple(contributors),
        last_updated=last_updated,
    )


# ---------------------------------------------------------------------------
# Nanopublications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Nanopublication:
    upri: str
    head: tuple[Quad, ...]
    assertion: tuple[Quad, ...]
    provenance: tuple[Quad, ...]
    pubinfo: tuple[Quad, ...]

    @property
    def assertion_graph(self) -> str:
        for q in self.head:
            if q.predicate == vocab.HAS_ASSERTION and isinstance(q.object, Iri):
                return q.object.value
        raise NanopubError(f"nanopublication {self.upri} head lacks an assertion link")

    def dataset(self) -> QuadDataset:
        return QuadDataset(self.head + self.assertion + self.provenance + self.pubinfo)


def emit_nanopublication(
    unit,
    prov: ProvenanceRecord,
    pubinfo: ProvenanceRecord,
    catalog: VocabularyCatalog,
    schema_upri: str | None = None,
) -> Nanopublication:
    """Package one semantic unit (statement or compound) as a nanopub.

    Graph names are derived from the unit identifier, so emission is
    deterministic. The assertion graph of a statement unit is its data
    graph; compound units keep an empty assertion graph and carry their
    associations in the head.
    """
    prov.validate()
    pubinfo.validate()
    unit_upri = unit.upri
    np_upri = unit_upri.rstrip("/") + "/np"
    head_g = np_upri + "/head"
    prov_g = np_upri + "/provenance"
    pub_g = np_upri + "/pubinfo"
    assertion_g = unit_upri

    data_quads = tuple(getattr(unit, "quads", ()) or ())
    associated = tuple(getattr(unit, "associated", ()) or ())
    if not data_quads and not associated:
        raise NanopubError(
            f"unit {unit_upri} has neither a data graph nor associated units"
        )

    head: list[Quad] = [
        Quad(np_upri, catalog.type, Iri(vocab.NANOPUBLICATION), head_g),
        Quad(np_upri, vocab.HAS_ASSERTION, Iri(assertion_g), head_g),
        Quad(np_upri, vocab.HAS_PROVENANCE, Iri(prov_g), head_g),
        Quad(np_upri, vocab.HAS_PUBLICATION_INFO, Iri(pub_g), head_g),
    ]
    for cls in sorted(getattr(unit, "classes", ()) or ()):
        head.append(Quad(unit_upri, catalog.type, Iri(cls), head_g))
    subject = getattr(unit, "subject", None)
    if subject:
        head.append(Quad(unit_upri, catalog.has_semantic_unit_subject, Iri(subject), head_g))
    for member in associated:
        head.append(
            Quad(unit_upri, catalog.has_associated_semantic_unit, Iri(member), head_g)
        )

    # Compound units keep an empty assertion graph; associations live in
    # the head instead.
    assertion = () if associated else tuple(q.rehome(assertion_g) for q in data_quads)

    prov_quads = _record_quads(prov, assertion_g, prov_g)
    pub_quads = _record_quads(pubinfo, np_upri, pub_g)
    if schema_upri:
        pub_quads.append(Quad(np_upri, vocab.META_SCHEMA, Iri(schema_upri), pub_g))

    return Nanopublication(
        upri=np_upri,
        head=tuple(sorted(head, key=lambda q: q.key())),
        assertion=tuple(sorted(assertion, key=lambda q: q.key())),
        provenance=tuple(sorted(prov_quads, key=lambda q: q.key())),
        pubinfo=tuple(sorted(pub_quads, key=lambda q: q.key())),
    )


@dataclass(frozen=True)
class ParsedNanopub:
    upri: str
    unit_upri: str
    classes: frozenset[str]
    subject: str | None
    assertion: tuple[Quad, ...]
    associations: tuple[str, ...]
    provenance: ProvenanceRecord
    pubinfo: ProvenanceRecord
    schema_upri: str | None = None


def parse_nanopublication(
    dataset: QuadDataset, catalog: VocabularyCatalog
) -> ParsedNanopub:
    """Reconstruct the unit and metadata records from nanopub quads."""
    heads = [
        q
        for q in dataset
        if q.predicate == catalog.type
        and isinstance(q.object, Iri)
        and q.object.value == vocab.NANOPUBLICATION
    ]
    if len(heads) != 1:
        raise NanopubError(f"expected exactly one nanopublication head, found {len(heads)}")
    np_upri = heads[0].subject
    head_g = heads[0].graph
    head_quads = dataset.graph(head_g)

    def link(predicate: str) -> str:
        for q in head_quads:
            if q.subject == np_upri and q.predicate == predicate and isinstance(q.object, Iri):
                return q.object.value
        raise NanopubError(f"head graph lacks {predicate}")

    assertion_g = link(vocab.HAS_ASSERTION)
    prov_g = link(vocab.HAS_PROVENANCE)
    pub_g = link(vocab.HAS_PUBLICATION_INFO)

    graphs = set(dataset.graph_names())
    prov_quads = list(dataset.graph(prov_g))
    pub_quads = list(dataset.graph(pub_g))
    if prov_g not in graphs or not prov_quads:
        raise NanopubError(f"head references missing provenance graph {prov_g}")
    if pub_g not in graphs or not pub_quads:
        raise NanopubError(f"head references missing publication-info graph {pub_g}")

    classes = frozenset(
        q.object.value
        for q in head_quads
        if q.subject != np_upri
        and q.predicate == catalog.type
        and isinstance(q.object, Iri)
    )
    subject = None
    associations: list[str] = []
    unit_upri = assertion_g
    for q in head_quads:
        if q.predicate == catalog.has_semantic_unit_subject and isinstance(q.object, Iri):
            subject = q.object.value
            unit_upri = q.subject
        elif q.predicate == catalog.has_associated_semantic_unit and isinstance(q.object, Iri):
            associations.append(q.object.value)
            unit_upri = q.subject

    assertion = tuple(dataset.graph(assertion_g))
    if not assertion and not associations:
        raise NanopubError(
            f"assertion graph {assertion_g} is empty and the head lists no associations"
        )
    if assertion and unit_upri != assertion_g:
        raise NanopubError(
            f"assertion graph name {assertion_g} does not match unit {unit_upri}"
        )

    schema_upri = None
    for q in pub_quads:
        if q.predicate == vocab.META_SCHEMA and isinstance(q.object, Iri):
            schema_upri = q.object.value

    return ParsedNanopub(
        upri=np_upri,
        unit_upri=unit_upri,
        classes=classes,
        subject=subject,
        assertion=assertion,
        associations=tuple(associations),
        provenance=_record_from_quads(prov_quads),
        pubinfo=_record_from_quads(
            [q for q in pub_quads if q.predicate != vocab.META_SCHEMA]
        ),
        schema_upri=schema_upri,
    )


# ---------------------------------------------------------------------------
# Access policies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolicyRule:
    unit_class: str  # IRI or "*"
    condition: str  # "always", "requester.key=value", "subject.local=value"
    effect: str  # "allow" | "deny"


@dataclass(frozen=True)
class AccessPolicy:
    rules: tuple[PolicyRule, ...] = ()


_RULE_RE = re.compile(
    r"^(allow|deny)\s+(\*|<[^<>\s]+>)(?:\s+when\s+(\S.*))?$"
)


def load_policy(text: str) -> AccessPolicy:
    """Parse the ordered rule list: ``deny <classIRI> when subject.key=value``."""
    rules: list[PolicyRule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RULE_RE.match(line)
        if not m:
            raise PolicyError(f"line {lineno}: cannot parse policy rule: {raw!r}")
        effect, target, condition = m.group(1), m.group(2), m.group(3) or "always"
        if target != "*":
            target = target[1:-1]
        condition = condition.strip()
        if condition != "always" and not re.match(
            r"^(requester|subject)\.[A-Za-z_][\w-]*\s*=\s*\S+$", condition
        ):
            raise PolicyError(f"line {lineno}: unsupported condition: {condition!r}")
        rules.append(PolicyRule(unit_class=target, condition=condition, effect=effect))
    return AccessPolicy(rules=tuple(rules))


def _condition_holds(
    rule: PolicyRule,
    unit,
    dataset: QuadDataset,
    catalog: VocabularyCatalog,
    context: dict[str, str],
) -> bool:
    if rule.condition == "always":
        return True
    lhs, _, rhs = rule.condition.partition("=")
    lhs = lhs.strip()
    rhs = rhs.strip()
    if rhs.startswith("<") and rhs.endswith(">"):
        rhs = rhs[1:-1]
    scope, _, key = lhs.partition(".")
    if scope == "requester":
        return context.get(key) == rhs
    # subject.<localName>: any data quad about the unit's subject whose
    # predicate has that local name and whose object equals the value.
    subject = getattr(unit, "subject", None)
    if subject is None:
        return False
    for q in dataset:
        if q.subject != subject:
            continue
        if _local(q.predicate) != key:
            continue
        value = q.object.value if isinstance(q.object, Iri) else q.object.lexical
        if value == rhs:
            return True
    return False


def _local(iri: str) -> str:
    for sep in ("#", "/", ":"):
        head, _, tail = iri.rpartition(sep)
        if head and tail:
            return tail
    return iri


@dataclass(frozen=True)
class PolicyDecision:
    visible: tuple
    hidden: tuple[str, ...]
    opaque_references: tuple[tuple[str, str], ...]  # (compound, hidden member)


def apply_access_policy(
    units: list,
    policy: AccessPolicy,
    dataset: QuadDataset,
    catalog: VocabularyCatalog,
    context: dict[str, str] | None = None,
) -> PolicyDecision:
    """First-match-wins filtering; default effect is allow.

    Hiding a unit never hides its subject's other units. Compound units
    that reference a hidden unit keep the bare association identifier but
    are reported as opaque references.
    """
    context = context or {}
    hidden: list[str] = []
    visible: list = []
    for unit in units:
        effect = "allow"
        for rule in policy.rules:
            if rule.unit_class != "*" and rule.unit_class not in unit.classes:
                continue
            if not _condition_holds(rule, unit, dataset, catalog, context):
                continue
            effect = rule.effect
            break
        if effect == "deny":
            hidden.append(unit.upri)
        else:
            visible.append(unit)
    hidden_set = set(hidden)
    opaque: list[tuple[str, str]] = []
    for unit in visible:
        for member in getattr(unit, "associated", ()) or ():
            if member in hidden_set:
                opaque.append((unit.upri, member))
    return PolicyDecision(
        visible=tuple(visible),
        hidden=tuple(sorted(hidden_set)),
        opaque_references=tuple(opaque),
    )


def redact_dataset(
    dataset: QuadDataset, hidden: tuple[str, ...], catalog: VocabularyCatalog
) -> QuadDataset:
    """Serialization-boundary enforcement: drop every quad of a hidden
    unit's data graph plus its subject linkage, keep bare references, and
    mark the remaining stubs as restricted."""
    hidden_set = set(hidden)
    kept: list[Quad] = []
    for q in dataset:
        if q.graph in hidden_set:
            continue
        if q.subject in hidden_set and q.predicate == catalog.has_semantic_unit_subject:
            continue
        kept.append(q)
    for upri in sorted(hidden_set):
        kept.append(
            Quad(upri, catalog.type, Iri(vocab.RESTRICTED_UNIT), vocab.UNITS_GRAPH)
        )
    return QuadDataset(kept)
