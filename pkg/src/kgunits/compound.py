"""Compound units: semantically meaningful collections of other units.

A compound unit carries no data graph of its own; merging the data graphs
of its associated units is its data graph. The builders here are pure
functions over a finished partition. Build order matters for the first
three (typed, then quality measurement, then item units); trees and
contexts only need the partition.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import vocab
from .errors import CollectionError
from .store import (
    Iri,
    Literal,
    Quad,
    QuadDataset,
    ResourceKind,
    VocabularyCatalog,
    classify_resource,
)
from .units import ARGUMENT, PartitionResult, StatementUnit

TYPED_STATEMENT = "typed-statement"
QUALITY_MEASUREMENT = "quality-measurement"
ITEM = "item"
ITEM_GROUP = "item-group"
GRANULARITY_TREE = "granularity-tree"
GRANULAR_ITEM_GROUP = "granular-item-group"
CONTEXT = "context"
DATASET = "dataset"
ORDERED_LIST = "ordered-list"
UNORDERED_LIST = "unordered-list"
SET = "set"

_KIND_CLASS = {
    TYPED_STATEMENT: vocab.TYPED_STATEMENT_UNIT,
    QUALITY_MEASUREMENT: vocab.QUALITY_MEASUREMENT_UNIT,
    ITEM: vocab.ITEM_UNIT,
    ITEM_GROUP: vocab.ITEM_GROUP_UNIT,
    GRANULARITY_TREE: vocab.GRANULARITY_TREE_UNIT,
    GRANULAR_ITEM_GROUP: vocab.GRANULAR_ITEM_GROUP_UNIT,
    CONTEXT: vocab.CONTEXT_UNIT,
    DATASET: vocab.DATASET_UNIT,
    ORDERED_LIST: vocab.ORDERED_LIST_UNIT,
    UNORDERED_LIST: vocab.UNORDERED_LIST_UNIT,
    SET: vocab.SET_UNIT,
}


@dataclass(frozen=True)
class CompoundUnit:
    upri: str
    kind: str
    classes: frozenset[str]
    associated: tuple[str, ...]
    subject: str | None = None
    links: tuple[tuple[str, str, str], ...] = ()  # (via statement unit, from, to)
    members: tuple[str, ...] = ()  # ordered members of dataset/list units
    edges: tuple[tuple[str, str], ...] = ()  # (parent, child) resources of trees
    order_predicate: str | None = None
    extra_quads: tuple[Quad, ...] = ()

    def data_graph(self, lookup: dict[str, StatementUnit]) -> tuple[Quad, ...]:
        quads: list[Quad] = []
        for upri in self.associated:
            unit = lookup.get(upri)
            if unit is not None:
                quads.extend(unit.quads)
        return tuple(sorted(set(quads), key=lambda q: q.key()))


@dataclass(frozen=True)
class ContextResult:
    units: tuple[CompoundUnit, ...]
    boundaries: tuple[tuple[str, str, str], ...]  # (is-about unit, ctx of subject, ctx of object)
    degenerate: tuple[str, ...] = ()


@dataclass(frozen=True)
class TreeResult:
    units: tuple[CompoundUnit, ...]
    cycles: tuple[str, ...] = ()


def _resource_kind(
    dataset: QuadDataset, resource: str, catalog: VocabularyCatalog
) -> ResourceKind | None:
    try:
        return classify_resource(dataset, resource, catalog)
    except Exception:
        return None


# ---------------------------------------------------------------------------
# Typed statement units
# ---------------------------------------------------------------------------


def build_typed_statement_units(
    partition: PartitionResult,
    catalog: VocabularyCatalog,
    minter,
) -> tuple[list[CompoundUnit], list[str]]:
    """One typed statement unit per non-identification statement unit.

    Associated are the reference unit plus the identification units of all
    resources its data graph mentions; a referenced resource without an
    identification unit is recorded as a gap, not an error.
    """
    id_by_resource: dict[str, StatementUnit] = {}
    for u in partition.units:
        if u.is_identification:
            id_by_resource.setdefault(u.subject, u)

    typed: list[CompoundUnit] = []
    gaps: list[str] = []
    for unit in sorted(partition.units, key=lambda u: u.upri):
        if unit.is_identification:
            continue
        referenced = {unit.subject}
        for q in unit.quads:
            referenced.add(q.subject)
            if isinstance(q.object, Iri):
                referenced.add(q.object.value)
        associated = [unit.upri]
        for resource in sorted(referenced):
            ident = id_by_resource.get(resource)
            if ident is not None:
                associated.append(ident.upri)
            else:
                gaps.append(
                    f"typed unit for {unit.upri}: no identification unit for {resource}"
                )
        typed.append(
            CompoundUnit(
                upri=minter(),
                kind=TYPED_STATEMENT,
                classes=frozenset({vocab.TYPED_STATEMENT_UNIT}),
                associated=tuple(dict.fromkeys(associated)),
                subject=unit.subject,
            )
        )
    return typed, gaps


# ---------------------------------------------------------------------------
# Quality measurement units
# ---------------------------------------------------------------------------


def build_quality_measurement_units(
    typed: list[CompoundUnit],
    partition: PartitionResult,
    catalog: VocabularyCatalog,
    minter,
) -> list[CompoundUnit]:
    """Group each qualitative typed unit with every quantitative typed unit
    whose subject is one of its object arguments."""
    lookup = {u.upri: u for u in partition.units}

    def reference(compound: CompoundUnit) -> StatementUnit:
        return lookup[compound.associated[0]]

    quantitative_by_subject: dict[str, list[CompoundUnit]] = {}
    for t in typed:
        ref = reference(t)
        if vocab.QUANTITATIVE_STATEMENT_UNIT in ref.classes:
            quantitative_by_subject.setdefault(ref.subject, []).append(t)

    out: list[CompoundUnit] = []
    for t in sorted(typed, key=lambda c: c.upri):
        ref = reference(t)
        if vocab.QUANTITATIVE_STATEMENT_UNIT in ref.classes:
            continue
        measurements: list[CompoundUnit] = []
        for obj in ref.argument_iris():
            measurements.extend(quantitative_by_subject.get(obj, []))
        if not measurements:
            continue
        measurements.sort(key=lambda c: c.upri)
        links = tuple(
            (ref.upri, ref.upri, lookup[m.associated[0]].upri) for m in measurements
        )
        out.append(
            CompoundUnit(
                upri=minter(),
                kind=QUALITY_MEASUREMENT,
                classes=frozenset({vocab.QUALITY_MEASUREMENT_UNIT}),
                associated=tuple([t.upri] + [m.upri for m in measurements]),
                subject=ref.subject,
                links=links,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Item units
# ---------------------------------------------------------------------------


def build_item_units(
    partition: PartitionResult,
    typed: list[CompoundUnit],
    quality: list[CompoundUnit],
    catalog: VocabularyCatalog,
    minter,
) -> list[CompoundUnit]:
    """One item unit per subject that carries at least one statement beyond
    its own identification.

    Measurement statement units stay inside their quality measurement
    compound and do not open an item unit of their own.
    """
    typed_by_upri = {t.upri: t for t in typed}
    absorbed_refs: set[str] = set()
    for q in quality:
        for t_upri in q.associated[1:]:
            t = typed_by_upri.get(t_upri)
            if t is not None:
                absorbed_refs.add(t.associated[0])

    members_by_subject: dict[str, list[str]] = {}

    def add(subject: str, upri: str):
        members_by_subject.setdefault(subject, []).append(upri)

    has_content: set[str] = set()
    for u in partition.units:
        if u.upri in absorbed_refs:
            continue
        add(u.subject, u.upri)
        if not u.is_identification:
            has_content.add(u.subject)
    for t in typed:
        if t.associated[0] in absorbed_refs:
            continue
        add(t.subject, t.upri)
    for q in quality:
        add(q.subject, q.upri)

    data, _ = partition.dataset.split_layers(catalog)
    descriptions: set[str] = set()
    mentions: set[str] = set()
    for q in data:
        if q.predicate == catalog.description and isinstance(q.object, Literal):
            descriptions.add(q.subject)
        elif q.predicate == catalog.mentions:
            mentions.add(q.subject)

    out: list[CompoundUnit] = []
    for subject in sorted(has_content):
        classes = {vocab.ITEM_UNIT}
        kind = _resource_kind(partition.dataset, subject, catalog)
        if subject in descriptions and subject in mentions:
            classes.add(vocab.TEXT_RESOURCE_HYBRID_ITEM_UNIT)
        elif kind in (ResourceKind.SOME_INSTANCE, ResourceKind.EVERY_INSTANCE):
            classes.add(vocab.CLASS_ITEM_UNIT)
        elif kind in (
            ResourceKind.NAMED_INDIVIDUAL,
            ResourceKind.SEMANTIC_UNIT_RESOURCE,
        ):
            classes.add(vocab.INSTANCE_ITEM_UNIT)
        out.append(
            CompoundUnit(
                upri=minter(),
                kind=ITEM,
                classes=frozenset(classes),
                associated=tuple(sorted(dict.fromkeys(members_by_subject[subject]))),
                subject=subject,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Item group units
# ---------------------------------------------------------------------------


def build_item_group_units(
    items: list[CompoundUnit],
    partition: PartitionResult,
    catalog: VocabularyCatalog,
    minter,
) -> list[CompoundUnit]:
    """Connected components of the item-link graph.

    A statement unit whose subject is the subject of item A and one of
    whose object arguments is the subject of item B links A to B. Units
    that belong to no item unit attach to the group whose resources they
    touch.
    """
    item_by_subject = {i.subject: i for i in items}
    links: list[tuple[str, str, str]] = []  # (statement unit, item A, item B)
    for u in sorted(partition.units, key=lambda u: u.upri):
        a = item_by_subject.get(u.subject)
        if a is None:
            continue
        for obj in u.argument_iris():
            b = item_by_subject.get(obj)
            if b is not None and b.upri != a.upri:
                links.append((u.upri, a.upri, b.upri))

    parent: dict[str, str] = {i.upri: i.upri for i in items}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for _, a, b in links:
        union(a, b)

    components: dict[str, list[CompoundUnit]] = {}
    for i in items:
        components.setdefault(find(i.upri), []).append(i)

    # Units that are members of some item unit.
    inside_items: set[str] = set()
    for i in items:
        inside_items.update(i.associated)

    # Orphans attach to the group whose item subjects or data resources
    # they touch.
    resources_by_component: dict[str, set[str]] = {}
    lookup = {u.upri: u for u in partition.units}
    for root, comp_items in components.items():
        resources: set[str] = set()
        for item in comp_items:
            resources.add(item.subject)
            for member in item.associated:
                unit = lookup.get(member)
                if unit is not None:
                    for q in unit.quads:
                        resources.add(q.subject)
                        if isinstance(q.object, Iri):
                            resources.add(q.object.value)
        resources_by_component[root] = resources

    orphans_by_component: dict[str, list[str]] = {root: [] for root in components}
    for u in sorted(partition.units, key=lambda u: u.upri):
        if u.upri in inside_items:
            continue
        touched = {u.subject} | set(u.argument_iris())
        for root in sorted(components):
            if touched & resources_by_component[root]:
                orphans_by_component[root].append(u.upri)
                break

    out: list[CompoundUnit] = []
    for root in sorted(components):
        comp_items = sorted(components[root], key=lambda i: i.upri)
        member_upris = [i.upri for i in comp_items] + orphans_by_component[root]
        comp_links = tuple(
            (via, a, b)
            for via, a, b in links
            if find(a) == root
        )
        subject_kinds = {
            _resource_kind(partition.dataset, i.subject, catalog) for i in comp_items
        }
        classes = {vocab.ITEM_GROUP_UNIT}
        if subject_kinds and subject_kinds <= {
            ResourceKind.SOME_INSTANCE,
            ResourceKind.EVERY_INSTANCE,
        }:
            if ResourceKind.EVERY_INSTANCE in subject_kinds:
                classes.add(vocab.CLASS_AXIOM_ITEM_GROUP_UNIT)
            else:
                classes.add(vocab.CLASS_ITEM_GROUP_UNIT)
        elif subject_kinds <= {
            ResourceKind.NAMED_INDIVIDUAL,
            ResourceKind.SEMANTIC_UNIT_RESOURCE,
        }:
            classes.add(vocab.INSTANCE_ITEM_GROUP_UNIT)
        out.append(
            CompoundUnit(
                upri=minter(),
                kind=ITEM_GROUP,
                classes=frozenset(classes),
                associated=tuple(dict.fromkeys(member_upris)),
                subject=None,
                links=comp_links,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Granularity tree units
# ---------------------------------------------------------------------------


def build_granularity_tree_units(
    partition: PartitionResult,
    catalog: VocabularyCatalog,
    minter,
    typed: list[CompoundUnit] | None = None,
) -> TreeResult:
    """Trees induced by the catalog's partial-order predicates.

    Antisymmetry is checked operationally: a directed cycle in the edge set
    disqualifies its whole component. Transitive edges are dropped for the
    tree shape but their statement units stay associated with the tree.
    """
    typed = typed or []
    typed_by_ref: dict[str, str] = {t.associated[0]: t.upri for t in typed}
    trees: list[CompoundUnit] = []
    cycles: list[str] = []
    for predicate in sorted(catalog.partial_orders):
        units = [
            u
            for u in partition.units
            if u.anchor_predicate == predicate and not u.is_identification
        ]
        if not units:
            continue
        edges: dict[tuple[str, str], list[StatementUnit]] = {}
        for u in units:
            for obj in u.argument_iris():
                edges.setdefault((u.subject, obj), []).append(u)
        nodes = sorted({n for e in edges for n in e})
        adjacency: dict[str, set[str]] = {n: set() for n in nodes}
        for a, b in edges:
            adjacency[a].add(b)

        components = _weak_components(nodes, edges)
        for comp in components:
            comp_edges = {e for e in edges if e[0] in comp}
            cycle = _find_cycle(comp, comp_edges)
            if cycle:
                cycles.append(
                    f"{predicate}: cycle through {' -> '.join(cycle)}; component skipped"
                )
                continue
            reduced = _transitive_reduction(comp, comp_edges)
            incoming = {b for _, b in reduced}
            roots = sorted(n for n in comp if n not in incoming and any(a == n for a, _ in reduced))
            if not roots and len(comp) == 1:
                continue
            for root in roots:
                reachable = _reachable(root, reduced)
                tree_edges = tuple(
                    sorted((a, b) for a, b in reduced if a in reachable and b in reachable)
                )
                member_units = sorted(
                    {
                        u.upri
                        for (a, b), us in edges.items()
                        if a in reachable and b in reachable
                        for u in us
                    }
                )
                associated = list(member_units)
                for m in member_units:
                    t = typed_by_ref.get(m)
                    if t:
                        associated.append(t)
                trees.append(
                    CompoundUnit(
                        upri=minter(),
                        kind=GRANULARITY_TREE,
                        classes=frozenset({vocab.GRANULARITY_TREE_UNIT}),
                        associated=tuple(associated),
                        subject=root,
                        edges=tree_edges,
                        order_predicate=predicate,
                    )
                )
    return TreeResult(units=tuple(trees), cycles=tuple(cycles))


def _weak_components(nodes: list[str], edges) -> list[set[str]]:
    neighbours: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in edges:
        neighbours[a].add(b)
        neighbours[b].add(a)
    seen: set[str] = set()
    out: list[set[str]] = []
    for n in nodes:
        if n in seen:
            continue
        comp = {n}
        stack = [n]
        while stack:
            cur = stack.pop()
            for nb in neighbours[cur]:
                if nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        seen |= comp
        out.append(comp)
    return out


def _find_cycle(nodes: set[str], edges: set[tuple[str, str]]) -> list[str] | None:
    adjacency: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in edges:
        adjacency[a].append(b)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {n: WHITE for n in nodes}
    path: list[str] = []

    def visit(n: str) -> list[str] | None:
        colour[n] = GREY
        path.append(n)
        for nb in sorted(adjacency[n]):
            if colour[nb] == GREY:
                return path[path.index(nb) :] + [nb]
            if colour[nb] == WHITE:
                found = visit(nb)
                if found:
                    return found
        colour[n] = BLACK
        path.pop()
        return None

    for n in sorted(nodes):
        if colour[n] == WHITE:
            found = visit(n)
            if found:
                return found
    return None


def _transitive_reduction(
    nodes: set[str], edges: set[tuple[str, str]]
) -> set[tuple[str, str]]:
    adjacency: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in edges:
        adjacency[a].add(b)

    def reachable_without(a: str, b: str) -> bool:
        # Is b reachable from a via a path of length >= 2?
        stack = [nb for nb in adjacency[a] if nb != b]
        seen = set(stack)
        while stack:
            cur = stack.pop()
            if cur == b:
                return True
            for nb in adjacency[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return False

    return {e for e in edges if not reachable_without(*e)}


def _reachable(root: str, edges: set[tuple[str, str]]) -> set[str]:
    adjacency: dict[str, set[str]] = {}
    for a, b in edges:
        adjacency.setdefault(a, set()).add(b)
    out = {root}
    stack = [root]
    while stack:
        cur = stack.pop()
        for nb in adjacency.get(cur, ()):
            if nb not in out:
                out.add(nb)
                stack.append(nb)
    return out


# ---------------------------------------------------------------------------
# Granular item group units
# ---------------------------------------------------------------------------


def build_granular_item_groups(
    trees: list[CompoundUnit],
    items: list[CompoundUnit],
    partition: PartitionResult,
    minter,
) -> list[CompoundUnit]:
    """Derived view joining each granularity tree with the item units whose
    subjects are tree nodes."""
    out: list[CompoundUnit] = []
    for tree in sorted(trees, key=lambda t: t.upri):
        tree_nodes = {n for e in tree.edges for n in e}
        member_items = sorted(
            i.upri for i in items if i.subject in tree_nodes
        )
        if not member_items:
            continue
        out.append(
            CompoundUnit(
                upri=minter(),
                kind=GRANULAR_ITEM_GROUP,
                classes=frozenset({vocab.GRANULAR_ITEM_GROUP_UNIT}),
                associated=tuple([tree.upri] + member_items),
                subject=tree.subject,
                order_predicate=tree.order_predicate,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Context units
# ---------------------------------------------------------------------------


def build_context_units(
    partition: PartitionResult,
    catalog: VocabularyCatalog,
    minter,
) -> ContextResult:
    """Connected components of the data layer once is-about quads are set
    aside; each is-about statement unit marks the border between the two
    context units its endpoints fall into.

    Connectivity runs along instance-to-instance edges: class-affiliation
    predicates and literal objects do not connect, otherwise two unrelated
    frames sharing an ontology class would collapse into one.
    """
    is_about_units = [
        u for u in partition.units if vocab.IS_ABOUT_STATEMENT_UNIT in u.classes
    ]
    is_about_upris = {u.upri for u in is_about_units}

    kind_preds = catalog.kind_predicates
    nodes: set[str] = set()
    edges: list[tuple[str, str]] = []
    for u in partition.units:
        if u.upri in is_about_upris:
            continue
        for q in u.quads:
            nodes.add(q.subject)
            if q.predicate in kind_preds:
                continue
            if isinstance(q.object, Iri):
                nodes.add(q.object.value)
                edges.append((q.subject, q.object.value))
    for u in is_about_units:
        nodes.add(u.subject)
        for obj in u.argument_iris():
            nodes.add(obj)

    parent = {n: n for n in sorted(nodes)}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    component_of = {n: find(n) for n in nodes}
    units_by_component: dict[str, list[str]] = {}
    for u in sorted(partition.units, key=lambda u: u.upri):
        if u.upri in is_about_upris:
            continue
        root = component_of.get(u.subject)
        if root is None:
            continue
        units_by_component.setdefault(root, []).append(u.upri)

    context_by_component: dict[str, str] = {}
    contexts: list[CompoundUnit] = []
    boundary_tuples: list[tuple[str, str, str]] = []
    degenerate: list[str] = []
    pending_members: dict[str, list[str]] = {
        root: list(members) for root, members in sorted(units_by_component.items())
    }

    # is-about units belong to the context of their subject; resolve after
    # component membership is known.
    for u in sorted(is_about_units, key=lambda u: u.upri):
        root = component_of.get(u.subject)
        if root is not None:
            pending_members.setdefault(root, []).append(u.upri)

    for root in sorted(pending_members):
        upri = minter()
        context_by_component[root] = upri
        contexts.append(
            CompoundUnit(
                upri=upri,
                kind=CONTEXT,
                classes=frozenset({vocab.CONTEXT_UNIT}),
                associated=tuple(dict.fromkeys(pending_members[root])),
                subject=None,
            )
        )

    for u in sorted(is_about_units, key=lambda u: u.upri):
        subj_root = component_of.get(u.subject)
        obj_roots = [component_of.get(o) for o in u.argument_iris()]
        obj_root = obj_roots[0] if obj_roots else None
        if subj_root is None or obj_root is None:
            degenerate.append(f"{u.upri}: endpoint outside every context unit")
            continue
        if subj_root == obj_root:
            degenerate.append(f"{u.upri}: both endpoints in one context unit")
            continue
        boundary_tuples.append(
            (u.upri, context_by_component[subj_root], context_by_component[obj_root])
        )

    return ContextResult(
        units=tuple(contexts),
        boundaries=tuple(boundary_tuples),
        degenerate=tuple(degenerate),
    )


# ---------------------------------------------------------------------------
# Dataset and list units
# ---------------------------------------------------------------------------


def make_collection_unit(
    kind: str,
    members: list[str],
    catalog: VocabularyCatalog,
    minter,
    known_units: set[str] | None = None,
) -> tuple[CompoundUnit, list[StatementUnit]]:
    """Create a dataset or list unit over the given members.

    Dataset units reference existing semantic units directly. List units
    synthesize one membership statement unit per member; ordered lists
    index the memberships 0..n-1; set units reject duplicate members.
    """
    if kind == DATASET:
        if known_units is not None:
            unknown = [m for m in members if m not in known_units]
            if unknown:
                raise CollectionError(f"unknown semantic units: {', '.join(unknown)}")
        upri = minter()
        return (
            CompoundUnit(
                upri=upri,
                kind=DATASET,
                classes=frozenset({vocab.DATASET_UNIT}),
                associated=tuple(members),
                members=tuple(members),
            ),
            [],
        )
    if kind not in (ORDERED_LIST, UNORDERED_LIST, SET):
        raise CollectionError(f"unknown collection kind: {kind}")
    if kind == SET and len(set(members)) != len(members):
        dupes = sorted({m for m in members if members.count(m) > 1})
        raise CollectionError(f"set unit members must be unique: {', '.join(dupes)}")

    list_upri = minter()
    memberships: list[StatementUnit] = []
    extra_quads: list[Quad] = []
    from .units import UnitObject  # local import to avoid a cycle at module load

    for position, member in enumerate(members):
        m_upri = minter()
        quad = Quad(list_upri, catalog.child, Iri(member), m_upri)
        classes = {vocab.MEMBERSHIP_STATEMENT_UNIT, vocab.QUALITATIVE_STATEMENT_UNIT}
        memberships.append(
            StatementUnit(
                upri=m_upri,
                classes=frozenset(classes),
                subject=list_upri,
                objects=(UnitObject(Iri(member), ARGUMENT, "o"),),
                quads=(quad,),
                schema_class=vocab.MEMBERSHIP_STATEMENT_UNIT,
                anchor_predicate=catalog.child,
            )
        )
        if kind == ORDERED_LIST:
            extra_quads.append(
                Quad(
                    m_upri,
                    catalog.index,
                    Literal(str(position), datatype=vocab.XSD_INTEGER),
                    vocab.UNITS_GRAPH,
                )
            )
    compound = CompoundUnit(
        upri=list_upri,
        kind=kind,
        classes=frozenset({_KIND_CLASS[kind], vocab.LIST_UNIT}),
        associated=tuple(m.upri for m in memberships),
        members=tuple(members),
        extra_quads=tuple(extra_quads),
    )
    return compound, memberships


# ---------------------------------------------------------------------------
# Pipeline aggregation and serialization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompoundResult:
    typed: tuple[CompoundUnit, ...]
    quality: tuple[CompoundUnit, ...]
    items: tuple[CompoundUnit, ...]
    groups: tuple[CompoundUnit, ...]
    trees: TreeResult
    granular: tuple[CompoundUnit, ...]
    contexts: ContextResult
    gaps: tuple[str, ...]

    def all_units(self) -> tuple[CompoundUnit, ...]:
        return (
            self.typed
            + self.quality
            + self.items
            + self.groups
            + self.trees.units
            + self.granular
            + self.contexts.units
        )


def build_all(
    partition: PartitionResult, catalog: VocabularyCatalog, minter
) -> CompoundResult:
    typed, gaps = build_typed_statement_units(partition, catalog, minter)
    quality = build_quality_measurement_units(typed, partition, catalog, minter)
    items = build_item_units(partition, typed, quality, catalog, minter)
    groups = build_item_group_units(items, partition, catalog, minter)
    trees = build_granularity_tree_units(partition, catalog, minter, typed)
    granular = build_granular_item_groups(list(trees.units), items, partition, minter)
    contexts = build_context_units(partition, catalog, minter)
    return CompoundResult(
        typed=tuple(typed),
        quality=tuple(quality),
        items=tuple(items),
        groups=tuple(groups),
        trees=trees,
        granular=tuple(granular),
        contexts=contexts,
        gaps=tuple(gaps),
    )


def compound_quads(
    compounds: list[CompoundUnit], catalog: VocabularyCatalog
) -> list[Quad]:
    """Semantic-units-layer quads documenting the compound units."""
    graph = vocab.UNITS_GRAPH
    quads: list[Quad] = []
    for c in sorted(compounds, key=lambda c: c.upri):
        for cls in sorted(c.classes):
            quads.append(Quad(c.upri, catalog.type, Iri(cls), graph))
        for member in c.associated:
            quads.append(
                Quad(c.upri, catalog.has_associated_semantic_unit, Iri(member), graph)
            )
        if c.subject:
            quads.append(
                Quad(c.upri, catalog.has_semantic_unit_subject, Iri(c.subject), graph)
            )
        for via, a, b in c.links:
            if c.kind == ITEM_GROUP:
                quads.append(Quad(a, catalog.has_linked_semantic_unit, Iri(b), graph))
                quads.append(
                    Quad(via, catalog.object_described_by_semantic_unit, Iri(b), graph)
                )
            else:
                quads.append(
                    Quad(a, catalog.object_described_by_semantic_unit, Iri(b), graph)
                )
        quads.extend(c.extra_quads)
    return quads


def collection_unit_quads(
    compound: CompoundUnit,
    memberships: list[StatementUnit],
    catalog: VocabularyCatalog,
) -> list[Quad]:
    """Everything needed to persist a collection unit into a dataset: the
    membership data graphs, their unit declarations, and the compound's
    own semantic-units-layer quads (including ordered-list indexes)."""
    quads: list[Quad] = []
    for member in memberships:
        quads.extend(member.quads)
        quads.append(
            Quad(
                member.upri,
                catalog.has_semantic_unit_subject,
                Iri(member.subject),
                vocab.UNITS_GRAPH,
            )
        )
        for cls in sorted(member.classes):
            quads.append(Quad(member.upri, catalog.type, Iri(cls), vocab.UNITS_GRAPH))
    quads.extend(compound_quads([compound], catalog))
    return quads


def reconstruct_compounds(
    dataset: QuadDataset, catalog: VocabularyCatalog
) -> list[CompoundUnit]:
    """Rebuild compound units from their semantic-units-layer declarations
    (association, class, and subject quads)."""
    associated: dict[str, list[str]] = {}
    classes: dict[str, set[str]] = {}
    subjects: dict[str, str] = {}
    for q in dataset:
        if q.predicate == catalog.has_associated_semantic_unit and isinstance(
            q.object, Iri
        ):
            associated.setdefault(q.subject, []).append(q.object.value)
        elif q.predicate == catalog.type and isinstance(q.object, Iri):
            classes.setdefault(q.subject, set()).add(q.object.value)
        elif q.predicate == catalog.has_semantic_unit_subject and isinstance(
            q.object, Iri
        ):
            subjects.setdefault(q.subject, q.object.value)

    class_to_kind = {cls: kind for kind, cls in _KIND_CLASS.items()}
    out: list[CompoundUnit] = []
    for upri in sorted(associated):
        declared = frozenset(classes.get(upri, set()))
        kind = "compound"
        for cls in sorted(declared):
            if cls in class_to_kind:
                kind = class_to_kind[cls]
                break
        out.append(
            CompoundUnit(
                upri=upri,
                kind=kind,
                classes=declared or frozenset({vocab.COMPOUND_UNIT}),
                associated=tuple(sorted(dict.fromkeys(associated[upri]))),
                subject=subjects.get(upri),
            )
        )
    return out


def render_report(compounds: list[CompoundUnit]) -> str:
    """One record per compound unit: upri, kind, subject, associated."""
    lines = []
    for c in sorted(compounds, key=lambda c: (c.kind, c.upri)):
        subject = c.subject or "-"
        lines.append(f"{c.upri}\t{c.kind}\t{subject}\t{','.join(c.associated)}\n")
    return "".join(lines)
