from __future__ import annotations

import pytest

from kgunits import vocab
from kgunits.compound import build_all, compound_quads
from kgunits.errors import (
    CollectionError,
    MintError,
    NanopubError,
    PolicyError,
    ProvenanceError,
)
from kgunits.fdo import (
    AccessPolicy,
    PolicyRule,
    ProvenanceRecord,
    UpriMinter,
    apply_access_policy,
    emit_nanopublication,
    load_policy,
    mint_upri,
    parse_nanopublication,
    redact_dataset,
)
from kgunits.rdfio import parse_quads, serialize_quads
from kgunits.store import QuadDataset

from conftest import fixture_text, partitioned

EX = "https://example.org/kg/"
SUC = "https://example.org/su-class/"

PROV = ProvenanceRecord(creator="https://example.org/agents/alice", created="2023-05-01T10:00:00+00:00")
PUB = ProvenanceRecord(creator="https://example.org/agents/alice", created="2023-05-02T10:00:00+00:00", title="demo")


def test_mint_unseeded_unique():
    minter = UpriMinter("https://example.org/mint/")
    assert minter() != minter()


def test_mint_seeded_deterministic_sequence():
    first = UpriMinter("https://example.org/mint/", seed=42)
    second = UpriMinter("https://example.org/mint/", seed=42)
    a = [first() for _ in range(5)]
    b = [second() for _ in range(5)]
    assert a == b
    assert len(set(a)) == 5


def test_mint_ten_thousand_no_collisions():
    minter = UpriMinter("https://example.org/mint/", seed=1)
    assert len({minter() for _ in range(10000)}) == 10000
    minter = UpriMinter("https://example.org/mint/")
    assert len({minter() for _ in range(10000)}) == 10000


def test_mint_malformed_namespace():
    with pytest.raises(MintError):
        mint_upri("not a namespace")


def test_provenance_validation():
    with pytest.raises(ProvenanceError):
        ProvenanceRecord(creator="", created="2023-01-01T00:00:00+00:00").validate()
    with pytest.raises(ProvenanceError):
        ProvenanceRecord(creator="a", created="").validate()
    with pytest.raises(ProvenanceError):
        ProvenanceRecord(creator="a", created="2999-01-01T00:00:00+00:00").validate()
    ProvenanceRecord(creator="a", created="2020-01-01T00:00:00+00:00").validate()


def test_statement_unit_nanopub_round_trip(catalog, schemas):
    result = partitioned("hand_bare.trig", catalog, schemas)
    (unit,) = result.units
    np = emit_nanopublication(unit, PROV, PUB, catalog, schema_upri=unit.schema_class)
    # structural invariant: four graphs, head links the other three
    dataset = np.dataset()
    graphs = set(dataset.graph_names())
    assert len(graphs) == 4
    assert np.assertion_graph == unit.upri
    parsed = parse_nanopublication(dataset, catalog)
    assert parsed.unit_upri == unit.upri
    assert set(parsed.assertion) == set(unit.quads)
    assert parsed.provenance == PROV
    assert parsed.pubinfo == PUB
    assert parsed.schema_upri == unit.schema_class


def test_compound_unit_nanopub_round_trip(catalog, schemas):
    result = partitioned("weight.trig", catalog, schemas)
    compounds = build_all(result, catalog, UpriMinter(seed=5))
    compound = compounds.quality[0]
    np = emit_nanopublication(compound, PROV, PUB, catalog)
    assert np.assertion == ()  # compound assertion graph stays empty
    parsed = parse_nanopublication(np.dataset(), catalog)
    assert parsed.unit_upri == compound.upri
    assert set(parsed.associations) == set(compound.associated)
    assert parsed.subject == compound.subject
    assert parsed.provenance == PROV


def test_nanopub_round_trip_survives_serialization(catalog, schemas):
    result = partitioned("hand_assertional.trig", catalog, schemas)
    unit = result.units[0]
    np = emit_nanopublication(unit, PROV, PUB, catalog)
    text = serialize_quads(np.dataset(), "trig", dict(catalog.prefixes))
    parsed = parse_nanopublication(parse_quads(text, "trig"), catalog)
    assert set(parsed.assertion) == set(unit.quads)


def test_nanopub_missing_provenance_graph_rejected(catalog, schemas):
    result = partitioned("hand_bare.trig", catalog, schemas)
    np = emit_nanopublication(result.units[0], PROV, PUB, catalog)
    broken = QuadDataset([q for q in np.dataset() if not q.graph.endswith("/provenance")])
    with pytest.raises(NanopubError):
        parse_nanopublication(broken, catalog)


def test_nanopub_dangling_head_reference_rejected(catalog, schemas):
    from kgunits.store import Iri, Quad

    result = partitioned("hand_bare.trig", catalog, schemas)
    np = emit_nanopublication(result.units[0], PROV, PUB, catalog)
    quads = []
    for q in np.dataset():
        if q.predicate == vocab.HAS_PROVENANCE:
            q = Quad(q.subject, q.predicate, Iri(EX + "nowhere"), q.graph)
        quads.append(q)
    with pytest.raises(NanopubError):
        parse_nanopublication(QuadDataset(quads), catalog)


def test_nanopub_requires_mandatory_provenance(catalog, schemas):
    result = partitioned("hand_bare.trig", catalog, schemas)
    bad = ProvenanceRecord(creator="", created="2023-01-01T00:00:00+00:00")
    with pytest.raises(ProvenanceError):
        emit_nanopublication(result.units[0], bad, PUB, catalog)


# -- access policies ------------------------------------------------------------


def _endangered(catalog, schemas):
    result = partitioned("endangered.trig", catalog, schemas)
    policy = load_policy(fixture_text("endangered.pol"))
    return result, policy


def test_policy_parse_and_shape():
    policy = load_policy(fixture_text("endangered.pol"))
    assert len(policy.rules) == 2
    assert policy.rules[0].effect == "deny"
    assert policy.rules[0].unit_class == SUC + "found-at"
    assert policy.rules[1] == PolicyRule("*", "always", "allow")


def test_policy_malformed_rule_rejected():
    with pytest.raises(PolicyError):
        load_policy("deny stuff whenever")


def test_endangered_species_locations_hidden(catalog, schemas):
    result, policy = _endangered(catalog, schemas)
    decision = apply_access_policy(
        list(result.units), policy, result.dataset, catalog, {}
    )
    location_units = [u for u in result.units if u.schema_class == SUC + "found-at"]
    endangered = [u.upri for u in location_units if u.subject == EX + "speciesX"]
    open_units = [u.upri for u in location_units if u.subject == EX + "speciesY"]
    assert sorted(decision.hidden) == sorted(endangered)
    assert len(decision.hidden) == 2
    visible_upris = {u.upri for u in decision.visible}
    assert set(open_units) <= visible_upris
    # every other unit about species X stays visible
    other = [
        u.upri
        for u in result.units
        if u.subject == EX + "speciesX" and u.upri not in endangered
    ]
    assert set(other) <= visible_upris


def test_empty_policy_is_identity(catalog, schemas):
    result = partitioned("endangered.trig", catalog, schemas)
    decision = apply_access_policy(
        list(result.units), AccessPolicy(), result.dataset, catalog, {}
    )
    assert decision.hidden == ()
    assert len(decision.visible) == len(result.units)


def test_policy_monotonicity(catalog, schemas):
    result, policy = _endangered(catalog, schemas)
    baseline = apply_access_policy(
        list(result.units), AccessPolicy(), result.dataset, catalog, {}
    )
    restricted = apply_access_policy(
        list(result.units), policy, result.dataset, catalog, {}
    )
    more = AccessPolicy(
        rules=(PolicyRule(SUC + "has-part", "always", "deny"),) + policy.rules
    )
    harder = apply_access_policy(list(result.units), more, result.dataset, catalog, {})
    assert len(harder.visible) <= len(restricted.visible) <= len(baseline.visible)


def test_requester_condition(catalog, schemas):
    result = partitioned("endangered.trig", catalog, schemas)
    policy = AccessPolicy(
        rules=(
            PolicyRule("*", "requester.role=guest", "deny"),
            PolicyRule("*", "always", "allow"),
        )
    )
    guest = apply_access_policy(
        list(result.units), policy, result.dataset, catalog, {"role": "guest"}
    )
    staff = apply_access_policy(
        list(result.units), policy, result.dataset, catalog, {"role": "staff"}
    )
    assert guest.visible == ()
    assert len(staff.visible) == len(result.units)


def test_redaction_removes_hidden_data_graphs(catalog, schemas):
    result, policy = _endangered(catalog, schemas)
    decision = apply_access_policy(
        list(result.units), policy, result.dataset, catalog, {}
    )
    redacted = redact_dataset(result.dataset, decision.hidden, catalog)
    hidden_lookup = {u.upri: u for u in result.units if u.upri in set(decision.hidden)}
    remaining_graphs = {x.graph for x in redacted}
    hidden_quad_keys = set()
    for unit in hidden_lookup.values():
        for q in unit.quads:
            assert q.graph not in remaining_graphs
            hidden_quad_keys.add(q.key())
    assert not hidden_quad_keys & {q.key() for q in redacted}
    # no occurrence data for the endangered species survives, while the
    # open species' location does
    found_at = "https://example.org/rel/found-at"
    assert not any(
        q.predicate == found_at and q.subject == EX + "speciesX" for q in redacted
    )
    assert any(
        q.predicate == found_at and q.subject == EX + "speciesY" for q in redacted
    )


def test_opaque_references_kept(catalog, schemas):
    result, policy = _endangered(catalog, schemas)
    compounds = build_all(result, catalog, UpriMinter(seed=5))
    units = list(result.units) + list(compounds.all_units())
    decision = apply_access_policy(units, policy, result.dataset, catalog, {})
    assert decision.opaque_references
    hidden = set(decision.hidden)
    for compound_upri, member in decision.opaque_references:
        assert member in hidden
