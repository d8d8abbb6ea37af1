"""The dual semantics: statement units as logic-program facts, and guarded
translation patterns that rewrite stable models into OWL axioms.

Every statement unit contributes its unit-class atoms, its subject link,
and its content triples both as plain binary atoms (what rules reason
over) and as ``asserts(unit, s, p, o)`` atoms that keep each triple
anchored to the unit stating it. Patterns match against a stable model;
default negation in a guard is absence from the model, which is what lets
a negation unit suppress the plain translation of the statement it negates.

Skolem constants are minted deterministically: the "inst" tag is keyed by
the some-instance resource itself, so every pattern that mentions the same
resource produces the same fresh individual and co-reference survives
translation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import vocab
from .errors import PatternError
from .logic import Atom, LogicProgram, Rule, is_variable, parse_rules
from .owl import (
    AllValuesFrom,
    ClassAssertion,
    ComplementOf,
    IntersectionOf,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
    OneOf,
    OwlAxiom,
    QualifiedCardinality,
    SomeValuesFrom,
    SubClassOf,
    render_axiom,
)
from .schemas import QUALITATIVE, StatementSchema
from .store import Iri, VocabularyCatalog, is_absolute_iri
from .units import PartitionResult, StatementUnit

WILDCARD = "_"


@dataclass(frozen=True)
class Fresh:
    """Skolem slot: instantiates to a deterministic fresh constant."""

    tag: str
    keys: tuple[str, ...]


def skolem(tag: str, *keys: str) -> str:
    digest = hashlib.sha256("\x1f".join(keys).encode("utf-8")).hexdigest()[:12]
    return f"sk:{tag}:{digest}"


@dataclass(frozen=True)
class TranslationPattern:
    pattern_id: str
    positive: tuple[Atom, ...]
    negative: tuple[Atom, ...]
    outputs: tuple[object, ...]  # axiom templates; leaves may be variables

    def __post_init__(self):
        bound = set()
        for atom in self.positive:
            bound |= atom.variables()
        for atom in self.negative:
            loose = {
                t for t in atom.terms if is_variable(t) and t not in bound
            }
            if loose:
                raise PatternError(
                    f"pattern {self.pattern_id}: negative guard variable(s) "
                    f"{', '.join(sorted(loose))} not bound by the positive guard"
                )
        for template in self.outputs:
            for var in _template_variables(template):
                if var not in bound:
                    raise PatternError(
                        f"pattern {self.pattern_id}: output variable {var} "
                        f"not bound by the positive guard"
                    )


def _template_variables(node) -> set[str]:
    out: set[str] = set()
    if isinstance(node, str):
        if is_variable(node):
            out.add(node)
        return out
    if isinstance(node, Fresh):
        for key in node.keys:
            if is_variable(key):
                out.add(key)
        return out
    if isinstance(node, (ClassAssertion,)):
        return _template_variables(node.expr) | _template_variables(node.individual)
    if isinstance(node, (ObjectPropertyAssertion, NegativeObjectPropertyAssertion)):
        return (
            _template_variables(node.property)
            | _template_variables(node.source)
            | _template_variables(node.target)
        )
    if isinstance(node, SubClassOf):
        return _template_variables(node.sub) | _template_variables(node.sup)
    if isinstance(node, (SomeValuesFrom, AllValuesFrom)):
        return _template_variables(node.property) | _template_variables(node.filler)
    if isinstance(node, ComplementOf):
        return _template_variables(node.expr)
    if isinstance(node, IntersectionOf):
        out = set()
        for operand in node.operands:
            out |= _template_variables(operand)
        return out
    if isinstance(node, OneOf):
        out = set()
        for i in node.individuals:
            out |= _template_variables(i)
        return out
    if isinstance(node, QualifiedCardinality):
        out = _template_variables(node.property) | _template_variables(node.filler)
        if isinstance(node.cardinality, str):
            out |= _template_variables(node.cardinality)
        return out
    return out


# ---------------------------------------------------------------------------
# Facts
# ---------------------------------------------------------------------------


def _term_constant(term) -> str:
    """Logic-program constant for an RDF term. Numeric literals stay bare
    so cardinality slots read as integers; other literals keep quotes so
    their lexical forms cannot collide with the variable convention."""
    if isinstance(term, Iri):
        return term.value
    if term.datatype in vocab.NUMERIC_DATATYPES:
        return term.lexical
    return f'"{term.lexical}"'


def facts_from_units(
    partition: PartitionResult,
    catalog: VocabularyCatalog,
    compounds=(),
) -> list[Atom]:
    """Ground atoms describing the partition (and compound context)."""
    atoms: set[Atom] = set()
    for unit in partition.units:
        atoms.add(Atom(catalog.has_semantic_unit_subject, (unit.upri, unit.subject)))
        for cls in unit.classes:
            atoms.add(Atom(cls, (unit.upri,)))
        for q in unit.quads:
            obj = _term_constant(q.object)
            atoms.add(Atom(q.predicate, (q.subject, obj)))
            atoms.add(Atom(vocab.ASSERTS, (unit.upri, q.subject, q.predicate, obj)))
    for compound in compounds:
        for cls in compound.classes:
            atoms.add(Atom(cls, (compound.upri,)))
        for member in compound.associated:
            atoms.add(
                Atom(catalog.has_associated_semantic_unit, (compound.upri, member))
            )
        if compound.subject:
            atoms.add(
                Atom(catalog.has_semantic_unit_subject, (compound.upri, compound.subject))
            )
    return sorted(atoms, key=lambda a: a.key())


def default_rules() -> LogicProgram:
    """Rules every reasoning run includes.

    A unit that is both a negation unit and an assertional statement unit
    is a negated assertional statement unit; and a unit that some data
    graph types as a negation unit (disagreement) counts as one.
    """
    x = "X"
    return LogicProgram(
        (
            Rule(
                Atom(vocab.NEGATED_ASSERTIONAL_STATEMENT_UNIT, (x,)),
                (
                    Atom(vocab.NEGATION_UNIT, (x,)),
                    Atom(vocab.ASSERTIONAL_STATEMENT_UNIT, (x,)),
                ),
            ),
            Rule(
                Atom(vocab.NEGATION_UNIT, (x,)),
                (Atom(vocab.RDF_TYPE, (x, vocab.NEGATION_UNIT)),),
            ),
        )
    )


# ---------------------------------------------------------------------------
# Built-in patterns
# ---------------------------------------------------------------------------


def builtin_patterns(
    schemas: list[StatementSchema], catalog: VocabularyCatalog
) -> list[TranslationPattern]:
    """The core ontology-design patterns plus one family per qualitative
    schema's anchor relation."""
    U, X, Y, Z, C, D, N, W = "U", "X", "Y", "Z", "C", "D", "N", "W"
    t = catalog.type
    sio = catalog.some_instance_of
    eio = catalog.every_instance_of
    patterns = [
        TranslationPattern(
            "named-individual-identification",
            positive=(
                Atom(vocab.NAMED_INDIVIDUAL_IDENTIFICATION_UNIT, (U,)),
                Atom(vocab.ASSERTS, (U, Y, t, Z)),
            ),
            negative=(Atom(vocab.NEGATION_UNIT, (U,)),),
            outputs=(ClassAssertion(Z, Y),),
        ),
        TranslationPattern(
            "negated-identification",
            positive=(
                Atom(vocab.NEGATED_ASSERTIONAL_STATEMENT_UNIT, (U,)),
                Atom(vocab.NAMED_INDIVIDUAL_IDENTIFICATION_UNIT, (U,)),
                Atom(vocab.ASSERTS, (U, Y, t, Z)),
            ),
            negative=(),
            outputs=(ClassAssertion(ComplementOf(Z), Y),),
        ),
        TranslationPattern(
            "some-instance-identification",
            positive=(
                Atom(vocab.SOME_INSTANCE_IDENTIFICATION_UNIT, (U,)),
                Atom(vocab.ASSERTS, (U, Y, sio, C)),
            ),
            negative=(
                Atom(vocab.NEGATION_UNIT, (U,)),
                Atom(vocab.CARDINALITY_RESTRICTION_UNIT, (U,)),
            ),
            outputs=(ClassAssertion(C, Fresh("inst", (Y,))),),
        ),
        TranslationPattern(
            "every-instance-identification",
            positive=(
                Atom(vocab.EVERY_INSTANCE_IDENTIFICATION_UNIT, (U,)),
                Atom(vocab.ASSERTS, (U, Y, eio, C)),
            ),
            negative=(Atom(vocab.NEGATION_UNIT, (U,)),),
            outputs=(
                ClassAssertion(vocab.COLLECTION, Y),
                SubClassOf(C, SomeValuesFrom(vocab.MEMBER_OF, OneOf((Y,)))),
                SubClassOf(OneOf((Y,)), AllValuesFrom(vocab.HAS_MEMBER, C)),
            ),
        ),
        TranslationPattern(
            "cardinality-restriction",
            positive=(
                Atom(vocab.CARDINALITY_RESTRICTION_UNIT, (U,)),
                Atom(vocab.ASSERTS, (U, Y, catalog.qualified_cardinality, N)),
                Atom(vocab.ASSERTS, (U, Y, sio, W)),
            ),
            negative=(Atom(vocab.NEGATION_UNIT, (U,)),),
            outputs=(
                ClassAssertion(
                    IntersectionOf(
                        (
                            vocab.COLLECTION,
                            QualifiedCardinality(vocab.HAS_MEMBER, N, W),
                        )
                    ),
                    Fresh("inst", (Y,)),
                ),
            ),
        ),
    ]
    for schema in sorted(schemas, key=lambda s: s.unit_class):
        if schema.relation != QUALITATIVE:
            continue
        if schema.unit_class in (
            vocab.NAMED_INDIVIDUAL_IDENTIFICATION_UNIT,
            vocab.SOME_INSTANCE_IDENTIFICATION_UNIT,
            vocab.EVERY_INSTANCE_IDENTIFICATION_UNIT,
        ):
            continue
        K = schema.unit_class
        P = schema.anchor_predicate
        tag = f"rel:{K}"
        patterns.extend(
            [
                TranslationPattern(
                    f"{tag}:assertional",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.ASSERTIONAL_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                    ),
                    negative=(
                        Atom(vocab.NEGATION_UNIT, (U,)),
                        Atom(sio, (Y, WILDCARD)),
                    ),
                    outputs=(ObjectPropertyAssertion(P, X, Y),),
                ),
                TranslationPattern(
                    f"{tag}:assertional-some-object",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.ASSERTIONAL_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                        Atom(sio, (Y, D)),
                    ),
                    negative=(Atom(vocab.NEGATION_UNIT, (U,)),),
                    outputs=(ObjectPropertyAssertion(P, X, Fresh("inst", (Y,))),),
                ),
                TranslationPattern(
                    f"{tag}:contingent",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.CONTINGENT_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                        Atom(sio, (X, C)),
                    ),
                    negative=(
                        Atom(vocab.NEGATION_UNIT, (U,)),
                        Atom(sio, (Y, WILDCARD)),
                    ),
                    outputs=(ObjectPropertyAssertion(P, Fresh("inst", (X,)), Y),),
                ),
                TranslationPattern(
                    f"{tag}:contingent-some-object",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.CONTINGENT_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                        Atom(sio, (X, C)),
                        Atom(sio, (Y, D)),
                    ),
                    negative=(Atom(vocab.NEGATION_UNIT, (U,)),),
                    outputs=(
                        ObjectPropertyAssertion(
                            P, Fresh("inst", (X,)), Fresh("inst", (Y,))
                        ),
                    ),
                ),
                TranslationPattern(
                    f"{tag}:universal",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.UNIVERSAL_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                        Atom(eio, (X, C)),
                        Atom(sio, (Y, D)),
                    ),
                    negative=(Atom(vocab.NEGATION_UNIT, (U,)),),
                    outputs=(SubClassOf(C, SomeValuesFrom(P, D)),),
                ),
                TranslationPattern(
                    f"{tag}:negated",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.NEGATED_ASSERTIONAL_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                    ),
                    negative=(Atom(sio, (Y, WILDCARD)),),
                    outputs=(NegativeObjectPropertyAssertion(P, X, Y),),
                ),
                TranslationPattern(
                    f"{tag}:negated-absence",
                    positive=(
                        Atom(K, (U,)),
                        Atom(vocab.NEGATED_ASSERTIONAL_STATEMENT_UNIT, (U,)),
                        Atom(vocab.ASSERTS, (U, X, P, Y)),
                        Atom(sio, (Y, D)),
                    ),
                    negative=(),
                    outputs=(
                        ClassAssertion(ComplementOf(SomeValuesFrom(P, D)), X),
                    ),
                ),
            ]
        )
    return patterns


# ---------------------------------------------------------------------------
# Pattern evaluation
# ---------------------------------------------------------------------------


def _index_model(model) -> dict[tuple[str, bool], list[Atom]]:
    index: dict[tuple[str, bool], list[Atom]] = {}
    for atom in sorted(model, key=lambda a: a.key()):
        index.setdefault((atom.predicate, atom.negated), []).append(atom)
    return index


def _match_atom(pattern: Atom, atom: Atom, binding: dict[str, str]):
    if len(pattern.terms) != len(atom.terms):
        return None
    out = dict(binding)
    for p, value in zip(pattern.terms, atom.terms):
        if p == WILDCARD:
            continue
        if is_variable(p):
            if p in out:
                if out[p] != value:
                    return None
            else:
                out[p] = value
        elif p != value:
            return None
    return out


def _negative_holds(pattern: Atom, index, binding: dict[str, str]) -> bool:
    """True when some model atom matches the (bound) negative guard atom."""
    for atom in index.get((pattern.predicate, pattern.negated), ()):
        if _match_atom(pattern.substitute(binding), atom, {}) is not None:
            return True
    return False


def _instantiate(node, binding: dict[str, str]):
    if isinstance(node, str):
        if is_variable(node):
            return binding[node]
        return node
    if isinstance(node, Fresh):
        keys = tuple(binding.get(k, k) if is_variable(k) else k for k in node.keys)
        return skolem(node.tag, *keys)
    if isinstance(node, ClassAssertion):
        return ClassAssertion(
            _instantiate(node.expr, binding), _instantiate(node.individual, binding)
        )
    if isinstance(node, ObjectPropertyAssertion):
        return ObjectPropertyAssertion(
            _instantiate(node.property, binding),
            _instantiate(node.source, binding),
            _instantiate(node.target, binding),
        )
    if isinstance(node, NegativeObjectPropertyAssertion):
        return NegativeObjectPropertyAssertion(
            _instantiate(node.property, binding),
            _instantiate(node.source, binding),
            _instantiate(node.target, binding),
        )
    if isinstance(node, SubClassOf):
        return SubClassOf(_instantiate(node.sub, binding), _instantiate(node.sup, binding))
    if isinstance(node, SomeValuesFrom):
        return SomeValuesFrom(
            _instantiate(node.property, binding), _instantiate(node.filler, binding)
        )
    if isinstance(node, AllValuesFrom):
        return AllValuesFrom(
            _instantiate(node.property, binding), _instantiate(node.filler, binding)
        )
    if isinstance(node, ComplementOf):
        return ComplementOf(_instantiate(node.expr, binding))
    if isinstance(node, IntersectionOf):
        return IntersectionOf(tuple(_instantiate(o, binding) for o in node.operands))
    if isinstance(node, OneOf):
        return OneOf(tuple(_instantiate(i, binding) for i in node.individuals))
    if isinstance(node, QualifiedCardinality):
        cardinality = node.cardinality
        if isinstance(cardinality, str):
            value = _instantiate(cardinality, binding)
            try:
                cardinality = int(value)
            except ValueError as exc:
                raise PatternError(
                    f"cardinality slot bound to non-integer {value!r}"
                ) from exc
        return QualifiedCardinality(
            _instantiate(node.property, binding), cardinality, _instantiate(node.filler, binding)
        )
    raise PatternError(f"cannot instantiate template node {node!r}")


def _axiom_well_formed(axiom) -> bool:
    """Drop instantiations whose individual slots ended up with literal
    lexical forms; OWL object assertions need IRI-named individuals."""
    if isinstance(axiom, (ObjectPropertyAssertion, NegativeObjectPropertyAssertion)):
        return all(
            is_absolute_iri(v) or v.startswith("sk:")
            for v in (axiom.source, axiom.target)
        )
    if isinstance(axiom, ClassAssertion):
        return is_absolute_iri(axiom.individual) or axiom.individual.startswith("sk:")
    return True


def translate_to_owl(
    model, patterns: list[TranslationPattern]
) -> list[OwlAxiom]:
    """Apply every pattern under every guard-satisfying substitution."""
    index = _index_model(model)
    axioms: set[OwlAxiom] = set()
    for pattern in patterns:
        bindings: list[dict[str, str]] = [{}]
        for guard in pattern.positive:
            extended: list[dict[str, str]] = []
            for binding in bindings:
                for atom in index.get((guard.predicate, guard.negated), ()):
                    nb = _match_atom(guard, atom, binding)
                    if nb is not None:
                        extended.append(nb)
            bindings = extended
            if not bindings:
                break
        for binding in bindings:
            if any(_negative_holds(neg, index, binding) for neg in pattern.negative):
                continue
            for template in pattern.outputs:
                axiom = _instantiate(template, binding)
                if _axiom_well_formed(axiom):
                    axioms.add(axiom)
    return sorted(axioms, key=lambda a: render_axiom(a))


# ---------------------------------------------------------------------------
# Conflicts and disputes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConflictReport:
    classical: tuple[tuple[str, str], ...]  # rendered (p, -p) pairs
    disputes: tuple[tuple[str, str], ...]  # (disagreement unit, disputed unit)
    suppressed: tuple[str, ...] = ()  # units whose plain translation is off

    @property
    def empty(self) -> bool:
        return not self.classical and not self.disputes


def check_conflicts(
    model,
    units: tuple[StatementUnit, ...] = (),
    prefixes: dict[str, str] | None = None,
) -> ConflictReport:
    """Classical (p, -p) pairs in the model plus dispute records for every
    unit some disagreement unit targets."""
    classical: list[tuple[str, str]] = []
    model_set = set(model)
    for atom in sorted(model_set, key=lambda a: a.key()):
        if not atom.negated and atom.complement() in model_set:
            classical.append(
                (atom.render(prefixes), atom.complement().render(prefixes))
            )

    unit_upris = {u.upri for u in units}
    disputes: list[tuple[str, str]] = []
    for unit in sorted(units, key=lambda u: u.upri):
        if vocab.DISAGREEMENT_UNIT not in unit.classes:
            continue
        for q in unit.quads:
            if (
                q.predicate == vocab.RDF_TYPE
                and isinstance(q.object, Iri)
                and q.object.value == vocab.NEGATION_UNIT
                and q.subject in unit_upris
            ):
                disputes.append((unit.upri, q.subject))
    suppressed = tuple(sorted({target for _, target in disputes}))
    return ConflictReport(
        classical=tuple(classical),
        disputes=tuple(disputes),
        suppressed=suppressed,
    )


# ---------------------------------------------------------------------------
# Pattern files
# ---------------------------------------------------------------------------


def parse_patterns(
    text: str, prefixes: dict[str, str] | None = None
) -> list[TranslationPattern]:
    """Parse user-defined translation patterns.

    Format, line oriented::

        pattern my-pattern
        when su:NegationUnit(U), su:asserts(U, Y, rdf:type, Z)
        emit ClassAssertion(ComplementOf(Z), Y)

    ``when`` atoms follow the rule syntax (``not`` for default negation);
    ``emit`` takes one axiom expression per line; ``fresh(tag, X)`` mints a
    Skolem constant.
    """
    prefixes = prefixes or {}
    patterns: list[TranslationPattern] = []
    name = None
    positive: list[Atom] = []
    negative: list[Atom] = []
    outputs: list = []

    def flush():
        nonlocal name, positive, negative, outputs
        if name is not None:
            patterns.append(
                TranslationPattern(name, tuple(positive), tuple(negative), tuple(outputs))
            )
        name, positive, negative, outputs = None, [], [], []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("pattern "):
            flush()
            name = line[len("pattern ") :].strip()
        elif line.startswith("when "):
            if name is None:
                raise PatternError(f"line {lineno}: 'when' before 'pattern'")
            body = line[len("when ") :].strip().rstrip(".")
            program = parse_rules(f"__head__ :- {body}.", prefixes)
            rule = program.rules[0]
            positive.extend(rule.positive)
            negative.extend(rule.negative)
        elif line.startswith("emit "):
            if name is None:
                raise PatternError(f"line {lineno}: 'emit' before 'pattern'")
            outputs.append(_parse_axiom_expr(line[len("emit ") :].strip(), prefixes, lineno))
        else:
            raise PatternError(f"line {lineno}: cannot parse pattern line: {raw!r}")
    flush()
    return patterns


_AXIOM_HEADS = {
    "ClassAssertion": (ClassAssertion, 2),
    "ObjectPropertyAssertion": (ObjectPropertyAssertion, 3),
    "NegativeObjectPropertyAssertion": (NegativeObjectPropertyAssertion, 3),
    "SubClassOf": (SubClassOf, 2),
    "SomeValuesFrom": (SomeValuesFrom, 2),
    "AllValuesFrom": (AllValuesFrom, 2),
    "ComplementOf": (ComplementOf, 1),
    "IntersectionOf": (IntersectionOf, None),
    "OneOf": (OneOf, None),
    "QualifiedCardinality": (QualifiedCardinality, 3),
}


def _parse_axiom_expr(text: str, prefixes: dict[str, str], lineno: int):
    expr, rest = _parse_expr(text.strip(), prefixes, lineno)
    if rest.strip():
        raise PatternError(f"line {lineno}: trailing text after expression: {rest!r}")
    return expr


def _parse_expr(text: str, prefixes: dict[str, str], lineno: int):
    text = text.lstrip()
    for head, (cls, arity) in _AXIOM_HEADS.items():
        if text.startswith(head + "("):
            rest = text[len(head) + 1 :]
            args = []
            while True:
                arg, rest = _parse_expr(rest, prefixes, lineno)
                args.append(arg)
                rest = rest.lstrip()
                if rest.startswith(","):
                    rest = rest[1:]
                    continue
                if rest.startswith(")"):
                    rest = rest[1:]
                    break
                raise PatternError(f"line {lineno}: expected ',' or ')' in {head}")
            if arity is not None and len(args) != arity:
                raise PatternError(
                    f"line {lineno}: {head} takes {arity} arguments, got {len(args)}"
                )
            if cls is IntersectionOf:
                return IntersectionOf(tuple(args)), rest
            if cls is OneOf:
                return OneOf(tuple(args)), rest
            return cls(*args), rest
    if text.startswith("fresh("):
        rest = text[len("fresh(") :]
        args = []
        while True:
            arg, rest = _parse_expr(rest, prefixes, lineno)
            args.append(arg)
            rest = rest.lstrip()
            if rest.startswith(","):
                rest = rest[1:]
                continue
            if rest.startswith(")"):
                rest = rest[1:]
                break
            raise PatternError(f"line {lineno}: expected ',' or ')' in fresh()")
        if not args:
            raise PatternError(f"line {lineno}: fresh() needs a tag")
        return Fresh(str(args[0]), tuple(str(a) for a in args[1:])), rest
    # Leaf: IRI, prefixed name, variable, integer, or bare symbol.
    i = 0
    if text.startswith("<"):
        i = text.index(">") + 1
        leaf = text[1 : i - 1]
        return leaf, text[i:]
    while i < len(text) and text[i] not in ",() \t":
        i += 1
    token = text[:i]
    if not token:
        raise PatternError(f"line {lineno}: expected expression near {text[:20]!r}")
    if ":" in token:
        prefix, _, local = token.partition(":")
        if prefix in prefixes:
            return prefixes[prefix] + local, text[i:]
    if token.isdigit():
        return int(token), text[i:]
    return token, text[i:]
