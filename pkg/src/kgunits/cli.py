"""Command-line front end.

Each subcommand is one pipeline stage; ``pipeline`` chains them all and is
byte-reproducible when seeded. Every command prints a ``key=value``
summary to stdout and writes artifacts atomically (temp file + rename), so
a failed run never leaves a partial file behind.

Exit codes: 0 success, 1 usage, 2 data error, 3 solver bound exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import vocab
from .align import ProcessedGraph, align_graphs, render_report as render_alignment
from .compound import build_all, compound_quads, reconstruct_compounds, render_report
from .errors import BoundExceededError, KgUnitsError
from .fdo import (
    AccessPolicy,
    ProvenanceRecord,
    UpriMinter,
    apply_access_policy,
    emit_nanopublication,
    load_policy,
    redact_dataset,
)
from .logic import LogicProgram, ground_program, parse_rules, stable_models
from .rdfio import parse_quads, serialize_quads
from .schemas import compile_schema
from .store import DEFAULT_CATALOG, QuadDataset, load_catalog
from .translate import (
    builtin_patterns,
    check_conflicts,
    default_rules,
    facts_from_units,
    parse_patterns,
    translate_to_owl,
)
from .owl import render_axioms
from .units import partition as run_partition, render_dynamic_label


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write_atomic(path: Path, content: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(summary: dict[str, object]):
    for key, value in summary.items():
        print(f"{key}={value}")


def _syntax_of(path: str) -> str:
    return "nquads" if path.endswith((".nq", ".nquads")) else "trig"


class Context:
    """Resolved configuration for one command invocation."""

    def __init__(self, args):
        config = {}
        if getattr(args, "config", None):
            config = _read_config(args.config)

        def pick(name, default=None):
            value = getattr(args, name, None)
            if value in (None, [], ()):
                value = config.get(name, default)
            return value

        self.inputs = list(getattr(args, "inputs", []) or [])
        if not self.inputs and config.get("input"):
            self.inputs = [config["input"]]
        self.schemas_path = pick("schemas")
        self.catalog_path = pick("catalog")
        self.rules_paths = pick("rules", []) or []
        if isinstance(self.rules_paths, str):
            self.rules_paths = [self.rules_paths]
        self.patterns_paths = pick("patterns", []) or []
        if isinstance(self.patterns_paths, str):
            self.patterns_paths = [self.patterns_paths]
        self.policy_path = pick("policy")
        self.namespace = pick("namespace", vocab.DEFAULT_MINT_NS)
        seed = pick("seed")
        self.seed = int(seed) if seed is not None else None
        out = getattr(args, "out", None) or os.environ.get("KGUNITS_OUT") or config.get("out", ".")
        self.out = Path(out)
        bound = pick("bound", 24)
        self.bound = int(bound)
        if self.bound < 1:
            raise UsageError("--bound must be >= 1")
        self.created = pick("created")
        self.creator = pick("creator", vocab.SU_NS + "agent/cli")
        self.requester = {}
        for item in getattr(args, "requester", []) or []:
            key, _, value = item.partition("=")
            self.requester[key] = value

        for label, path in (
            ("input", self.inputs[0] if self.inputs else None),
            ("schemas", self.schemas_path),
            ("catalog", self.catalog_path),
            ("policy", self.policy_path),
        ):
            if path and not Path(path).exists():
                raise UsageError(f"{label} file does not exist: {path}")
        for path in list(self.rules_paths) + list(self.patterns_paths):
            if not Path(path).exists():
                raise UsageError(f"file does not exist: {path}")

        self.catalog = (
            load_catalog(Path(self.catalog_path).read_text(encoding="utf-8"))
            if self.catalog_path
            else DEFAULT_CATALOG
        )
        self.schemas = (
            compile_schema(Path(self.schemas_path).read_text(encoding="utf-8"))
            if self.schemas_path
            else []
        )

    def minter(self, stage: str) -> UpriMinter:
        if self.seed is None:
            return UpriMinter(self.namespace)
        return UpriMinter(self.namespace, seed=hash_seed(self.seed, stage))

    def timestamp(self) -> str:
        if self.created:
            return self.created
        if self.seed is not None:
            # Seeded runs must be byte-reproducible; pin a stable stamp.
            return "2023-01-01T00:00:00+00:00"
        return datetime.now(timezone.utc).isoformat(timespec="seconds")

    def read_dataset(self) -> QuadDataset:
        if not self.inputs:
            raise UsageError("no input file given")
        merged = QuadDataset()
        for path in self.inputs:
            text = Path(path).read_text(encoding="utf-8")
            merged = merged.merge(parse_quads(text, _syntax_of(path)))
        return merged

    def user_rules(self) -> LogicProgram:
        rules = list(default_rules().rules)
        for path in self.rules_paths:
            program = parse_rules(
                Path(path).read_text(encoding="utf-8"), self.catalog.prefixes
            )
            rules.extend(program.rules)
        return LogicProgram(tuple(rules))

    def patterns(self):
        patterns = builtin_patterns(self.schemas, self.catalog)
        for path in self.patterns_paths:
            patterns.extend(
                parse_patterns(
                    Path(path).read_text(encoding="utf-8"), self.catalog.prefixes
                )
            )
        return patterns


def hash_seed(seed: int, stage: str) -> int:
    import hashlib

    digest = hashlib.sha256(f"{seed}:{stage}".encode("utf-8")).hexdigest()
    return int(digest[:12], 16)


def _read_config(path: str) -> dict:
    config: dict[str, object] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line is not key=value: {raw!r}")
        key = key.strip()
        value = value.strip()
        if key in ("rules", "patterns"):
            config.setdefault(key, []).append(value)
        else:
            config[key] = value
    return config


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------


def stage_ingest(ctx: Context) -> dict:
    dataset = ctx.read_dataset()
    data, units = dataset.split_layers(ctx.catalog)
    _write_atomic(ctx.out / "dataset.trig", serialize_quads(dataset, "trig", dict(ctx.catalog.prefixes)))
    return {
        "quads": len(dataset),
        "data_quads": len(data),
        "units_quads": len(units),
        "graphs": len(dataset.graph_names()),
    }


def stage_partition(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    dataset = dataset if dataset is not None else ctx.read_dataset()
    result = run_partition(dataset, ctx.schemas, ctx.catalog, ctx.minter("partition"))
    _write_atomic(
        ctx.out / "organized.trig",
        serialize_quads(result.dataset, "trig", dict(ctx.catalog.prefixes)),
    )
    rows = []
    for u in result.units:
        classes = ",".join(sorted(u.classes))
        rows.append(f"{u.upri}\t{u.subject}\t{classes}\n")
    _write_atomic(ctx.out / "units.tsv", "".join(rows))
    summary = {
        "statement_units": len(result.units),
        "identification_units": sum(1 for u in result.units if u.is_identification),
        "fallback_units": len(result.fallback_units),
        "adopted_units": sum(1 for u in result.units if u.adopted),
        "warnings": len(result.warnings),
    }
    for name, cls in (
        ("assertional_units", vocab.ASSERTIONAL_STATEMENT_UNIT),
        ("contingent_units", vocab.CONTINGENT_STATEMENT_UNIT),
        ("universal_units", vocab.UNIVERSAL_STATEMENT_UNIT),
        ("negation_units", vocab.NEGATION_UNIT),
        ("cardinality_units", vocab.CARDINALITY_RESTRICTION_UNIT),
        ("disagreement_units", vocab.DISAGREEMENT_UNIT),
        ("is_about_units", vocab.IS_ABOUT_STATEMENT_UNIT),
    ):
        summary[name] = sum(1 for u in result.units if cls in u.classes)
    return summary


def _partitioned(ctx: Context, dataset: QuadDataset | None = None):
    dataset = dataset if dataset is not None else ctx.read_dataset()
    return run_partition(dataset, ctx.schemas, ctx.catalog, ctx.minter("partition"))


def stage_compound(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    result = _partitioned(ctx, dataset)
    compounds = build_all(result, ctx.catalog, ctx.minter("compound"))
    all_units = compounds.all_units()
    merged = result.dataset.merge(compound_quads(list(all_units), ctx.catalog))
    _write_atomic(
        ctx.out / "compounds.trig",
        serialize_quads(merged, "trig", dict(ctx.catalog.prefixes)),
    )
    _write_atomic(ctx.out / "compounds.tsv", render_report(list(all_units)))
    return {
        "typed_units": len(compounds.typed),
        "quality_measurement_units": len(compounds.quality),
        "item_units": len(compounds.items),
        "item_group_units": len(compounds.groups),
        "granularity_tree_units": len(compounds.trees.units),
        "granular_item_group_units": len(compounds.granular),
        "context_units": len(compounds.contexts.units),
        "context_boundaries": len(compounds.contexts.boundaries),
        "tree_cycles": len(compounds.trees.cycles),
        "identification_gaps": len(compounds.gaps),
    }


def stage_label(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    result = _partitioned(ctx, dataset)
    rows = []
    for u in result.units:
        label = render_dynamic_label(u, result.dataset, ctx.catalog, ctx.schemas)
        rows.append(f"{u.upri}\t{label}\n")
    _write_atomic(ctx.out / "labels.tsv", "".join(rows))
    return {"labels": len(rows)}


def stage_reason(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    result = _partitioned(ctx, dataset)
    facts = facts_from_units(result, ctx.catalog)
    program = ground_program(ctx.user_rules(), facts)
    models = stable_models(program, bound=ctx.bound)
    lines = []
    for i, model in enumerate(models):
        lines.append(f"# model {i}\n")
        for atom in sorted(model, key=lambda a: a.key()):
            lines.append(atom.render(dict(ctx.catalog.prefixes)) + "\n")
    _write_atomic(ctx.out / "models.txt", "".join(lines))
    return {
        "facts": len(facts),
        "ground_rules": len(program.rules),
        "models": len(models),
    }


def stage_translate(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    result = _partitioned(ctx, dataset)
    facts = facts_from_units(result, ctx.catalog)
    program = ground_program(ctx.user_rules(), facts)
    models = stable_models(program, bound=ctx.bound)
    prefixes = dict(ctx.catalog.prefixes)
    sections = []
    axiom_count = 0
    for i, model in enumerate(models):
        axioms = translate_to_owl(model, ctx.patterns())
        axiom_count += len(axioms)
        if len(models) > 1:
            sections.append(f"# model {i}\n")
        sections.append(render_axioms(axioms, prefixes))
    _write_atomic(ctx.out / "axioms.txt", "".join(sections))

    model = models[0] if models else frozenset()
    report = check_conflicts(model, result.units, prefixes)
    lines = []
    for p, n in report.classical:
        lines.append(f"classical\t{p}\t{n}\n")
    for d, target in report.disputes:
        lines.append(f"dispute\t{d}\t{target}\n")
    for target in report.suppressed:
        lines.append(f"suppressed\t{target}\n")
    _write_atomic(ctx.out / "conflicts.txt", "".join(lines))
    return {
        "models": len(models),
        "axioms": axiom_count,
        "classical_conflicts": len(report.classical),
        "disputes": len(report.disputes),
    }


def stage_nanopub(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    result = _partitioned(ctx, dataset)
    stamp = ctx.timestamp()
    prov = ProvenanceRecord(creator=ctx.creator, created=stamp)
    pub = ProvenanceRecord(creator=ctx.creator, created=stamp)
    quads = []
    count = 0
    for unit in sorted(result.units, key=lambda u: u.upri):
        np = emit_nanopublication(
            unit, prov, pub, ctx.catalog, schema_upri=unit.schema_class
        )
        quads.extend(np.dataset())
        count += 1
    for compound in reconstruct_compounds(result.dataset, ctx.catalog):
        np = emit_nanopublication(compound, prov, pub, ctx.catalog)
        quads.extend(np.dataset())
        count += 1
    _write_atomic(
        ctx.out / "nanopubs.trig",
        serialize_quads(QuadDataset(quads), "trig", dict(ctx.catalog.prefixes)),
    )
    return {"nanopubs": count}


def stage_align(ctx: Context) -> dict:
    if len(ctx.inputs) != 2:
        raise UsageError("align needs exactly two input files")
    graphs = []
    for i, path in enumerate(ctx.inputs):
        text = Path(path).read_text(encoding="utf-8")
        dataset = parse_quads(text, _syntax_of(path))
        part = run_partition(
            dataset, ctx.schemas, ctx.catalog, ctx.minter(f"align-{i}")
        )
        compounds = build_all(part, ctx.catalog, ctx.minter(f"align-compound-{i}"))
        graphs.append(ProcessedGraph(part.dataset, part, compounds, ctx.catalog))
    report = align_graphs(graphs[0], graphs[1])
    _write_atomic(ctx.out / "alignment.tsv", render_alignment(report))
    perfect = sum(1 for c in report.correspondences if c.score == 1)
    return {
        "correspondences": len(report.correspondences),
        "perfect": perfect,
        "unmatched_left": len(report.unmatched_left),
        "unmatched_right": len(report.unmatched_right),
    }


def stage_acl(ctx: Context, dataset: QuadDataset | None = None) -> dict:
    result = _partitioned(ctx, dataset)
    policy = (
        load_policy(Path(ctx.policy_path).read_text(encoding="utf-8"))
        if ctx.policy_path
        else AccessPolicy()
    )
    decision = apply_access_policy(
        list(result.units), policy, result.dataset, ctx.catalog, ctx.requester
    )
    redacted = redact_dataset(result.dataset, decision.hidden, ctx.catalog)
    _write_atomic(
        ctx.out / "visible.trig",
        serialize_quads(redacted, "trig", dict(ctx.catalog.prefixes)),
    )
    return {
        "visible_units": len(decision.visible),
        "hidden_units": len(decision.hidden),
        "opaque_references": len(decision.opaque_references),
    }


def stage_pipeline(ctx: Context) -> dict:
    summary: dict[str, object] = {}
    dataset = ctx.read_dataset()
    summary.update(stage_ingest(ctx))
    summary.update(stage_partition(ctx, dataset))
    summary.update(stage_compound(ctx, dataset))
    summary.update(stage_label(ctx, dataset))
    summary.update(stage_reason(ctx, dataset))
    summary.update(stage_translate(ctx, dataset))
    # Downstream stages read the compound stage's artifact, exactly as a
    # stage-by-stage invocation would.
    organized = parse_quads(
        (ctx.out / "compounds.trig").read_text(encoding="utf-8"), "trig"
    )
    summary.update(stage_nanopub(ctx, organized))
    if ctx.policy_path:
        summary.update(stage_acl(ctx, organized))
    return summary


_STAGES = {
    "ingest": stage_ingest,
    "partition": stage_partition,
    "compound": stage_compound,
    "label": stage_label,
    "reason": stage_reason,
    "translate": stage_translate,
    "nanopub": stage_nanopub,
    "align": stage_align,
    "acl": stage_acl,
    "pipeline": stage_pipeline,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="kgunits", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    for name in _STAGES:
        p = sub.add_parser(name, help=f"run the {name} stage")
        p.add_argument("inputs", nargs="*", help="input dataset file(s)")
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--schemas", help="statement schema document")
        p.add_argument("--catalog", help="vocabulary catalog document")
        p.add_argument("--rules", action="append", help="rule file (repeatable)")
        p.add_argument("--patterns", action="append", help="pattern file (repeatable)")
        p.add_argument("--policy", help="access policy document")
        p.add_argument("--namespace", help="mint namespace for new identifiers")
        p.add_argument("--seed", type=int, help="deterministic mint seed")
        p.add_argument("--out", help="output directory (env KGUNITS_OUT overrides)")
        p.add_argument("--bound", type=int, help="solver atom bound (default 24)")
        p.add_argument("--created", help="fixed ISO timestamp for provenance")
        p.add_argument("--creator", help="agent identifier for provenance")
        p.add_argument(
            "--requester",
            action="append",
            help="requester attribute key=value (repeatable, acl only)",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = argv if argv is not None else sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing command")
        ctx = Context(args)
        summary = _STAGES[args.command](ctx)
        _emit(summary)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return 1
    except BoundExceededError as exc:
        print(f"limit error: {exc}", file=sys.stderr)
        return 3
    except KgUnitsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
