"""Command-line front end: build, enumerate, blocks, tree-search, spanning, verify.

Exit codes: 0 ok, 2 config error, 3 precondition/framework error, 4 budget
exhausted.  Output is deterministic for a fixed config and tool version;
records carry a schema field and the version.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .blocks import (
    BlockConstructionFailure,
    X_CONVENTION,
    atoms,
    block_construction,
    cycle_block_system,
    difference_class_orbits,
    invariant_refinements,
    phase_profile,
    position_block_system,
    position_system,
    relative_block_permutation,
    swap_relabel,
)
from .digraph import (
    classify_factorizations,
    enumerate_factorizations,
    factorization_at,
)
from .errors import BudgetExhausted, ConfigError, SpanfactError
from .fixtures import Fixture, load_fixture
from .groups import coset_space, presentation_from_config
from .perm import cycle_string, word_str
from .spanning import (
    max_relocatable_tree,
    phase_addressing,
    splice_generators,
    verify_sharply_transitive,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

_TOGGLE_KEYS = {"classify", "swap", "max_nodes", "format", "name"}


def load_instance(args) -> Fixture:
    """Resolve --fixture/--config into a Fixture."""
    if getattr(args, "fixture", None) and getattr(args, "config", None):
        raise ConfigError("give either --fixture or --config, not both")
    if getattr(args, "fixture", None):
        return load_fixture(args.fixture)
    if not getattr(args, "config", None):
        raise ConfigError("one of --fixture or --config is required")
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return instance_from_config(doc)


def instance_from_config(doc) -> Fixture:
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    unknown = set(doc) - {"presentation", "toy"} - _TOGGLE_KEYS
    if unknown:
        raise ConfigError(f"field {sorted(unknown)[0]!r}: unknown")
    has_p = "presentation" in doc
    has_t = "toy" in doc
    if has_p == has_t:
        raise ConfigError("exactly one of 'presentation' or 'toy' must be present")
    if has_t:
        toy = doc["toy"]
        if not isinstance(toy, dict) or "m" not in toy:
            raise ConfigError("field 'toy': expected an object with field 'm'")
        if not isinstance(toy["m"], int):
            raise ConfigError(f"field 'toy.m', token {toy['m']!r}: expected an integer")
        return load_fixture(f"toy:{toy['m']}")
    p = presentation_from_config(doc["presentation"])
    from .digraph import build_coset_digraph

    cd = build_coset_digraph(p, coset_space(p.group, list(p.H_generators)))
    name = doc.get("name", p.name or "config")
    return Fixture(name, cd.digraph, cd, None)


def config_toggles(args) -> dict:
    if not getattr(args, "config", None):
        return {}
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return {}
    return {k: doc[k] for k in _TOGGLE_KEYS if isinstance(doc, dict) and k in doc}


# --- record emission ----------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    return str(value)


def emit_table(records: list[dict], fmt: str) -> str:
    """Render records; TSV always carries a header row; both forms are
    byte-stable for identical records."""
    if fmt == "json-lines":
        return "".join(json.dumps(rec, separators=(", ", ": ")) + "\n" for rec in records)
    if fmt == "tsv":
        if not records:
            return "schema\n"
        header = list(records[0].keys())
        lines = ["\t".join(header)]
        for rec in records:
            lines.append("\t".join(_cell(rec.get(k, "")) for k in header))
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown format {fmt!r}")


def _base_record(schema: str, fx: Fixture) -> dict:
    return {"schema": schema, "version": __version__, "instance": fx.name}


# --- subcommands ---------------------------------------------------------------


def cmd_build(args) -> tuple[list[dict], int]:
    fx = load_instance(args)
    d = fx.digraph
    rec = _base_record("digraph-report", fx)
    rec.update(
        n=d.n,
        edges=2 * d.n,
        strongly_connected=True,
        alt_cycle_count=d.alt_decomposition.r,
    )
    return [rec], EXIT_OK


def cmd_enumerate(args) -> tuple[list[dict], int]:
    fx = load_instance(args)
    toggles = config_toggles(args)
    classify = args.classify or bool(toggles.get("classify"))
    swap = args.swap or bool(toggles.get("swap"))
    d = fx.digraph
    facs = enumerate_factorizations(d)
    records = []
    if classify:
        classes = classify_factorizations(d, facs, fx.aut_generators(), allow_swap=swap)
        for cid, cls in enumerate(classes):
            rec = _base_record("factorization-class", fx)
            rec.update(
                bitmask=cls.representative,
                cycle_type_f1=list(cls.cycle_type_pair[0]),
                cycle_type_f2=list(cls.cycle_type_pair[1]),
                class_id=cid,
                class_size=cls.size,
            )
            records.append(rec)
    else:
        for f in facs:
            rec = _base_record("factorization", fx)
            rec.update(
                bitmask=f.bitmask,
                cycle_type_f1=list(f.f1.cycle_type()),
                cycle_type_f2=list(f.f2.cycle_type()),
                class_id="",
            )
            records.append(rec)
    return records, EXIT_OK


def cmd_blocks(args) -> tuple[list[dict], int]:
    fx = load_instance(args)
    d = fx.digraph
    f = factorization_at(d, args.bitmask)
    ps = position_system(f)
    pp = phase_profile(f, ps)
    pi = difference_class_orbits(f, ps)
    refs = invariant_refinements(f, ps, pi)
    records = []
    for name, system in (
        ("position", position_block_system(ps)),
        ("cycle", cycle_block_system(ps)),
    ):
        rec = _base_record("block-report", fx)
        rec.update(
            bitmask=args.bitmask,
            x_convention=X_CONVENTION,
            m=ps.m,
            r=ps.r,
            delta=list(pp.delta),
            phase_counts=list(pp.phase_counts),
            class_orbits=[list(o) for o in pi],
            refinement_count=len(refs),
            system=name,
        )
        try:
            tau, der = relative_block_permutation(f, system)
            rec.update(tau=cycle_string(tau), derangement=der, invariant=True)
        except SpanfactError:
            rec.update(tau="", derangement=False, invariant=False)
        records.append(rec)
    return records, EXIT_OK


def cmd_tree_search(args) -> tuple[list[dict], int]:
    fx = load_instance(args)
    toggles = config_toggles(args)
    node_cap = args.max_nodes or toggles.get("max_nodes") or 100_000_000
    d = fx.digraph
    targets: list[tuple[str, int]] = []
    if args.all_classes:
        facs = enumerate_factorizations(d)
        classes = classify_factorizations(d, facs, fx.aut_generators(), allow_swap=True)
        targets = [(str(cid), cls.representative) for cid, cls in enumerate(classes)]
    else:
        if args.bitmask is None:
            raise ConfigError("tree-search needs --bitmask or --all-classes")
        targets = [("", args.bitmask)]
    records = []
    exhausted = False
    for cid, mask in targets:
        f = factorization_at(d, mask)
        res = max_relocatable_tree(f, node_cap=node_cap)
        exhausted = exhausted or not res.certificate
        rec = _base_record("tree-search", fx)
        rec.update(
            class_id=cid,
            bitmask=mask,
            max_size=res.size,
            certificate=res.certificate,
            nodes=res.nodes,
            kernel=res.kernel,
            witness=" ".join(word_str(w) for w in res.words),
        )
        records.append(rec)
    return records, EXIT_BUDGET if exhausted else EXIT_OK


def cmd_spanning(args) -> tuple[list[dict], int]:
    fx = load_instance(args)
    d = fx.digraph
    f = factorization_at(d, args.bitmask)
    ps = position_system(f)
    rec = _base_record("spanning", fx)
    rec.update(bitmask=args.bitmask, method=args.method)
    if args.method == "blocks":
        result = block_construction(f, ps)
        if isinstance(result, BlockConstructionFailure):
            rec.update(size=0, verified=False, words="", failure=result.reason)
            return [rec], EXIT_BUDGET
        ws = result
    else:
        pp = phase_profile(f, ps)
        ws = splice_generators(phase_addressing(f, ps, pp), f)
    verdict = verify_sharply_transitive(ws, f)
    rec.update(
        size=len(ws),
        verified=verdict.passed,
        words=" ".join(word_str(w) for w in ws.words),
    )
    return [rec], EXIT_OK if verdict.passed else EXIT_PRECONDITION


def cmd_verify(args) -> tuple[list[dict], int]:
    fx = load_instance(args)
    d = fx.digraph
    facs = enumerate_factorizations(d)
    rng = random.Random(args.seed)
    r = d.alt_decomposition.r
    records = []
    all_ok = True

    phase_fail = 0
    law_fail = 0
    refinement_fail = 0
    for f in facs:
        try:
            ps = position_system(f)
            pp = phase_profile(f, ps)
        except SpanfactError:
            phase_fail += 1
            continue
        A = atoms(f, ps, pp)
        ok = sum(pp.phase_counts) == ps.r and all(
            len(A[(j, (j + dd) % ps.m)]) == pp.phase_counts[dd]
            for j in range(ps.m)
            for dd in range(ps.m)
        )
        tied_ok = all(
            A[(j, k)]
            == (ps.blocks[j] & frozenset(f.f1(v) for v in ps.blocks[k]))
            for j in range(ps.m)
            for k in range(ps.m)
        )
        if not (ok and tied_ok):
            law_fail += 1
        try:
            pi = difference_class_orbits(f, ps)
            refs = invariant_refinements(f, ps, pi)
            if len(refs) != (1 << len(pi)) - 1 or not all(rs.invariant for rs in refs):
                refinement_fail += 1
        except SpanfactError:
            refinement_fail += 1

    for law, fails in (
        ("phase_constancy", phase_fail),
        ("atom_counts", law_fail),
        ("refinements", refinement_fail),
    ):
        rec = _base_record("verify-report", fx)
        rec.update(law=law, checked=len(facs), failures=fails, passed=fails == 0)
        records.append(rec)
        all_ok = all_ok and fails == 0

    swap_checked = 0
    swap_fail = 0
    masks = [rng.randrange(1 << r) for _ in range(args.masks)]
    for f in facs:
        try:
            ps = position_system(f)
        except SpanfactError:
            continue
        for system in (position_block_system(ps), cycle_block_system(ps)):
            try:
                tau0, _ = relative_block_permutation(f, system)
            except SpanfactError:
                continue
            for mask in masks:
                g = swap_relabel(f, mask)
                try:
                    tau1, _ = relative_block_permutation(g, system)
                except SpanfactError:
                    continue
                swap_checked += 1
                if tau1 != tau0:
                    swap_fail += 1
    rec = _base_record("verify-report", fx)
    rec.update(law="swap_invariance", checked=swap_checked, failures=swap_fail, passed=swap_fail == 0)
    records.append(rec)
    all_ok = all_ok and swap_fail == 0
    return records, EXIT_OK if all_ok else EXIT_PRECONDITION


# --- entry point ----------------------------------------------------------------


def _add_common(sp, bitmask=False):
    sp.add_argument("--config", help="JSON config document")
    sp.add_argument("--fixture", help="built-in instance, e.g. a5-ex2, a5-ex3, morris, toy:3")
    sp.add_argument("--format", choices=("tsv", "json-lines"), default="tsv")
    sp.add_argument("--quiet", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-nodes", type=int, default=None)
    if bitmask:
        sp.add_argument("--bitmask", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spanfact", description=__doc__)
    ap.add_argument("--version", action="version", version=f"spanfact {__version__}")
    subs = ap.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("build", help="digraph report")
    _add_common(sp)
    sp.set_defaults(func=cmd_build)

    sp = subs.add_parser("enumerate", help="all 2^r factorizations, optionally classified")
    _add_common(sp)
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--swap", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = subs.add_parser("blocks", help="phase profile and block criteria for one factorization")
    _add_common(sp, bitmask=True)
    sp.set_defaults(func=cmd_blocks)

    sp = subs.add_parser("tree-search", help="maximum relocatable tree search")
    _add_common(sp, bitmask=True)
    sp.add_argument("--all-classes", action="store_true")
    sp.set_defaults(func=cmd_tree_search)

    sp = subs.add_parser("spanning", help="construct a spanning word set")
    _add_common(sp, bitmask=True)
    sp.add_argument("--method", choices=("blocks", "addressing"), required=True)
    sp.set_defaults(func=cmd_spanning)

    sp = subs.add_parser("verify", help="run the block/phase law suite on an instance")
    _add_common(sp)
    sp.add_argument("--masks", type=int, default=200)
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "bitmask", None) is None and args.command in ("blocks", "spanning"):
        args.bitmask = 0
    try:
        records, code = args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SpanfactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    sys.stdout.write(emit_table(records, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
