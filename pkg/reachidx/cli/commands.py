"""
Command implementations

Each cmd_* does its work through the service modules and returns a record; the
argument parser in main.py owns printing and exit codes.
"""
from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from reachidx.backbone.service import discover_backbone, verify_backbone, verify_one_side_cover
from reachidx.cli.models import RunConfig, VerifyReport
from reachidx.core.config import get_settings
from reachidx.core.errors import IndexFormatError, InputFormatError, VerificationFailed
from reachidx.graph.models import CondensationMap, Dag
from reachidx.graph.service import condense, format_edge_list, parse_edge_list, random_dag
from reachidx.labeling.distribution import check_non_redundancy, dl_build
from reachidx.labeling.hierarchical import hl_build
from reachidx.labeling.models import HopLabeling
from reachidx.oracle.service import TransitiveClosure, compute_tc, find_disagreement, reach
from reachidx.query.indexes import ClosureIndex, HopIndex, MultiTreeReach, OnlineIndex, ReachIndex, TreeIndex
from reachidx.query.scarab import build_scarab, scarab_online_search, scarab_query
from reachidx.query.service import grail_build, make_workload, query_hop, query_online
from reachidx.store.files import (
    dump_document,
    format_answers,
    index_from_document,
    index_to_document,
    parse_pairs,
    read_hop_labels,
    read_index_document,
)
from reachidx.store.models import StatsRecord
from reachidx.treecover.ktree import ktree_refine
from reachidx.treecover.sampling import sampled_tree
from reachidx.treecover.service import batched_weights, build_tree, compress_tc, exact_weights

logger = logging.getLogger(__name__)

SAMPLED_PAIRS = 100_000


def load_graph(path: str | Path) -> tuple[Dag, CondensationMap]:
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return condense(parse_edge_list(text))


def cmd_gen(n: int, avg_deg: float, seed: int, out: str | Path) -> Path:
    dag = random_dag(n, avg_deg, seed)
    Path(out).write_text(format_edge_list(dag))
    logger.info(f"Wrote DAG n={dag.n} m={dag.m} to {out}")
    return Path(out)


def build_index(dag: Dag, cfg: RunConfig) -> ReachIndex:
    kind = cfg.kind
    if kind == "dl":
        return HopIndex(dl_build(dag))
    if kind == "hl":
        return HopIndex(hl_build(dag, cfg.epsilon, cfg.levels, cfg.core_limit))
    if kind == "tree":
        weights = exact_weights(dag) if cfg.groups is None else batched_weights(dag, cfg.groups, cfg.seed)
        tree = build_tree(dag, weights)
        return TreeIndex(tree, compress_tc(dag, tree))
    if kind == "tree-sampled":
        tree, _ = sampled_tree(dag, cfg.theta, cfg.delta, cfg.group_size, cfg.seed)
        return TreeIndex(tree, compress_tc(dag, tree))
    if kind == "ktree":
        return MultiTreeReach(ktree_refine(dag, cfg.k, cfg.max_iters, cfg.seed))
    if kind == "grail":
        return OnlineIndex(dag, grail_build(dag, cfg.c, cfg.seed))
    if kind == "brute":
        return ClosureIndex(compute_tc(dag))
    return build_scarab(dag, cfg.epsilon, cfg.alpha, cfg.c, cfg.seed, cfg.inner)


def _timed_build(cfg: RunConfig) -> tuple[Dag, CondensationMap, ReachIndex, bytes, float]:
    dag, cmap = load_graph(cfg.input)
    start = time.perf_counter()
    index = build_index(dag, cfg)
    build_ms = (time.perf_counter() - start) * 1000.0
    mapping = None if cmap.is_identity else cmap.component_of
    data = dump_document(index_to_document(index, mapping))
    logger.info(f"Built {cfg.kind} index in {build_ms:.1f} ms ({index.entries} entries)")
    return dag, cmap, index, data, build_ms


def cmd_build(cfg: RunConfig) -> StatsRecord:
    dag, _, index, data, build_ms = _timed_build(cfg)
    if cfg.output is not None:
        Path(cfg.output).write_bytes(data)
    return StatsRecord(
        cmd="build", kind=cfg.kind, n=dag.n, m=dag.m, build_ms=build_ms,
        index_entries=index.entries, index_bytes=len(data),
    )


def cmd_query(index_path: str | Path, pairs_path: str | Path, out: Optional[str | Path] = None) -> list[bool]:
    index = index_from_document(read_index_document(index_path))
    try:
        text = Path(pairs_path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {pairs_path}: {exc.strerror}") from exc
    answers = [index.reach(u, v) for u, v in parse_pairs(text, index.n)]
    if out is not None:
        Path(out).write_text(format_answers(answers))
    return answers


def _oracle(dag: Dag) -> tuple[Optional[TransitiveClosure], Callable[[int, int], bool]]:
    """Closure under the cap, interval-pruned search above it."""
    settings = get_settings()
    if dag.n <= settings.ORACLE_VERTEX_CAP:
        tc = compute_tc(dag)
        return tc, lambda u, v: reach(tc, u, v)
    grail = grail_build(dag, settings.GRAIL_TRAVERSALS, 0)
    return None, lambda u, v: query_online(dag, grail, u, v)


def cmd_bench(cfg: RunConfig) -> StatsRecord:
    dag, _, index, data, build_ms = _timed_build(cfg)
    tc, truth = _oracle(dag) if cfg.verify or cfg.workload == "equal" else (None, None)
    workload = make_workload(dag, cfg.workload, cfg.count, cfg.seed, tc)

    answers = []
    start = time.perf_counter_ns()
    for u, v in workload.pairs:
        answers.append(index.reach(u, v))
    query_ns = time.perf_counter_ns() - start

    if cfg.verify:
        for (u, v), got in zip(workload.pairs, answers):
            expected = truth(u, v)
            if got != expected:
                raise VerificationFailed(f"{cfg.kind} answered {int(got)} for ({u}, {v}), oracle says {int(expected)}")
    if cfg.answers is not None:
        Path(cfg.answers).write_text(format_answers(answers))

    return StatsRecord(
        cmd="bench", kind=cfg.kind, n=dag.n, m=dag.m, build_ms=build_ms,
        index_entries=index.entries, index_bytes=len(data),
        query_ns_total=query_ns, queries=len(answers), positives_answered=sum(answers),
    )


# ======================
# Verify
# ======================
def _pairs_for(n: int, seed: int) -> Optional[list[tuple[int, int]]]:
    """None means exhaustive; above SAMPLED_PAIRS pairs a seeded sample is used."""
    if n * n <= SAMPLED_PAIRS:
        return None
    ids = np.random.default_rng(seed).integers(0, n, size=(SAMPLED_PAIRS, 2)).tolist()
    return [(int(u), int(v)) for u, v in ids]


def _check_labels(report: VerifyReport, name: str, labels: HopLabeling, tc: TransitiveClosure, pairs) -> None:
    if labels.n != tc.n:
        raise IndexFormatError(f"{name}: labels cover {labels.n} vertices, graph has {tc.n}")
    report.add(name, find_disagreement(tc, lambda u, v: query_hop(labels, u, v), pairs))


def cmd_verify(
    graph_path: str | Path,
    epsilons: Sequence[int] = (2,),
    labels_path: Optional[str | Path] = None,
    seed: int = 0,
) -> VerifyReport:
    settings = get_settings()
    dag, _ = load_graph(graph_path)
    tc = compute_tc(dag)
    pairs = _pairs_for(dag.n, seed)
    report = VerifyReport(n=dag.n, m=dag.m)
    # small graphs would never leave the core under the default limit
    core_limit = min(settings.CORE_LIMIT, max(1, dag.n // 4))

    if labels_path is not None:
        labels, _ = read_hop_labels(labels_path)
        _check_labels(report, "labels_complete", labels, tc, pairs)

    dl = dl_build(dag)
    _check_labels(report, "dl_complete", dl, tc, pairs)
    redundant = check_non_redundancy(dag, dl, tc)
    report.add("dl_non_redundant", redundant.removable[0][1:] if redundant.removable else None)

    tree = build_tree(dag, exact_weights(dag, tc))
    ctc = compress_tc(dag, tree)
    expected = tc.total_size - tree.weight
    report.add(
        "tree_compression",
        None if ctc.total_entries == expected else (ctc.total_entries, expected),
        f"{ctc.total_entries} intervals",
    )
    report.add("tree_complete", find_disagreement(tc, TreeIndex(tree, ctc).reach, pairs))

    for eps in epsilons:
        backbone = discover_backbone(dag, eps, "two_side", settings.PRESELECT_ALPHA)
        checked = verify_backbone(dag, backbone, tc)
        violation = (checked.missing_witness + checked.false_witness)[:1]
        report.add(f"backbone[eps={eps}]", violation[0] if violation else None, f"|V*|={len(backbone.vertices)}")

        one_side = discover_backbone(dag, eps, "one_side")
        uncovered = verify_one_side_cover(dag, one_side)
        report.add(f"one_side_cover[eps={eps}]", uncovered[0] if uncovered else None)

        hl = hl_build(dag, eps, settings.MAX_LEVELS, core_limit)
        _check_labels(report, f"hl_complete[eps={eps}]", hl, tc, pairs)

        index = build_scarab(dag, eps, settings.PRESELECT_ALPHA, settings.GRAIL_TRAVERSALS, seed, backbone=backbone)
        report.add(f"scarab_query[eps={eps}]", find_disagreement(tc, lambda u, v: scarab_query(index, u, v), pairs))
        report.add(f"scarab_online[eps={eps}]", find_disagreement(tc, lambda u, v: scarab_online_search(index, u, v), pairs))

    grail = grail_build(dag, settings.GRAIL_TRAVERSALS, seed)
    report.add("grail_online", find_disagreement(tc, lambda u, v: query_online(dag, grail, u, v), pairs))
    if not report.ok:
        failed = [r.name for r in report.results if not r.passed]
        logger.warning(f"Verification failed: {', '.join(failed)}")
    return report
