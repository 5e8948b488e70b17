"""
Graph service - parsing, condensation, bounded BFS and seeded generation
"""
from __future__ import annotations

import logging
from collections import deque
from typing import Callable, Literal, Optional

import numpy as np

from reachidx.core.errors import InputFormatError, InvalidParameter
from reachidx.graph.models import CondensationMap, Dag, EdgeList

logger = logging.getLogger(__name__)

Direction = Literal["out", "in"]


# ======================
# Edge-list format
# ======================
def _data_lines(text: str) -> list[tuple[int, str]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    return rows


def _parse_pair(lineno: int, line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise InputFormatError(f"malformed edge at line {lineno}: {line!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InputFormatError(f"malformed edge at line {lineno}: {line!r}") from exc
    if u < 0 or v < 0:
        raise InputFormatError(f"negative vertex id at line {lineno}")
    return u, v


def parse_edge_list(text: str | bytes, header: Optional[bool] = None) -> EdgeList:
    """Parse "u v" lines with '#' comments and an optional leading "N M" line.

    With header=None the first line counts as a header when N >= 1 and exactly M
    data lines follow it.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows = [(lineno, line, _parse_pair(lineno, line)) for lineno, line in _data_lines(text)]

    declared_n: Optional[int] = None
    if rows:
        n0, m0 = rows[0][2]
        if header is None:
            header = n0 >= 1 and m0 == len(rows) - 1
            first = rows[0][0]
            if header:
                logger.warning(
                    f"Line {first} read as header n={n0} m={m0}; pass header=False to keep it as an edge"
                )
            elif n0 >= 1 and len(rows) > 1 and all(max(u, v) < n0 for _, _, (u, v) in rows[1:]):
                logger.warning(
                    f"Line {first} looks like a header n={n0} but declares m={m0} for "
                    f"{len(rows) - 1} edge lines; reading it as an edge"
                )
        if header:
            declared_n = n0
            rows = rows[1:]

    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    self_loops = duplicates = 0
    max_id = -1
    for lineno, line, (u, v) in rows:
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise InputFormatError(f"id out of range at line {lineno}: {line!r} (n={declared_n})")
        max_id = max(max_id, u, v)
        if u == v:
            self_loops += 1
            continue
        if (u, v) in seen:
            duplicates += 1
            continue
        seen.add((u, v))
        edges.append((u, v))

    if self_loops:
        logger.warning(f"Dropped {self_loops} self-loop(s)")
    if duplicates:
        logger.warning(f"Dropped {duplicates} duplicate edge(s)")

    n = declared_n if declared_n is not None else max_id + 1
    return EdgeList(n, tuple(edges), self_loops, duplicates)


def format_edge_list(graph: Dag | EdgeList) -> str:
    if isinstance(graph, Dag):
        n, edges = graph.n, list(graph.edges())
    else:
        n, edges = graph.num_vertices, list(graph.edges)
    lines = [f"{n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# ======================
# Condensation (iterative Tarjan)
# ======================
BEGIN, CONTINUE, RETURN = 0, 1, 2


def _tarjan(adjacency: list[list[int]]) -> list[list[int]]:
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: dict[int, int] = {}
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0

    for root in range(len(adjacency)):
        if root in index:
            continue
        work = [(root, -1, 0, BEGIN)]
        while work:
            v, w, pos, state = work.pop()
            if state == BEGIN:
                counter += 1
                index[v] = lowlink[v] = counter
                on_stack[v] = len(stack)
                stack.append(v)
                work.append((v, -1, 0, CONTINUE))
            elif state == CONTINUE:
                succ = adjacency[v]
                if pos == len(succ):
                    if lowlink[v] == index[v]:
                        start = on_stack[v]
                        scc = stack[start:]
                        del stack[start:]
                        for x in scc:
                            del on_stack[x]
                        sccs.append(scc)
                    continue
                w = succ[pos]
                if w not in index:
                    work.append((v, w, pos, RETURN))
                    work.append((w, -1, 0, BEGIN))
                else:
                    if w in on_stack:
                        lowlink[v] = min(lowlink[v], index[w])
                    work.append((v, -1, pos + 1, CONTINUE))
            else:
                lowlink[v] = min(lowlink[v], lowlink[w])
                work.append((v, -1, pos + 1, CONTINUE))
    return sccs


def condense(graph: EdgeList) -> tuple[Dag, CondensationMap]:
    """Collapse strongly connected components; components are numbered by their smallest member."""
    n = graph.num_vertices
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in graph.edges:
        adjacency[u].append(v)

    blocks = sorted((sorted(scc) for scc in _tarjan(adjacency)), key=lambda block: block[0])
    component_of = [0] * n
    for cid, block in enumerate(blocks):
        for v in block:
            component_of[v] = cid

    dag_edges = {
        (component_of[u], component_of[v])
        for u, v in graph.edges
        if component_of[u] != component_of[v]
    }
    dag = Dag.from_edges(len(blocks), dag_edges)
    if len(blocks) < n:
        logger.info(f"Condensed {n} vertices into {len(blocks)} components")
    return dag, CondensationMap(tuple(component_of), tuple(tuple(b) for b in blocks))


def topological_order(graph: Dag) -> list[int]:
    return list(graph.topo)


# ======================
# Bounded BFS
# ======================
def bfs_distances(
    graph: Dag,
    source: int,
    limit: Optional[int] = None,
    direction: Direction = "out",
    halt: Optional[Callable[[int], bool]] = None,
    admit: Optional[Callable[[int], bool]] = None,
) -> dict[int, int]:
    """Hop distances from `source` up to `limit`.

    `halt(x)` vertices are recorded but not expanded (the source always expands);
    `admit(x)` false means x is never visited.
    """
    adjacency = graph.out_lists if direction == "out" else graph.in_lists
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        if halt is not None and x != source and halt(x):
            continue
        for y in adjacency[x]:
            if y in dist:
                continue
            if admit is not None and not admit(y):
                continue
            dist[y] = d + 1
            queue.append(y)
    return dist


def k_neighborhood(graph: Dag, v: int, k: int, direction: Direction = "out") -> set[int]:
    if k < 0:
        raise InvalidParameter(f"neighborhood radius must be >= 0, got {k}")
    return set(bfs_distances(graph, v, k, direction))


def distance(graph: Dag, u: int, v: int) -> Optional[int]:
    """Shortest hop count from u to v, None when v is unreachable."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in graph.out_lists[x]:
            if y in dist:
                continue
            if y == v:
                return dist[x] + 1
            dist[y] = dist[x] + 1
            queue.append(y)
    return None



# ======================
# Seeded generator
# ======================
def random_dag(n: int, avg_out_degree: float, seed: int) -> Dag:
    """Seeded random DAG: edges drawn between random ranks of a random permutation, oriented low to high."""
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    if avg_out_degree < 0:
        raise InvalidParameter(f"average out-degree must be >= 0, got {avg_out_degree}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    target = int(round(n * avg_out_degree))
    if n < 2 or target == 0:
        return Dag.from_edges(n, [])
    a = rng.integers(0, n, size=target)
    b = rng.integers(0, n, size=target)
    keep = a != b
    lo = np.minimum(a[keep], b[keep])
    hi = np.maximum(a[keep], b[keep])
    edges = {(int(perm[i]), int(perm[j])) for i, j in zip(lo.tolist(), hi.tolist())}
    logger.debug(f"random_dag n={n} seed={seed}: {len(edges)} edges")
    return Dag.from_edges(n, edges)
