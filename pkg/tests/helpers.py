from reachidx.graph.models import Dag
from reachidx.graph.service import random_dag
from reachidx.oracle.service import TransitiveClosure, reach


def seeded_dags(count: int, n_max: int, deg: float = 2.0, first_seed: int = 0) -> list[Dag]:
    """Deterministic batch of random DAGs with sizes spread over [4, n_max]."""
    dags = []
    for seed in range(first_seed, first_seed + count):
        n = 4 + (seed * 37) % (n_max - 3)
        dags.append(random_dag(n, deg, seed))
    return dags


def oracle_mismatches(tc: TransitiveClosure, answer) -> list[tuple[int, int]]:
    return [
        (u, v)
        for u in range(tc.n)
        for v in range(tc.n)
        if answer(u, v) != reach(tc, u, v)
    ]
