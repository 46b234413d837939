"""Independent reference implementations used to check the library.

These deliberately avoid the library's algorithms: the warp-cost oracle
enumerates every monotone path instead of running dynamic programming, and
the polygon-area oracle is the classic explicit-loop shoelace.
"""
from __future__ import annotations


def brute_force_min_cost(cost) -> float:
    """Minimum path cost by exhaustive iterative DFS over all monotone paths.

    Visits every path from (0, 0) to (n-1, k-1) with steps from
    {(1,0), (0,1), (1,1)}; no memoization, no pruning.
    """
    rows = [list(r) for r in cost]
    n = len(rows)
    k = len(rows[0])
    best = float("inf")
    stack = [(0, 0, rows[0][0])]
    push = stack.append
    pop = stack.pop
    while stack:
        i, j, acc = pop()
        if i == n - 1 and j == k - 1:
            if acc < best:
                best = acc
            continue
        ni = i + 1
        nj = j + 1
        if ni < n and nj < k:
            push((ni, nj, acc + rows[ni][nj]))
        if ni < n:
            push((ni, j, acc + rows[ni][j]))
        if nj < k:
            push((i, nj, acc + rows[i][nj]))
    return best


def count_monotone_paths(n: int, k: int) -> int:
    """Number of monotone paths (sanity check for the enumerator)."""
    table = [[0] * k for _ in range(n)]
    table[0][0] = 1
    for i in range(n):
        for j in range(k):
            if i == 0 and j == 0:
                continue
            total = 0
            if i > 0:
                total += table[i - 1][j]
            if j > 0:
                total += table[i][j - 1]
            if i > 0 and j > 0:
                total += table[i - 1][j - 1]
            table[i][j] = total
    return table[n - 1][k - 1]


def shoelace_area(points) -> float:
    """Absolute polygon area via the explicit pairwise shoelace sum."""
    total = 0.0
    m = len(points)
    for idx in range(m):
        x1, y1 = points[idx]
        x2, y2 = points[(idx + 1) % m]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2.0
