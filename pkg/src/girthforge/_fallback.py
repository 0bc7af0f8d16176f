"""Pure-Python kernels.

Same signatures as the compiled module ``_core``; ``_kernels`` picks
whichever is importable. Graph routines work on CSR adjacency
(``indptr``/``nbrs`` integer sequences). The simplex routines do exact
object arithmetic, so results are identical across backends.
"""

from __future__ import annotations

from collections import deque


def backend_name() -> str:
    return "python"


def girth_csr(indptr, nbrs) -> int:
    """Length of a shortest cycle, or 0 if the graph is acyclic.

    Scans every edge u-v and finds the shortest u-v path avoiding that
    edge; the minimum of path+1 over all edges is exact because every
    cycle contains an edge. BFS depth is capped by the best cycle found
    so far.
    """
    n = len(indptr) - 1
    best = 0
    dist = [-1] * n
    for u in range(n):
        for t in range(indptr[u], indptr[u + 1]):
            v = nbrs[t]
            if v < u:
                continue
            cap = best - 2 if best else n
            d = _bfs_skip(indptr, nbrs, u, v, cap, dist)
            if d >= 0 and (best == 0 or d + 1 < best):
                best = d + 1
                if best == 3:
                    return 3
    return best


def _bfs_skip(indptr, nbrs, src, dst, cap, dist) -> int:
    if cap < 0:
        return -1
    seen = [src]
    dist[src] = 0
    q = deque((src,))
    found = -1
    while q:
        x = q.popleft()
        dx = dist[x]
        if dx >= cap:
            break
        for t in range(indptr[x], indptr[x + 1]):
            y = nbrs[t]
            if (x == src and y == dst) or (x == dst and y == src):
                continue
            if dist[y] < 0:
                dist[y] = dx + 1
                if y == dst:
                    found = dx + 1
                    q.clear()
                    break
                seen.append(y)
                q.append(y)
    for x in seen:
        dist[x] = -1
    if found >= 0:
        dist[dst] = -1
    return found


def bfs_dist_capped(indptr, nbrs, src, dst, cap, skip_a=-1, skip_b=-1) -> int:
    """Distance from src to dst if at most cap, else -1.

    The single edge skip_a-skip_b is treated as absent.
    """
    if src == dst:
        return 0
    n = len(indptr) - 1
    dist = [-1] * n
    dist[src] = 0
    q = deque((src,))
    while q:
        x = q.popleft()
        dx = dist[x]
        if dx >= cap:
            return -1
        for t in range(indptr[x], indptr[x + 1]):
            y = nbrs[t]
            if (x == skip_a and y == skip_b) or (x == skip_b and y == skip_a):
                continue
            if dist[y] < 0:
                if y == dst:
                    return dx + 1
                dist[y] = dx + 1
                q.append(y)
    return -1


def bfs_ball(indptr, nbrs, src, radius) -> list:
    """All vertices within the given distance of src, src included."""
    dist = {src: 0}
    q = deque((src,))
    out = [src]
    while q:
        x = q.popleft()
        dx = dist[x]
        if dx >= radius:
            continue
        for t in range(indptr[x], indptr[x + 1]):
            y = nbrs[t]
            if y not in dist:
                dist[y] = dx + 1
                out.append(y)
                q.append(y)
    return out


def btran(binv, pos, vals, m):
    """pi = c_B * B^-1 given the sparse nonzero basic costs."""
    pi = [0] * m
    for t in range(len(pos)):
        row = binv[pos[t]]
        cv = vals[t]
        for k in range(m):
            rv = row[k]
            if rv:
                pi[k] = pi[k] + cv * rv
    return pi


def ftran(binv, idxs, vals, m):
    """d = B^-1 * a for a sparse column a."""
    d = [0] * m
    for i in range(m):
        row = binv[i]
        acc = 0
        for t in range(len(idxs)):
            rv = row[idxs[t]]
            if rv:
                acc = acc + rv * vals[t]
        d[i] = acc
    return d


def price_dantzig(pi, col_ptr, col_idx, col_val, costs, in_basis):
    """Most negative reduced cost; ties broken by lowest column index.

    Returns (-1, None) at optimality.
    """
    best_j = -1
    best_rc = None
    ncols = len(costs)
    for j in range(ncols):
        if in_basis[j]:
            continue
        rc = costs[j]
        for t in range(col_ptr[j], col_ptr[j + 1]):
            pv = pi[col_idx[t]]
            if pv:
                rc = rc - pv * col_val[t]
        if rc < 0 and (best_rc is None or rc < best_rc):
            best_rc = rc
            best_j = j
    return best_j, best_rc


def price_bland(pi, col_ptr, col_idx, col_val, costs, in_basis):
    """Lowest-index column with negative reduced cost, or -1."""
    ncols = len(costs)
    for j in range(ncols):
        if in_basis[j]:
            continue
        rc = costs[j]
        for t in range(col_ptr[j], col_ptr[j + 1]):
            pv = pi[col_idx[t]]
            if pv:
                rc = rc - pv * col_val[t]
        if rc < 0:
            return j
    return -1


def ratio_lex(binv, xb0, xb1, d, m):
    """Lexicographic ratio test with a symbolic rhs perturbation.

    Basic values are xb0 + eps*xb1 for an infinitesimal eps; among rows
    with d[i] > 0 pick the one minimizing (xb0[i], xb1[i], binv[i])/d[i]
    in dictionary order. The perturbation makes almost every pivot
    strictly improving and the trailing binv comparison rules out
    cycling entirely. Returns -1 when the column is unbounded.
    """
    r = -1
    for i in range(m):
        di = d[i]
        if not (di > 0):
            continue
        if r < 0:
            r = i
            continue
        dr = d[r]
        a = xb0[i] * dr
        b = xb0[r] * di
        if a > b:
            continue
        if a == b:
            a = xb1[i] * dr
            b = xb1[r] * di
            if a > b:
                continue
            if a == b:
                row_i = binv[i]
                row_r = binv[r]
                better = False
                for k in range(m):
                    a2 = row_i[k] * dr
                    b2 = row_r[k] * di
                    if a2 != b2:
                        better = a2 < b2
                        break
                if not better:
                    continue
        r = i
    return r


def pivot(binv, xb0, xb1, d, r, m):
    """Basis change: row r leaves, column with FTRAN image d enters.
    Updates the inverse and both components of the basic values."""
    dr = d[r]
    row_r = binv[r]
    for k in range(m):
        if row_r[k]:
            row_r[k] = row_r[k] / dr
    theta0 = xb0[r] / dr
    theta1 = xb1[r] / dr
    xb0[r] = theta0
    xb1[r] = theta1
    for i in range(m):
        if i == r:
            continue
        di = d[i]
        if not di:
            continue
        row_i = binv[i]
        for k in range(m):
            rv = row_r[k]
            if rv:
                row_i[k] = row_i[k] - di * rv
        xb0[i] = xb0[i] - di * theta0
        xb1[i] = xb1[i] - di * theta1
