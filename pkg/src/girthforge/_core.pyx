# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: graph BFS scans and exact simplex row operations.

Mirrors ``_fallback`` exactly. The simplex routines keep Python-object
arithmetic (exact rationals) and only compile away loop overhead; the
BFS routines run on typed int64 buffers.
"""

import numpy as np


def backend_name():
    return "compiled"


cdef long _bfs_skip(const long[:] indptr, const long[:] nbrs,
                    long src, long dst, long cap,
                    long[:] dist, long[:] queue) nogil:
    cdef long head = 0, tail = 0, x, y, dx, found = -1
    cdef long t
    if cap < 0:
        return -1
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x]
        if dx >= cap:
            break
        for t in range(indptr[x], indptr[x + 1]):
            y = nbrs[t]
            if (x == src and y == dst) or (x == dst and y == src):
                continue
            if dist[y] < 0:
                if y == dst:
                    found = dx + 1
                    head = tail
                    break
                dist[y] = dx + 1
                queue[tail] = y
                tail += 1
    # reset only what was touched
    for t in range(tail):
        dist[queue[t]] = -1
    dist[src] = -1
    return found


def girth_csr(indptr_in, nbrs_in):
    """Length of a shortest cycle, or 0 if the graph is acyclic."""
    cdef long[:] indptr = np.ascontiguousarray(indptr_in, dtype=np.int64)
    cdef long[:] nbrs = np.ascontiguousarray(nbrs_in, dtype=np.int64)
    cdef long n = indptr.shape[0] - 1
    cdef long best = 0, u, v, t, cap, d
    cdef long[:] dist = np.full(n, -1, dtype=np.int64)
    cdef long[:] queue = np.empty(n if n > 0 else 1, dtype=np.int64)
    for u in range(n):
        for t in range(indptr[u], indptr[u + 1]):
            v = nbrs[t]
            if v < u:
                continue
            cap = best - 2 if best else n
            d = _bfs_skip(indptr, nbrs, u, v, cap, dist, queue)
            if d >= 0 and (best == 0 or d + 1 < best):
                best = d + 1
                if best == 3:
                    return 3
    return best


def bfs_dist_capped(indptr_in, nbrs_in, long src, long dst, long cap,
                    long skip_a=-1, long skip_b=-1):
    """Distance src->dst if at most cap, else -1; one edge may be skipped."""
    if src == dst:
        return 0
    cdef long[:] indptr = np.ascontiguousarray(indptr_in, dtype=np.int64)
    cdef long[:] nbrs = np.ascontiguousarray(nbrs_in, dtype=np.int64)
    cdef long n = indptr.shape[0] - 1
    cdef long[:] dist = np.full(n, -1, dtype=np.int64)
    cdef long[:] queue = np.empty(n, dtype=np.int64)
    cdef long head = 0, tail = 0, x, y, dx, t
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
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
                queue[tail] = y
                tail += 1
    return -1


def bfs_ball(indptr_in, nbrs_in, long src, long radius):
    """All vertices within the given distance of src, src included."""
    cdef long[:] indptr = np.ascontiguousarray(indptr_in, dtype=np.int64)
    cdef long[:] nbrs = np.ascontiguousarray(nbrs_in, dtype=np.int64)
    cdef long n = indptr.shape[0] - 1
    cdef long[:] dist = np.full(n, -1, dtype=np.int64)
    cdef long[:] queue = np.empty(n, dtype=np.int64)
    cdef long head = 0, tail = 0, x, y, dx, t
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x]
        if dx >= radius:
            continue
        for t in range(indptr[x], indptr[x + 1]):
            y = nbrs[t]
            if dist[y] < 0:
                dist[y] = dx + 1
                queue[tail] = y
                tail += 1
    return [queue[t] for t in range(tail)]


def btran(list binv, list pos, list vals, Py_ssize_t m):
    """pi = c_B * B^-1 given the sparse nonzero basic costs."""
    cdef list pi = [0] * m
    cdef Py_ssize_t t, k, np_
    cdef list row
    cdef object cv, rv
    np_ = len(pos)
    for t in range(np_):
        row = <list>binv[<Py_ssize_t>pos[t]]
        cv = vals[t]
        for k in range(m):
            rv = row[k]
            if rv:
                pi[k] = pi[k] + cv * rv
    return pi


def ftran(list binv, list idxs, list vals, Py_ssize_t m):
    """d = B^-1 * a for a sparse column a."""
    cdef list d = [0] * m
    cdef Py_ssize_t i, t, nnz
    cdef list row
    cdef object acc, rv
    nnz = len(idxs)
    for i in range(m):
        row = <list>binv[i]
        acc = 0
        for t in range(nnz):
            rv = row[<Py_ssize_t>idxs[t]]
            if rv:
                acc = acc + rv * vals[t]
        d[i] = acc
    return d


def price_dantzig(list pi, list col_ptr, list col_idx, list col_val,
                  list costs, list in_basis):
    """Most negative reduced cost; ties broken by lowest column index."""
    cdef Py_ssize_t j, t, ncols, best_j = -1
    cdef object rc, pv, best_rc = None
    ncols = len(costs)
    for j in range(ncols):
        if in_basis[j]:
            continue
        rc = costs[j]
        for t in range(<Py_ssize_t>col_ptr[j], <Py_ssize_t>col_ptr[j + 1]):
            pv = pi[<Py_ssize_t>col_idx[t]]
            if pv:
                rc = rc - pv * col_val[t]
        if rc < 0 and (best_rc is None or rc < best_rc):
            best_rc = rc
            best_j = j
    return best_j, best_rc


def price_bland(list pi, list col_ptr, list col_idx, list col_val,
                list costs, list in_basis):
    """Lowest-index column with negative reduced cost, or -1."""
    cdef Py_ssize_t j, t, ncols
    cdef object rc, pv
    ncols = len(costs)
    for j in range(ncols):
        if in_basis[j]:
            continue
        rc = costs[j]
        for t in range(<Py_ssize_t>col_ptr[j], <Py_ssize_t>col_ptr[j + 1]):
            pv = pi[<Py_ssize_t>col_idx[t]]
            if pv:
                rc = rc - pv * col_val[t]
        if rc < 0:
            return j
    return -1


def ratio_lex(list binv, list xb0, list xb1, list d, Py_ssize_t m):
    """Lexicographic ratio test with a symbolic rhs perturbation;
    -1 when the column is unbounded."""
    cdef Py_ssize_t r = -1, i, k
    cdef object di, dr, a, b, a2, b2
    cdef list row_i, row_r
    cdef bint better
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
                row_i = <list>binv[i]
                row_r = <list>binv[r]
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


def pivot(list binv, list xb0, list xb1, list d, Py_ssize_t r, Py_ssize_t m):
    """Basis change: row r leaves, column with FTRAN image d enters."""
    cdef object dr = d[r]
    cdef list row_r = <list>binv[r]
    cdef list row_i
    cdef Py_ssize_t i, k
    cdef object theta0, theta1, di, rv
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
        row_i = <list>binv[i]
        for k in range(m):
            rv = row_r[k]
            if rv:
                row_i[k] = row_i[k] - di * rv
        xb0[i] = xb0[i] - di * theta0
        xb1[i] = xb1[i] - di * theta1
