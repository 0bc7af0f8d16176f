"""Exact linear programming over the rationals.

A small revised-simplex engine with an explicit basis inverse. Pricing
is Dantzig's rule (lowest index on ties); the leaving row comes from a
lexicographic ratio test, which rules out cycling under any pricing
rule, so the method is deterministic and always terminates. All
arithmetic is exact, so optimality claims are proofs, not
approximations; callers additionally re-verify feasibility and the
duality gap on the returned certificate.

Two entry points:

* ``solve_lp``: general problems (any senses, free variables) via a
  two-phase method. Meant for small instances.
* ``solve_min_geq_lp``: the structured case min{cx : Ax >= b, x >= 0}
  with c >= 0 that every bound computation in this package produces.
  It solves the dual max{by : A^T y <= c, y >= 0}, whose all-slack
  basis is immediately feasible, and reads the primal off the final
  multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .rational import R

OPTIMAL = "OPTIMAL"
INFEASIBLE = "INFEASIBLE"
UNBOUNDED = "UNBOUNDED"


@dataclass
class LPProblem:
    """min c.x subject to rows (coeffs, sense, rhs); default bound x >= 0."""

    variables: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def add_var(self, name, lo=0, hi=None):
        if name in self.bounds:
            raise ValueError(f"duplicate variable {name!r}")
        self.variables.append(name)
        self.bounds[name] = (lo, hi)
        return name

    def add_constraint(self, coeffs: dict, sense: str, rhs):
        if sense not in (">=", "<=", "="):
            raise ValueError(f"bad sense {sense!r}")
        for v in coeffs:
            if v not in self.bounds:
                raise ValueError(f"unknown variable {v!r}")
        self.constraints.append((dict(coeffs), sense, rhs))

    def set_objective(self, coeffs: dict):
        for v in coeffs:
            if v not in self.bounds:
                raise ValueError(f"unknown variable {v!r}")
        self.objective = dict(coeffs)


@dataclass
class LPSolution:
    status: str
    value: object = None
    primal: dict = field(default_factory=dict)
    dual: list = field(default_factory=list)
    iterations: int = 0
    verified: bool = False


class _Standard:
    """min costs.x with A x = b, x >= 0; columns stored sparse."""

    def __init__(self, m: int):
        self.m = m
        self.col_ptr = [0]
        self.col_idx: list = []
        self.col_val: list = []
        self.costs: list = []

    def add_col(self, idxs, vals, cost) -> int:
        for i, v in zip(idxs, vals):
            if v:
                self.col_idx.append(i)
                self.col_val.append(R(v))
        self.col_ptr.append(len(self.col_idx))
        self.costs.append(R(cost))
        return len(self.costs) - 1

    @property
    def ncols(self):
        return len(self.costs)

    def column(self, j):
        lo, hi = self.col_ptr[j], self.col_ptr[j + 1]
        return self.col_idx[lo:hi], self.col_val[lo:hi]


def _iterate(lp: _Standard, basis, binv, xb0, xb1, banned=None):
    """Simplex main loop from a feasible factorized basis.

    xb0/xb1 are the basic values under rhs b + eps*1 for a symbolic
    infinitesimal eps; the perturbation keeps pivots strictly improving
    on heavily degenerate instances. Mutates basis/binv/xb* in place.
    Returns (status, pi, iters).
    """
    m = lp.m
    in_basis = [False] * lp.ncols
    for j in basis:
        in_basis[j] = True
    if banned:
        for j in banned:
            in_basis[j] = True
    costs = lp.costs
    iters = 0
    max_iters = 200000 + 400 * m
    while True:
        if iters > max_iters:
            raise RuntimeError("simplex iteration cap exceeded")
        pos, vals = [], []
        for i in range(m):
            c = costs[basis[i]]
            if c:
                pos.append(i)
                vals.append(c)
        pi = _kernels.btran(binv, pos, vals, m)
        j, _ = _kernels.price_dantzig(
            pi, lp.col_ptr, lp.col_idx, lp.col_val, costs, in_basis
        )
        if j < 0:
            return OPTIMAL, pi, iters
        idxs, cvals = lp.column(j)
        d = _kernels.ftran(binv, idxs, cvals, m)
        r = _kernels.ratio_lex(binv, xb0, xb1, d, m)
        if r < 0:
            return UNBOUNDED, pi, iters
        in_basis[basis[r]] = False
        in_basis[j] = True
        basis[r] = j
        _kernels.pivot(binv, xb0, xb1, d, r, m)
        iters += 1


def _identity_start(lp: _Standard, b):
    """Factorization for a starting basis whose columns form I."""
    m = lp.m
    binv = [[1 if i == k else 0 for k in range(m)] for i in range(m)]
    xb0 = [R(v) for v in b]
    for v in xb0:
        if v < 0:
            raise RuntimeError("infeasible starting basis")
    xb1 = [R(1)] * m
    return binv, xb0, xb1


_WARM_START_MIN_M = 128
_WARM_START_CAP = 30000


def _float_basis_guess(lp: _Standard, b, basis0):
    """Float revised simplex used only to propose a near-optimal basis.

    Devex pricing; Dantzig stalls on these heavily degenerate duals.
    The proposal steers the exact stage; a poor one costs extra exact
    pivots, never correctness. Returns a basis column list, or None if
    the float iteration degenerates numerically.
    """
    m = lp.m
    ncols = lp.ncols
    A = np.zeros((m, ncols))
    cp, ci, cv = lp.col_ptr, lp.col_idx, lp.col_val
    for j in range(ncols):
        for k in range(cp[j], cp[j + 1]):
            A[ci[k], j] = float(cv[k])
    costs = np.array([float(x) for x in lp.costs])
    b_f = np.array([float(x) for x in b])
    basis = list(basis0)
    binv = np.eye(m)
    xb = b_f.copy()
    in_basis = np.zeros(ncols, dtype=bool)
    in_basis[basis] = True
    weights = np.ones(ncols)
    for it in range(_WARM_START_CAP):
        if it and it % 2048 == 0:
            # refresh the drifting inverse from the basis itself
            try:
                binv = np.linalg.inv(A[:, basis])
            except np.linalg.LinAlgError:
                return basis
            xb = np.maximum(binv @ b_f, 0.0)
        pi = costs[basis] @ binv
        red = costs - pi @ A
        improving = (red < -1e-9) & ~in_basis
        if not improving.any():
            return basis
        score = np.where(improving, red * red / weights, -1.0)
        j = int(np.argmax(score))
        d = binv @ A[:, j]
        pos = d > 1e-9
        if not pos.any():
            return basis
        ratio = np.full(m, np.inf)
        ratio[pos] = xb[pos] / d[pos]
        theta = ratio.min()
        cand = np.nonzero(ratio <= theta + 1e-9)[0]
        r = int(cand[np.argmax(d[cand])])
        piv = d[r]
        alpha = binv[r] @ A
        wq = weights[j]
        np.maximum(weights, (alpha / piv) ** 2 * wq, out=weights)
        weights[basis[r]] = max(wq / (piv * piv), 1.0)
        if weights.max() > 1e12:
            weights[:] = 1.0
        in_basis[basis[r]] = False
        in_basis[j] = True
        basis[r] = j
        brow = binv[r] / piv
        xbr = xb[r] / piv
        d[r] = 0.0
        binv -= np.outer(d, brow)
        binv[r] = brow
        xb -= d * xbr
        xb[r] = xbr
        np.maximum(xb, 0.0, out=xb)
        if not np.isfinite(xb).all():
            return None
    return basis


def _refactor_exact(lp: _Standard, b, basis):
    """Exact inverse of a proposed basis by sparse Gauss-Jordan.

    Returns (binv, xb0, xb1), or None when the columns are singular or
    the basic point is infeasible, so the caller falls back to the
    all-slack start.
    """
    m = lp.m
    rows = [dict() for _ in range(m)]
    invs = [dict() for _ in range(m)]
    for pos, j in enumerate(basis):
        idxs, vals = lp.column(j)
        for i, v in zip(idxs, vals):
            rows[i][pos] = v
    for i in range(m):
        invs[i][i] = R(1)
    where = [-1] * m
    used = [False] * m
    for k in range(m):
        # sparsest eligible pivot row limits fill-in
        best = -1
        best_n = 0
        for i in range(m):
            if used[i]:
                continue
            if rows[i].get(k):
                n = len(rows[i])
                if best < 0 or n < best_n:
                    best, best_n = i, n
        if best < 0:
            return None
        used[best] = True
        where[k] = best
        piv = rows[best][k]
        if piv != 1:
            rows[best] = {c: v / piv for c, v in rows[best].items()}
            invs[best] = {c: v / piv for c, v in invs[best].items()}
        prow = rows[best]
        pinv = invs[best]
        for i in range(m):
            if i == best:
                continue
            f = rows[i].get(k)
            if not f:
                continue
            ri = rows[i]
            for c, v in prow.items():
                nv = ri.get(c, 0) - f * v
                if nv:
                    ri[c] = nv
                else:
                    ri.pop(c, None)
            vi = invs[i]
            for c, v in pinv.items():
                nv = vi.get(c, 0) - f * v
                if nv:
                    vi[c] = nv
                else:
                    vi.pop(c, None)
    binv = [[R(0)] * m for _ in range(m)]
    for k in range(m):
        row = binv[k]
        for c, v in invs[where[k]].items():
            row[c] = v
    nz = [(i, R(v)) for i, v in enumerate(b) if v]
    xb0 = []
    for k in range(m):
        row = binv[k]
        acc = R(0)
        for i, v in nz:
            if row[i]:
                acc += row[i] * v
        xb0.append(acc)
    if any(v < 0 for v in xb0):
        return None
    xb1 = [sum(row, R(0)) for row in binv]
    return binv, xb0, xb1


def solve_min_geq_lp(nvars: int, rows, costs):
    """Solve min{c.f : every row holds, f >= 0} with c >= 0 exactly.

    rows: list of (idxs, vals, rhs) meaning sum(vals*f[idxs]) >= rhs.
    Returns (value, f, y, iterations); f is the optimal point, y the
    optimal row multipliers. Feasibility, dual feasibility and the
    zero duality gap are all re-verified before returning.
    """
    costs = [R(c) for c in costs]
    for c in costs:
        if c < 0:
            raise ValueError("objective coefficients must be nonnegative")
    lp = _Standard(nvars)
    nrows = len(rows)
    for idxs, vals, rhs in rows:
        lp.add_col(idxs, vals, -R(rhs))
    slack0 = lp.ncols
    for i in range(nvars):
        lp.add_col([i], [R(1)], 0)
    basis = list(range(slack0, slack0 + nvars))
    binv = None
    if lp.m >= _WARM_START_MIN_M:
        guess = _float_basis_guess(lp, costs, basis)
        if guess is not None:
            fact = _refactor_exact(lp, costs, guess)
            if fact is not None:
                binv, xb0, xb1 = fact
                basis = guess
    if binv is None:
        basis = list(range(slack0, slack0 + nvars))
        binv, xb0, xb1 = _identity_start(lp, costs)
    status, pi, iters = _iterate(lp, basis, binv, xb0, xb1)
    if status != OPTIMAL:
        # the dual of these row families is never unbounded: that would
        # mean the primal min problem is infeasible, and every caller
        # builds rows that a large constant f satisfies.
        raise RuntimeError(f"unexpected LP status {status}")

    f = [-p for p in pi]
    y = [R(0)] * nrows
    for i in range(lp.m):
        if basis[i] < nrows:
            y[basis[i]] = xb0[i]

    _verify_pair(rows, costs, f, y)
    value = _dot_dense(costs, f)
    return value, f, y, iters


def _dot_dense(a, b):
    acc = R(0)
    for x, yv in zip(a, b):
        if x and yv:
            acc += x * yv
    return acc


def _verify_pair(rows, costs, f, y):
    """Exact optimality certificate: primal/dual feasibility,
    complementary slackness, zero gap. Any failure is an internal bug."""
    for v in f:
        if v < 0:
            raise RuntimeError("LP verify: negative primal value")
    slacks = []
    for idxs, vals, rhs in rows:
        acc = -R(rhs)
        for i, val in zip(idxs, vals):
            if val:
                acc += R(val) * f[i]
        if acc < 0:
            raise RuntimeError("LP verify: primal infeasible")
        slacks.append(acc)
    ysum = [R(0)] * len(costs)
    for (idxs, vals, _), yj in zip(rows, y):
        if yj < 0:
            raise RuntimeError("LP verify: negative multiplier")
        if yj:
            for i, val in zip(idxs, vals):
                ysum[i] += R(val) * yj
    for i in range(len(costs)):
        gap = costs[i] - ysum[i]
        if gap < 0:
            raise RuntimeError("LP verify: dual infeasible")
        if f[i] and gap:
            raise RuntimeError("LP verify: slackness (primal)")
    for sj, yj in zip(slacks, y):
        if yj and sj:
            raise RuntimeError("LP verify: slackness (dual)")
    lhs = _dot_dense(costs, f)
    rhs = R(0)
    for (_, _, r0), yj in zip(rows, y):
        if yj:
            rhs += R(r0) * yj
    if lhs != rhs:
        raise RuntimeError("LP verify: duality gap")


def solve_lp(problem: LPProblem) -> LPSolution:
    """General exact solver (two-phase). Small instances only.

    Dual values follow the convention: y >= 0 on >= rows, y <= 0 on
    <= rows, free on equalities (for the minimization orientation).
    """
    names = list(problem.variables)
    col_of = {}
    shift = {}
    rows = [(dict(c), s, R(r)) for c, s, r in problem.constraints]
    ncols = 0
    for v in names:
        lo, hi = problem.bounds[v]
        if lo is None:
            col_of[v] = (ncols, ncols + 1)  # x = x+ - x-
            ncols += 2
        else:
            col_of[v] = (ncols, None)  # x = x' + lo
            shift[v] = R(lo)
            ncols += 1
        if hi is not None:
            rows.append(({v: 1}, "<=", R(hi)))
    nreported = len(problem.constraints)

    m = len(rows)
    cols_data = [dict() for _ in range(ncols)]
    rhs_adj = []
    for ri, (coeffs, sense, rhs) in enumerate(rows):
        acc = R(rhs)
        for v, cval in coeffs.items():
            cval = R(cval)
            if v in shift and shift[v]:
                acc -= cval * shift[v]
            p, nmin = col_of[v]
            cols_data[p][ri] = cols_data[p].get(ri, R(0)) + cval
            if nmin is not None:
                cols_data[nmin][ri] = cols_data[nmin].get(ri, R(0)) - cval
        rhs_adj.append((sense, acc))

    costs = [R(0)] * ncols
    obj_const = R(0)
    for v, cval in problem.objective.items():
        cval = R(cval)
        p, nmin = col_of[v]
        costs[p] += cval
        if nmin is not None:
            costs[nmin] -= cval
        if v in shift and shift[v]:
            obj_const += cval * shift[v]

    flip = [acc < 0 for (_, acc) in rhs_adj]
    lp = _Standard(m)
    for j in range(ncols):
        idxs = sorted(cols_data[j])
        vals = [-cols_data[j][i] if flip[i] else cols_data[j][i] for i in idxs]
        lp.add_col(idxs, vals, costs[j])
    for ri, (sense, _) in enumerate(rhs_adj):
        if sense == "=":
            continue
        up = (sense == "<=") != flip[ri]
        lp.add_col([ri], [R(1) if up else R(-1)], 0)
    art_cols = []
    for ri in range(m):
        art_cols.append(lp.add_col([ri], [R(1)], 0))
    art_set = set(art_cols)
    b = [(-acc if flip[ri] else acc) for ri, (_, acc) in enumerate(rhs_adj)]

    saved = list(lp.costs)
    lp.costs = [R(1) if j in art_set else R(0) for j in range(lp.ncols)]
    basis = list(art_cols)
    if any(v < 0 for v in b):
        raise RuntimeError("rhs sign normalization failed")
    binv, xb0, xb1 = _identity_start(lp, b)
    status, pi, it1 = _iterate(lp, basis, binv, xb0, xb1)
    mass = sum((xb0[i] for i in range(m) if basis[i] in art_set), R(0))
    if mass > 0:
        return LPSolution(INFEASIBLE, iterations=it1)

    # drive basic artificials out where possible; all stay banned
    basic = set(basis)
    for i in range(m):
        if basis[i] in art_set:
            for j in range(lp.ncols):
                if j in art_set or j in basic:
                    continue
                idxs, vals = lp.column(j)
                d = _kernels.ftran(binv, idxs, vals, m)
                if d[i]:
                    _kernels.pivot(binv, xb0, xb1, d, i, m)
                    basic.discard(basis[i])
                    basis[i] = j
                    basic.add(j)
                    break

    lp.costs = saved
    status, pi, it2 = _iterate(lp, basis, binv, xb0, xb1, banned=art_set)
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, iterations=it1 + it2)

    xvals = {}
    for i in range(m):
        if basis[i] < ncols:
            xvals[basis[i]] = xb0[i]
    primal = {}
    for v in names:
        p, nmin = col_of[v]
        val = xvals.get(p, R(0))
        if nmin is not None:
            val = val - xvals.get(nmin, R(0))
        if v in shift:
            val = val + shift[v]
        primal[v] = val

    value = obj_const
    for v, cval in problem.objective.items():
        value += R(cval) * (primal[v] - shift.get(v, R(0)))

    dual = []
    for ri in range(nreported):
        yv = pi[ri]
        if flip[ri]:
            yv = -yv
        dual.append(yv)
    sol = LPSolution(OPTIMAL, value, primal, dual, it1 + it2)
    sol.verified = _verify_general(problem, sol)
    if not sol.verified:
        raise RuntimeError("LP verify: reported point infeasible")
    return sol


def _verify_general(problem: LPProblem, sol: LPSolution) -> bool:
    for v, (lo, hi) in problem.bounds.items():
        x = sol.primal[v]
        if lo is not None and x < R(lo):
            return False
        if hi is not None and x > R(hi):
            return False
    for coeffs, sense, rhs in problem.constraints:
        acc = R(0)
        for v, cval in coeffs.items():
            acc += R(cval) * sol.primal[v]
        rhs = R(rhs)
        if sense == ">=" and acc < rhs:
            return False
        if sense == "<=" and acc > rhs:
            return False
        if sense == "=" and acc != rhs:
            return False
    return True
