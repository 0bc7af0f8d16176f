import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from girthforge.lp import (
    INFEASIBLE,
    LPProblem,
    OPTIMAL,
    UNBOUNDED,
    solve_lp,
    solve_min_geq_lp,
)
from girthforge.rational import R


def test_min_geq_tiny():
    value, f, y, _ = solve_min_geq_lp(
        2, [([0, 1], [1, 1], 2), ([0], [1], R(1, 3))], [1, 1])
    assert value == 2
    assert f[0] + f[1] == 2 and f[0] >= R(1, 3)
    assert sum(y) > 0


def test_min_geq_exact_rational_data():
    # min 3x+5y with x+2y >= 7/3, x >= 1/2
    value, f, _, _ = solve_min_geq_lp(
        2, [([0, 1], [1, 2], R(7, 3)), ([0], [1], R(1, 2))], [3, 5])
    assert value == R(3, 2) + 5 * R(11, 12)
    assert f == [R(1, 2), R(11, 12)]


def test_min_geq_rejects_negative_costs():
    with pytest.raises(ValueError):
        solve_min_geq_lp(1, [([0], [1], 1)], [-1])


def scipy_value(nvars, rows, costs):
    a_ub = np.zeros((len(rows), nvars))
    b_ub = np.zeros(len(rows))
    for r, (idxs, vals, rhs) in enumerate(rows):
        for j, v in zip(idxs, vals):
            a_ub[r, j] -= float(v)
        b_ub[r] = -float(rhs)
    res = linprog(np.array([float(c) for c in costs]), A_ub=a_ub,
                  b_ub=b_ub, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def test_min_geq_matches_scipy_on_random_instances():
    rng = random.Random(311)
    for _ in range(60):
        nvars = rng.randrange(2, 7)
        rows = []
        for _ in range(rng.randrange(1, 9)):
            k = rng.randrange(1, nvars + 1)
            idxs = sorted(rng.sample(range(nvars), k))
            vals = [rng.randrange(1, 6) for _ in idxs]
            rows.append((idxs, vals, rng.randrange(0, 20)))
        costs = [rng.randrange(1, 9) for _ in range(nvars)]
        value, _, _, _ = solve_min_geq_lp(nvars, rows, costs)
        assert abs(float(value) - scipy_value(nvars, rows, costs)) < 1e-7


def test_min_geq_degenerate_zero_rhs():
    rng = random.Random(12)
    for _ in range(20):
        nvars = rng.randrange(2, 6)
        rows = [(sorted(rng.sample(range(nvars), 2)), [1, 1], 0)
                for _ in range(4)]
        rows.append((list(range(nvars)), [1] * nvars, 5))
        costs = [rng.randrange(1, 4) for _ in range(nvars)]
        value, _, _, _ = solve_min_geq_lp(nvars, rows, costs)
        assert abs(float(value) - scipy_value(nvars, rows, costs)) < 1e-7


def test_min_geq_warm_start_path():
    # enough rows to trigger the float warm start, answer known exactly
    nvars = 140
    rows = [([i], [1], i + 1) for i in range(nvars)]
    rows.append((list(range(nvars)), [1] * nvars, 0))
    value, f, _, _ = solve_min_geq_lp(nvars, rows, [1] * nvars)
    assert value == nvars * (nvars + 1) // 2
    assert f == [R(i + 1) for i in range(nvars)]


def test_solve_lp_optimal_with_equality_and_bounds():
    p = LPProblem()
    p.add_var("x", lo=0, hi=2)
    p.add_var("y", lo=1, hi=3)
    p.add_var("z", lo=None)  # free
    p.add_constraint({"x": 1, "y": 1, "z": 1}, "=", 4)
    p.add_constraint({"z": 1}, "<=", 1)
    p.set_objective({"x": 2, "y": 1, "z": 3})
    sol = solve_lp(p)
    assert sol.status == OPTIMAL
    assert sol.verified
    # objective rewrites to 12 - x - 2y, so push x and y to their caps
    assert sol.value == 4
    assert sol.primal["x"] == 2
    assert sol.primal["y"] == 3
    assert sol.primal["z"] == -1


def test_solve_lp_duals_sign_convention():
    p = LPProblem()
    p.add_var("x")
    p.add_constraint({"x": 1}, ">=", 3)
    p.add_constraint({"x": 1}, "<=", 10)
    p.set_objective({"x": 5})
    sol = solve_lp(p)
    assert sol.status == OPTIMAL and sol.value == 15
    assert sol.dual[0] >= 0
    assert sol.dual[1] <= 0


def test_solve_lp_infeasible():
    p = LPProblem()
    p.add_var("x", lo=0, hi=1)
    p.add_constraint({"x": 1}, ">=", 2)
    p.set_objective({"x": 1})
    assert solve_lp(p).status == INFEASIBLE


def test_solve_lp_unbounded():
    p = LPProblem()
    p.add_var("x", lo=None)
    p.add_constraint({"x": 1}, "<=", 5)
    p.set_objective({"x": 1})
    assert solve_lp(p).status == UNBOUNDED


def test_solve_lp_duplicate_and_unknown_vars():
    p = LPProblem()
    p.add_var("x")
    with pytest.raises(ValueError):
        p.add_var("x")
    with pytest.raises(ValueError):
        p.add_constraint({"y": 1}, ">=", 0)
    with pytest.raises(ValueError):
        p.add_constraint({"x": 1}, ">>", 0)
    with pytest.raises(ValueError):
        p.set_objective({"nope": 1})


def test_solve_lp_matches_scipy_on_random_instances():
    rng = random.Random(777)
    solved = 0
    for _ in range(60):
        nvars = rng.randrange(1, 5)
        p = LPProblem()
        names = [f"v{i}" for i in range(nvars)]
        bnds = []
        for name in names:
            lo = rng.choice([0, 0, 1, None])
            hi = rng.choice([None, None, rng.randrange(2, 8)])
            if lo is not None and hi is not None and hi < lo:
                lo, hi = hi, lo
            p.add_var(name, lo=lo, hi=hi)
            bnds.append((lo, hi))
        nrows = rng.randrange(1, 5)
        a = []
        senses = []
        rhs = []
        for _ in range(nrows):
            coeffs = {n: rng.randrange(-3, 4) for n in names}
            sense = rng.choice([">=", "<=", "="])
            r = rng.randrange(-6, 10)
            p.add_constraint(coeffs, sense, r)
            a.append([coeffs[n] for n in names])
            senses.append(sense)
            rhs.append(r)
        obj = {n: rng.randrange(-4, 5) for n in names}
        p.set_objective(obj)

        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for row, s, r in zip(a, senses, rhs):
            if s == "=":
                a_eq.append(row)
                b_eq.append(r)
            elif s == "<=":
                a_ub.append(row)
                b_ub.append(r)
            else:
                a_ub.append([-x for x in row])
                b_ub.append(-r)
        res = linprog([obj[n] for n in names],
                      A_ub=a_ub or None, b_ub=b_ub or None,
                      A_eq=a_eq or None, b_eq=b_eq or None,
                      bounds=bnds, method="highs")
        sol = solve_lp(p)
        if res.status == 2:
            assert sol.status == INFEASIBLE
        elif res.status == 3:
            assert sol.status == UNBOUNDED
        else:
            assert sol.status == OPTIMAL
            assert sol.verified
            assert abs(float(sol.value) - res.fun) < 1e-7
            solved += 1
    assert solved >= 10


def test_solutions_are_exact_fractions():
    value, f, _, _ = solve_min_geq_lp(
        3,
        [([0, 1], [2, 3], R(1, 7)), ([1, 2], [5, 1], R(2, 3)),
         ([0, 2], [1, 1], R(1, 9))],
        [R(1, 2), 1, 2])
    check = Fraction(int(value.numerator), int(value.denominator))
    back = sum(Fraction(int(c.numerator), int(c.denominator)) *
               Fraction(int(x.numerator), int(x.denominator))
               for c, x in zip([R(1, 2), R(1), R(2)], f))
    assert check == back
