import itertools
import random
from fractions import Fraction

from hurwitz.lp import solve_lp


def brute_force(c, A, b):
    """Enumerate basic solutions of Ax=b, x>=0; exact but exponential."""
    m, n = len(A), len(c)
    best = None
    feasible = False
    for k in range(min(m, n) + 1):
      for cols in itertools.combinations(range(n), k):
        sol = _solve_square([[A[i][j] for j in cols]
                             for i in range(m)], b)
        if sol is None:
            continue
        x = [Fraction(0)] * n
        for j, v in zip(cols, sol):
            x[j] = v
        if any(v < 0 for v in x):
            continue
        if all(sum(A[i][j] * x[j] for j in range(n)) == b[i]
               for i in range(m)):
            feasible = True
            val = sum(c[j] * x[j] for j in range(n))
            if best is None or val > best:
                best = val
    return feasible, best


def _solve_square(M, b):
    m = len(M)
    n = len(M[0]) if M else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])]
           for i, row in enumerate(M)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        aug[row] = [x / aug[row][col] for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if any(all(v == 0 for v in r[:-1]) and r[-1] != 0 for r in aug):
        return None
    if len(pivots) < n:
        return None
    sol = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        sol[col] = aug[r][-1]
    return sol


def test_simple_feasible():
    res = solve_lp([Fraction(1), Fraction(0)],
                   [[Fraction(1), Fraction(1)]], [Fraction(3)])
    assert res.status == "optimal"
    assert res.objective == 3


def test_simple_infeasible_has_certificate():
    res = solve_lp([Fraction(0)],
                   [[Fraction(1)], [Fraction(1)]],
                   [Fraction(1), Fraction(2)])
    assert res.status == "infeasible"
    assert res.certificate is not None


def test_unbounded_detected():
    res = solve_lp([Fraction(1), Fraction(0)],
                   [[Fraction(1), Fraction(-1)]], [Fraction(0)])
    assert res.status == "unbounded"


def test_degenerate_cycles_terminate():
    # classic degeneracy: multiple bases describe the same vertex
    c = [Fraction(x) for x in (3, 2, 0, 0, 0)]
    A = [[Fraction(x) for x in row] for row in
         ((1, 1, 1, 0, 0), (1, 0, 0, 1, 0), (0, 1, 0, 0, 1))]
    b = [Fraction(x) for x in (0, 0, 0)]
    res = solve_lp(c, A, b)
    assert res.status == "optimal"
    assert res.objective == 0


def test_against_brute_force_random():
    rng = random.Random(321)
    mismatches = 0
    for _ in range(120):
        m = rng.randint(1, 3)
        n = rng.randint(m, 5)
        A = [[Fraction(rng.randint(-3, 3)) for _ in range(n)]
             for _ in range(m)]
        b = [Fraction(rng.randint(-4, 4)) for _ in range(m)]
        c = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        res = solve_lp(c, A, b)
        feasible, best = brute_force(c, A, b)
        if res.status == "infeasible":
            mismatches += feasible
        elif res.status == "optimal":
            # brute force sees the same optimum over basic solutions
            mismatches += (not feasible) or (best != res.objective)
        else:
            mismatches += not feasible
    assert mismatches == 0
