"""Independent brute-force oracles for the test-suite.

Nothing here imports the package: ranks and linear solves are redone with
plain Fraction elimination so that agreement means something.
"""
from fractions import Fraction
from itertools import combinations, product


def frac_rref(rows):
    """Row-reduce a list of rational rows; return (reduced rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def frac_rank(rows):
    rows = [r for r in rows if any(Fraction(x) != 0 for x in r)]
    return len(frac_rref(rows)[0]) if rows else 0


def affine_rank_oracle(points):
    base = points[0]
    return frac_rank([[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]])


def transversal_oracle(sets, m):
    """Some choice of one point per set with affine rank <= m (full product scan)."""
    if any(len(s) == 0 for s in sets):
        return False
    return any(affine_rank_oracle(list(c)) <= m for c in product(*sets))


def frac_solve(A, b):
    """One solution of A x = b (free variables zero) or None."""
    n = len(A[0])
    red, piv = frac_rref([list(r) + [bi] for r, bi in zip(A, b)])
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def lp_feasible_oracle(n, constraints, nonnegative=()):
    """Feasibility of {x : constraints} by enumerating minimal faces.

    ``constraints`` are (coeffs, relation, rhs) with relation in <=, =, >=.
    Everything is rewritten as a x <= b.  A nonempty polyhedron has a minimal
    face {A_I x = b_I} with rank(A_I) = rank(A); every constraint is
    constant on it, so one particular solution per row subset decides.
    """
    rows = []
    for a, rel, b in constraints:
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if rel in ("<=", "="):
            rows.append((a, b))
        if rel in (">=", "="):
            rows.append(([-x for x in a], -b))
    for j in nonnegative:
        e = [Fraction(0)] * n
        e[j] = Fraction(-1)
        rows.append((e, Fraction(0)))
    A = [r for r, _ in rows]
    rank = frac_rank(A) if A else 0
    if rank == 0:
        return all(b >= 0 for _, b in rows)
    for idx in combinations(range(len(rows)), rank):
        sub = [rows[i][0] for i in idx]
        if frac_rank(sub) < rank:
            continue
        x = frac_solve(sub, [rows[i][1] for i in idx])
        if x is not None and all(sum(a * xi for a, xi in zip(r, x)) <= b for r, b in rows):
            return True
    return False


def subset_sum_oracle(a, b):
    return any(sum(a[i] for i in sub) == b
               for r in range(len(a) + 1) for sub in combinations(range(len(a)), r))


def hull_point_on_flat(base, basis, points):
    """Exact check helper: is the (given) point in the affine span of base+basis?"""
    diff = [Fraction(p) - Fraction(q) for p, q in zip(points, base)]
    return frac_rank(list(basis) + [diff]) == frac_rank(list(basis)) if basis else not any(diff)
