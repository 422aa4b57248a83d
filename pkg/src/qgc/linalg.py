"""Small exact linear algebra over the scalar field.

Dense routines cover graded-basis reduction and Gram handling (sizes stay in
the dozens); a sparse Gauss-Jordan backs the centrality solver.  Gram
inversion runs fraction-free over integer Laurent polynomials to keep
intermediate entries small.
"""

from __future__ import annotations

from .errors import NoSolution, NonUniqueSolution
from .scalars import ZERO, LaurentBi, Scalar


def rref(rows):
    """Reduced row echelon form over the scalar field.

    rows: list of lists of Scalar (modified copies are returned).
    Returns (reduced_rows, pivot_columns).
    """
    mat = [list(r) for r in rows]
    pivots = []
    lead = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = None
        for r in range(lead, len(mat)):
            if not mat[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        mat[lead], mat[piv] = mat[piv], mat[lead]
        inv = mat[lead][col].inverse()
        mat[lead] = [x * inv for x in mat[lead]]
        for r in range(len(mat)):
            if r != lead and not mat[r][col].is_zero():
                c = mat[r][col]
                mat[r] = [a - c * b for a, b in zip(mat[r], mat[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(mat):
            break
    return mat[:lead], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def invert(mat):
    """Inverse of a square Scalar matrix.

    Denominators are cleared row by row, then a fraction-free (Bareiss)
    forward elimination runs over LaurentBi before an exact back-substitution.
    Raises ArithmeticError when the matrix is singular.
    """
    d = len(mat)
    if d == 0:
        return []
    work = []
    for i, row in enumerate(mat):
        den = LaurentBi.const(1)
        for x in row:
            g = den.gcd(x.den)
            den = den * x.den.divexact(g)
        cleared = [x.num * den.divexact(x.den) for x in row]
        aug = [LaurentBi.const(0)] * d
        aug[i] = den
        work.append(cleared + aug)
    n_all = 2 * d
    prev = LaurentBi.const(1)
    for k in range(d):
        piv = None
        for r in range(k, d):
            if not work[r][k].is_zero():
                piv = r
                break
        if piv is None:
            raise ArithmeticError("singular matrix")
        work[k], work[piv] = work[piv], work[k]
        for r in range(k + 1, d):
            for c in range(k + 1, n_all):
                val = work[k][k] * work[r][c] - work[r][k] * work[k][c]
                work[r][c] = val.divexact(prev)
            work[r][k] = LaurentBi.const(0)
        prev = work[k][k]
    out = [[ZERO] * d for _ in range(d)]
    for col in range(d):
        sol = [None] * d
        for r in range(d - 1, -1, -1):
            acc = Scalar(work[r][d + col])
            for c in range(r + 1, d):
                acc = acc - Scalar(work[r][c]) * sol[c]
            sol[r] = acc / Scalar(work[r][r])
        for r in range(d):
            out[r][col] = sol[r]
    return out


def solve_unique(equations, variables):
    """Solve a linear system expecting exactly one solution.

    equations: iterable of (coeffs: dict[var, Scalar], rhs: Scalar).
    variables: all unknowns that must be determined.
    Raises NoSolution / NonUniqueSolution accordingly.
    """
    pivots = {}
    for coeffs, rhs in equations:
        row = {v: c for v, c in coeffs.items() if not c.is_zero()}
        for v in [v for v in row if v in pivots]:
            c = row.pop(v)
            prow, prhs = pivots[v]
            for w, cw in prow.items():
                nv = row.get(w, ZERO) - c * cw
                if nv.is_zero():
                    row.pop(w, None)
                else:
                    row[w] = nv
            rhs = rhs - c * prhs
        if not row:
            if not rhs.is_zero():
                raise NoSolution("inconsistent linear system")
            continue
        pv = min(row)
        c = row.pop(pv)
        inv = c.inverse()
        row = {w: cw * inv for w, cw in row.items()}
        rhs = rhs * inv
        for v, (prow, prhs) in pivots.items():
            if pv in prow:
                c2 = prow.pop(pv)
                for w, cw in row.items():
                    nv = prow.get(w, ZERO) - c2 * cw
                    if nv.is_zero():
                        prow.pop(w, None)
                    else:
                        prow[w] = nv
                pivots[v] = (prow, prhs - c2 * rhs)
        pivots[pv] = (row, rhs)
    missing = [v for v in variables if v not in pivots]
    if missing:
        raise NonUniqueSolution(f"{len(missing)} free unknowns remain")
    # fully reduced: every pivot row only references pivot variables with
    # zero coefficient, so the right-hand sides are the values
    return {v: prhs for v, (prow, prhs) in pivots.items()}
