"""Exact integer and rational linear algebra on small lattice matrices.

Vectors are plain tuples of Python ints, matrices are tuples of row tuples.
Everything here is overflow-free because Python integers are unbounded.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]
Covector = tuple[Fraction, ...]


class RankError(ValueError):
    """Raised when vectors of different ambient rank are mixed."""


def as_vector(v: Sequence[int], rank: Optional[int] = None) -> Vector:
    out = tuple(int(x) for x in v)
    for x, y in zip(out, v):
        if x != y:
            raise ValueError(f"non-integer coordinate {y!r}")
    if rank is not None and len(out) != rank:
        raise RankError(f"expected a vector of rank {rank}, got {len(out)}")
    return out


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(as_vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> Vector:
    """Divide `v` by the gcd of its coordinates.

    >>> primitive((2, 4))
    (1, 2)
    """
    v = as_vector(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector has no primitive representative")
    return tuple(x // g for x in v)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise RankError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def pivot_columns(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Coordinates on which projection is injective on the span of `vectors`."""
    if not vectors:
        return []
    _, piv = _rref([[Fraction(x) for x in v] for v in vectors])
    return piv


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Primitive integer vectors spanning {x : r.x = 0 for every row r} over Q."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, piv = _rref([[Fraction(x) for x in r] for r in rows])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        den = 1
        for q in x:
            den = den * q.denominator // gcd(den, q.denominator)
        basis.append(primitive([int(q * den) for q in x]))
    return basis


def cross(vectors: Sequence[Sequence[int]], dim: int) -> Vector:
    """Integer covector n with n.x == det(vectors..., x) for all x."""
    if len(vectors) != dim - 1:
        raise ValueError("need dim-1 vectors")
    out = []
    for j in range(dim):
        minor = [[v[c] for c in range(dim) if c != j] for v in vectors]
        s = -1 if (dim - 1 + j) % 2 else 1
        out.append(s * determinant(minor))
    return tuple(out)


def adjugate(m: Sequence[Sequence[int]]) -> Matrix:
    """Integer adjugate, so that adjugate(m) @ m == det(m) * I."""
    n = len(m)
    if n == 1:
        return ((1,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            s = -1 if (i + j) % 2 else 1
            adj[j][i] = s * determinant(minor)
    return tuple(tuple(r) for r in adj)


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def hermite_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``m @ U == H``.  ``H`` is in
    lower echelon form: each pivot is positive and the entries left of a pivot
    are reduced into ``[0, pivot)``.
    """
    h = [list(r) for r in as_matrix(m)]
    if not h:
        return (), ()
    nrows, ncols = len(h), len(h[0])
    u = [list(r) for r in identity(ncols)]

    def colop(p, q, a, b, c, d):
        # col_p <- a*col_p + b*col_q ; col_q <- c*col_p + d*col_q
        for mat in (h, u):
            for row in mat:
                x, y = row[p], row[q]
                row[p] = a * x + b * y
                row[q] = c * x + d * y

    pc = 0
    for i in range(nrows):
        if pc >= ncols:
            break
        for j in range(pc + 1, ncols):
            b = h[i][j]
            if b == 0:
                continue
            a = h[i][pc]
            g, x, y = xgcd(a, b)
            colop(pc, j, x, y, -b // g, a // g)
        if h[i][pc] == 0:
            continue
        if h[i][pc] < 0:
            for mat in (h, u):
                for row in mat:
                    row[pc] = -row[pc]
        piv = h[i][pc]
        for j in range(pc):
            q = h[i][j] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[pc]
        pc += 1
    return tuple(tuple(r) for r in h), tuple(tuple(r) for r in u)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """A Z-basis of {x in Z^ncols : r.x = 0 for every row r}."""
    if not rows:
        return list(identity(ncols))
    h, u = hermite_form(rows)
    out = []
    for j in range(ncols):
        if all(h[i][j] == 0 for i in range(len(h))):
            out.append(tuple(u[i][j] for i in range(ncols)))
    return out


def solve_rational(m: Sequence[Sequence[int]], rhs: Sequence) -> Optional[Covector]:
    """Solve ``m @ x == rhs`` exactly; None when m is singular or non-square."""
    n = len(m)
    if any(len(r) != n for r in m) or len(rhs) != n:
        return None
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(m, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return tuple(row[n] for row in aug)


def solve_consistent(m: Sequence[Sequence[int]], rhs: Sequence) -> Optional[Covector]:
    """A particular solution of a possibly non-square system, or None."""
    if not m:
        return None
    ncols = len(m[0])
    red, piv = _rref([[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(m, rhs)])
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return tuple(x)


def maximal_minors_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x d matrix of rank k."""
    k = len(vectors)
    d = len(vectors[0])
    g = 0
    for cols in combinations(range(d), k):
        g = gcd(g, determinant([[v[c] for c in cols] for v in vectors]))
    return g


def lcm_denominators(xs: Sequence[Fraction]) -> int:
    out = 1
    for x in xs:
        den = Fraction(x).denominator
        out = out * den // gcd(out, den)
    return out
