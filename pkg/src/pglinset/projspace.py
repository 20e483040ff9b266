"""Points, subspaces and collineations of PG(n-1, F), F = GF(q) or GF(q^t).

Points are plain tuples of field elements, normalized so that the leftmost
nonzero coordinate is 1.  Since GF(q) sits inside GF(q^t) as ``range(q)``,
all linear algebra runs on the tower's arithmetic; a point or subspace "lives
over GF(q)" when its normalized coordinates are all below q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .gf import FieldTower, SizingError

MAX_ENUMERATION = 2 ** 24

Point = tuple


def normalize(F: FieldTower, v) -> Point:
    for c in v:
        if c:
            if c == 1:
                return tuple(v)
            ci = F.inv(c)
            return tuple(F.mul(ci, x) for x in v)
    raise ValueError("the zero vector is not a projective point")


def is_zero(v) -> bool:
    return not any(v)


def scale(F, c, v):
    return tuple(F.mul(c, x) for x in v)


def vadd(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def dot(F, u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def rref(F, rows):
    """Reduced row-echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = F.neg(m[i][c])
                m[i] = [F.add(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(F, rows) -> int:
    return len(rref(F, rows)[0])


def nullspace(F, rows, ncols=None):
    """Basis of {x : row . x = 0 for all rows}."""
    red, piv = rref(F, rows)
    if ncols is None:
        ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(red, piv):
            x[pc] = F.neg(row[fc])
        basis.append(tuple(x))
    return basis


def matmul(F, A, B):
    Bt = list(zip(*B))
    return tuple(tuple(dot(F, row, col) for col in Bt) for row in A)


def matvec(F, A, v):
    return tuple(dot(F, row, v) for row in A)


def transpose(A):
    return tuple(zip(*A))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def det(F, A) -> int:
    m = [list(r) for r in A]
    n = len(m)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = F.neg(d)
        d = F.mul(d, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = F.neg(F.mul(m[i][c], inv))
                m[i] = [F.add(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def inverse(F, A):
    n = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity(n))]
    red, piv = rref(F, aug)
    if len(red) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def solve(F, A, b):
    """Some x with A x = b, or None."""
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, piv = rref(F, aug)
    if piv and piv[-1] == n:
        return None
    x = [0] * n
    for row, pc in zip(red, piv):
        x[pc] = row[n]
    return tuple(x)


def mat_frob(F, A, a):
    """Entrywise x -> x^(p^a)."""
    if a % F.degree == 0:
        return tuple(tuple(r) for r in A)
    return tuple(tuple(F.frobp(x, a) for x in row) for row in A)


@dataclass(frozen=True)
class Subspace:
    """Projective subspace given by an RREF basis.

    ``order`` is the size of the coefficient field whose points are
    enumerated (q for subspaces of PG(N, q), q^t otherwise).
    """

    rows: tuple
    n: int
    order: int

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    @property
    def is_empty(self) -> bool:
        return not self.rows

    def num_points(self) -> int:
        k = len(self.rows)
        return (self.order ** k - 1) // (self.order - 1)

    def points(self, F):
        """Points in a deterministic (lexicographic in coefficients) order."""
        k = len(self.rows)
        if self.num_points() > MAX_ENUMERATION:
            raise SizingError(f"subspace has {self.num_points()} points")
        if k == 0:
            return
        for coeffs in enumerate_points(k, self.order):
            # RREF rows + normalized coefficients give a normalized point
            v = [0] * self.n
            for c, row in zip(coeffs, self.rows):
                if c == 0:
                    continue
                if c == 1:
                    v = [F.add(x, y) for x, y in zip(v, row)]
                else:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
            yield tuple(v)

    def contains(self, F, v) -> bool:
        if is_zero(v):
            return True
        return rank(F, list(self.rows) + [tuple(v)]) == len(self.rows)

    def contains_subspace(self, F, other: "Subspace") -> bool:
        return all(self.contains(F, r) for r in other.rows)

    def to_json(self):
        return [list(r) for r in self.rows]


def subspace(F, rows, n=None, order=None) -> Subspace:
    rows = [tuple(r) for r in rows]
    if n is None:
        n = len(rows[0])
    red, _ = rref(F, rows) if rows else ((), ())
    return Subspace(red, n, F.order if order is None else order)


def span(F, points, order=None) -> Subspace:
    if not points:
        raise ValueError("span of an empty list")
    return subspace(F, points, len(points[0]), order)


def join(F, A: Subspace, B: Subspace) -> Subspace:
    if A.n != B.n:
        raise ValueError("ambient mismatch")
    return subspace(F, list(A.rows) + list(B.rows), A.n, A.order)


def meet(F, A: Subspace, B: Subspace) -> Subspace:
    """Intersection, via the nullspace of the stacked annihilators."""
    if A.n != B.n:
        raise ValueError("ambient mismatch")
    if A.is_empty or B.is_empty:
        return Subspace((), A.n, A.order)
    ann = []
    for S in (A, B):
        if len(S.rows) < S.n:
            ann.extend(nullspace(F, S.rows, S.n))
    if not ann:
        return A
    basis = nullspace(F, ann, A.n)
    if not basis:
        return Subspace((), A.n, A.order)
    return subspace(F, basis, A.n, A.order)


def hyperplane(F, coeffs, order=None) -> Subspace:
    """The hyperplane sum c_i X_i = 0."""
    n = len(coeffs)
    return subspace(F, nullspace(F, [tuple(coeffs)], n), n, order)


def enumerate_points(n, size):
    """All normalized vectors of length n over a field of the given size.

    Order: lexicographic on the coordinate tuples, which puts points with a
    later leading 1 first.
    """
    if (size ** n - 1) // (size - 1) > MAX_ENUMERATION:
        raise SizingError(f"PG({n - 1}, {size}) is too large to enumerate")
    for lead in range(n - 1, -1, -1):
        head = (0,) * lead + (1,)
        for tail in itertools.product(range(size), repeat=n - 1 - lead):
            yield head + tail


def num_points(n, size):
    return (size ** n - 1) // (size - 1)


def partition(seq, parts):
    """Split a sequence into contiguous index ranges."""
    seq = list(seq)
    k = max(1, min(parts, len(seq)))
    step = math.ceil(len(seq) / k) if seq else 1
    return [seq[i:i + step] for i in range(0, len(seq), step)]


@dataclass(frozen=True)
class Collineation:
    """x -> M . x^(p^a), coordinatewise Frobenius then a matrix."""

    matrix: tuple
    exponent: int = 0

    @property
    def n(self):
        return len(self.matrix)

    @property
    def is_projectivity(self):
        return self.exponent == 0


def collineation(F, matrix, exponent=0) -> Collineation:
    M = tuple(tuple(r) for r in matrix)
    if det(F, M) == 0:
        raise ValueError("singular matrix")
    return Collineation(M, exponent % F.degree)


def apply_vec(F, c: Collineation, v):
    if c.exponent:
        v = [F.frobp(x, c.exponent) for x in v]
    return matvec(F, c.matrix, v)


def apply(F, c: Collineation, P) -> Point:
    if len(P) != c.n:
        raise ValueError("dimension mismatch")
    return normalize(F, apply_vec(F, c, P))


def apply_sub(F, c: Collineation, S: Subspace) -> Subspace:
    if S.n != c.n:
        raise ValueError("dimension mismatch")
    return subspace(F, [apply_vec(F, c, r) for r in S.rows], S.n, S.order) if S.rows else S


def compose(F, c1: Collineation, c2: Collineation) -> Collineation:
    """The map P -> c1(c2(P))."""
    M = matmul(F, c1.matrix, mat_frob(F, c2.matrix, c1.exponent))
    return Collineation(M, (c1.exponent + c2.exponent) % F.degree)


def invert(F, c: Collineation) -> Collineation:
    return Collineation(mat_frob(F, inverse(F, c.matrix), -c.exponent), (-c.exponent) % F.degree)


def power(F, c: Collineation, k: int) -> Collineation:
    if k < 0:
        c, k = invert(F, c), -k
    out = Collineation(identity(c.n), 0)
    for _ in range(k):
        out = compose(F, c, out)
    return out


def same_projective_map(F, c1: Collineation, c2: Collineation) -> bool:
    """Equal as collineations: same automorphism, matrices equal up to a scalar."""
    if c1.exponent != c2.exponent:
        return False
    a = [x for row in c1.matrix for x in row]
    b = [x for row in c2.matrix for x in row]
    i = next(k for k, x in enumerate(a) if x)
    if not b[i]:
        return False
    lam = F.div(b[i], a[i])
    return all(F.mul(lam, x) == y for x, y in zip(a, b))


def sigma_hat(F, nu: int, n: int | None = None) -> Collineation:
    """Coordinatewise x -> x^(q^nu) on PG(n-1, q^t); generates the group fixing
    the standard subgeometry pointwise when gcd(nu, t) == 1."""
    if math.gcd(nu, F.t) != 1:
        raise ValueError(f"gcd(nu, t) must be 1 (nu={nu}, t={F.t})")
    n = F.t if n is None else n
    return Collineation(identity(n), (F.e * nu) % F.degree)


def generators(F):
    """Exponents nu in 1..t-1 whose sigma_hat generates the fixing group."""
    return [nu for nu in range(1, F.t) if math.gcd(nu, F.t) == 1]


def frob_point(F, P, nu, times=1):
    """Image of P under sigma_hat(nu)^times, without building the collineation."""
    k = (nu * times) % F.t
    if k == 0:
        return tuple(P)
    return tuple(F.frob(x, k) for x in P)


def frob_sub(F, S: Subspace, nu, times=1) -> Subspace:
    k = (nu * times) % F.t
    if k == 0 or S.is_empty:
        return S
    # RREF is preserved entrywise by a field automorphism
    return Subspace(tuple(tuple(F.frob(x, k) for x in r) for r in S.rows), S.n, S.order)


def is_rational(P, q) -> bool:
    """All normalized coordinates in GF(q)."""
    return all(x < q for x in P)


def element_to_json(F, x):
    """Coefficient vector of x over GF(p), low degree first."""
    return F._to_digits(x, F.p, F.degree)


def point_to_json(F, P):
    return [element_to_json(F, x) for x in P]
