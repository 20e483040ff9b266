"""Field reduction PG(r-1, q^t) -> PG(rt-1, q), and linear sets B(S).

A vector of GF(q^t)^r is read as a vector of GF(q)^(rt) by concatenating the
GF(q)-coordinates (base-q digits) of its entries, i.e. the reduction uses the
power basis 1, v, ..., v^(t-1) of the tower.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldTower, theta
from .projspace import Subspace, normalize, subspace


def to_q_coords(F: FieldTower, vec):
    out = []
    for x in vec:
        out.extend(F.digits(x))
    return tuple(out)


def from_q_coords(F: FieldTower, coords):
    t = F.t
    return tuple(F.from_digits(coords[i:i + t]) for i in range(0, len(coords), t))


def basis_elements(F):
    """The GF(q)-basis 1, v, ..., v^(t-1) as tower elements."""
    return [F.q ** j for j in range(F.t)]


def field_reduce(F: FieldTower, P) -> Subspace:
    """The (t-1)-space of PG(rt-1, q) formed by the GF(q)-points of <P>."""
    rows = [to_q_coords(F, [F.mul(b, x) for x in P]) for b in basis_elements(F)]
    return subspace(F, rows, len(P) * F.t, F.q)


def fq_span(F: FieldTower, vectors, r=None) -> Subspace:
    """GF(q)-span of vectors of GF(q^t)^r, as a subspace of PG(rt-1, q)."""
    vectors = list(vectors)
    r = len(vectors[0]) if r is None else r
    return subspace(F, [to_q_coords(F, v) for v in vectors], r * F.t, F.q)


@dataclass(frozen=True)
class LinearSet:
    points: frozenset
    witness: Subspace
    rank: int
    scattered: bool

    def __len__(self):
        return len(self.points)


def blowup_B(F: FieldTower, S: Subspace) -> LinearSet:
    """B(S): the points of PG(r-1, q^t) whose spread element meets S."""
    if S.order != F.q or S.n % F.t:
        raise ValueError("S must be a subspace of PG(rt-1, q)")
    pts = set()
    for pt in S.points(F):
        pts.add(normalize(F, from_q_coords(F, pt)))
    rk = S.dim + 1
    return LinearSet(frozenset(pts), S, rk, len(pts) == theta(rk - 1, F.q))


def spread(F: FieldTower, r: int):
    """Map each point of PG(rt-1, q) to the point of PG(r-1, q^t) whose
    spread element contains it (the inverse of field reduction on points)."""
    from .projspace import enumerate_points

    out = {}
    for pt in enumerate_points(r * F.t, F.q):
        out[pt] = normalize(F, from_q_coords(F, pt))
    return out


def lead_scalars(F: FieldTower):
    """For every element x, the first nonzero base-q digit (0 for x == 0)."""
    cached = getattr(F, "_lead_cache", None)
    if cached is None:
        cached = []
        for x in range(F.order):
            c = 0
            for d in F.digits(x):
                if d:
                    c = d
                    break
            cached.append(c)
        F._lead_cache = cached
    return cached


def normalize_q(F: FieldTower, vec):
    """Scale a vector of tower elements by GF(q)* so that its first nonzero
    GF(q)-coordinate is 1; points of PG_q(GF(q^t)^r) are keyed this way."""
    lead = lead_scalars(F)
    for x in vec:
        if x:
            c = lead[x]
            if c == 1:
                return tuple(vec)
            ci = F.inv(c)
            return tuple(F.mul(ci, y) for y in vec)
    raise ValueError("zero vector")


def normalize_elem(F: FieldTower, x):
    """Representative of <x>_q in PG_q(GF(q^t))."""
    return normalize_q(F, (x,))[0]


def q_points(F: FieldTower):
    """The points of PG_q(GF(q^t)) as normalized elements, in increasing order."""
    lead = lead_scalars(F)
    return [x for x in range(1, F.order) if lead[x] == 1]
