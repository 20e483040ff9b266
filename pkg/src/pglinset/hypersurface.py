"""The hypersurface N(a) = N(b) of PG(2t-1, q) and its families of (t-1)-spaces.

Points of PG(2t-1, q) are pairs (a, b) of tower elements, normalized with
:func:`fieldred.normalize_q`; this matches the coordinates produced by field
reduction (concatenated base-q digits).
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .fieldred import field_reduce, from_q_coords, normalize_q, q_points, to_q_coords
from .gf import HypothesisError, SizingError, degree_sum, theta, tower_from_spec
from .parallel import chunk_ranges, fan_out
from .projspace import subspace


def require_q_ge_t(q, t, allow=False):
    if q < t and not allow:
        raise HypothesisError(f"q = {q} < t = {t}: the line counts are only proven for q >= t")


def in_quadric(F, P) -> bool:
    a, b = P
    if a == 0 and b == 0:
        raise ValueError("zero vector")
    return F.norm(a) == F.norm(b)


def elements_by_norm(F):
    out = defaultdict(list)
    for x in range(1, F.order):
        out[F.norm(x)].append(x)
    return out


def quadric_points(F):
    """All theta(t-1)^2 points, sorted.  Every point has a != 0."""
    cached = getattr(F, "_quadric_cache", None)
    if cached is None:
        by_norm = elements_by_norm(F)
        cached = [(a, b) for a in q_points(F) for b in by_norm[F.norm(a)]]
        F._quadric_cache = cached
    return cached


@dataclass(frozen=True)
class FamilySubspace:
    """S_{h,k} = {<(z, k z^(q^h))>_q}."""

    h: int
    k: int

    def points(self, F):
        return {normalize_q(F, (z, F.mul(self.k, F.frob(z, self.h)))) for z in q_points(F)}

    def as_subspace(self, F):
        rows = [to_q_coords(F, (b, F.mul(self.k, F.frob(b, self.h)))) for b in (F.q ** j for j in range(F.t))]
        return subspace(F, rows, 2 * F.t, F.q)

    def contains(self, F, P):
        a, b = P
        return b == F.mul(self.k, F.frob(a, self.h))


def family(F, h):
    if not 0 <= h < F.t:
        raise ValueError(f"h must lie in 0..{F.t - 1}")
    return [FamilySubspace(h, k) for k in F.norm_one()]


def is_partition(F, h) -> bool:
    seen = set()
    total = 0
    for S in family(F, h):
        pts = S.points(F)
        total += len(pts)
        seen |= pts
    return total == len(seen) and seen == set(quadric_points(F))


def reduction_of_lbar_is_s0(F) -> bool:
    """Field reduction of every <(1, k)>, N(k) = 1, is the member S_{0,k}."""
    for k in F.norm_one():
        red = {normalize_q(F, from_q_coords(F, pt)) for pt in field_reduce(F, (1, k)).points(F)}
        if red != FamilySubspace(0, k).points(F):
            return False
    return True


def families_containing(F, line):
    """All (h, k) with the given point set inside S_{h,k}."""
    a0, b0 = line[0]
    out = []
    for h in range(F.t):
        k = F.div(b0, F.frob(a0, h))
        if F.norm(k) == 1 and all(FamilySubspace(h, k).contains(F, P) for P in line):
            out.append((h, k))
    return out


def line_points(F, P, R):
    """Sorted point set of the line <P, R> of PG(2t-1, q)."""
    pts = {tuple(P), tuple(R)}
    for lam in range(1, F.q):
        pts.add(normalize_q(F, (F.add(R[0], F.mul(lam, P[0])), F.add(R[1], F.mul(lam, P[1])))))
    return tuple(sorted(pts))


# -- lines through a point --------------------------------------------------


def lines_through_unit(F, allow=False):
    """Lines of the hypersurface through <(1,1)>: joins with <(y, y^(q^h))>_q."""
    require_q_ge_t(F.q, F.t, allow)
    lines = set()
    for y in q_points(F):
        if y < F.q:  # GF(q) occupies the codes 0..q-1
            continue
        for h in range(F.t):
            lines.add(line_points(F, (1, 1), normalize_q(F, (y, F.frob(y, h)))))
    return sorted(lines)


def lines_through(F, P, method="formula", allow=False):
    """Lines contained in the hypersurface through P.

    "formula" moves P to <(1,1)> with the diagonal map (x, y) -> (x/a, y/b),
    which preserves N(x) = N(y) since N(a) = N(b); "scan" tests every point.
    """
    P = normalize_q(F, P)
    if not in_quadric(F, P):
        raise ValueError("point is not on the hypersurface")
    if method == "scan":
        pts = quadric_points(F)
        i = pts.index(P)
        A, B = _point_arrays(F)
        return sorted(_lines_from(F, i, pts, A, B, keep_all=True))
    a, b = P
    out = set()
    for line in lines_through_unit(F, allow):
        out.add(tuple(sorted(normalize_q(F, (F.mul(a, x), F.mul(b, y))) for x, y in line)))
    return sorted(out)


# -- exhaustive line scan ----------------------------------------------------


def _point_arrays(F):
    if not F.tables:
        raise SizingError("line scans need the table-backed field path")
    pts = quadric_points(F)
    return (np.array([p[0] for p in pts], dtype=np.int64),
            np.array([p[1] for p in pts], dtype=np.int64))


def _lines_from(F, i, pts, A, B, keep_all=False):
    """Lines inside the hypersurface through point i; unless keep_all, only
    those whose smallest point index is i."""
    a, b = pts[i]
    mask = np.ones(len(pts), dtype=bool)
    for lam in range(1, F.q):
        na = F.vnorm(F.vadd(A, F.mul(lam, a)))
        nb = F.vnorm(F.vadd(B, F.mul(lam, b)))
        mask &= na == nb
    mask[i] = False
    cand = np.nonzero(mask)[0]
    index = getattr(F, "_quadric_index", None)
    if index is None:
        index = {P: j for j, P in enumerate(pts)}
        F._quadric_index = index
    seen = set()
    out = []
    for j in cand.tolist():
        if j in seen:
            continue
        line = line_points(F, pts[i], pts[j])
        ids = [index[P] for P in line]
        seen.update(ids)
        if keep_all or min(ids) == i:
            out.append(line)
    return out


def _scan_chunk(spec, start, stop):
    F = tower_from_spec(spec)
    pts = quadric_points(F)
    A, B = _point_arrays(F)
    out = []
    for i in range(start, stop):
        out.extend(_lines_from(F, i, pts, A, B))
    return out


def all_lines(F, jobs=1):
    """Every line of PG(2t-1, q) contained in the hypersurface (exhaustive)."""
    n = len(quadric_points(F))
    parts = chunk_ranges(n, max(1, jobs) * 4 if jobs > 1 else 1)
    chunks = fan_out(_scan_chunk, F.spec(), parts, jobs)
    return [line for c in chunks for line in c]


def incidence_counts(F, lines):
    counts = defaultdict(int)
    for line in lines:
        for P in line:
            counts[P] += 1
    return counts


# -- closed forms -----------------------------------------------------------


def _exact(num, den):
    qt, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return qt


def lines_per_point(q, t, allow=False):
    """N1: lines inside the hypersurface through a fixed point."""
    require_q_ge_t(q, t, allow)
    return _exact(degree_sum(q, t), q * (q - 1))


def count_lines_total(q, t, allow=False):
    """N2: lines inside the hypersurface."""
    require_q_ge_t(q, t, allow)
    return _exact(theta(t - 1, q) ** 2 * degree_sum(q, t), q * (q * q - 1))


def subline_count(q, t, allow=False):
    """q-order sublines inside the canonical pseudoregulus set of PG(1, q^t)."""
    n1 = lines_per_point(q, t, allow)
    return _exact(theta(t - 1, q) * (n1 - theta(t - 2, q)), q + 1)


def subline_count_prime(q, t):
    """(t-1) theta(t-1) theta(t-2) / theta(1), valid for prime t."""
    return _exact((t - 1) * theta(t - 1, q) * theta(t - 2, q), theta(1, q))


def subline_count_via_lines(q, t, allow=False):
    """(N2 - lines inside S_0 members) / theta(t-1), from the line totals."""
    inside_s0 = _exact(theta(t - 1, q) ** 2 * theta(t - 2, q), q + 1)
    return _exact(count_lines_total(q, t, allow) - inside_s0, theta(t - 1, q))


# -- reports ----------------------------------------------------------------

CSV_COLUMNS = ["q", "t", "N1", "N2", "subline_count_formula", "subline_count_enumerated", "agree"]


def table_row(q, t, enumerated=None, allow=False):
    formula = subline_count(q, t, allow)
    return {"q": q, "t": t, "N1": lines_per_point(q, t, allow), "N2": count_lines_total(q, t, allow),
            "subline_count_formula": formula, "subline_count_enumerated": enumerated,
            "agree": None if enumerated is None else enumerated == formula}


def to_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r[k]) for k in CSV_COLUMNS})
    return buf.getvalue()


def verify_hypersurface(F, jobs=1, allow=False):
    """Exhaustive checks of the hypersurface statements at desk scale."""
    q, t = F.q, F.t
    pts = quadric_points(F)
    lines = all_lines(F, jobs)
    inc = incidence_counts(F, lines)
    n1 = lines_per_point(q, t, allow)
    every_line_in_family = all(families_containing(F, line) for line in lines)
    unit = lines_through_unit(F, allow)
    report = {
        "q": q, "t": t,
        "points": len(pts),
        "points_expected": theta(t - 1, q) ** 2,
        "partitions": {h: is_partition(F, h) for h in range(t)},
        "reduction_of_lbar_is_s0": reduction_of_lbar_is_s0(F),
        "N1_formula": n1,
        "N1_unit_formula_route": len(unit),
        "N1_unit_scan": len(lines_through(F, (1, 1), method="scan")),
        "N2_formula": count_lines_total(q, t, allow),
        "N2_scan": len(lines),
        "homogeneous": set(inc.values()) == {n1} and len(inc) == len(pts),
        "every_line_in_some_family": every_line_in_family,
        "subline_count_via_lines": subline_count_via_lines(q, t, allow),
        "subline_count_formula": subline_count(q, t, allow),
    }
    report["agree"] = (report["points"] == report["points_expected"]
                       and all(report["partitions"].values())
                       and report["reduction_of_lbar_is_s0"]
                       and report["N1_formula"] == report["N1_unit_formula_route"] == report["N1_unit_scan"]
                       and report["N2_formula"] == report["N2_scan"]
                       and report["homogeneous"] and every_line_in_family
                       and report["subline_count_via_lines"] == report["subline_count_formula"])
    return report
