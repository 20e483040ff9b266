"""q-order sublines of the canonical pseudoregulus set, normal rational curves,
and powers of lines of PG_q(GF(q^t)).

The canonical set is {<(1, k)> : N(k) = 1}; a subline inside it is stored as
the sorted tuple of its points, which doubles as its dedup key.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .fieldred import normalize_elem, q_points
from .gf import HypothesisError, digit_sum, is_prime, theta, theta_inverse, tower_from_spec
from .hypersurface import all_lines, subline_count
from .linset import (Projector, apply2, frame_matrix, iota, normal_form_config,
                     norm_one_pseudoregulus, project_map)
from .parallel import chunk_ranges, fan_out
from .projspace import (frob_point, inverse, is_rational, matvec, normalize, rank, solve, span,
                        transpose)

# -- sublines ------------------------------------------------------------------


def subline_closure(F, P1, P2, P3):
    """The q-order subline through three distinct points of PG(1, q^t)."""
    M = frame_matrix(F, P2, P1, P3)  # (1,0) -> P2, (0,1) -> P1, (1,1) -> P3
    pts = {apply2(F, M, (1, lam)) for lam in range(F.q)}
    pts.add(apply2(F, M, (0, 1)))
    return tuple(sorted(pts))


def _closure_inside(F, P1, P2, P3, L):
    M = frame_matrix(F, P2, P1, P3)
    pts = [apply2(F, M, (0, 1))]
    for lam in range(F.q):
        X = apply2(F, M, (1, lam))
        if X not in L:
            return None
        pts.append(X)
    return tuple(sorted(pts))


def canonical_set(F):
    return sorted(norm_one_pseudoregulus(F))


def _triples_chunk(spec, start, stop):
    F = tower_from_spec(spec)
    L = canonical_set(F)
    Ls = set(L)
    found = set()
    n = len(L)
    for i in range(start, stop):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = _closure_inside(F, L[i], L[j], L[k], Ls)
                if r is not None:
                    found.add(r)
    return found


def sublines_by_triples(F, jobs=1):
    """Algorithm A: close every 3-subset of the canonical set, keep those inside."""
    n = len(canonical_set(F))
    # early rows carry more work; interleave coarse chunks
    parts = chunk_ranges(n, max(1, jobs) * 8 if jobs > 1 else 1)
    out = set()
    for s in fan_out(_triples_chunk, F.spec(), parts, jobs):
        out |= s
    return sorted(out)


def sublines_by_lines(F, jobs=1):
    """Algorithm B: sublines as B-images of lines of the norm hypersurface.

    Lines inside a member of S_0 collapse to one point and are dropped; every
    other line maps onto a subline, and each subline must arise from exactly
    theta(t-1) lines (the transversals of its regulus).
    """
    groups = defaultdict(int)
    for line in all_lines(F, jobs):
        img = tuple(sorted({(1, F.div(b, a)) for a, b in line}))
        if len(img) == 1:
            continue
        if len(img) != F.q + 1:
            raise AssertionError("a hypersurface line met a spread element twice")
        groups[img] += 1
    bad = {k: v for k, v in groups.items() if v != theta(F.t - 1, F.q)}
    if bad:
        raise AssertionError(f"{len(bad)} sublines have the wrong number of transversal lines")
    return sorted(groups)


def lines_through_one(F):
    """One representative z for every line <1, z> of PG_q(GF(q^t)) through <1>."""
    reps = set()
    for z in q_points(F):
        if z < F.q:
            continue
        reps.add(min(normalize_elem(F, F.add(z, lam)) for lam in range(F.q)))
    return sorted(reps)


def sublines_structured(F):
    """Structured Algorithm B: every subline is {k x^(q^h - 1) : <x> on <1, z>}.

    Returns {subline: set of h}.  Relies on every line of the hypersurface
    lying in some S_{h,k} (valid for q >= t); vectorized over k.
    """
    K = np.array(F.norm_one(), dtype=np.int64)
    rows, fams = [], []
    for h in range(1, F.t):
        e = F.q ** h - 1
        for z in lines_through_one(F):
            xs = [1] + [F.add(z, lam) for lam in range(F.q)]
            U = np.unique(F.vpow(np.array(xs, dtype=np.int64), e))
            if len(U) == 1:
                continue
            if len(U) != F.q + 1:
                raise AssertionError("power map image has unexpected size")
            block = np.sort(F.vmul(K[:, None], U[None, :]), axis=1)
            rows.append(block)
            fams.append(np.full(len(K), h, dtype=np.int64))
    allrows = np.concatenate(rows)
    tagged = np.unique(np.concatenate([allrows, np.concatenate(fams)[:, None]], axis=1), axis=0)
    out = defaultdict(set)
    for row in tagged.tolist():
        out[tuple((1, k) for k in row[:-1])].add(row[-1])
    return dict(out)


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    h: int
    z: int          # the subline is k * {x^(q^h - 1) : <x> on <1, z>}
    k: int
    m: int          # o(<1, z>)
    n: int          # predicted preimage order, n = h nu^-1 mod m
    delta: int      # theta(nu-1)^-1 mod theta(t-1)


def _power_table(F, e):
    cache = F.__dict__.setdefault("_power_tables", {})
    if e not in cache:
        cache[e] = F.vpow(np.arange(F.order, dtype=np.int64), e)
    return cache[e]


def classify_subline(F, r, nu=1):
    """Families h (1..t-1) with a transversal of F(r) inside some S_{h,k}.

    With the first point pinned to x = 1 the remaining freedom is z with
    z^(q^h - 1) = k_1 / k_0; every such z is tried.  The list is empty only
    for q < t, where some sublines lie in no family.
    """
    ks = [P[1] for P in r]
    if any(P[0] != 1 or F.norm(P[1]) != 1 for P in r):
        raise ValueError("subline is not inside the canonical set")
    target = set(ks)
    t = F.t
    delta = theta_inverse(nu, t, F.q)
    c = F.div(ks[1], ks[0])
    out = []
    for h in range(1, t):
        e = F.q ** h - 1
        tab = _power_table(F, e)
        for z in np.nonzero(tab == c)[0].tolist():
            vals = {ks[0]} | {F.mul(ks[0], int(tab[F.add(z, lam)])) for lam in range(F.q)}
            if vals == target:
                m = F.elem_order(z)
                n = h * pow(nu, -1, m) % m
                out.append(Classification(h, z, ks[0], m, n, delta))
                break
    return out


# -- normal rational curves ----------------------------------------------------


@dataclass(frozen=True)
class NormalRationalCurve:
    """Image of {(1, s, ..., s^n)} ∪ {(0, ..., 0, 1)}, s over a field of size ``field``."""

    n: int
    field: int
    matrix: tuple   # ambient_dim x (n+1)

    def point(self, F, s):
        if s is None:
            v = [row[self.n] for row in self.matrix]
        else:
            mom = [1]
            for _ in range(self.n):
                mom.append(F.mul(mom[-1], s))
            v = matvec(F, self.matrix, mom)
        return normalize(F, v)

    def points(self, F):
        pts = {self.point(F, s) for s in range(self.field)}
        pts.add(self.point(F, None))
        return pts


def general_position(F, pts, n):
    """(True, None) if every n+1 of the points span PG(n); else (False, bad subset)."""
    for sub in combinations(range(len(pts)), n + 1):
        if rank(F, [pts[i] for i in sub]) != n + 1:
            return False, sub
    return True, None


def _poly_from_roots(F, roots):
    """Coefficients (low first) of prod (s - a)."""
    c = [1]
    for a in roots:
        na = F.neg(a)
        nxt = [0] * (len(c) + 1)
        for i, x in enumerate(c):
            nxt[i] = F.add(nxt[i], F.mul(x, na))
            nxt[i + 1] = F.add(nxt[i + 1], x)
        c = nxt
    return c


def _frame_curve(F, pts, n):
    """The NRC of PG(n) through n+3 points in general position (coordinates of length n+1)."""
    Y, u, w = pts[:n + 1], pts[n + 1], pts[n + 2]
    c = solve(F, transpose(Y), u)
    if c is None or not all(c):
        return None
    Tinv = transpose([[F.mul(ci, x) for x in y] for ci, y in zip(c, Y)])
    b = matvec(F, inverse(F, Tinv), w)
    if not all(b) or len(set(b)) != len(b):
        return None
    a = [F.neg(F.inv(x)) for x in b]
    C = []
    for i in range(n + 1):
        C.append(_poly_from_roots(F, a[:i] + a[i + 1:]))
    from .projspace import matmul

    return matmul(F, Tinv, C)


def _local_coords(S, x):
    piv = [next(j for j, v in enumerate(r) if v) for r in S.rows]
    return tuple(x[p] for p in piv)


def _embed(F, S, local_matrix):
    """Ambient matrix = (basis rows)^T . local matrix."""
    from .projspace import matmul

    return matmul(F, transpose(S.rows), local_matrix)


def fit_nrc(F, pts, n, field):
    """Decide whether the point set is a normal rational curve of order n over
    a parameter field of size ``field``; returns the curve or None."""
    pts = [normalize(F, p) for p in pts]
    if len(set(pts)) != field + 1:
        return None
    S = span(F, pts)
    if S.dim != n:
        return None
    Y = [normalize(F, _local_coords(S, p)) for p in pts]
    if n == 0:
        return None
    if len(Y) >= n + 3:
        ok, _ = general_position(F, Y[:n + 3], n)
        if not ok:
            return None
        M = _frame_curve(F, Y[:n + 3], n)
        if M is None:
            return None
        curve = NormalRationalCurve(n, field, M)
        if curve.points(F) != set(Y):
            return None
        return NormalRationalCurve(n, field, _embed(F, S, M))
    if len(Y) == n + 2:
        # any two (n+2)-frames are projectively equivalent
        ok, _ = general_position(F, Y, n)
        if not ok:
            return None
        std = NormalRationalCurve(n, field, tuple(tuple(1 if i == j else 0 for j in range(n + 1))
                                                  for i in range(n + 1)))
        src = [std.point(F, s) for s in range(field)] + [std.point(F, None)]
        T = frame_map(F, src, Y)
        return NormalRationalCurve(n, field, _embed(F, S, T))
    return None


def frame_map(F, src, dst):
    """Matrix of the projectivity of PG(n) mapping the n+2 frame src onto dst."""
    n = len(src) - 2

    def base(pts):
        c = solve(F, transpose(pts[:n + 1]), pts[n + 1])
        if c is None or not all(c):
            raise ValueError("points do not form a frame")
        return transpose([[F.mul(ci, x) for x in y] for ci, y in zip(c, pts[:n + 1])])

    from .projspace import matmul

    return matmul(F, base(dst), inverse(F, base(src)))


def nrc_through(F, pts, field=None):
    """The unique NRC of order len(pts)-3 through the given points of PG(len(pts)-3)."""
    pts = [normalize(F, p) for p in pts]
    n = len(pts[0]) - 1
    if len(pts) != n + 3:
        raise ValueError(f"need {n + 3} points")
    field = F.order if field is None else field
    if field < n + 2:
        raise HypothesisError("the parameter field is too small for uniqueness")
    ok, bad = general_position(F, pts, n)
    if not ok:
        raise ValueError(f"points {bad} lie in a hyperplane")
    M = _frame_curve(F, pts, n)
    curve = NormalRationalCurve(n, field, M)
    cps = curve.points(F)
    if not all(p in cps for p in pts):
        raise AssertionError("constructed curve misses an input point")
    return curve


def is_fq_rational(F, curve, allow=False):
    """q+1 rational points; cross-checked by refitting through rational points."""
    if F.q < curve.n + 2 and not allow:
        raise HypothesisError("rationality criterion needs q >= order + 2")
    return rationality_report(F, curve)["rational"]


def rationality_report(F, curve):
    rat = sorted(p for p in curve.points(F) if is_rational(p, F.q))
    out = {"rational_points": len(rat), "rational": len(rat) == F.q + 1, "matrix_over_fq": None}
    if len(rat) >= curve.n + 3:
        M = _frame_curve(F, rat[:curve.n + 3], curve.n)
        if M is not None:
            refit = NormalRationalCurve(curve.n, curve.field, M)
            out["matrix_over_fq"] = (all(x < F.q for row in M for x in row)
                                     and refit.points(F) == curve.points(F))
    return out


def standard_curve(F, n, field=None):
    field = F.order if field is None else field
    return NormalRationalCurve(n, field, tuple(tuple(1 if i == j else 0 for j in range(n + 1))
                                               for i in range(n + 1)))


# -- counting identities -------------------------------------------------------


def nrc_count_identities(q, t):
    if not is_prime(t):
        raise HypothesisError("the identities are stated for prime t")
    K1 = q ** (t - 1) * math.prod(q ** (t - 1) - q ** i for i in range(t - 1))
    K2 = q ** t - q
    top = math.prod(q ** t - q ** i for i in range(t))
    K3, r3 = divmod(top, q * (q ** t - 1) * (q ** (t - 1) - 1))
    nu, rn = divmod(top, q * (q * q - 1) * (q - 1))
    return {"q": q, "t": t, "K1": K1, "K2": K2, "K3": K3, "nu_t_minus_1": nu,
            "K3_integral": r3 == 0, "nu_integral": rn == 0, "identity": K1 == K2 * K3,
            "ok": r3 == 0 and rn == 0 and K1 == K2 * K3}


def power_congruence(q, t, m, nu, h, n):
    """theta(nu-1)^-1 theta(h-1) == (q^(nu n) - 1)/(q^nu - 1) mod theta(m-1)."""
    mod = theta(m - 1, q)
    lhs = theta_inverse(nu, t, q) * theta(h - 1, q) % mod
    return lhs == (q ** (nu * n) - 1) // (q ** nu - 1) % mod


def congruence_grid(qs, ts, reps=3):
    """Check the congruence over every (q, t, m | t, nu, h, n = h nu^-1 + j m)."""
    from .gf import divisors

    checked = failed = 0
    for q in qs:
        for t in ts:
            for m in divisors(t):
                for nu in range(1, t + 1):
                    if math.gcd(nu, t) != 1:
                        continue
                    ninv = pow(nu, -1, m) if m > 1 else 0
                    for h in range(t):
                        n0 = h * ninv % m if m > 1 else 0
                        for j in range(reps):
                            checked += 1
                            if not power_congruence(q, t, m, nu, h, n0 + j * m):
                                failed += 1
    return {"checked": checked, "failed": failed}


# -- powers of lines -----------------------------------------------------------


def line_elements(F, x, y):
    """Representatives of the q+1 points of the line <x, y>_q."""
    return [x] + [F.add(y, F.mul(lam, x)) for lam in range(F.q)]


def line_order(F, x, y):
    return F.elem_order(F.div(y, x))


def all_q_lines(F):
    """Every line of PG_q(GF(q^t)) as a basis pair (its two smallest points)."""
    seen = set()
    out = []
    pts = q_points(F)
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            key = tuple(sorted({normalize_elem(F, e) for e in line_elements(F, x, y)}))
            if key not in seen:
                seen.add(key)
                out.append((key[0], key[1]))
    return out


@dataclass(frozen=True)
class LinePower:
    source: tuple
    d: int
    points: tuple
    order: int
    digit_sum: int | None
    degenerate: bool  # fewer than q+1 distinct image points


def power_of_line(F, x, y, d):
    pts = tuple(sorted({normalize_elem(F, F.pow(e, d)) for e in line_elements(F, x, y)}))
    return LinePower((x, y), d, pts, line_order(F, x, y), digit_sum(d, F.q) if d >= 0 else None,
                     len(pts) < F.q + 1)


def elem_vectors(F, elems):
    return [tuple(F.digits(e)) for e in elems]


def verify_power_curve(F, x, y, nu, h):
    """ell^d, d = theta(nu-1)^-1 theta(h-1), is an NRC of order n = h nu^-1 mod m."""
    t, q = F.t, F.q
    m = line_order(F, x, y)
    if math.gcd(nu, t) != 1:
        raise ValueError("gcd(nu, t) must be 1")
    if h % m == 0:
        raise HypothesisError("o(line) divides h")
    n = h * pow(nu, -1, m) % m
    if q < n:
        raise HypothesisError("q < n")
    d = theta_inverse(nu, t, q) * theta(h - 1, q) % theta(t - 1, q)
    P = power_of_line(F, x, y, d)
    vecs = elem_vectors(F, P.points)
    curve = fit_nrc(F, vecs, n, q)
    gp, _ = general_position(F, vecs, n) if len(vecs) == q + 1 else (False, None)
    dprime = (q ** (nu * n) - 1) // (q ** nu - 1)
    beta = F.pow(x, dprime - d)
    equiv = all(normalize_elem(F, F.mul(beta, F.pow(e, d))) == normalize_elem(F, F.pow(e, dprime))
                for e in line_elements(F, x, y))
    Pp = power_of_line(F, x, y, dprime)
    span0 = fit_nrc(F, elem_vectors(F, Pp.points), digit_sum(dprime, q), q) is not None
    in_m_space = rank(F, vecs) <= m
    ok = (curve is not None and gp and equiv and span0 and in_m_space
          and digit_sum(dprime, q) == n and (d - dprime) % theta(m - 1, q) == 0)
    return {"line": [x, y], "m": m, "nu": nu, "h": h, "n": n, "d": d, "d_prime": dprime,
            "nrc": curve is not None, "general_position": gp, "beta_equivalence": equiv,
            "digit_sum_curve": span0, "in_m_minus_1_space": in_m_space, "ok": ok}


def verify_inverse_power(F, x, y, allow=False):
    """ell^-1 is the Frobenius image of ell^theta(t-2) and an NRC in an (m-1)-space."""
    t, q = F.t, F.q
    if q + 1 < t and not allow:
        raise HypothesisError("needs q + 1 >= t")
    m = line_order(F, x, y)
    inv_pts = tuple(sorted({normalize_elem(F, F.inv(e)) for e in line_elements(F, x, y)}))
    P = power_of_line(F, x, y, theta(t - 2, q))
    frob = tuple(sorted(normalize_elem(F, F.frob(e)) for e in P.points))
    vecs = elem_vectors(F, inv_pts)
    curve = fit_nrc(F, vecs, m - 1, q)
    ok = frob == inv_pts and curve is not None
    return {"line": [x, y], "m": m, "frobenius_match": frob == inv_pts, "nrc": curve is not None,
            "dimension": rank(F, vecs) - 1, "ok": ok}


def projeq_check(F, x, y, d):
    """lambda_(x^-d) sends ell^d onto <1, y/x>^d and <x>^d onto <1>."""
    z = F.div(y, x)
    mu = F.pow(x, -d)
    img = {normalize_elem(F, F.mul(mu, p)) for p in power_of_line(F, x, y, d).points}
    return (img == set(power_of_line(F, 1, z, d).points)
            and normalize_elem(F, F.mul(mu, F.pow(x, d))) == 1
            and line_order(F, 1, z) == line_order(F, x, y))


def verify_powers(F, allow=False):
    """Every line and every admissible (nu, h): power curves and inverse powers."""
    t = F.t
    lines = all_q_lines(F)
    results, inv = [], []
    for x, y in lines:
        m = line_order(F, x, y)
        for nu in range(1, t):
            if math.gcd(nu, t) != 1:
                continue
            for h in range(1, t):
                if h % m == 0:
                    continue
                results.append(verify_power_curve(F, x, y, nu, h))
        inv.append(verify_inverse_power(F, x, y, allow))
    return {"q": F.q, "t": t, "lines": len(lines), "cases": len(results),
            "power_curve_ok": all(r["ok"] for r in results), "inverse_ok": all(r["ok"] for r in inv),
            "failures": [r for r in results + inv if not r["ok"]][:10],
            "ok": all(r["ok"] for r in results) and all(r["ok"] for r in inv)}


# -- preimages of sublines -----------------------------------------------------


class PreimageContext:
    """Normal-form projection for a given nu, with the inverse point map."""

    def __init__(self, F, nu=1):
        self.F, self.nu = F, nu
        self.cfg, self.p_gamma, self.M = normal_form_config(F, nu)
        pmap = project_map(F, self.cfg)
        self.inv = {}
        for P, X in pmap.items():
            if X in self.inv:
                raise AssertionError("projection is not scattered")
            self.inv[X] = P
        self.Minv = inverse(F, self.M)
        e = F.q ** nu - 1
        self.by_value = defaultdict(list)
        for u in q_points(F):
            self.by_value[F.pow(u, e)].append(u)


def preimage_curve(F, r, ctx: PreimageContext, classes=None):
    """Sigma meet p^-1(r): fit an NRC, check its order against n = h nu^-1 (mod m)
    and compare with the power-of-line model k'^delta <x^(delta theta(h-1))>."""
    classes = classify_subline(F, r, ctx.nu) if classes is None else classes
    pts = [ctx.inv[X] for X in r]
    order = span(F, pts).dim
    curve = fit_nrc(F, pts, order, F.q)
    congruent = [c for c in classes if c.n == order and 1 <= order <= c.m - 1]
    U = sorted(u for X in r for u in ctx.by_value[X[1]])
    iota_ok = {normalize(F, matvec(F, ctx.Minv, iota(F, u, ctx.nu))) for u in U} == set(pts)
    model_ok = False
    for c in congruent:
        kp = F.qth_root_of_norm_one(c.k)
        scale = F.pow(kp, c.delta)
        ex = c.delta * theta(c.h - 1, F.q)
        model = {normalize_elem(F, F.mul(scale, F.pow(x, ex))) for x in line_elements(F, 1, c.z)}
        if model == set(U):
            model_ok = True
            break
    ok = curve is not None and bool(congruent) and iota_ok and model_ok and len(U) == F.q + 1
    return {"order": order, "nrc": curve is not None, "families": sorted({c.h for c in classes}),
            "congruence": bool(congruent), "iota_consistent": iota_ok, "power_model": model_ok,
            "ok": ok}


# -- carrier curves ------------------------------------------------------------


def verify_carrier_curves(F, nu=1, allow=False):
    """Sublines obtained by projecting the NRCs of order t-1 through the conjugates
    of P_Gamma and two points of the subgeometry."""
    t, q = F.t, F.q
    out_of_hyp = not (is_prime(t) and q >= t + 1)
    if out_of_hyp and not allow:
        raise HypothesisError("carrier curves need t prime and q >= t + 1")
    ctx = PreimageContext(F, nu)
    P = ctx.p_gamma
    conj = [frob_point(F, P, nu, j) for j in range(t)]
    sigma_pts = list(ctx.cfg.sigma.points(F))
    pr = Projector(F, ctx.cfg.center, ctx.cfg.axis_basis)
    Lbar = norm_one_pseudoregulus(F)
    covered = set()
    curves = []
    sublines = set()
    fams = defaultdict(int)
    all_ok = True
    for i, Q1 in enumerate(sigma_pts):
        for Q2 in sigma_pts[i + 1:]:
            if (Q1, Q2) in covered:
                continue
            curve = nrc_through(F, [Q1, Q2] + conj, F.order)
            rat = sorted(p for p in curve.points(F) if is_rational(p, q))
            for a, b in combinations(rat, 2):
                covered.add((a, b))
            rep = rationality_report(F, curve)
            img = tuple(sorted({pr.point(p) for p in rat}))
            is_sub = (len(img) == q + 1 and set(img) <= Lbar
                      and subline_closure(F, *img[:3]) == img)
            hs = sorted({c.h for c in classify_subline(F, img, nu)}) if is_sub else []
            all_ok = all_ok and is_sub and rep["rational"] and rep["matrix_over_fq"] is not False
            for h in hs:
                fams[h] += 1
            sublines.add(img)
            curves.append({"rational_points": rep["rational_points"], "families": hs})
    expected = theta(t - 1, q) * theta(t - 2, q) // theta(1, q)
    single = set(fams) == {(-nu) % t}
    return {"q": q, "t": t, "nu": nu, "curves": len(curves), "sublines": len(sublines),
            "expected": expected, "by_family": dict(fams), "single_family": single,
            "out_of_hypothesis": out_of_hyp,
            "ok": all_ok and single and len(sublines) == expected == len(curves)}


def vandermonde_projection(F, alpha, nu=1):
    """Project the rational points of the moment curve from <P, ..., P^(s^(t-3))>,
    P = (1, alpha, ..., alpha^(t-1)), onto X_1 = ... = X_(t-2) = 0."""
    t = F.t
    P = normalize(F, [F.pow(alpha, i) for i in range(t)])
    center = span(F, [frob_point(F, P, nu, j) for j in range(t - 2)])
    axis = (tuple(1 if k == t - 2 else 0 for k in range(t)), tuple(1 if k == t - 1 else 0 for k in range(t)))
    pr = Projector(F, center, axis)
    curve = standard_curve(F, t - 1, F.q)
    got = {pr.point(p) for p in curve.points(F)}
    s = 0
    for i in range(t - 2):
        s = F.add(s, F.frob(alpha, nu * i))
    predicted = {(1, F.add(x, s)) for x in range(F.q)} | {(0, 1)}
    return got == predicted


# -- census --------------------------------------------------------------------


def census(F, nu=1, algorithm="both", jobs=1, allow=False, preimages=True):
    """Subline census of the canonical set, classified by family h.

    algorithm: "triples" (A), "lines" (B, exhaustive line scan), "structured"
    (B via the S_{h,k} description) or "both" (A and B, compared point-set-wise).
    """
    t, q = F.t, F.q
    if math.gcd(nu, t) != 1:
        raise ValueError("gcd(nu, t) must be 1")
    oo_hyp = q < t
    if oo_hyp and not allow:
        raise HypothesisError(f"q = {q} < t = {t}")
    sets = {}
    fam_of = None
    if algorithm in ("triples", "both"):
        sets["triples"] = sublines_by_triples(F, jobs)
    if algorithm in ("lines", "both"):
        sets["lines"] = sublines_by_lines(F, jobs)
    if algorithm == "structured":
        fam_of = sublines_structured(F)
        sets["structured"] = sorted(fam_of)
    names = list(sets)
    found = sets[names[0]]
    agree_algos = all(sets[n] == found for n in names)

    by_family = defaultdict(lambda: {"count": 0, "preimage_order": set()})
    pre_ok = True
    unclassified = 0
    ctx = PreimageContext(F, nu) if preimages else None
    for r in found:
        if fam_of is not None and not preimages:
            for h in fam_of[r]:
                m = t if is_prime(t) else None
                by_family[h]["count"] += 1
                if m:
                    by_family[h]["preimage_order"].add(h * pow(nu, -1, m) % m)
            continue
        classes = classify_subline(F, r, nu)
        if not classes:
            unclassified += 1
        if fam_of is not None and {c.h for c in classes} != fam_of[r]:
            pre_ok = False
        order = None
        if preimages:
            rep = preimage_curve(F, r, ctx, classes)
            pre_ok = pre_ok and rep["ok"]
            order = rep["order"]
        for c in classes:
            by_family[c.h]["count"] += 1
            by_family[c.h]["preimage_order"].add(order if order is not None else c.n)
    formula = subline_count(q, t, allow)
    fam = {str(h): {"count": v["count"], "preimage_order": sorted(v["preimage_order"])}
           for h, v in sorted(by_family.items())}
    unique_family_ok = None
    if is_prime(t):
        size = theta(t - 1, q) * theta(t - 2, q) // theta(1, q)
        unique_family_ok = (sorted(by_family) == list(range(1, t))
                            and all(v["count"] == size for v in by_family.values())
                            and all(v["preimage_order"] == {h * pow(nu, -1, t) % t}
                                    for h, v in by_family.items()))
    agree = (len(found) == formula and agree_algos and pre_ok and unique_family_ok is not False
             and unclassified == 0)
    report = {"q": q, "t": t, "nu": nu, "total": len(found), "by_family": fam,
              "formula_value": formula, "agree": agree,
              "algorithms": {n: len(s) for n, s in sets.items()},
              "algorithms_agree": agree_algos, "preimages_checked": preimages, "preimages_ok": pre_ok,
              "unique_family_ok": unique_family_ok, "unclassified": unclassified,
              "out_of_hypothesis": oo_hyp}
    return report, found
