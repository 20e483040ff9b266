"""Exact arithmetic in the tower GF(p) < GF(q) < GF(q^t).

Elements of GF(q^t) are plain ints.  An element sum_j a_j v^j, with a_j in
GF(q) and v a root of the defining polynomial g, is encoded as
sum_j code(a_j) * q**j, where code(a_j) is itself the base-p encoding of a_j
over GF(p).  Consequences used all over the package:

* the GF(q) subfield is exactly ``range(q)``;
* the base-q digits of an element are its coordinates over GF(q) in the
  power basis 1, v, ..., v^(t-1);
* addition is digitwise addition mod p.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

TABLE_THRESHOLD = 2 ** 20
MAX_FIELD_ORDER = 2 ** 22


class SizingError(ValueError):
    """Raised when a request exceeds the configured enumeration bound."""


class HypothesisError(ValueError):
    """Raised when parameters fall outside the range where a result is claimed."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    res, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            res = -res
        d += 1
    if m > 1:
        res = -res
    return res


def theta(s: int, q: int) -> int:
    """Number of points of PG(s, q); theta(-1, q) == 0."""
    if s < -1:
        raise ValueError("theta is defined for s >= -1")
    return (q ** (s + 1) - 1) // (q - 1)


def theta_inverse(nu: int, t: int, q: int) -> int:
    """Least d >= 0 with d * theta(nu-1) == 1 (mod theta(t-1))."""
    if nu < 1 or math.gcd(nu, t) != 1:
        raise ValueError(f"gcd(nu, t) must be 1 (nu={nu}, t={t})")
    return pow(theta(nu - 1, q), -1, theta(t - 1, q))


def digit_sum(d: int, q: int) -> int:
    s = 0
    while d:
        d, r = divmod(d, q)
        s += r
    return s


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse "1,1,0,1" (low degree first) into a coefficient tuple."""
    coeffs = tuple(int(c) for c in text.replace(" ", "").split(",") if c != "")
    if not coeffs:
        raise ValueError("empty polynomial")
    return coeffs


def format_poly(coeffs) -> str:
    return ",".join(str(c) for c in coeffs)


# -- small polynomial arithmetic over a finite field given by callables ------

class _Ring:
    """Univariate polynomials (low degree first) over a small base field."""

    def __init__(self, size, add, mul, neg, inv):
        self.size = size
        self.add, self.mul, self.neg, self.inv = add, mul, neg, inv

    def trim(self, a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return a

    def polymul(self, a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = self.add(out[i + j], self.mul(x, y))
        return self.trim(out)

    def polymod(self, a, m):
        a = self.trim(a)
        m = self.trim(m)
        lead_inv = self.inv(m[-1])
        while len(a) >= len(m):
            c = self.mul(a[-1], lead_inv)
            shift = len(a) - len(m)
            for i, y in enumerate(m):
                a[shift + i] = self.add(a[shift + i], self.neg(self.mul(c, y)))
            a = self.trim(a)
        return a

    def monic_polys(self, degree):
        """All monic polynomials of the given degree, in code order."""
        for code in range(self.size ** degree):
            coeffs = []
            for _ in range(degree):
                code, r = divmod(code, self.size)
                coeffs.append(r)
            yield coeffs + [1]

    def is_irreducible(self, f):
        f = self.trim(f)
        deg = len(f) - 1
        if deg < 1:
            return False
        if deg == 1:
            return True
        for d in range(1, deg // 2 + 1):
            for g in self.monic_polys(d):
                if not self.polymod(f, g):
                    return False
        return True

    def least_irreducible(self, degree):
        for f in self.monic_polys(degree):
            if self.is_irreducible(f):
                return tuple(f)
        raise AssertionError("no irreducible polynomial found")


class FieldTower:
    """GF(p) < GF(q = p^e) < GF(q^t), immutable after construction.

    Use :func:`build_tower` rather than calling this directly.
    """

    def __init__(self, p, e, t, f, g, table_threshold=TABLE_THRESHOLD):
        self.p, self.e, self.t = p, e, t
        self.q = p ** e
        self.order = self.q ** t
        self.f = tuple(f)
        self.g = tuple(g)
        self.degree = e * t  # over the prime field

        q = self.q
        # GF(q) tables from f over GF(p)
        prime_ring = _Ring(p, lambda a, b: (a + b) % p, lambda a, b: a * b % p,
                           lambda a: -a % p, lambda a: pow(a, p - 2, p))
        self._q_add = [[self._digit_add(a, b, p, e) for b in range(q)] for a in range(q)]
        self._q_neg = [self._digit_neg(a, p, e) for a in range(q)]
        self._q_mul = [[0] * q for _ in range(q)]
        for a in range(q):
            pa = self._to_digits(a, p, e)
            for b in range(q):
                prod = prime_ring.polymod(prime_ring.polymul(pa, self._to_digits(b, p, e)), list(self.f)) \
                    if e > 1 else [a * b % p]
                self._q_mul[a][b] = self._from_digits(prod, p)
        self._q_inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._q_mul[a][b] == 1:
                    self._q_inv[a] = b
                    break
        self._base_ring = _Ring(q, lambda a, b: self._q_add[a][b], lambda a, b: self._q_mul[a][b],
                                lambda a: self._q_neg[a], lambda a: self._q_inv[a])

        self.tables = self.order <= table_threshold
        if self.tables:
            self._build_tables()

    # -- digit helpers -------------------------------------------------------
    @staticmethod
    def _to_digits(x, base, n):
        out = []
        for _ in range(n):
            x, r = divmod(x, base)
            out.append(r)
        return out

    @staticmethod
    def _from_digits(ds, base):
        x = 0
        for d in reversed(list(ds)):
            x = x * base + d
        return x

    @classmethod
    def _digit_add(cls, a, b, p, n):
        da, db = cls._to_digits(a, p, n), cls._to_digits(b, p, n)
        return cls._from_digits([(x + y) % p for x, y in zip(da, db)], p)

    @classmethod
    def _digit_neg(cls, a, p, n):
        return cls._from_digits([-x % p for x in cls._to_digits(a, p, n)], p)

    def digits(self, x):
        """Coordinates of x over GF(q) in the basis 1, v, ..., v^(t-1)."""
        return self._to_digits(x, self.q, self.t)

    def from_digits(self, ds):
        return self._from_digits(ds, self.q)

    # -- slow polynomial path (also used to build the tables) ----------------
    def _poly_mul(self, a, b):
        r = self._base_ring
        prod = r.polymod(r.polymul(self.digits(a), self.digits(b)), list(self.g))
        return self.from_digits(prod)

    def _poly_add(self, a, b):
        return self._digit_add(a, b, self.p, self.degree)

    def _build_tables(self):
        Q = self.order
        n = Q - 1
        gen = None
        for cand in range(2, Q):
            exp = [1]
            x = cand
            while x != 1:
                exp.append(x)
                x = self._poly_mul(x, cand)
                if len(exp) > n:
                    break
            if len(exp) == n:
                gen = cand
                break
        if gen is None:
            raise AssertionError("no primitive element found")
        self.generator = gen
        self._exp = exp + exp  # index up to 2n-2 without reduction
        self._log = [-1] * Q
        for i, x in enumerate(exp):
            self._log[x] = i
        if self.p == 2:
            self._neg = list(range(Q))
            self._zech = None
        else:
            self._neg = [self._digit_neg(x, self.p, self.degree) for x in range(Q)]
            # zech[k] = log(1 + gen^k), or -1 when 1 + gen^k == 0
            self._zech = [-1] * n
            for k in range(n):
                s = self._poly_add(1, exp[k])
                self._zech[k] = self._log[s] if s else -1
        self.np_exp = np.array(self._exp, dtype=np.int64)
        self.np_log = np.array([max(v, 0) for v in self._log], dtype=np.int64)
        self.np_neg = np.array(self._neg, dtype=np.int64)
        self.np_zech = None if self._zech is None else np.array(self._zech, dtype=np.int64)

    # -- arithmetic ----------------------------------------------------------
    def add(self, a, b):
        if not self.tables:
            return self._poly_add(a, b)
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if not self.tables:
            return self._digit_neg(a, self.p, self.degree)
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if not self.tables:
            return self._poly_mul(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if not self.tables:
            return self.pow(a, self.order - 2)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        """a**k for any integer k (negative k needs a != 0); 0**0 == 1."""
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if k == 0 else 0
        n = self.order - 1
        if self.tables:
            return self._exp[self._log[a] * k % n]
        k %= n
        result, base = 1, a
        while k:
            if k & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            k >>= 1
        return result

    def frob(self, a, i=1):
        """a^(q^i)."""
        return self.pow(a, self.q ** (i % self.t))

    def frobp(self, a, i=1):
        """a^(p^i), i taken mod e*t."""
        return self.pow(a, self.p ** (i % self.degree))

    def norm(self, a):
        """Norm over GF(q): a^theta(t-1), the product of the t conjugates."""
        return self.pow(a, theta(self.t - 1, self.q))

    def trace(self, a):
        s = 0
        for i in range(self.t):
            s = self.add(s, self.frob(a, i))
        return s

    def elem_order(self, a):
        """Smallest m (a divisor of t) with a in GF(q^m); 1 for a == 0."""
        for m in divisors(self.t):
            if self.frob(a, m) == a:
                return m
        raise AssertionError("unreachable: a^(q^t) == a")

    def in_subfield(self, a, m=1):
        return self.frob(a, m) == a

    def norm_one(self):
        """Sorted list of the theta(t-1) elements of norm 1."""
        return [x for x in range(1, self.order) if self.norm(x) == 1]

    def qth_root_of_norm_one(self, k):
        """Some k' with k'^(q-1) == k (exists iff N(k) == 1)."""
        if self.tables:
            lk = self._log[k]
            if lk % (self.q - 1):
                raise ValueError("element is not a (q-1)-th power")
            return self._exp[lk // (self.q - 1)]
        for x in range(1, self.order):
            if self.pow(x, self.q - 1) == k:
                return x
        raise ValueError("element is not a (q-1)-th power")

    # -- vectorised helpers (table path only) -------------------------------
    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.np_exp[self.np_log[a] + self.np_log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        a, b = np.broadcast_arrays(a, b)
        la = self.np_log[a]
        z = self.np_zech[(self.np_log[b] - la) % (self.order - 1)]
        out = np.where(z < 0, 0, self.np_exp[la + np.maximum(z, 0)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vpow(self, a, k):
        a = np.asarray(a, dtype=np.int64)
        out = self.np_exp[(self.np_log[a] * (k % (self.order - 1))) % (self.order - 1)]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vnorm(self, a):
        return self.vpow(a, theta(self.t - 1, self.q))

    def describe(self):
        return {"p": self.p, "e": self.e, "t": self.t, "q": self.q,
                "f": format_poly(self.f), "g": format_poly(self.g),
                "basis": "powers of v, v a root of g"}

    def spec(self):
        """Hashable constructor arguments, used to rebuild in worker processes."""
        return (self.p, self.e, self.t, self.f, self.g)

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, t={self.t}, f={self.f}, g={self.g})"


def build_tower(p, e, t, f_override=None, g_override=None,
                table_threshold=TABLE_THRESHOLD, max_order=MAX_FIELD_ORDER):
    """Construct GF(p) < GF(p^e) < GF(p^(et)).

    Without overrides the defining polynomials are the least monic
    irreducible ones, ordering candidates by the integer whose base-(field
    size) digits are the coefficients, low degree first.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("e must be positive")
    if t < 2:
        raise ValueError("t must be at least 2")
    if (p ** e) ** t > max_order:
        raise SizingError(f"q^t = {(p ** e) ** t} exceeds the enumeration bound {max_order}")
    prime_ring = _Ring(p, lambda a, b: (a + b) % p, lambda a, b: a * b % p,
                       lambda a: -a % p, lambda a: pow(a, p - 2, p))
    if f_override is not None:
        f = tuple(f_override)
        if len(f) != e + 1 or f[-1] != 1 or any(not 0 <= c < p for c in f):
            raise ValueError("f must be monic of degree e with coefficients in GF(p)")
        if not prime_ring.is_irreducible(list(f)):
            raise ValueError(f"f = {format_poly(f)} is reducible over GF({p})")
    else:
        f = prime_ring.least_irreducible(e) if e > 1 else (0, 1)
    # build a throwaway tower for the GF(q) arithmetic needed by the g search
    ring = FieldTower(p, e, t, f, (0,) * t + (1,), table_threshold=0)._base_ring
    q = p ** e
    if g_override is not None:
        g = tuple(g_override)
        if len(g) != t + 1 or g[-1] != 1 or any(not 0 <= c < q for c in g):
            raise ValueError("g must be monic of degree t with coefficients in GF(q)")
        if not ring.is_irreducible(list(g)):
            raise ValueError(f"g = {format_poly(g)} is reducible over GF({q})")
    else:
        g = ring.least_irreducible(t)
    return _cached_tower(p, e, t, tuple(f), tuple(g), table_threshold)


@lru_cache(maxsize=None)
def _cached_tower(p, e, t, f, g, table_threshold):
    return FieldTower(p, e, t, f, g, table_threshold=table_threshold)


def tower_from_spec(spec):
    p, e, t, f, g = spec
    return build_tower(p, e, t, f, g)


def degree_census(q: int, t: int) -> dict[int, int]:
    """Number of elements of GF(q^t) of degree exactly m over GF(q), m | t."""
    return {m: sum(mobius(m // d) * q ** d for d in divisors(m)) for m in divisors(t)}


def degree_sum(q: int, t: int) -> int:
    """Sum of [GF(q)(y) : GF(q)] over y in GF(q^t) minus GF(q)."""
    census = degree_census(q, t)
    return sum(m * c for m, c in census.items() if m > 1)
