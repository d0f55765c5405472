"""Exact integer arithmetic primitives.

Everything here is deterministic and allocation-light: Legendre symbols via
Euler's criterion, Tonelli-Shanks square roots, Miller-Rabin primality
(deterministic below the Sorenson-Webster bound), Pollard-Brent factoring,
primitive solutions of x^2 = a*y^2 + b*z^2, and fundamental units of real
quadratic orders via the PQa continued-fraction algorithm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import ArgumentError, ConsistencyError

# Deterministic Miller-Rabin witness set, valid for n < 3317044064679887385961981.
# https://miller-rabin.appspot.com/
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_witness(n: int, d: int, s: int, a: int) -> bool:
    """True if a witnesses the compositeness of n = d*2^s + 1."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: deterministic for n below ~3.3e24, strong probable
    prime with error < 2**-128 beyond (extra bases seeded from n itself,
    so the answer is reproducible)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= _MR_LIMIT:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(64)]
    return not any(_mr_witness(n, d, s, a) for a in bases)


@lru_cache(maxsize=65536)
def _is_prime_cached(n: int) -> bool:
    return is_prime(n)


def _legendre_unchecked(a: int, p: int) -> int:
    """Euler's criterion; caller guarantees p is an odd prime."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) >> 1, p)
    return -1 if t == p - 1 else 1


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, +1}. p must be an odd prime."""
    if p < 3 or p % 2 == 0 or not _is_prime_cached(p):
        raise ArgumentError(f"legendre: modulus {p} is not an odd prime")
    return _legendre_unchecked(a, p)


def _sqrt_mod_unchecked(a: int, p: int) -> int:
    """Tonelli-Shanks, https://en.wikipedia.org/wiki/Tonelli-Shanks_algorithm.
    Returns the smaller of the two roots."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        r = pow(a, (p + 1) >> 2, p)
    elif p % 8 == 5:
        r = pow(a, (p + 3) >> 3, p)
        if r * r % p != a:
            r = r * pow(2, (p - 1) >> 2, p) % p
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while _legendre_unchecked(z, p) != -1:
            z += 1
        m, c = s, pow(z, q, p)
        t, r = pow(a, q, p), pow(a, (q + 1) >> 1, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def sqrt_mod(a: int, p: int) -> int:
    """Square root of a modulo an odd prime p, smaller root returned.
    Raises if a is a non-residue."""
    if p < 3 or p % 2 == 0 or not _is_prime_cached(p):
        raise ArgumentError(f"sqrt_mod: modulus {p} is not an odd prime")
    if _legendre_unchecked(a, p) == -1:
        raise ArgumentError(f"sqrt_mod: {a} is not a square modulo {p}")
    return _sqrt_mod_unchecked(a, p)


def _pollard_brent(n: int) -> int:
    """One nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}. n >= 1."""
    if n < 1:
        raise ArgumentError(f"factorize: {n} < 1")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 49
    while p * p <= n and p < 100000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime_cached(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def squarefree_part(n: int) -> tuple[int, ...]:
    """Sorted prime tuple of squarefree n; raises if n has a repeated factor."""
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        raise ArgumentError(f"{n} is not squarefree")
    return tuple(f)


def sqrt_two_adic(a: int, prec: int) -> int:
    """Square root of a in Z_2 to precision 2**prec, for a = 1 mod 8.

    Bit-by-bit Hensel lift; returns the root congruent to 1 mod 4 (the other
    root is its negative mod 2**prec).
    """
    if a % 8 != 1:
        raise ArgumentError(f"sqrt_two_adic: {a} is not 1 mod 8")
    if prec < 3:
        raise ArgumentError("sqrt_two_adic: need prec >= 3")
    s = 1
    for k in range(3, prec):
        if (s * s - a) % (1 << (k + 1)):
            s += 1 << (k - 1)
    s %= 1 << prec
    return s if s % 4 == 1 else (1 << prec) - s


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (sieve of Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if s[i]:
            s[i * i :: i] = False
    return np.nonzero(s)[0].astype(np.int64)


def primes_one_mod_four(limit: int) -> np.ndarray:
    ps = primes_up_to(limit)
    return ps[ps % 4 == 1]


@dataclass(frozen=True)
class TernarySolution:
    """Primitive integer solution of x^2 = a*y^2 + b*z^2 with x > 0, z > 0."""

    a: int
    b: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        assert self.x * self.x == self.a * self.y * self.y + self.b * self.z * self.z
        assert gcd(gcd(self.x, self.y), self.z) == 1
        assert self.x > 0 and self.z != 0


def _check_ternary_inputs(a: int, b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if a < 2 or b < 2:
        raise ArgumentError(f"solve_ternary: coefficients ({a}, {b}) must be >= 2")
    if gcd(a, b) != 1:
        raise ArgumentError(f"solve_ternary: coefficients ({a}, {b}) share a factor")
    pa, pb = squarefree_part(a), squarefree_part(b)
    bad = [(p, q) for p in pa for q in pb
           if _legendre_unchecked(b, p) != 1 or _legendre_unchecked(a, q) != 1]
    if bad:
        raise ConsistencyError(
            f"solve_ternary: ({a}, {b}) fails local solvability", witnesses=bad)
    return pa, pb


def _reduce_primitive(a: int, b: int, x: int, y: int, z: int) -> TernarySolution:
    g = gcd(gcd(x, y), z)
    x, y, z = abs(x) // g, abs(y) // g, abs(z) // g
    return TernarySolution(a, b, x, y, z)


_GRID_CELLS = 4_000_000


def _ternary_grid_rows(a: int, b: int, z_lo: int, z_hi: int):
    """Perfect-square hits of a*y^2 + b*z^2 for z in [z_lo, z_hi), ascending (z, y).

    Values stay below 2**53 for the grid sizes used, so the float square root
    is exact after integer verification.
    """
    ylim = isqrt(b) + 1
    ay2 = a * np.arange(ylim, dtype=np.int64) ** 2
    zs = np.arange(z_lo, z_hi, dtype=np.int64)
    vals = b * zs[:, None] ** 2 + ay2[None, :]
    r = np.rint(np.sqrt(vals.astype(np.float64))).astype(np.int64)
    hits = np.nonzero(r * r == vals)
    for zi, yi in zip(*hits):
        yield int(r[zi, yi]), int(yi), int(z_lo + zi)


def ternary_solutions(a: int, b: int, checked: bool = True):
    """Yield primitive solutions of x^2 = a*y^2 + b*z^2 ascending in (z, y).

    Enumerates the Holzer box |y| <= sqrt(b), |z| <= sqrt(a), then extends
    past it; intended for pairs with sqrt(a*b) small enough to scan.
    """
    if checked:
        _check_ternary_inputs(a, b)
    ylim = isqrt(b) + 1
    chunk = max(1, _GRID_CELLS // max(ylim, 1))
    z = 1
    while True:
        for x, y, zz in _ternary_grid_rows(a, b, z, z + chunk):
            if gcd(gcd(x, y), zz) == 1:
                yield TernarySolution(a, b, x, y, zz)
        z += chunk


def solve_ternary(a: int, b: int) -> TernarySolution:
    """First primitive solution of x^2 = a*y^2 + b*z^2.

    Searches the Holzer bound box by brute force when it is small, otherwise
    falls back to Lagrange descent. Preconditions: a, b squarefree, coprime,
    b >= 2, and each coefficient a square modulo every prime of the other.
    """
    _check_ternary_inputs(a, b)
    if (isqrt(a) + 1) * (isqrt(b) + 1) <= _GRID_CELLS:
        for sol in ternary_solutions(a, b, checked=False):
            return sol
    from sympy.abc import x as sx, y as sy, z as sz
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

    X, Y, Z = diop_ternary_quadratic(sx * sx - a * sy * sy - b * sz * sz)
    if X is None:
        raise ConsistencyError(f"solve_ternary: ({a}, {b}) descent found no solution")
    return _reduce_primitive(a, b, int(X), int(Y), int(Z))


@dataclass(frozen=True)
class QuadraticUnit:
    """Fundamental unit (u + v*sqrt(d))/2**half of the maximal order of Q(sqrt(d))."""

    d: int
    u: int
    v: int
    half: bool

    @property
    def norm(self) -> int:
        n = self.u * self.u - self.d * self.v * self.v
        return n // 4 if self.half else n


def _pqa_unit(d: int, p0: int, q0: int):
    """PQa iteration from (P,Q) = (p0,q0); returns (G, B, k) at the first
    recurrence Q_{k+1} == q0, or None if the (P,Q) orbit cycles first.

    Identity: G_k^2 - d*B_k^2 = (-1)^(k+1) * q0 * Q_{k+1}.
    """
    sq = isqrt(d)
    P, Q = p0, q0
    g2, g1 = -p0, q0  # G_k = Q0*A_k - P0*B_k over convergents A_k/B_k
    b2, b1 = 1, 0
    seen = set()
    for k in range(10_000_000):
        a = (P + sq) // Q
        g = a * g1 + g2
        b = a * b1 + b2
        P = a * Q - P
        Q = (d - P * P) // Q
        if Q == q0 and k >= 0:
            return g, b, k
        if (P, Q) in seen:
            return None
        seen.add((P, Q))
        g2, g1 = g1, g
        b2, b1 = b1, b
    raise RuntimeError("PQa failed to terminate")


def _unit_less(d: int, s: QuadraticUnit, t: QuadraticUnit) -> bool:
    """Exact comparison of (s.u + s.v*sqrt(d))/2^s.half against t, all coords > 0."""
    a = s.u * (2 if t.half else 1)
    b = s.v * (2 if t.half else 1)
    c = t.u * (2 if s.half else 1)
    e = t.v * (2 if s.half else 1)
    # a + b*sqrt(d) < c + e*sqrt(d)  <=>  a - c < (e - b)*sqrt(d)
    lhs, rhs = a - c, e - b
    if lhs < 0 <= rhs:
        return True
    if rhs < 0 <= lhs:
        return False
    if lhs >= 0:
        return lhs * lhs < rhs * rhs * d
    return lhs * lhs > rhs * rhs * d


def fundamental_unit(d: int) -> QuadraticUnit:
    """Fundamental unit of the maximal order of Q(sqrt(d)), d >= 2 squarefree.

    Continued-fraction expansion of sqrt(d), plus the (1 + sqrt(d))/2
    expansion when d = 1 mod 4 (catching half-integral units with
    u^2 - d*v^2 = +-4); the smaller of the two candidates wins.
    """
    squarefree_part(d)
    if d < 2:
        raise ArgumentError(f"fundamental_unit: {d} < 2")
    g, b, _ = _pqa_unit(d, 0, 1)
    best = QuadraticUnit(d, abs(g), abs(b), False)
    if d % 4 == 1:
        hit = _pqa_unit(d, 1, 2)
        if hit is not None:
            g, b = abs(hit[0]), abs(hit[1])
            cand = (QuadraticUnit(d, g // 2, b // 2, False)
                    if g % 2 == 0 and b % 2 == 0 else QuadraticUnit(d, g, b, True))
            if _unit_less(d, cand, best):
                best = cand
    return best


def _quad_mul(d: int, a0: int, a1: int, ha: int, b0: int, b1: int, hb: int):
    """((a0 + a1*sqrt(d))/2^ha) * ((b0 + b1*sqrt(d))/2^hb), reduced to denominator <= 2."""
    c0 = a0 * b0 + d * a1 * b1
    c1 = a0 * b1 + a1 * b0
    h = ha + hb
    while h > 0 and c0 % 2 == 0 and c1 % 2 == 0:
        c0 //= 2
        c1 //= 2
        h -= 1
    assert h <= 1
    return c0, c1, h


@lru_cache(maxsize=1024)
def norm_one_unit(d: int) -> tuple[int, int]:
    """Smallest power of the fundamental unit that is integral with norm +1.

    Generates the proper automorphisms of x^2 - d*y^2; always exists for
    nonsquare d >= 2.
    """
    eps = fundamental_unit(d)
    u0, v0, h0 = eps.u, eps.v, 1 if eps.half else 0
    u, v, h = u0, v0, h0
    for _ in range(6):
        if h == 0 and u * u - d * v * v == 1:
            return abs(u), abs(v)
        u, v, h = _quad_mul(d, u, v, h, u0, v0, h0)
    raise RuntimeError(f"no integral norm-one unit reached for d={d}")
