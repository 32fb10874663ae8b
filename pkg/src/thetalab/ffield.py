"""Exact arithmetic in GF(p^alpha).

Elements are coefficient vectors over GF(p), little-endian (index = degree).
Extension fields reduce modulo a monic irreducible polynomial chosen
deterministically at construction: the lexicographically smallest one,
coefficients compared low degree first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DivisionByZero, NotPrime, OrderUnavailable, Overflow

ORDER_CAP = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def prime_power_split(q: int) -> tuple[int, int]:
    """Factor q as p^alpha with p prime, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = ps[0]
    alpha = 0
    m = q
    while m > 1:
        m //= p
        alpha += 1
    if p**alpha != q:
        raise NotPrime(f"{q} is not a prime power")
    return p, alpha


@dataclass(frozen=True)
class FieldElement:
    """Element of GF(p^alpha): alpha coefficients in [0, p), little-endian."""

    coeffs: tuple[int, ...]


# -- polynomial helpers over GF(p), little-endian lists -------------------


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """a mod m with m monic."""
    a = list(a)
    _poly_trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1]
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _poly_divisible(a, b, p):
    """True if monic b divides a exactly."""
    return not _poly_mod(a, b, p)


def _monic_polys(degree, p):
    """All monic polynomials of the given degree, ascending lex (low degree first)."""
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def _is_irreducible(m, p):
    """Exhaustive factor check: no monic divisor of degree 1..deg/2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(d, p):
            if _poly_divisible(m, cand, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^alpha) with a fixed monic irreducible modulus.

    modulus holds alpha+1 coefficients for alpha >= 2 and is empty for
    prime fields, where reduction is plain mod p.
    """

    p: int
    alpha: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.alpha

    # -- element plumbing --

    def element(self, i: int) -> FieldElement:
        """i-th element in enumeration order: base-p digits of i, ascending."""
        if not 0 <= i < self.q:
            raise ValueError(f"element index {i} outside [0, {self.q})")
        digits = []
        for _ in range(self.alpha):
            digits.append(i % self.p)
            i //= self.p
        return FieldElement(tuple(digits))

    def index(self, a: FieldElement) -> int:
        v = 0
        for c in reversed(a.coeffs):
            v = v * self.p + c
        return v

    def elements(self):
        return (self.element(i) for i in range(self.q))

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.alpha)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.alpha - 1))

    def is_zero(self, a: FieldElement) -> bool:
        return not any(a.coeffs)

    # -- arithmetic --

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(tuple((-x) % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.alpha == 1:
            return FieldElement(((a.coeffs[0] * b.coeffs[0]) % self.p,))
        prod = _poly_mul(list(a.coeffs), list(b.coeffs), self.p)
        red = _poly_mod(prod, list(self.modulus), self.p)
        red += [0] * (self.alpha - len(red))
        return FieldElement(tuple(red))

    def inv(self, a: FieldElement) -> FieldElement:
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        if self.alpha == 1:
            return FieldElement((pow(a.coeffs[0], self.p - 2, self.p),))
        # extended Euclid in GF(p)[x]: r0 = modulus, r1 = a
        p = self.p
        r0, r1 = list(self.modulus), _poly_trim(list(a.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod_(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_(s0, _poly_mul(q, s1, p), p)
        # r0 is now a nonzero constant gcd; scale s0 by its inverse
        c_inv = pow(r0[0], p - 2, p)
        out = [(c_inv * c) % p for c in s0]
        out = _poly_mod(out, list(self.modulus), p)
        out += [0] * (self.alpha - len(out))
        return FieldElement(tuple(out))

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out


def _poly_divmod_(a, b, p):
    """Quotient and remainder of a by b over GF(p); b nonzero."""
    a = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    b_lead_inv = pow(b[-1], p - 2, p)
    while a and len(a) >= len(b):
        shift = len(a) - len(b)
        c = (a[-1] * b_lead_inv) % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_sub_(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def field_create(p: int, alpha: int = 1) -> FieldSpec:
    """Build GF(p^alpha); modulus chosen as the lexicographically smallest
    monic irreducible of degree alpha (coefficients compared low degree first).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if p**alpha > ORDER_CAP:
        raise Overflow(f"field order {p}^{alpha} exceeds {ORDER_CAP}")
    if alpha == 1:
        return FieldSpec(p, 1, ())
    for m in _monic_polys(alpha, p):
        if _is_irreducible(m, p):
            return FieldSpec(p, alpha, tuple(m))
    raise RuntimeError("unreachable: an irreducible polynomial of every degree exists")


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    p, alpha = prime_power_split(q)
    return field_create(p, alpha)


def element_of_order(spec: FieldSpec, t: int) -> FieldElement:
    """First element (enumeration order) of multiplicative order exactly t.

    Requires t | q-1; otherwise no such element exists in the cyclic group.
    """
    if t < 1 or (spec.q - 1) % t != 0:
        raise OrderUnavailable(f"no element of order {t}: t must divide q-1 = {spec.q - 1}")
    rs = prime_factors(t)
    for i in range(1, spec.q):
        a = spec.element(i)
        if spec.pow(a, t) != spec.one:
            continue
        if all(spec.pow(a, t // r) != spec.one for r in rs):
            return a
    raise OrderUnavailable(f"no element of order {t} found")  # unreachable for t | q-1


def subgroup(spec: FieldSpec, h: FieldElement, t: int) -> tuple[FieldElement, ...]:
    """The cyclic subgroup H = {1, h, ..., h^(t-1)} generated by an order-t element."""
    out = [spec.one]
    cur = spec.one
    for _ in range(t - 1):
        cur = spec.mul(cur, h)
        out.append(cur)
    return tuple(out)
