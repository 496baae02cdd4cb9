"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as an integer coefficient vector in the
power basis 1, zeta_N, ..., zeta_N^(phi(N)-1) together with a positive common
denominator.  The vector is always fully reduced modulo the N-th cyclotomic
polynomial, so two elements of the same conductor are equal iff their
``(num, den)`` pairs coincide.  Elements of different conductors are compared
after lifting both into Q(zeta_lcm).

Because Z[zeta_N] is the full ring of integers of Q(zeta_N) and the power
basis is an integral basis, an element is an algebraic integer exactly when
its common denominator is 1.  This is used as the fast path of
:func:`is_algebraic_integer`; :func:`minimal_polynomial` gives the slower,
independent route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Mapping, Union

import mpmath

Rational = Fraction
Scalar = Union[int, Fraction, "CycloNum"]


class DivisionByZero(ZeroDivisionError):
    pass


class NotCoprime(ValueError):
    """Raised when a Galois automorphism is requested for k not coprime to N."""


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def totient(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    """Representatives of (Z/n)^*, with 1 first."""
    if n == 1:
        return (1,)
    return tuple(k for k in range(1, n) if gcd(k, n) == 1)


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reducer(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi_poly = cyclotomic_poly(n)
    deg = len(phi_poly) - 1
    tail = tuple((j, c) for j, c in enumerate(phi_poly[:-1]) if c)
    return deg, tail


def _canonical(n: int, coeffs: list[int], den: int) -> tuple[tuple[int, ...], int]:
    """Fold exponents mod n, reduce mod Phi_n, normalise the denominator."""
    if len(coeffs) > n:
        folded = coeffs[:n]
        for i in range(n, len(coeffs)):
            if coeffs[i]:
                folded[i % n] += coeffs[i]
        coeffs = folded
    else:
        coeffs = list(coeffs)
    deg, tail = _reducer(n)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        t = coeffs[i]
        if t:
            coeffs[i] = 0
            base = i - deg
            for j, c in tail:
                coeffs[base + j] -= t * c
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return (), 1
    if den < 0:
        den = -den
        coeffs = [-c for c in coeffs]
    g = den
    for c in coeffs:
        if g == 1:
            break
        g = gcd(g, c)
    if g != 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return tuple(coeffs), den


def _convolve(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    if len(a) >= 12 and len(b) >= 12:
        return _kronecker(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _kronecker(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    # pack into one big integer per operand, multiply, unpack signed digits
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    k = bound.bit_length() + 2
    A = 0
    for c in reversed(a):
        A = (A << k) + c
    B = 0
    for c in reversed(b):
        B = (B << k) + c
    P = A * B
    mask, half, full = (1 << k) - 1, 1 << (k - 1), 1 << k
    out = []
    for _ in range(len(a) + len(b) - 1):
        d = P & mask
        if d >= half:
            d -= full
        out.append(d)
        P = (P - d) >> k
    return out


class CycloNum:
    """An exact element of Q(zeta_N).  Immutable."""

    __slots__ = ("N", "num", "den", "_hash")

    def __init__(self, N: int, num: tuple[int, ...] = (), den: int = 1, *, _trusted: bool = False):
        if N < 1:
            raise ValueError("conductor must be positive")
        if not _trusted:
            num, den = _canonical(N, list(num), den)
        self.N = N
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def rational(cls, value: int | Fraction, N: int = 1) -> "CycloNum":
        value = Fraction(value)
        if value == 0:
            return cls(N, (), 1, _trusted=True)
        return cls(N, (value.numerator,), value.denominator, _trusted=True)

    @classmethod
    def coerce(cls, value: Scalar) -> "CycloNum":
        if isinstance(value, CycloNum):
            return value
        if isinstance(value, RootOfUnity):
            return value.to_cyclo()
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycloNum")

    # views ------------------------------------------------------------------

    def coeffs(self) -> dict[int, Fraction]:
        """Exponent -> rational coefficient, zero entries omitted."""
        return {e: Fraction(c, self.den) for e, c in enumerate(self.num) if c}

    def is_zero(self) -> bool:
        return not self.num

    def as_rational(self) -> Fraction | None:
        if len(self.num) > 1:
            return None
        return Fraction(self.num[0], self.den) if self.num else Fraction(0)

    def key(self) -> tuple[int, tuple[int, ...], int]:
        return (self.N, self.num, self.den)

    def lift(self, L: int) -> "CycloNum":
        if L == self.N:
            return self
        if L % self.N:
            raise ValueError(f"cannot lift conductor {self.N} to {L}")
        if len(self.num) <= 1:
            return CycloNum(L, self.num, self.den, _trusted=True)
        step = L // self.N
        coeffs = [0] * ((len(self.num) - 1) * step + 1)
        for e, c in enumerate(self.num):
            coeffs[e * step] = c
        num, den = _canonical(L, coeffs, self.den)
        return CycloNum(L, num, den, _trusted=True)

    def _pair(self, other: Scalar) -> tuple["CycloNum", "CycloNum"]:
        other = CycloNum.coerce(other)
        if other.N == self.N:
            return self, other
        if len(other.num) <= 1:
            return self, CycloNum(self.N, other.num, other.den, _trusted=True)
        if len(self.num) <= 1:
            return CycloNum(other.N, self.num, self.den, _trusted=True), other
        L = lcm(self.N, other.N)
        return self.lift(L), other.lift(L)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: Scalar) -> "CycloNum":
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        coeffs = [0] * max(len(a.num), len(b.num))
        for i, c in enumerate(a.num):
            coeffs[i] += c * b.den
        for i, c in enumerate(b.num):
            coeffs[i] += c * a.den
        num, den = _canonical(a.N, coeffs, a.den * b.den)
        return CycloNum(a.N, num, den, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.N, tuple(-c for c in self.num), self.den, _trusted=True)

    def __sub__(self, other: Scalar) -> "CycloNum":
        try:
            other = CycloNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "CycloNum":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CycloNum":
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        if not a.num or not b.num:
            return CycloNum(a.N, (), 1, _trusted=True)
        if len(b.num) == 1 or len(a.num) == 1:
            if len(a.num) == 1:
                a, b = b, a
            s = b.num[0]
            num, den = _canonical(a.N, [c * s for c in a.num], a.den * b.den)
            return CycloNum(a.N, num, den, _trusted=True)
        num, den = _canonical(a.N, _convolve(a.num, b.num), a.den * b.den)
        return CycloNum(a.N, num, den, _trusted=True)

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Inverse via the product of the nontrivial Galois conjugates."""
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(zeta_N)")
        if len(self.num) == 1:
            return CycloNum(self.N, (self.den,), self.num[0], _trusted=False)
        conj_product = CycloNum.rational(1, self.N)
        for k in units(self.N)[1:]:
            conj_product = conj_product * self.galois(k)
        norm = (self * conj_product).as_rational()
        assert norm is not None and norm != 0, "norm is not a nonzero rational"
        return conj_product * (1 / norm)

    def __truediv__(self, other: Scalar) -> "CycloNum":
        try:
            other = CycloNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Scalar) -> "CycloNum":
        return CycloNum.coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> "CycloNum":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = CycloNum.rational(1, self.N)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # Galois action ----------------------------------------------------------

    def galois(self, k: int) -> "CycloNum":
        """Apply zeta_N -> zeta_N^k."""
        N = self.N
        k %= N
        if gcd(k, N) != 1 and N > 1:
            raise NotCoprime(f"gcd({k}, {N}) != 1")
        if len(self.num) <= 1 or k == 1:
            return self
        coeffs = [0] * N
        for e, c in enumerate(self.num):
            coeffs[(e * k) % N] += c
        num, den = _canonical(N, coeffs, self.den)
        return CycloNum(N, num, den, _trusted=True)

    def conj(self) -> "CycloNum":
        return self.galois(-1)

    # comparison -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if isinstance(other, RootOfUnity):
            other = other.to_cyclo()
        if not isinstance(other, CycloNum):
            return NotImplemented
        if self.N == other.N:
            return self.num == other.num and self.den == other.den
        if len(self.num) <= 1 and len(other.num) <= 1:
            return self.num == other.num and self.den == other.den
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        if self._hash is None:
            c = compress(self)
            self._hash = hash((c.N, c.num, c.den))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        return f"CycloNum({self.N}, {self})"

    def __str__(self) -> str:
        if not self.num:
            return "0"
        terms = []
        for e, c in self.coeffs().items():
            mono = "" if e == 0 else (f"z{self.N}" if e == 1 else f"z{self.N}^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def make(N: int, raw: Mapping[int, int | Fraction] | Iterable[tuple[int, int | Fraction]]) -> CycloNum:
    """Build sum(c * zeta_N^e) from arbitrary integer exponents."""
    items = raw.items() if isinstance(raw, Mapping) else raw
    items = [(e % N, Fraction(c)) for e, c in items]
    den = lcm(*(c.denominator for _, c in items)) if items else 1
    coeffs = [0] * N
    for e, c in items:
        coeffs[e] += c.numerator * (den // c.denominator)
    return CycloNum(N, coeffs, den)


def zeta(N: int, e: int = 1) -> CycloNum:
    return make(N, {e: 1})


def one(N: int = 1) -> CycloNum:
    return CycloNum.rational(1, N)


def zero(N: int = 1) -> CycloNum:
    return CycloNum.rational(0, N)


def conj(a: CycloNum) -> CycloNum:
    return a.conj()


def is_real(a: CycloNum) -> bool:
    return a == a.conj()


def is_rational(a: CycloNum) -> Fraction | None:
    return a.as_rational()


def common_conductor(values: Iterable[CycloNum]) -> int:
    return lcm(*(v.N for v in values))


def compress(a: CycloNum) -> CycloNum:
    """Re-express ``a`` over the smallest cyclotomic field containing it."""
    if len(a.num) <= 1:
        return CycloNum(1, a.num, a.den, _trusted=True)
    N = a.N
    for M in divisors(N)[:-1]:
        kernel = [k for k in units(N) if k % M == 1 % M and k != 1]
        if all(a.galois(k) == a for k in kernel):
            return _descend(a, M)
    return a


def _descend(a: CycloNum, M: int) -> CycloNum:
    # solve sum_j x_j zeta_M^j = a inside Q(zeta_N)
    phi_m = totient(M)
    cols = [zeta(M, j).lift(a.N) for j in range(phi_m)]
    rows = len(cyclotomic_poly(a.N)) - 1
    mat = [[Fraction(c.num[i], c.den) if i < len(c.num) else Fraction(0) for c in cols]
           + [Fraction(a.num[i], a.den) if i < len(a.num) else Fraction(0)] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(phi_m):
        piv = next((i for i in range(r, rows) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    sol = {col: mat[i][-1] for i, col in enumerate(pivots)}
    out = make(M, sol)
    assert out.lift(a.N) == a
    return out


# ---------------------------------------------------------------------------
# roots of unity and Galois automorphisms


class RootOfUnity:
    """zeta_M^e stored with M equal to the exact multiplicative order."""

    __slots__ = ("M", "e")

    def __init__(self, M: int, e: int = 1):
        if M < 1:
            raise ValueError("order must be positive")
        frac = Fraction(e % M, M)
        self.M = frac.denominator
        self.e = frac.numerator

    @classmethod
    def from_fraction(cls, turns: Fraction) -> "RootOfUnity":
        turns = Fraction(turns) % 1
        return cls(turns.denominator, turns.numerator)

    @property
    def turns(self) -> Fraction:
        """The angle as a fraction of a full turn, in [0, 1)."""
        return Fraction(self.e, self.M)

    @property
    def order(self) -> int:
        return self.M

    def to_cyclo(self) -> CycloNum:
        return zeta(self.M, self.e)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity.from_fraction(self.turns + other.turns)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity.from_fraction(self.turns - other.turns)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.turns * n)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.from_fraction(-self.turns)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RootOfUnity):
            return self.M == other.M and self.e == other.e
        if isinstance(other, (CycloNum, int, Fraction)):
            return self.to_cyclo() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("root", self.M, self.e))

    def __repr__(self) -> str:
        return f"RootOfUnity({self.M}, {self.e})"

    def __str__(self) -> str:
        if self.M == 1:
            return "1"
        if self.M == 2:
            return "-1"
        return f"z{self.M}^{self.e}" if self.e != 1 else f"z{self.M}"

    def to_json(self) -> dict:
        return {"M": self.M, "e": self.e}

    @classmethod
    def from_json(cls, obj: Mapping) -> "RootOfUnity":
        return cls(int(obj["M"]), int(obj["e"]))


@dataclass(frozen=True)
class GaloisAut:
    """The automorphism zeta_N -> zeta_N^k of Q(zeta_N)."""

    N: int
    k: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("conductor must be positive")
        object.__setattr__(self, "k", self.k % self.N if self.N > 1 else 1)
        if gcd(self.k, self.N) != 1:
            raise NotCoprime(f"gcd({self.k}, {self.N}) != 1")

    def __call__(self, a: Scalar) -> CycloNum:
        return galois_apply(self, a)

    def compose(self, other: "GaloisAut") -> "GaloisAut":
        L = lcm(self.N, other.N)
        s, o = self.lift(L), other.lift(L)
        return GaloisAut(L, s.k * o.k)

    def inverse(self) -> "GaloisAut":
        return GaloisAut(self.N, pow(self.k, -1, self.N) if self.N > 1 else 1)

    def lift(self, L: int) -> "GaloisAut":
        """Deterministic extension to Q(zeta_L) for a multiple L of N.

        Picks the smallest k' = k mod N with gcd(k', L) = 1.
        """
        if L % self.N:
            L = lcm(L, self.N)
        if L == self.N:
            return self
        k = self.k
        while gcd(k, L) != 1:
            k += self.N
        return GaloisAut(L, k)

    def on_root(self, r: RootOfUnity) -> RootOfUnity:
        if self.N % r.M:
            raise ValueError(f"root of order {r.M} not in Q(zeta_{self.N})")
        return RootOfUnity(r.M, r.e * self.k)


def galois_apply(sigma: GaloisAut, a: Scalar) -> CycloNum:
    a = CycloNum.coerce(a)
    if len(a.num) <= 1:
        return a
    if sigma.N % a.N:
        sigma = sigma.lift(lcm(sigma.N, a.N))
    return a.galois(sigma.k % a.N)


def galois_group(N: int) -> list[GaloisAut]:
    return [GaloisAut(N, k) for k in units(N)]


# ---------------------------------------------------------------------------
# numeric embedding


@dataclass(frozen=True)
class ComplexInterval:
    """Disc with midpoint ``mid`` and radius ``rad`` in the complex plane."""

    mid: mpmath.mpc
    rad: mpmath.mpf

    def _prec(self) -> int:
        # compare at a precision well below the radius, not the ambient one
        return 256 if not self.rad else max(53, 64 - mpmath.mag(self.rad))

    def contains(self, z: complex | mpmath.mpc) -> bool:
        with mpmath.workprec(self._prec()):
            return abs(mpmath.mpc(z) - self.mid) <= self.rad

    def overlaps(self, other: "ComplexInterval") -> bool:
        with mpmath.workprec(max(self._prec(), other._prec())):
            return abs(self.mid - other.mid) <= self.rad + other.rad

    def real_sign(self) -> int | None:
        with mpmath.workprec(self._prec()):
            re = self.mid.real
            if re - self.rad > 0:
                return 1
            if re + self.rad < 0:
                return -1
        return None

    def conjugate(self) -> "ComplexInterval":
        with mpmath.workprec(self._prec()):
            return ComplexInterval(mpmath.conj(self.mid), self.rad)

    def __complex__(self) -> complex:
        return complex(self.mid)


def embed(a: Scalar, bits: int = 64) -> ComplexInterval:
    """Certified enclosure of the image of ``a`` under zeta_N -> exp(2 pi i/N)."""
    if bits < 32:
        raise ValueError("precision below 32 bits")
    a = CycloNum.coerce(a)
    work = bits + 32
    with mpmath.workprec(work):
        total = mpmath.mpc(0)
        weight = mpmath.mpf(0)
        for e, c in enumerate(a.num):
            if not c:
                continue
            coef = mpmath.mpf(c) / a.den
            total += coef * mpmath.expjpi(mpmath.mpf(2 * e) / a.N)
            weight += abs(coef)
        # every term carries a few ulps of error from the coefficient, the
        # angle and the exponential; 16 ulps per term is a safe cover
        rad = weight * (len(a.num) + 1) * 16 * mpmath.ldexp(1, -work)
        return ComplexInterval(+total, +rad)


def real_sign(a: CycloNum, bits: int = 64) -> int:
    """Sign of a real element, certified by escalating interval precision."""
    if a.is_zero():
        return 0
    r = a.as_rational()
    if r is not None:
        return 1 if r > 0 else -1
    if a != a.conj():
        raise ValueError("real_sign of a non-real number")
    while True:
        s = embed(a, bits).real_sign()
        if s is not None:
            return s
        bits *= 2


def is_totally_positive(a: CycloNum) -> bool:
    return all(real_sign(a.galois(k)) > 0 for k in units(a.N))


def is_totally_nonnegative(a: CycloNum) -> bool:
    return all(real_sign(a.galois(k)) >= 0 for k in units(a.N))


# ---------------------------------------------------------------------------
# algebraic predicates


@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_square(self) -> "IntPolynomial":
        """p(x) -> p(x^2)."""
        out = [0] * (2 * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return IntPolynomial(tuple(out))

    @classmethod
    def from_high(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(reversed(coeffs)))

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def galois_orbit(a: CycloNum) -> list[CycloNum]:
    """Distinct Galois conjugates of ``a``; ``a`` itself comes first."""
    seen = {}
    for k in units(a.N):
        b = a.galois(k)
        seen.setdefault((b.num, b.den), b)
    return list(seen.values())


def minimal_polynomial(a: Scalar) -> IntPolynomial:
    a = CycloNum.coerce(a)
    r = a.as_rational()
    if r is not None:
        return IntPolynomial((-r.numerator, r.denominator))
    poly: list[CycloNum] = [one(a.N)]
    for root in galois_orbit(a):
        shifted = [zero(a.N)] + poly
        for i, c in enumerate(poly):
            shifted[i] = shifted[i] - c * root
        poly = shifted
    rats = []
    for c in poly:
        q = c.as_rational()
        if q is None:
            raise AssertionError("orbit polynomial has irrational coefficient")
        rats.append(q)
    den = lcm(*(q.denominator for q in rats))
    ints = [int(q * den) for q in rats]
    g = reduce(gcd, ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(tuple(ints))


def is_algebraic_integer(a: Scalar) -> bool:
    return CycloNum.coerce(a).den == 1


def is_root_of_unity(a: Scalar) -> RootOfUnity | None:
    """Kronecker test; returns zeta_M^e equal to ``a`` or None."""
    a = CycloNum.coerce(a)
    if a.is_zero() or not is_algebraic_integer(a):
        return None
    # conj commutes with the whole (abelian) Galois group, so a * conj(a) = 1
    # forces modulus one at every conjugate
    if a * a.conj() != 1:
        return None
    N = a.N
    bound = N if N % 2 == 0 else 2 * N
    order = next((M for M in divisors(bound) if a ** M == 1), None)
    if order is None:
        return None
    for e in units(order):
        if zeta(order, e) == a:
            return RootOfUnity(order, e)
    raise AssertionError("root of unity of known order not located")


def is_d_number(a: Scalar) -> bool:
    a = CycloNum.coerce(a)
    if a.is_zero():
        return True
    if not is_algebraic_integer(a):
        return False
    inv = a.inv()
    for k in units(a.N)[1:]:
        if not is_algebraic_integer(a.galois(k) * inv):
            return False
        if not is_algebraic_integer(a * inv.galois(k)):
            return False
    return True


def phase_root(a: CycloNum) -> RootOfUnity | None:
    """The root of unity u with a / u real and positive, when one exists.

    Exists iff a / conj(a) is a root of unity.  The two square roots of that
    ratio are told apart by the sign of a / u, found on certified intervals.
    """
    if a.is_zero():
        return None
    ratio = is_root_of_unity(a / a.conj())
    if ratio is None:
        return None
    half = RootOfUnity.from_fraction(ratio.turns / 2)
    for cand in (half, half * RootOfUnity(2, 1)):
        b = a * cand.inverse().to_cyclo()
        if b != b.conj():
            raise AssertionError("a / sqrt(a / conj a) is not real")
        if real_sign(b) > 0:
            return cand
    raise AssertionError("neither square root gives a positive real quotient")


# ---------------------------------------------------------------------------
# JSON


def to_json(a: CycloNum) -> dict:
    terms = []
    for e, c in a.coeffs().items():
        terms.append([e, str(c.numerator), str(c.denominator)])
    return {"N": a.N, "coeffs": terms}


def from_json(obj: Mapping) -> CycloNum:
    N = int(obj["N"])
    raw = [(int(e), Fraction(int(n), int(d))) for e, n, d in obj["coeffs"]]
    return make(N, raw)
