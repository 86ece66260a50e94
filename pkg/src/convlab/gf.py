"""Finite fields GF(p^m).

Elements are handled internally as integers ``0 <= a < q`` holding the
base-p digits of the residue polynomial (digit i is the coefficient of x^i).
All arithmetic in the rest of the package goes through the integer API of
:class:`GF` (``F.add(a, b)``, ``F.mul(a, b)`` ...).  :class:`FieldElem` is a
thin operator-overloading wrapper for interactive use.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

# full add/mul tables are built up to this order; log tables up to 2^16
_TABLE_LIMIT = 256
_LOG_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


# -- polynomials over GF(p), little-endian coefficient lists ----------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ptrim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _monic_polys(p: int, m: int) -> Iterator[tuple[int, ...]]:
    # lexicographic in (c0, c1, ..., c_{m-1}) with leading 1 appended
    for low in itertools.product(range(p), repeat=m):
        yield tuple(low) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _ptrim(list(poly))
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _pmod(poly, cand, p):
                return False
    return True


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(c: Sequence[int], p: int) -> int:
    a = 0
    for ci in reversed(c):
        a = a * p + ci
    return a


@dataclass(frozen=True, eq=False)
class GF:
    """The field GF(p^m) defined by a monic irreducible ``modulus``.

    Use :func:`field_make` rather than the constructor; it validates the
    arguments and caches one instance per (p, m).
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.p ** self.m)
        object.__setattr__(self, "_tables", None)
        object.__setattr__(self, "_logs", None)
        if self.m > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()
        elif self.m > 1 and self.q <= _LOG_LIMIT:
            self._build_logs()

    # identity is (p, m, modulus)
    def _key(self) -> tuple:
        return (self.p, self.m, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    # -- reference (table-free) arithmetic -------------------------------

    def _poly_add(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, m), _digits(b, p, m))], p)

    def _poly_neg(self, a: int) -> int:
        p, m = self.p, self.m
        return _undigits([(-x) % p for x in _digits(a, p, m)], p)

    def _poly_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        prod = _pmul(_ptrim(_digits(a, p, m)), _ptrim(_digits(b, p, m)), p)
        return _undigits(_pmod(prod, self.modulus, p), p) if prod else 0

    def _poly_inv(self, a: int) -> int:
        """Extended Euclid in GF(p)[x] modulo the defining polynomial."""
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        r0, r1 = list(self.modulus), _ptrim(_digits(a, p, self.m))
        s0, s1 = [], [1]
        while r1:
            lead_inv = pow(r1[-1], -1, p)
            quo = [0] * max(len(r0) - len(r1) + 1, 0)
            rem = list(r0)
            while len(rem) >= len(r1):
                c = rem[-1] * lead_inv % p
                sh = len(rem) - len(r1)
                quo[sh] = c
                for i, x in enumerate(r1):
                    rem[sh + i] = (rem[sh + i] - c * x) % p
                _ptrim(rem)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(_ptrim(quo), s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        return _undigits([x * c % p for x in s0] + [0] * (self.m - len(s0)), p)

    # -- tables --------------------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        add = [[self._poly_add(a, b) for b in range(q)] for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            row = mul[a]
            for b in range(a, q):
                row[b] = mul[b][a] = self._poly_mul(a, b)
        neg = [self._poly_neg(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        object.__setattr__(self, "_tables", (add, mul, neg, inv))

    def _build_logs(self) -> None:
        q = self.q
        order = q - 1
        for g in range(2, q):
            exp = [1] * order
            x = 1
            ok = True
            for i in range(1, order):
                x = self._poly_mul(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok:
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        object.__setattr__(self, "_logs", (exp, log))

    # -- integer API -----------------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._tables is not None:
            return self._tables[0][a][b]
        if self.p == 2:
            return a ^ b
        return self._poly_add(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self._tables is not None:
            return self._tables[2][a]
        if self.p == 2:
            return a
        return self._poly_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if self._tables is not None:
            return self._tables[1][a][b]
        if a == 0 or b == 0:
            return 0
        if self._logs is not None:
            exp, log = self._logs
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return pow(a, -1, self.p)
        if self._tables is not None:
            return self._tables[3][a]
        if self._logs is not None:
            exp, log = self._logs
            return exp[(-log[a]) % (self.q - 1)]
        return self._poly_inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(a), -e)
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, a: int) -> list[int]:
        return _digits(a, self.p, self.m)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {list(coeffs)} for {self!r}")
        return _undigits(coeffs, self.p)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return a

    # -- wrapped elements --------------------------------------------------

    def __call__(self, value: int | Sequence[int]) -> FieldElem:
        if isinstance(value, int):
            if self.m == 1:
                return FieldElem(self, value % self.p)
            return FieldElem(self, self.check(value))
        return FieldElem(self, self.from_coeffs(value))

    # -- serialization -----------------------------------------------------

    def header(self) -> str:
        return "field {} {} {}".format(self.p, self.m, " ".join(map(str, self.modulus)))

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        return ":".join(map(str, self.coeffs(a)))

    def parse(self, token: str) -> int:
        try:
            parts = [int(t) for t in token.split(":")]
        except ValueError:
            raise FieldError(f"bad field element {token!r}") from None
        if self.m == 1:
            if len(parts) != 1 or not 0 <= parts[0] < self.p:
                raise FieldError(f"bad element {token!r} for {self!r}")
            return parts[0]
        return self.from_coeffs(parts)


@dataclass(frozen=True)
class FieldElem:
    field: GF
    value: int

    def _other(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.power(self.value, e))

    def inv(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def __repr__(self) -> str:
        return f"{self.field!r}({self.field.format(self.value)})"


@functools.lru_cache(maxsize=None)
def field_make(p: int, m: int = 1) -> GF:
    """Return GF(p^m) with the lexicographically smallest monic irreducible
    modulus (coefficients compared low degree first)."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m!r}")
    if m == 1:
        return GF(p, 1, (0, 1))
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return GF(p, m, cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_from_modulus(p: int, modulus: Sequence[int]) -> GF:
    """Build a field from an explicit modulus, e.g. one read from a file."""
    modulus = tuple(int(c) for c in modulus)
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    m = len(modulus) - 1
    if m < 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
        raise FieldError(f"modulus {list(modulus)} is not monic over GF({p})")
    if m == 1:
        if modulus != (0, 1):
            raise FieldError("prime-field modulus must be '0 1'")
        return field_make(p, 1)
    canonical = field_make(p, m)
    if canonical.modulus == modulus:
        return canonical
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
    return GF(p, m, modulus)


def enumerate_elements(F: GF) -> list[int]:
    return list(range(F.q))


def random_element(F: GF, rng) -> int:
    """Uniform element; ``rng`` is a :class:`random.Random`."""
    return rng.randrange(F.q)


def order_factor(q: int) -> tuple[int, int]:
    """Split a prime power q into (p, m)."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1:
                raise FieldError("not a prime power")
            return p, m
    raise FieldError("not a prime power")
