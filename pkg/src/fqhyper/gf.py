"""Exact arithmetic in the finite field GF(p^s).

Elements are plain integer codes in [0, q): the base-p little-endian digit
encoding of the residue polynomial's coefficients.  Code 0 is the additive
identity, code 1 the multiplicative identity.  The reduction modulus is
pinned to the lexicographically smallest monic irreducible polynomial of
degree s over GF(p), coefficients compared constant term first, so element
codes are bit-stable across runs and machines.

Multiplication, inversion and powering run on exp/log tables for a fixed
generator (the smallest code of multiplicative order q-1).  Construction
refuses fields beyond the order cap instead of degrading to slower paths.
"""

from __future__ import annotations

import functools
from typing import Iterator

DEFAULT_ORDER_CAP = 1 << 16

# full q x q operation tables are only built below this order
_DENSE_TABLE_CAP = 256


class NonPrimeCharacteristic(ValueError):
    """Requested characteristic is not a prime number."""


class FieldTooLarge(ValueError):
    """Requested field order exceeds the configured cap."""


class DivisionByZero(ZeroDivisionError):
    """Multiplicative inverse of the zero element."""


class NotASquare(ValueError):
    """Field order is not a square, so no conjugation x -> x^sqrt(q) exists."""


class NotASubfield(ValueError):
    """No embedding exists between the two fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense polynomial helpers over GF(p), coefficient lists constant-term first


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        if a[-1] == 0:
            a.pop()
            continue
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a.pop()
    return _poly_trim(a)


def _poly_divides(d: list[int], a: list[int], p: int) -> bool:
    return not _poly_mod(a, d, p)


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    """Monic degree-`deg` polynomials over GF(p) in lexicographic order of
    their coefficient vector, constant term first."""
    total = p**deg
    for n in range(total):
        coeffs = []
        v = n
        for _ in range(deg):
            coeffs.append(v % p)
            v //= p
        # n counts little-endian; re-derive lexicographic position explicitly
        yield coeffs + [1]


def _smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree s over GF(p)."""
    if s == 1:
        return (0, 1)
    best = None
    for cand in sorted(_monic_polys(p, s), key=lambda c: tuple(c[:-1])):
        if cand[0] == 0:
            continue  # divisible by x
        reducible = False
        for deg in range(1, s // 2 + 1):
            for d in _monic_polys(p, deg):
                if _poly_divides(d, cand, p):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            best = cand
            break
    assert best is not None, "an irreducible of every degree exists"
    return tuple(best)


class Field:
    """The finite field GF(p^s) with q = p^s elements coded as ints in [0, q).

    Instances are immutable after construction and safe to share across
    concurrent workers; every operation is a pure function of its operands.
    Obtain instances through :func:`make_field`, which caches them.
    """

    def __init__(self, p: int, s: int, order_cap: int = DEFAULT_ORDER_CAP):
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**s
        if q > order_cap:
            raise FieldTooLarge(f"q = {p}^{s} = {q} exceeds cap {order_cap}")
        self.p = p
        self.s = s
        self.q = q
        self.modulus = _smallest_irreducible(p, s)
        self._digits = tuple(self._code_digits(c) for c in range(q))
        self._build_exp_log()
        self._build_dense_tables()

    # -- construction internals

    def _code_digits(self, code: int) -> tuple[int, ...]:
        d = []
        for _ in range(self.s):
            d.append(code % self.p)
            code //= self.p
        return tuple(d)

    def _digits_code(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _mul_raw(self, a: int, b: int) -> int:
        """Residue-polynomial product, used only while building tables."""
        p = self.p
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * self.s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.modulus), p)
        rem += [0] * (self.s - len(rem))
        return self._digits_code(rem)

    def _multiplicative_order(self, g: int) -> int:
        n, x = 1, g
        while x != 1:
            x = self._mul_raw(x, g)
            n += 1
            if n > self.q:  # pragma: no cover - defensive
                raise AssertionError("order computation ran away")
        return n

    def _build_exp_log(self) -> None:
        q = self.q
        if q == 2:
            self.generator = 1
        else:
            for g in range(2, q):
                if self._multiplicative_order(g) == q - 1:
                    self.generator = g
                    break
        exp = [0] * (q - 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_raw(x, self.generator)
        self.exp_table = exp
        self.log_table = log

    def _add_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.s == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._digits_code([(x + y) % self.p for x, y in zip(da, db)])

    def _build_dense_tables(self) -> None:
        q = self.q
        self._neg = [self._digits_code([(-d) % self.p for d in self._digits[c]]) for c in range(q)]
        if q <= _DENSE_TABLE_CAP:
            self._add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
            self._mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
            self._inv = [0] * q
            for a in range(1, q):
                self._inv[a] = self.exp_table[(q - 1 - self.log_table[a]) % (q - 1)]
        else:
            self._add = None
            self._mul = None
            self._inv = None

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self._inv is not None:
            return self._inv[a]
        return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e for any non-negative integer exponent; pow(0, 0) = 1."""
        if e < 0:
            raise ValueError("exponent must be non-negative")
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def arith(self, op: str, *operands: int) -> int:
        """String-dispatched arithmetic, the CLI/JSON-facing surface."""
        table = {
            "add": self.add,
            "sub": self.sub,
            "mul": self.mul,
            "inv": self.inv,
            "neg": self.neg,
            "pow": self.pow,
        }
        try:
            fn = table[op]
        except KeyError:
            raise ValueError(f"unknown operation {op!r}") from None
        return fn(*operands)

    def frobenius(self, a: int, t: int) -> int:
        """a^(p^t); t = s is the identity automorphism."""
        if t < 0:
            raise ValueError("t must be non-negative")
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, t, self.q - 1) if self.q > 2 else 1)

    def sqrt_order(self) -> int:
        """p^(s/2), the conjugation order for Hermitian forms (s even only)."""
        if self.s % 2:
            raise NotASquare(f"q = {self.p}^{self.s} is not a square")
        return self.p ** (self.s // 2)

    # -- misc

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def descriptor(self) -> dict:
        return {"p": self.p, "s": self.s, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self) -> int:
        return hash((self.p, self.s))


@functools.lru_cache(maxsize=None)
def make_field(p: int, s: int, order_cap: int = DEFAULT_ORDER_CAP) -> Field:
    """Construct (and cache) GF(p^s).

    Raises NonPrimeCharacteristic when p is not prime and FieldTooLarge when
    p^s exceeds the cap.  Arithmetic tables are built eagerly.
    """
    return Field(p, s, order_cap)


class FieldEmbedding:
    """An injective ring homomorphism GF(q) -> GF(q^t), precomputed as a table.

    The generator of the small field is sent to the smallest (by code) root
    of the small modulus in the big field, which makes the embedding
    deterministic.
    """

    def __init__(self, small: Field, big: Field):
        if small.p != big.p or big.s % small.s:
            raise NotASubfield(f"GF({small.q}) does not embed in GF({big.q})")
        self.small = small
        self.big = big
        root = None
        for r in range(big.q):
            acc = 0
            for c in reversed(small.modulus):
                acc = big.add(big.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        assert root is not None, "subfield root must exist"
        self.root = root
        table = []
        for code in range(small.q):
            acc = 0
            for d in reversed(small._digits[code]):
                acc = big.add(big.mul(acc, root), d)
            table.append(acc)
        self.table = tuple(table)

    def __call__(self, code: int) -> int:
        return self.table[code]


@functools.lru_cache(maxsize=None)
def embed(small: Field, big: Field) -> FieldEmbedding:
    """Cached embedding GF(q) -> GF(q^t); raises NotASubfield otherwise."""
    return FieldEmbedding(small, big)
