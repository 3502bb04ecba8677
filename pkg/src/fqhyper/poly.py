"""Sparse multivariate polynomials over GF(p^s) and the hypersurfaces they cut out.

Polynomials are stored as canonical term sequences: (exponent tuple, coefficient
code) pairs in graded-lexicographic order with the leading term first, no zero
coefficients.  Equality and hashing are structural, and render/parse round-trip
exactly on canonical forms.
"""

from __future__ import annotations

import re

from . import linalg
from .gf import Field


class ParseError(ValueError):
    """Polynomial text does not match the term grammar."""


class VariableIndexOutOfRange(ValueError):
    pass


class InhomogeneousWhereRequired(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class DependentPoints(ValueError):
    """The two points handed to a line restriction are projectively equal."""


def _term_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


# internal polynomial arithmetic on {exps: coeff} dicts


def _dict_add(f: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = f.add(out.get(e, 0), c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _dict_mul(f: Field, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = f.add(out.get(e, 0), f.mul(ca, cb))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _dict_pow(f: Field, a: dict, n: int, nvars: int) -> dict:
    result = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            result = _dict_mul(f, result, base)
        n >>= 1
        if n:
            base = _dict_mul(f, base, base)
    return result


class MultiPoly:
    """A polynomial in variables x0..x{nvars-1} with coefficients in `field`."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, nvars: int, coeffs: dict):
        self.field = field
        self.nvars = nvars
        items = []
        for exps, c in coeffs.items():
            if c == 0:
                continue
            if len(exps) != nvars:
                raise DimensionMismatch(f"exponent tuple {exps} has wrong arity")
            items.append((tuple(exps), c))
        items.sort(key=lambda t: _term_key(t[0]))
        self.terms = tuple(items)
        self._hash = None

    # -- constructors

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c: int) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: Field, nvars: int, i: int) -> "MultiPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {e: 1})

    @classmethod
    def linear_form(cls, field: Field, coeffs) -> "MultiPoly":
        n = len(coeffs)
        d = {}
        for i, c in enumerate(coeffs):
            if c:
                d[tuple(1 if j == i else 0 for j in range(n))] = c
        return cls(field, n, d)

    # -- structure

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return -1 if not self.terms else max(sum(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e, _ in self.terms}
        return len(degs) <= 1

    def coeff(self, exps) -> int:
        for e, c in self.terms:
            if e == tuple(exps):
                return c
        return 0

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, self.terms))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self.field!r}, {self.render()!r})"

    # -- ring operations

    def _wrap(self, d: dict) -> "MultiPoly":
        return MultiPoly(self.field, self.nvars, d)

    def _check_compat(self, other: "MultiPoly") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise DimensionMismatch("mixed fields or variable counts")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compat(other)
        return self._wrap(_dict_add(self.field, self.as_dict(), other.as_dict()))

    def __neg__(self) -> "MultiPoly":
        f = self.field
        return self._wrap({e: f.neg(c) for e, c in self.terms})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compat(other)
        return self._wrap(_dict_mul(self.field, self.as_dict(), other.as_dict()))

    def __pow__(self, n: int) -> "MultiPoly":
        return self._wrap(_dict_pow(self.field, self.as_dict(), n, self.nvars))

    def scale(self, c: int) -> "MultiPoly":
        f = self.field
        return self._wrap({e: f.mul(c, k) for e, k in self.terms})

    def map_coeffs(self, fn, field: Field | None = None) -> "MultiPoly":
        """Apply a coefficient map (e.g. Frobenius or a subfield embedding)."""
        return MultiPoly(field or self.field, self.nvars, {e: fn(c) for e, c in self.terms})

    def normalized(self) -> "MultiPoly":
        """Scale so the leading (graded-lex first) coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.terms[0][1]))

    # -- evaluation and calculus

    def evaluate(self, coords) -> int:
        if len(coords) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} coordinates, got {len(coords)}")
        f = self.field
        acc = 0
        for exps, c in self.terms:
            v = c
            for x, e in zip(coords, exps):
                if e:
                    if x == 0:
                        v = 0
                        break
                    v = f.mul(v, f.pow(x, e))
            acc = f.add(acc, v)
        return acc

    def partial_derivative(self, i: int) -> "MultiPoly":
        """Formal d/dx_i; exponents act through the characteristic."""
        if not 0 <= i < self.nvars:
            raise VariableIndexOutOfRange(f"x{i} with {self.nvars} variables")
        f = self.field
        p = f.p
        out: dict = {}
        for exps, c in self.terms:
            e = exps[i]
            if e == 0 or e % p == 0:
                continue
            ne = exps[:i] + (e - 1,) + exps[i + 1 :]
            v = f.add(out.get(ne, 0), f.mul(c, e % p))
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return self._wrap(out)

    def gradient(self) -> list:
        return [self.partial_derivative(i) for i in range(self.nvars)]

    # -- substitution

    def linear_change(self, m) -> "MultiPoly":
        """F(M.x): substitute x_i -> sum_j M[i][j] x_j for an invertible M."""
        f = self.field
        n = self.nvars
        if len(m) != n or any(len(r) != n for r in m):
            raise DimensionMismatch("matrix shape does not match variable count")
        if linalg.rank(f, m) < n:
            raise SingularMatrix("coordinate change must be invertible")
        return self._substitute([MultiPoly.linear_form(f, row).as_dict() for row in m], n)

    def _substitute(self, images: list, out_nvars: int) -> "MultiPoly":
        f = self.field
        pow_cache: list[dict[int, dict]] = [{} for _ in range(self.nvars)]
        acc: dict = {}
        for exps, c in self.terms:
            term = {(0,) * out_nvars: c}
            for i, e in enumerate(exps):
                if not e:
                    continue
                cache = pow_cache[i]
                if e not in cache:
                    cache[e] = _dict_pow(f, images[i], e, out_nvars)
                term = _dict_mul(f, term, cache[e])
                if not term:
                    break
            acc = _dict_add(f, acc, term)
        return MultiPoly(f, out_nvars, acc)

    def restrict_to_line(self, p0, p1) -> "MultiPoly":
        """The binary form F(u*p0 + v*p1) in two variables (u, v).

        Identically zero exactly when the line through p0 and p1 lies in
        {F = 0}, for any degree.
        """
        f = self.field
        if len(p0) != self.nvars or len(p1) != self.nvars:
            raise DimensionMismatch("points must have one coordinate per variable")
        if linalg.rank(f, [tuple(p0), tuple(p1)]) < 2:
            raise DependentPoints("line endpoints are projectively equal")
        images = []
        for a, b in zip(p0, p1):
            d = {}
            if a:
                d[(1, 0)] = a
            if b:
                d[(0, 1)] = b
            images.append(d)
        return self._substitute(images, 2)

    def divides_linear(self, lin: "MultiPoly"):
        """Exact division by a linear form: the quotient, or None.

        Works by an invertible change of coordinates sending the form to x0,
        so it stays valid when the degree exceeds q (where rational-point
        vanishing tests say nothing).
        """
        self._check_compat(lin)
        if lin.is_zero() or lin.total_degree() != 1 or not lin.is_homogeneous():
            raise ValueError("divisor must be a nonzero homogeneous linear form")
        f = self.field
        n = self.nvars
        a = tuple(lin.coeff(tuple(1 if j == i else 0 for j in range(n))) for i in range(n))
        al = linalg.complete_rows(f, [a], n)
        b = linalg.inverse(f, al)
        changed = self.linear_change(b)
        if any(e[0] == 0 for e, _ in changed.terms):
            return None
        shifted = MultiPoly(f, n, {(e[0] - 1,) + e[1:]: c for e, c in changed.terms})
        quotient = shifted.linear_change(al)
        assert lin * quotient == self, "division verification failed"
        return quotient

    def pth_power_root(self):
        """G with G^p = F when F is a p-th power, else None."""
        f = self.field
        p = f.p
        if any(e % p for exps, _ in self.terms for e in exps):
            return None
        root_exp = p ** (f.s - 1)  # inverse of the Frobenius x -> x^p
        out = {tuple(e // p for e in exps): f.pow(c, root_exp) for exps, c in self.terms}
        g = self._wrap(out)
        assert g**p == self, "p-th power verification failed"
        return g

    # -- text and JSON forms

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            factors = [f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(exps) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return "+".join(parts)

    def to_json(self) -> list:
        return [{"coeff": c, "exp": list(e)} for e, c in self.terms]

    @classmethod
    def from_json(cls, field: Field, nvars: int, data: list) -> "MultiPoly":
        d = {}
        for item in data:
            e = tuple(item["exp"])
            d[e] = field.add(d.get(e, 0), item["coeff"])
        return cls(field, nvars, d)


_FACTOR_RE = re.compile(r"^(?:(\d+)|[xX](\d+)(?:\^(\d+))?)$")


def parse(text: str, field: Field, nvars: int) -> MultiPoly:
    """Parse `+`/`-` joined terms of `*`-joined factors like `3*x0^2*x1`.

    Coefficients are integer element codes in [0, q); `-` negates the term.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ParseError("empty polynomial text")
    coeffs: dict = {}
    pos = 0
    sign = 1
    if stripped[0] in "+-":
        sign = -1 if stripped[0] == "-" else 1
        pos = 1
    while pos <= len(stripped):
        nxt = len(stripped)
        for i in range(pos, len(stripped)):
            if stripped[i] in "+-":
                nxt = i
                break
        chunk = stripped[pos:nxt]
        if not chunk:
            raise ParseError(f"empty term in {text!r}")
        c = 1
        exps = [0] * nvars
        for factor in chunk.split("*"):
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            if m.group(1) is not None:
                code = int(m.group(1))
                if code >= field.q:
                    raise ParseError(f"coefficient code {code} not in [0, {field.q})")
                c = field.mul(c, code)
            else:
                i = int(m.group(2))
                if i >= nvars:
                    raise VariableIndexOutOfRange(f"x{i} with only {nvars} variables")
                exps[i] += int(m.group(3)) if m.group(3) else 1
        if sign < 0:
            c = field.neg(c)
        e = tuple(exps)
        v = field.add(coeffs.get(e, 0), c)
        if v:
            coeffs[e] = v
        else:
            coeffs.pop(e, None)
        if nxt == len(stripped):
            break
        sign = -1 if stripped[nxt] == "-" else 1
        pos = nxt + 1
    return MultiPoly(field, nvars, coeffs)


class Hypersurface:
    """X = {F = 0} in P^N for a nonzero homogeneous form F in N+1 variables."""

    __slots__ = ("poly", "ambient", "degree")

    def __init__(self, poly: MultiPoly):
        if poly.is_zero():
            raise ValueError("the zero polynomial defines no hypersurface")
        if not poly.is_homogeneous():
            raise InhomogeneousWhereRequired(f"{poly.render()} is not homogeneous")
        if poly.nvars - 1 < 2:
            raise ValueError("ambient projective dimension must be at least 2")
        self.poly = poly
        self.ambient = poly.nvars - 1
        self.degree = poly.total_degree()

    @property
    def field(self) -> Field:
        return self.poly.field

    def apply(self, m) -> "Hypersurface":
        return Hypersurface(self.poly.linear_change(m))

    def __eq__(self, other) -> bool:
        return isinstance(other, Hypersurface) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"Hypersurface(P^{self.ambient}/{self.field!r}, deg {self.degree}: {self.poly.render()})"


def hypersurface(text: str, field: Field, nvars: int) -> Hypersurface:
    return Hypersurface(parse(text, field, nvars))
