"""Sparse multivariate polynomials over Q and GF(p).

Monomials are exponent tuples.  Every ring uses degree-reverse-lexicographic
order on its declared variable order; the printer emits terms in descending
order so that the text form of a polynomial is canonical.

Grammar accepted by :func:`parse_polynomial` (whitespace is ignored)::

    poly     := [sign] term (sign term)*
    sign     := "+" | "-"
    term     := factor (["*"] factor)*
    factor   := number ["/" digits] [power] | variable [power]
    power    := ("^" | "**") digits
    number   := digits

``2x`` and ``x y`` are read as products.  A ``/`` is only legal directly
after an integer literal, so rational coefficients are written ``3/2*x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Coefficient = Union[int, Fraction]
Monomial = tuple

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PolynomialError(ValueError):
    pass


class PolynomialParseError(PolynomialError):
    pass


class RingMismatchError(PolynomialError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def grevlex_key(exp: Monomial):
    """Sort key: a larger key means a larger monomial in grevlex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class RingConfig:
    """The ambient ring k[x_1, ..., x_n] with k = Q (characteristic 0) or GF(p)."""

    variables: tuple
    characteristic: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise PolynomialError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise PolynomialError(f"invalid variable name {v!r}")
        p = self.characteristic
        if p != 0:
            if not _is_prime(p):
                raise PolynomialError(f"characteristic {p} is neither 0 nor a prime")
            if p >= 2**31:
                raise PolynomialError("GF(p) requires p < 2^31")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    # -- coefficient field -------------------------------------------------

    def coerce(self, c) -> Coefficient:
        """Map an int or Fraction into the coefficient field."""
        p = self.characteristic
        if isinstance(c, Fraction):
            if p == 0:
                return c.numerator if c.denominator == 1 else c
            den = c.denominator % p
            if den == 0:
                raise PolynomialError(f"coefficient {c} is not defined modulo {p}")
            return c.numerator * pow(den, -1, p) % p
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"unsupported coefficient {c!r}")
        return c % p if p else c

    def inverse(self, c: Coefficient) -> Coefficient:
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        r = 1 / Fraction(c)
        return r.numerator if r.denominator == 1 else r

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        try:
            idx = self.variables.index(name)
        except ValueError:
            raise PolynomialError(f"unknown variable {name!r}") from None
        exp = [0] * self.nvars
        exp[idx] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingConfig, terms: Mapping[Monomial, Coefficient]):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for m, c in terms.items():
            if len(m) != n:
                raise PolynomialError(f"monomial {m} has wrong length for {n} variables")
            c = ring.coerce(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingConfig, terms: dict) -> "Polynomial":
        # terms already canonical: normalized coefficients, no zeros
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(m == zero for m in self.terms)

    def constant_term(self) -> Coefficient:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> Coefficient:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.inverse(self.leading_coefficient()))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("operands live in different rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _add(self.terms, other.terms, 1, self.ring.characteristic))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _add(self.terms, other.terms, -1, self.ring.characteristic))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return Polynomial._raw(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _mul(self.terms, other.terms, self.ring.characteristic))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise PolynomialError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * self.ring.constant(c)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``other`` does not divide ``self``."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        p = ring.characteristic
        lm = other.leading_monomial()
        inv = ring.inverse(other.terms[lm])
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=grevlex_key)
            q = tuple(a - b for a, b in zip(m, lm))
            if min(q) < 0:
                raise PolynomialError("division is not exact")
            c = _fmul(rem[m], inv, p)
            quot[q] = c
            shifted = {tuple(a + b for a, b in zip(q, mm)): cc for mm, cc in other.terms.items()}
            rem = _add(rem, _mul_scalar(shifted, c, p), -1, p)
        return Polynomial._raw(ring, quot)

    # -- comparison / printing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# -- raw term-dict kernels, shared with the Groebner engine -----------------

def _fmul(a, b, p):
    if p:
        return a * b % p
    r = a * b
    if isinstance(r, Fraction) and r.denominator == 1:
        return r.numerator
    return r


def _add(a: dict, b: dict, sign: int, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + (c if sign == 1 else -c)
        if p:
            v %= p
        elif isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul_scalar(a: dict, c, p: int) -> dict:
    if not c:
        return {}
    return {m: _fmul(v, c, p) for m, v in a.items()}


def _mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    clean = {}
    for m, v in out.items():
        if p:
            v %= p
        elif isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        if v:
            clean[m] = v
    return clean


def poly_arith(op: str, a: Polynomial, b: Polynomial | None = None) -> Polynomial:
    if op == "neg":
        return -a
    if b is None:
        raise PolynomialError(f"operation {op!r} needs two operands")
    if a.ring != b.ring:
        raise RingMismatchError("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PolynomialError(f"unknown operation {op!r}")


def constant_term(a: Polynomial) -> Coefficient:
    return a.constant_term()


# -- text grammar ---------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at {pos}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, ring: RingConfig) -> Polynomial:
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial text")
    index = {v: i for i, v in enumerate(ring.variables)}
    n = ring.nvars
    p = ring.characteristic
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def read_power():
        nonlocal pos
        kind, val = peek()
        if kind == "op" and val == "^":
            pos += 1
            kind, val = peek()
            if kind != "num":
                raise PolynomialParseError("malformed exponent: expected a non-negative integer after '^'")
            pos += 1
            return val
        return 1

    terms: dict = {}
    first = True
    while pos < len(tokens):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
        elif not first:
            raise PolynomialParseError(f"expected '+' or '-' between terms, got {val!r}")
        first = False
        coeff: Fraction = Fraction(sign)
        exp = [0] * n
        nfactors = 0
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                if nfactors == 0:
                    raise PolynomialParseError("term starts with '*'")
                pos += 1
                kind, val = peek()
                if kind not in ("num", "name"):
                    raise PolynomialParseError("dangling '*'")
            if kind == "num":
                pos += 1
                c = Fraction(val)
                k2, v2 = peek()
                if k2 == "op" and v2 == "/":
                    pos += 1
                    k3, v3 = peek()
                    if k3 != "num":
                        raise PolynomialParseError("malformed rational coefficient")
                    pos += 1
                    if v3 == 0:
                        raise PolynomialParseError("division by zero in coefficient")
                    c = Fraction(val, v3)
                coeff *= c ** read_power()
            elif kind == "name":
                pos += 1
                if val not in index:
                    raise PolynomialParseError(f"unknown variable {val!r}")
                exp[index[val]] += read_power()
            else:
                break
            nfactors += 1
        if nfactors == 0:
            raise PolynomialParseError("empty term")
        if p and coeff.denominator % p == 0:
            raise PolynomialParseError(f"coefficient {coeff} is not reducible modulo {p}")
        m = tuple(exp)
        terms[m] = terms.get(m, 0) + coeff
    return Polynomial(ring, terms)


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.variables
    parts = []
    for m, c in f.sorted_terms():
        neg = c < 0 if not f.ring.characteristic else False
        mag = -c if neg else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def polynomials_from_strings(texts: Iterable[str], ring: RingConfig) -> list:
    return [parse_polynomial(t, ring) for t in texts]
