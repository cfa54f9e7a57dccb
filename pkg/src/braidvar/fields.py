"""Exact coefficient fields.

Two pluggable fields back every computation in this package:

- ``FunctionField``: multivariate rational functions over the rationals,
  represented as unnormalized fractions of sparse integer-coefficient
  polynomials.  Equality is decided by cross-multiplication (a/b == c/d iff
  a*d - b*c == 0), so no multivariate gcd is ever needed.  Construction does
  run a cheap reduction (integer content, common monomial factor, denominator
  sign) which keeps desk-scale expressions small and makes Laurent
  polynomials recognizable.
- ``PrimeField``: integers mod a small prime, for finite-field point counts
  and randomized checks.

Monomials are stored sparsely as sorted tuples of ``(variable_index,
exponent)`` pairs with positive exponents, so a field can grow new variables
without invalidating existing elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Monomial = tuple[tuple[int, int], ...]

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[int, int] = dict(a)
    for idx, e in b:
        exps[idx] = exps.get(idx, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(idx, 0) >= e for idx, e in a)


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    exps = dict(a)
    for idx, e in b:
        exps[idx] -= e
    return tuple(sorted((i, e) for i, e in exps.items() if e > 0))


def _mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    da, db = dict(a), dict(b)
    return tuple(sorted((i, min(e, db[i])) for i, e in da.items() if i in db))


def grlex_key(m: Monomial):
    """Sort key for graded lexicographic order, largest monomial first.

    Grading by total degree; ties broken lexicographically by variable index
    with higher powers of earlier variables sorting first.
    """
    return (-_mono_degree(m), tuple((i, -e) for i, e in m))


class Polynomial:
    """Sparse multivariate polynomial with arbitrary-precision integer
    coefficients.  Immutable; terms is a dict monomial -> nonzero int."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int]):
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @staticmethod
    def constant(c: int) -> Polynomial:
        return Polynomial({_ONE_MONO: c} if c else {})

    @staticmethod
    def variable(index: int) -> Polynomial:
        return Polynomial({((index, 1),): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {_ONE_MONO}

    def constant_value(self) -> int:
        return self.terms.get(_ONE_MONO, 0)

    def __add__(self, other: Polynomial) -> Polynomial:
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(terms)

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(terms)

    def scale(self, c: int) -> Polynomial:
        return Polynomial({m: c * coeff for m, coeff in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def integer_content(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    def monomial_content(self) -> Monomial:
        monos = iter(self.terms)
        try:
            g = next(monos)
        except StopIteration:
            return _ONE_MONO
        for m in monos:
            g = _mono_gcd(g, m)
            if not g:
                break
        return g

    def divide_monomial(self, m: Monomial) -> Polynomial:
        return Polynomial({_mono_div(mono, m): c for mono, c in self.terms.items()})

    def divide_int(self, d: int) -> Polynomial:
        return Polynomial({m: c // d for m, c in self.terms.items()})

    def leading(self) -> tuple[Monomial, int]:
        m = min(self.terms, key=grlex_key)
        return m, self.terms[m]

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]))

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, _ in m}

    def evaluate(self, values: dict[int, object], field):
        """Evaluate in ``field`` given element ``values`` per variable index."""
        total = field.zero
        for m, c in self.terms.items():
            term = field.from_int(c)
            for idx, e in m:
                term = term * values[idx] ** e
            total = total + term
        return total


def _poly_reduce(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Cheap reduction: common monomial factor, integer content, sign of the
    denominator's leading coefficient.  No polynomial gcd."""
    if num.is_zero():
        return num, Polynomial.constant(1)
    g = _mono_gcd(num.monomial_content(), den.monomial_content())
    if g:
        num = num.divide_monomial(g)
        den = den.divide_monomial(g)
    c = math.gcd(num.integer_content(), den.integer_content())
    if c > 1:
        num = num.divide_int(c)
        den = den.divide_int(c)
    if den.leading()[1] < 0:
        num, den = -num, -den
    return num, den


class RationalFunction:
    """Element of a ``FunctionField``: an unnormalized fraction num/den."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.field = field
        self.num, self.den = _poly_reduce(num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_unit(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Polynomial.constant(1)

    def __add__(self, other: RationalFunction) -> RationalFunction:
        if self.den == other.den:
            return RationalFunction(self.field, self.num + other.num, self.den)
        return RationalFunction(
            self.field, self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + (-other)

    def __neg__(self) -> RationalFunction:
        return RationalFunction(self.field, -self.num, self.den)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        return self * other.inv()

    def inv(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverting zero rational function")
        return RationalFunction(self.field, self.den, self.num)

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            return self.inv() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None  # no canonical form; unhashable by design

    def __repr__(self) -> str:
        return f"RationalFunction({self.field.format_element(self)})"

    def __str__(self) -> str:
        return self.field.format_element(self)


class FunctionField:
    """Field of rational functions over Q in named variables.

    Variables are created on demand via :meth:`var`; the registry remembers a
    short creation-site note per variable for error messages.
    """

    def __init__(self, names: Sequence[str] = ()):
        self.names: list[str] = []
        self.index: dict[str, int] = {}
        self.sites: dict[str, str] = {}
        for name in names:
            self.var(name)

    @property
    def characteristic(self) -> int:
        return 0

    def var(self, name: str, site: str = "") -> RationalFunction:
        if name not in self.index:
            self.index[name] = len(self.names)
            self.names.append(name)
            self.sites[name] = site
        return RationalFunction(
            self, Polynomial.variable(self.index[name]), Polynomial.constant(1)
        )

    def vars(self, names: Iterable[str], site: str = "") -> list[RationalFunction]:
        return [self.var(name, site) for name in names]

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction(self, Polynomial.constant(0), Polynomial.constant(1))

    @property
    def one(self) -> RationalFunction:
        return RationalFunction(self, Polynomial.constant(1), Polynomial.constant(1))

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction(self, Polynomial.constant(n), Polynomial.constant(1))

    def from_fraction(self, num: int, den: int) -> RationalFunction:
        return RationalFunction(self, Polynomial.constant(num), Polynomial.constant(den))

    def element(self, num: Polynomial, den: Polynomial | None = None) -> RationalFunction:
        return RationalFunction(self, num, den or Polynomial.constant(1))

    def random(self, rng) -> RationalFunction:
        return self.from_int(rng.randint(-4, 4))

    def random_unit(self, rng) -> RationalFunction:
        return self.from_int(rng.choice([-3, -2, -1, 1, 2, 3]))

    # -- printing / parsing ------------------------------------------------

    def format_poly(self, p: Polynomial) -> str:
        if p.is_zero():
            return "0"
        parts: list[str] = []
        for m, c in p.sorted_terms():
            factors = []
            for idx, e in m:
                name = self.names[idx]
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if body:
                coeff = "" if mag == 1 else f"{mag}*"
                term = coeff + body
            else:
                term = str(mag)
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def format_element(self, x: RationalFunction) -> str:
        num = self.format_poly(x.num)
        if x.is_polynomial():
            return num
        den = self.format_poly(x.den)
        num_s = f"({num})" if " " in num else num
        den_s = f"({den})" if " " in den else den
        return f"{num_s}/{den_s}"

    def parse(self, text: str) -> RationalFunction:
        """Parse the grammar produced by :meth:`format_element`."""
        return _Parser(self, text).parse()


class _Parser:
    """Recursive-descent parser for +, -, *, /, ^, parentheses, names, ints."""

    def __init__(self, field: FunctionField, text: str):
        self.field = field
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens, i = [], 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*/^()":
                tokens.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(text[i:j])
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(text[i:j])
                i = j
            else:
                raise ValueError(f"bad character {ch!r} in polynomial text")
        return tokens

    def _peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> str:
        tok = self._peek()
        if tok is None:
            raise ValueError("unexpected end of polynomial text")
        self.pos += 1
        return tok

    def parse(self) -> RationalFunction:
        value = self._sum()
        if self._peek() is not None:
            raise ValueError(f"trailing tokens at {self._peek()!r}")
        return value

    def _sum(self) -> RationalFunction:
        if self._peek() == "-":
            self._next()
            value = -self._product()
        else:
            value = self._product()
        while self._peek() in ("+", "-"):
            op = self._next()
            rhs = self._product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _product(self) -> RationalFunction:
        value = self._power()
        while self._peek() in ("*", "/"):
            op = self._next()
            rhs = self._power()
            value = value * rhs if op == "*" else value / rhs
        return value

    def _power(self) -> RationalFunction:
        base = self._atom()
        if self._peek() == "^":
            self._next()
            sign = 1
            if self._peek() == "-":
                self._next()
                sign = -1
            exp = int(self._next())
            return base ** (sign * exp)
        return base

    def _atom(self) -> RationalFunction:
        tok = self._next()
        if tok == "(":
            value = self._sum()
            if self._next() != ")":
                raise ValueError("missing closing parenthesis")
            return value
        if tok.isdigit():
            return self.field.from_int(int(tok))
        if tok not in self.field.index:
            raise ValueError(f"unknown variable {tok!r}")
        return self.field.var(tok)


@dataclass(frozen=True)
class FpElement:
    """Element of F_p."""

    value: int
    p: int

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value != 0

    def _check(self, other: FpElement) -> None:
        if self.p != other.p:
            raise ValueError(f"mixed characteristics {self.p} and {other.p}")

    def __add__(self, other: FpElement) -> FpElement:
        self._check(other)
        return FpElement((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: FpElement) -> FpElement:
        self._check(other)
        return FpElement((self.value - other.value) % self.p, self.p)

    def __neg__(self) -> FpElement:
        return FpElement(-self.value % self.p, self.p)

    def __mul__(self, other: FpElement) -> FpElement:
        self._check(other)
        return FpElement((self.value * other.value) % self.p, self.p)

    def inv(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError("inverting zero in F_p")
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other: FpElement) -> FpElement:
        return self * other.inv()

    def __pow__(self, e: int) -> FpElement:
        if e < 0:
            return self.inv() ** (-e)
        return FpElement(pow(self.value, e, self.p), self.p)

    def __str__(self) -> str:
        return str(self.value)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, int(p**0.5) + 1):
        if p % d == 0:
            return False
    return True


class PrimeField:
    """The field F_p for a small prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def from_int(self, n: int) -> FpElement:
        return FpElement(n % self.p, self.p)

    def element(self, n: int) -> FpElement:
        return self.from_int(n)

    def elements(self) -> Iterator[FpElement]:
        return (FpElement(v, self.p) for v in range(self.p))

    def units(self) -> Iterator[FpElement]:
        return (FpElement(v, self.p) for v in range(1, self.p))

    def random(self, rng) -> FpElement:
        return FpElement(rng.randrange(self.p), self.p)

    def random_unit(self, rng) -> FpElement:
        return FpElement(rng.randrange(1, self.p), self.p)
