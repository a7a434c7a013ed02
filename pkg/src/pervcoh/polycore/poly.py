"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]


class ParseError(ValueError):
    """Raised on malformed polynomial text or an undeclared variable."""


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors.

    ``priority`` lists variable indices from most to least significant.
    An empty priority means the identity permutation.
    """

    kind: str = "grevlex"
    priority: Tuple[int, ...] = ()
    _cache: Dict[Exponent, tuple] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def _perm(self, n: int) -> Tuple[int, ...]:
        if not self.priority:
            return tuple(range(n))
        if sorted(self.priority) != list(range(n)):
            raise ValueError("priority is not a permutation of the variables")
        return self.priority

    def key(self, exp: Exponent) -> tuple:
        """Sort key: a larger key is a larger monomial."""
        k = self._cache.get(exp)
        if k is None:
            perm = self._perm(len(exp))
            if self.kind == "grevlex":
                k = (sum(exp),) + tuple(-exp[i] for i in reversed(perm))
            else:
                k = tuple(exp[i] for i in perm)
            self._cache[exp] = k
        return k


GREVLEX = MonomialOrder()


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """An immutable polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] = ()):
        self.nvars = nvars
        clean: Dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = power
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Exponent, c=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError(f"ring mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exp: Exponent, c) -> "Polynomial":
        return Polynomial._raw(
            self.nvars, {mono_mul(e, exp): v * c for e, v in self._terms.items()}
        )

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        _, lc = self.leading_term(order)
        return self * (1 / lc)

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "Polynomial":
        """Re-express in a ring with ``nvars`` variables; variable i goes to positions[i]."""
        positions = list(range(self.nvars)) if positions is None else list(positions)
        out = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                new[positions[i]] += k
            out[tuple(new)] = c
        return Polynomial._raw(nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return f"Polynomial({format_poly(self, names)!r})"


# -- text form ------------------------------------------------------------


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, names: Sequence[str], order: MonomialOrder = GREVLEX) -> str:
    """Canonical text: order-sorted terms, ``coef*x^e*...`` monomials, no spaces."""
    if len(names) != p.nvars:
        raise ValueError("variable name count does not match the ring")
    if p.is_zero():
        return "0"
    parts = []
    for exp, c in p.sorted_terms(order):
        factors = []
        for name, k in zip(names, exp):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not factors:
            body = _format_coef(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coef(a) + "*" + "*".join(factors)
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += sign + body
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {n: i for i, n in enumerate(names)}
        self.n = len(names)
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, ident, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num), m.start(1)))
            elif ident is not None:
                self.tokens.append(("var", ident, m.start(2)))
            elif op is not None and not op.isspace():
                self.tokens.append(("op", op, m.start(3)))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, msg: str, at: int):
        raise ParseError(f"{msg} at column {at + 1} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.fail("empty polynomial", 0)
        p = self.expr()
        kind, val, at = self.peek()
        if kind is not None:
            self.fail(f"unexpected {val!r}", at)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.fail("division by a non-constant or zero", self.peek()[2])
                p = p * (1 / q.constant_value())
        return p

    def factor(self) -> Polynomial:
        kind, val, at = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.factor()
            return -p if val == "-" else p
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, at = self.take()
            if kind != "num":
                self.fail("expected a non-negative integer exponent", at)
            base = base ** val
        return base

    def base(self) -> Polynomial:
        kind, val, at = self.take()
        if kind == "num":
            return Polynomial.constant(self.n, val)
        if kind == "var":
            if val not in self.index:
                self.fail(f"undeclared variable {val!r}", at)
            return Polynomial.var(self.n, self.index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            kind, val2, at2 = self.take()
            if val2 != ")":
                self.fail("expected ')'", at2)
            return p
        self.fail(f"unexpected {val!r}" if kind else "unexpected end of input", at)


def parse_poly(text: str, names: Sequence[str]) -> Polynomial:
    """Parse polynomial text over the declared variable names."""
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {type(text).__name__}")
    return _Parser(text, names).parse()


def polys(texts: Iterable[str], names: Sequence[str]):
    return [parse_poly(t, names) for t in texts]
