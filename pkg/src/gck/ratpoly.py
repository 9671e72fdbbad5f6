"""Exact multivariate polynomials over the rationals.

Monomials are packed into a single integer, 16 bits per variable with the
first variable in the most significant slot, so multiplying monomials is an
integer addition and integer order is lexicographic order. Coefficients are
``int`` when integral and ``Fraction`` otherwise.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _Rational
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ParseError, UnknownCoordinate

_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_EXP = _MASK


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_rational(value) -> Fraction | int:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    if isinstance(value, str):
        return _norm(Fraction(value.strip()))
    if isinstance(value, _Rational):
        return _norm(Fraction(value.numerator, value.denominator))
    raise TypeError(f"cannot use {value!r} as an exact rational")


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if e < 0 or e > _MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key = (key << _BITS) | e
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _MASK
        key >>= _BITS
    return tuple(out)


class RatPoly:
    """An immutable polynomial in named variables with rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[int, object] | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "RatPoly":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "RatPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, value, variables: Sequence[str]) -> "RatPoly":
        c = as_rational(value)
        return cls._raw(tuple(variables), {0: c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "RatPoly":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownCoordinate(name)
        i = variables.index(name)
        return cls._raw(variables, {1 << (_BITS * (len(variables) - 1 - i)): 1})

    @classmethod
    def from_exponents(cls, data: Mapping[Sequence[int], object], variables: Sequence[str]) -> "RatPoly":
        variables = tuple(variables)
        terms: dict[int, object] = {}
        for exps, c in data.items():
            if len(exps) != len(variables):
                raise DimensionMismatch(f"exponent {exps} does not match {variables}")
            k = _pack(exps)
            terms[k] = _norm(terms.get(k, 0) + as_rational(c))
        return cls._raw(variables, {k: v for k, v in terms.items() if v})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "RatPoly":
        return _Parser(text, tuple(variables)).parse()

    # inspection ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def exponents(self) -> dict[tuple[int, ...], Fraction | int]:
        n = self.nvars
        return {_unpack(k, n): c for k, c in self.terms.items()}

    def degree(self) -> int:
        if not self.terms:
            return -1
        n = self.nvars
        return max(sum(_unpack(k, n)) for k in self.terms)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        shift = _BITS * (self.nvars - 1 - i)
        if not self.terms:
            return -1
        return max((k >> shift) & _MASK for k in self.terms)

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownCoordinate(name) from None

    # alignment ----------------------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "RatPoly":
        """Re-express in a variable list containing every variable actually used."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        n_old, n_new = self.nvars, len(variables)
        pos = {v: i for i, v in enumerate(variables)}
        used = self._used_variables()
        missing = [self.variables[i] for i in used if self.variables[i] not in pos]
        if missing:
            raise UnknownCoordinate(f"variables {missing} not in {variables}")
        shifts = [_BITS * (n_new - 1 - pos[v]) if v in pos else None for v in self.variables]
        terms = {}
        for k, c in self.terms.items():
            exps = _unpack(k, n_old)
            nk = 0
            for e, s in zip(exps, shifts):
                if e:
                    nk |= e << s
            terms[nk] = c
        return RatPoly._raw(variables, terms)

    def _used_variables(self) -> list[int]:
        n = self.nvars
        acc = 0
        for k in self.terms:
            acc |= k
        return [i for i in range(n) if (acc >> (_BITS * (n - 1 - i))) & _MASK]

    def _align(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if self.variables == other.variables:
            return self, other
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(merged), other.with_variables(merged)

    def _coerce(self, other) -> "RatPoly | None":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatPoly.constant(other, self.variables)
        return None

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        if not b.terms:
            return a
        if not a.terms:
            return b
        terms = dict(a.terms)
        for k, c in b.terms.items():
            v = terms.get(k)
            if v is None:
                terms[k] = c
            else:
                v = _norm(v + c)
                if v:
                    terms[k] = v
                else:
                    del terms[k]
        return RatPoly._raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly._raw(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = _norm(other) if type(other) is Fraction else other
            if not c:
                return RatPoly._raw(self.variables, {})
            if c == 1:
                return self
            return RatPoly._raw(self.variables, {k: _norm(v * c) for k, v in self.terms.items()})
        if not isinstance(other, RatPoly):
            return NotImplemented
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return RatPoly._raw(a.variables, {})
        if len(b.terms) > len(a.terms):
            a, b = b, a
        terms: dict[int, object] = {}
        get = terms.get
        for kb, cb in b.terms.items():
            for ka, ca in a.terms.items():
                k = ka + kb
                terms[k] = get(k, 0) + ca * cb
        return RatPoly._raw(a.variables, {k: _norm(v) for k, v in terms.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatPoly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.constant_term()
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        inv = Fraction(1, 1) / c
        return self * _norm(inv)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = RatPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus / evaluation ---------------------------------------------

    def partial(self, name: str) -> "RatPoly":
        i = self._index(name)
        shift = _BITS * (self.nvars - 1 - i)
        unit = 1 << shift
        terms = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                terms[k - unit] = c * e
        return RatPoly._raw(self.variables, terms)

    def partial_index(self, i: int) -> "RatPoly":
        return self.partial(self.variables[i])

    def eval(self, point: Sequence) -> Fraction | int:
        """Exact value at ``point`` (one scalar per variable, in order)."""
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} entries, polynomial has {self.nvars} variables")
        vals = [as_rational(v) for v in point]
        n = self.nvars
        total = 0
        for k, c in self.terms.items():
            term = c
            if k:
                for i in range(n - 1, -1, -1):
                    e = k & _MASK
                    k >>= _BITS
                    if e:
                        term = term * vals[i] ** e
            total += term
        return _norm(Fraction(total)) if not isinstance(total, int) else total

    def subs(self, values: Mapping[str, object]) -> "RatPoly":
        """Substitute scalars for some variables; the variable list is kept."""
        n = self.nvars
        idx = {self._index(name): as_rational(v) for name, v in values.items()}
        terms: dict[int, object] = {}
        for k, c in self.terms.items():
            exps = list(_unpack(k, n))
            for i, v in idx.items():
                if exps[i]:
                    c = c * v ** exps[i]
                    exps[i] = 0
            if c:
                nk = _pack(exps)
                terms[nk] = terms.get(nk, 0) + c
        return RatPoly._raw(self.variables, {kk: _norm(v) for kk, v in terms.items() if v})

    def compose(self, substitutions: Sequence["RatPoly"], variables: Sequence[str]) -> "RatPoly":
        """Replace the i-th variable by ``substitutions[i]``; result lives in ``variables``."""
        if len(substitutions) != self.nvars:
            raise DimensionMismatch("one substitution per variable required")
        variables = tuple(variables)
        subs = [s.with_variables(variables) for s in substitutions]
        n = self.nvars
        powers: list[dict[int, RatPoly]] = [{} for _ in range(n)]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = subs[i] ** e
            return cache[e]

        out = RatPoly.zero(variables)
        for k, c in self.terms.items():
            exps = _unpack(k, n)
            term = RatPoly.constant(c, variables)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    # comparison / printing ---------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        try:
            a, b = self._align(other)
        except UnknownCoordinate:
            return False
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            items = frozenset((tuple(sorted(zip(self.variables, _unpack(k, self.nvars)))), c)
                              for k, c in self.terms.items())
            self._hash = hash(items)
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction | int]]:
        """Terms in canonical order: higher total degree first, then lexicographic."""
        n = self.nvars
        rows = [(_unpack(k, n), c) for k, c in self.terms.items()]
        rows.sort(key=lambda r: (-sum(r[0]), tuple(-e for e in r[0])))
        return rows

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.variables, exps) if e
            )
            neg = c < 0
            mag = -c if neg else c
            mag_s = str(mag)
            if not mono:
                body = mag_s
            elif mag == 1:
                body = mono
            else:
                body = f"{mag_s}*{mono}"
            pieces.append((neg, body))
        first_neg, first = pieces[0]
        out = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"RatPoly({str(self)!r}, {list(self.variables)})"


def poly_sum(polys: Iterable[RatPoly], variables: Sequence[str]) -> RatPoly:
    """Sum accumulated in a single dict (faster than repeated ``+``)."""
    variables = tuple(variables)
    terms: dict[int, object] = {}
    get = terms.get
    for p in polys:
        if p.variables != variables:
            p = p.with_variables(variables)
        for k, c in p.terms.items():
            terms[k] = get(k, 0) + c
    return RatPoly._raw(variables, {k: _norm(v) for k, v in terms.items() if v})


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9.]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent over ``+ - * / ^`` and parentheses; ``/`` needs a constant divisor."""

    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character at {i} in {text!r}")
            num, name, op = m.groups()
            if num is not None:
                tokens.append(("num", Fraction(num)))
            elif name is not None:
                tokens.append(("name", name))
            else:
                tokens.append(("op", "^" if op == "**" else op))
            i = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> RatPoly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError(f"division by non-constant or zero in {self.text!r}")
                p = p / q.constant_term()
        return p

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return RatPoly.constant(_norm(val), self.variables)
        if kind == "name":
            if val not in self.variables:
                raise ParseError(f"unknown coordinate {val!r} (chart has {list(self.variables)})")
            return RatPoly.var(val, self.variables)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")
