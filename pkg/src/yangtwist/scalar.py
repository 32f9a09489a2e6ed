"""Exact rational functions in eta, xi and the spectral variables u, v, w, t.

A Scalar is a reduced fraction of two polynomials with rational coefficients.
Polynomial arithmetic and gcds are delegated to FLINT (python-flint).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
import re

import flint

VARIABLES = ("eta", "xi", "u", "v", "w", "t")
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}


class ScalarDivisionError(ZeroDivisionError):
    """Division by the zero rational function."""

    def __init__(self, a, b):
        super().__init__(f"division by zero: ({a}) / ({b})")
        self.operands = (a, b)


class PoleError(ZeroDivisionError):
    """A substitution made a denominator vanish identically."""

    def __init__(self, a, bindings):
        names = ", ".join(f"{k}->{v}" for k, v in sorted(bindings.items()))
        super().__init__(f"pole: substituting {names} into {a}")
        self.scalar = a
        self.bindings = bindings


def _poly(value):
    if isinstance(value, flint.fmpq_mpoly):
        return value
    if isinstance(value, Fraction):
        value = flint.fmpq(value.numerator, value.denominator)
    return _CTX.constant(value)


_P_ZERO = _CTX.constant(0)
_P_ONE = _CTX.constant(1)


class Scalar:
    """Immutable element of Q(eta, xi, u, v, w, t) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if isinstance(num, Scalar):
            if den is None:
                self.num, self.den, self._hash = num.num, num.den, num._hash
                return
            num, den = num.num * _poly_of(den).den, num.den * _poly_of(den).num
        if isinstance(num, str):
            parsed = parse(num)
            self.num, self.den, self._hash = parsed.num, parsed.den, None
            if den is not None:
                raise TypeError("cannot combine text with a denominator")
            return
        n = _poly(num)
        d = _P_ONE if den is None else _poly(den)
        self.num, self.den = _canonical(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # --- predicates ---------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def free_of(self, var):
        i = _INDEX[var]
        return self.num.degrees()[i] <= 0 and self.den.degrees()[i] <= 0

    def variables(self):
        dn, dd = self.num.degrees(), self.den.degrees()
        return tuple(v for i, v in enumerate(VARIABLES) if dn[i] > 0 or dd[i] > 0)

    def to_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        c = self.num.leading_coefficient() if not self.num.is_zero() else flint.fmpq(0)
        return Fraction(int(c.p), int(c.q))

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num + other.num, _P_ONE)
        if self.den == other.den:
            n, d = _canonical(self.num + other.num, self.den)
            return Scalar._raw(n, d)
        n, d = _canonical(self.num * other.den + other.num * self.den, self.den * other.den)
        return Scalar._raw(n, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num * other.num, _P_ONE)
        n, d = _canonical(self.num * other.num, self.den * other.den)
        return Scalar._raw(n, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ScalarDivisionError(self, other)
        n, d = _canonical(self.num * other.den, self.den * other.num)
        return Scalar._raw(n, d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.num.is_zero():
                raise ScalarDivisionError(ONE, self)
            return Scalar._raw(*_canonical(self.den ** (-k), self.num ** (-k)))
        return Scalar._raw(self.num ** k, self.den ** k)

    def inverse(self):
        return ONE / self

    # --- comparison ---------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_poly_key(self.num), _poly_key(self.den)))
        return self._hash

    def sort_key(self):
        return (_poly_key(self.den), _poly_key(self.num))

    # --- substitution and coefficient extraction ----------------------

    def substitute(self, bindings):
        """Substitute variables by Scalars (or ints)."""
        bindings = {k: _coerce(v) for k, v in bindings.items()}
        for k in bindings:
            if k not in _INDEX:
                raise KeyError(f"unknown variable {k!r}")
        if all(b.den.is_one() for b in bindings.values()):
            images = [bindings[v].num if v in bindings else g for v, g in zip(VARIABLES, _CTX.gens())]
            n = self.num.compose(*images)
            d = self.den.compose(*images)
            if d.is_zero():
                raise PoleError(self, bindings)
            return Scalar._raw(*_canonical(n, d))
        n = _eval_rational(self.num, bindings)
        d = _eval_rational(self.den, bindings)
        if d.is_zero():
            raise PoleError(self, bindings)
        return n / d

    def laurent(self, var):
        """Split into powers of var: {k: coefficient free of var}.

        Requires the denominator to be a monomial in var times something
        free of var.
        """
        i = _INDEX[var]
        dterms = list(self.den.terms())
        shift = int(min(m[i] for m, _ in dterms))
        if any(m[i] != shift for m, _ in dterms):
            raise ValueError(f"{self} is not a Laurent polynomial in {var}")
        rest = _CTX.from_dict({_with(m, i, 0): c for m, c in dterms})
        parts = {}
        for m, c in self.num.terms():
            k = int(m[i])
            parts.setdefault(k, {})[_with(m, i, 0)] = c
        return {
            k - shift: Scalar._raw(*_canonical(_CTX.from_dict(t), rest))
            for k, t in sorted(parts.items())
        }

    def coefficient(self, var, k):
        return self.laurent(var).get(k, ZERO)

    def truncate(self, var, order):
        """Drop powers of var above order (Laurent in var)."""
        parts = self.laurent(var)
        x = Scalar(_CTX.gens()[_INDEX[var]])
        out = ZERO
        for k, c in parts.items():
            if k <= order:
                out = out + c * x ** k
        return out

    def homogeneous_part(self, names, degree):
        """Part of total degree `degree` in the given variables.

        The denominator must be free of those variables.
        """
        idx = [_INDEX[n] for n in names]
        if any(self.den.degrees()[i] > 0 for i in idx):
            raise ValueError(f"denominator of {self} depends on {names}")
        keep = {m: c for m, c in self.num.terms() if sum(m[i] for i in idx) == degree}
        return Scalar._raw(*_canonical(_CTX.from_dict(keep), self.den)) if keep else ZERO

    # --- text ---------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Scalar('{to_text(self)}')"


def _with(m, i, value):
    m = list(m)
    m[i] = value
    return tuple(m)


def _poly_key(p):
    return tuple((tuple(m), (int(c.p), int(c.q))) for m, c in p.terms())


def _canonical(n, d):
    if d.is_zero():
        raise ScalarDivisionError(Scalar._raw(n, _P_ONE), ZERO)
    if n.is_zero():
        return _P_ZERO, _P_ONE
    if d.is_constant():
        if d.is_one():
            return n, d
        c = d.leading_coefficient()
        return n * (1 / c), _P_ONE
    g = n.gcd(d)
    if not g.is_one():
        n = n / g
        d = d / g
    c = d.leading_coefficient()
    if c != 1:
        inv = 1 / c
        n = n * inv
        d = d * inv
    return n, d


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
        return Scalar._raw(_poly(x), _P_ONE)
    if isinstance(x, flint.fmpq_mpoly):
        return Scalar._raw(x, _P_ONE)
    return NotImplemented


def _poly_of(x):
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot make a Scalar from {x!r}")
    return y


def _eval_rational(p, bindings):
    gens = [bindings.get(v) if v in bindings else Scalar._raw(g, _P_ONE) for v, g in zip(VARIABLES, _CTX.gens())]
    total = ZERO
    for m, c in p.terms():
        term = Scalar._raw(_CTX.constant(c), _P_ONE)
        for g, e in zip(gens, m):
            if e:
                term = term * g ** int(e)
        total = total + term
    return total


def as_scalar(x) -> Scalar:
    return _poly_of(x)


def var(name: str) -> Scalar:
    return Scalar._raw(_CTX.gens()[_INDEX[name]], _P_ONE)


ZERO = Scalar._raw(_P_ZERO, _P_ONE)
ONE = Scalar._raw(_P_ONE, _P_ONE)
ETA = var("eta")
XI = var("xi")
U = var("u")
V = var("v")
W = var("w")
T = var("t")


# --- canonical text form ------------------------------------------------

def _integer_pair(s: Scalar):
    coeffs = list(s.num.coeffs()) + list(s.den.coeffs())
    den_lcm = reduce(lcm, (int(c.q) for c in coeffs), 1)
    n = {tuple(m): int(c.p) * (den_lcm // int(c.q)) for m, c in s.num.terms()}
    d = {tuple(m): int(c.p) * (den_lcm // int(c.q)) for m, c in s.den.terms()}
    g = reduce(gcd, list(n.values()) + list(d.values()), 0)
    if g > 1:
        n = {m: c // g for m, c in n.items()}
        d = {m: c // g for m, c in d.items()}
    return n, d


def _monomial_text(m):
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_text(terms, order):
    out = []
    for m in order:
        c = terms[m]
        mono = _monomial_text(m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out)


def to_text(s: Scalar) -> str:
    if s.num.is_zero():
        return "0"
    n, d = _integer_pair(s)
    n_text = _poly_text(n, [tuple(m) for m in s.num.monoms()])
    if len(d) == 1 and d.get((0,) * len(VARIABLES)) == 1:
        return n_text
    d_text = _poly_text(d, [tuple(m) for m in s.den.monoms()])
    if len(n) > 1:
        n_text = f"({n_text})"
    if len(d) > 1 or "*" in d_text:
        d_text = f"({d_text})"
    return f"{n_text}/{d_text}"


# --- parser ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar text at {pos}: {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            if name not in _INDEX:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

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
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, e = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {self.text!r}")
            return base ** (sign * e)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Scalar(val)
        if kind == "var":
            return var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def parse(text: str) -> Scalar:
    p = _Parser(text)
    if not p.tokens:
        raise ValueError("empty scalar text")
    value = p.expr()
    if p.i != len(p.tokens):
        raise ValueError(f"trailing input in {text!r}")
    return value


def scalar_ops(a, b, op: str) -> Scalar:
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
