"""Truncated formal series with NCElement coefficients.

A series is indexed by integer orders in one or more formal variables
(xi, or an inverse spectral variable such as u^-1). Orders may be negative
(Laurent tails like eta/(2 xi)); entries above the per-variable bound are
dropped, so a product entry's order is the sum of its factors' orders.
"""

from __future__ import annotations

from .freealg import NCElement, multiply, tensor
from .scalar import ONE, Scalar, as_scalar


class TruncatedSeries:
    __slots__ = ("variables", "bounds", "alphabets", "coeffs")

    def __init__(self, variables, bounds, alphabets, coeffs=None):
        self.variables = tuple(variables)
        self.bounds = tuple(bounds)
        self.alphabets = tuple(alphabets)
        if len(self.bounds) != len(self.variables):
            raise ValueError("one bound per variable")
        out = {}
        for k, v in (coeffs or {}).items():
            k = (k,) if isinstance(k, int) else tuple(k)
            if self._keep(k) and v:
                if v.alphabets != self.alphabets:
                    raise ValueError("coefficient legs do not match the series")
                out[k] = v
        self.coeffs = out

    def _keep(self, k):
        return all(x <= b for x, b in zip(k, self.bounds))

    @classmethod
    def _make(cls, variables, bounds, alphabets, coeffs):
        obj = object.__new__(cls)
        obj.variables, obj.bounds, obj.alphabets, obj.coeffs = variables, bounds, alphabets, coeffs
        return obj

    def like(self, coeffs):
        return TruncatedSeries._make(self.variables, self.bounds, self.alphabets, coeffs)

    @classmethod
    def constant(cls, variables, bounds, element):
        zero = (0,) * len(tuple(variables))
        return cls(variables, bounds, element.alphabets, {zero: element})

    @classmethod
    def one(cls, variables, bounds, alphabets):
        return cls.constant(variables, bounds, NCElement.one(alphabets))

    @property
    def legs(self):
        return len(self.alphabets)

    def __getitem__(self, k):
        k = (k,) if isinstance(k, int) else tuple(k)
        return self.coeffs.get(k, NCElement.zero(self.alphabets))

    def orders(self):
        return sorted(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other):
        if (self.variables, self.alphabets) != (other.variables, other.alphabets):
            raise ValueError("series over different variables or legs")

    def __add__(self, other):
        if isinstance(other, NCElement):
            other = TruncatedSeries.constant(self.variables, self.bounds, other)
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            if not self._keep(k):
                continue
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        bounds = tuple(min(a, b) for a, b in zip(self.bounds, other.bounds))
        return TruncatedSeries._make(self.variables, bounds, self.alphabets,
                                     {k: v for k, v in out.items() if all(x <= b for x, b in zip(k, bounds))})

    def __neg__(self):
        return self.like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, NCElement):
            other = TruncatedSeries.constant(self.variables, self.bounds, other)
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return self.like({k: v.scale(c) for k, v in self.coeffs.items() if c})

    def shift(self, offsets):
        """Multiply by a monomial in the formal variables."""
        offsets = tuple(offsets)
        out = {}
        for k, v in self.coeffs.items():
            nk = tuple(a + b for a, b in zip(k, offsets))
            if self._keep(nk):
                out[nk] = v
        return self.like(out)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, NCElement):
            return self.like({k: multiply(v, other) for k, v in self.coeffs.items()}).clean()
        self._check(other)
        bounds = tuple(min(a, b) for a, b in zip(self.bounds, other.bounds))
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if any(x > b for x, b in zip(k, bounds)):
                    continue
                p = multiply(v1, v2)
                s = out.get(k)
                out[k] = p if s is None else s + p
        return TruncatedSeries._make(self.variables, bounds, self.alphabets,
                                     {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, NCElement):
            return self.like({k: multiply(other, v) for k, v in self.coeffs.items()}).clean()
        return NotImplemented

    def clean(self):
        return self.like({k: v for k, v in self.coeffs.items() if v})

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return False
        return (self.variables, self.alphabets) == (other.variables, other.alphabets) and \
            self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries({self.variables}, bounds={self.bounds}, {len(self.coeffs)} orders)"

    def map(self, f):
        out = {}
        for k, v in self.coeffs.items():
            v = f(v)
            if v:
                out[k] = v
        return TruncatedSeries._make(self.variables, self.bounds, v.alphabets if out else self.alphabets, out) \
            if out else TruncatedSeries._make(self.variables, self.bounds, self.alphabets, {})

    def reduce(self, reducer):
        """Apply a per-coefficient reduction (normal form)."""
        return self.map(reducer)

    def truncated(self, bounds):
        bounds = tuple(bounds)
        return TruncatedSeries._make(self.variables, bounds, self.alphabets,
                                     {k: v for k, v in self.coeffs.items()
                                      if all(x <= b for x, b in zip(k, bounds))})

    def power(self, n):
        out = TruncatedSeries.one(self.variables, self.bounds, self.alphabets)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self, reducer=None):
        """Inverse of 1 + x where every order of x is >= 0 and nonzero."""
        zero = (0,) * len(self.variables)
        one = NCElement.one(self.alphabets)
        if self.coeffs.get(zero) != one:
            raise ValueError("inverse needs constant term 1")
        x = self.like({k: v for k, v in self.coeffs.items() if k != zero})
        if any(min(k) < 0 or not any(k) for k in x.coeffs):
            raise ValueError("inverse needs a nilpotent remainder")
        total = TruncatedSeries.one(self.variables, self.bounds, self.alphabets)
        term = total
        while True:
            term = -(term * x)
            if reducer is not None:
                term = term.reduce(reducer)
            if not term:
                break
            total = total + term
        return total

    def tensor(self, other):
        self_vars = self.variables
        if self_vars != other.variables:
            raise ValueError("series over different variables")
        bounds = tuple(min(a, b) for a, b in zip(self.bounds, other.bounds))
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if any(x > b for x, b in zip(k, bounds)):
                    continue
                p = tensor(v1, v2)
                s = out.get(k)
                out[k] = p if s is None else s + p
        return TruncatedSeries._make(self_vars, bounds, self.alphabets + other.alphabets,
                                     {k: v for k, v in out.items() if v})


def series_from_element(a: NCElement, var="xi", bound=4):
    """Split the var-dependence of the coefficients into a series in var."""
    out = {}
    for key, c in a.terms.items():
        for k, part in c.laurent(var).items():
            if k > bound:
                continue
            e = out.setdefault((k,), {})
            s = e.get(key)
            e[key] = part if s is None else s + part
    return TruncatedSeries((var,), (bound,), a.alphabets,
                           {k: NCElement(a.alphabets, v) for k, v in out.items()})


def series_to_element(s: TruncatedSeries, var="xi"):
    """Inverse of series_from_element (for one-variable series)."""
    from .scalar import var as scalar_var
    x = scalar_var(var)
    total = NCElement.zero(s.alphabets)
    for (k,), v in s.coeffs.items():
        total = total + v.scale(x ** k)
    return total


def apply_series_maps(s: TruncatedSeries, maps, targets, reducers=None, anti=False):
    """Apply leg-wise algebra maps whose generator images are series.

    maps[i] is None (identity) or dict generator -> TruncatedSeries, whose
    legs replace leg i; `targets[i]` are those legs' alphabets. With
    anti=True the (one-leg) map is extended anti-multiplicatively.
    reducers, if given, normalize intermediate products (a callable on
    NCElement for each output block).
    """
    variables, bounds = s.variables, s.bounds
    zero = (0,) * len(variables)
    caches = [dict() for _ in maps]

    def word_image(i, w):
        hit = caches[i].get(w)
        if hit is not None:
            return hit
        m = maps[i]
        tgt = tuple(targets[i])
        if m is None:
            img = TruncatedSeries._make(variables, bounds, tgt, {zero: NCElement._make(tgt, {(w,): ONE})})
        elif not w:
            img = TruncatedSeries.one(variables, bounds, tgt)
        elif len(w) == 1:
            name = s.alphabets[i].symbols[w[0]]
            if name not in m:
                from .freealg import MissingImageError
                raise MissingImageError(f"no image for generator {name!r}")
            img = m[name]
        else:
            h = len(w) // 2
            a, b = word_image(i, w[:h]), word_image(i, w[h:])
            img = b * a if anti else a * b
            if reducers is not None and reducers[i] is not None:
                img = img.reduce(reducers[i])
        caches[i][w] = img
        return img

    out_alph = tuple(x for t in targets for x in t)
    total = TruncatedSeries._make(variables, bounds, out_alph, {})
    for k, elem in s.coeffs.items():
        acc = {}
        for key, c in elem.terms.items():
            piece = None
            for i, w in enumerate(key):
                img = word_image(i, w)
                piece = img if piece is None else piece.tensor(img)
            if piece is None:
                piece = TruncatedSeries.one(variables, bounds, ())
            piece = piece.scale(c).shift(k)
            for kk, v in piece.coeffs.items():
                sacc = acc.get(kk)
                acc[kk] = v if sacc is None else sacc + v
        total = total + TruncatedSeries._make(variables, bounds, out_alph, {kk: v for kk, v in acc.items() if v})
    return total
