"""Free associative algebras with tensor legs over Scalar.

Words are tuples of sort indices into an Alphabet. An NCElement with n legs
maps n-tuples of words to nonzero Scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalar import ONE, ZERO, Scalar, as_scalar, parse


class LegMismatchError(ValueError):
    pass


class MissingImageError(KeyError):
    pass


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    alphabet: str
    sort_index: int


class Alphabet:
    """Ordered generator names; the position is the sort index.

    `degrees` is an optional positive weight per generator used by the word
    order (default: every generator has degree 1).
    """

    def __init__(self, name, symbols, degrees=None):
        self.name = name
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate generator names in {name}")
        for s in self.symbols:
            if not s or " " in s or "|" in s or s == "1":
                raise ValueError(f"bad generator name {s!r}")
        self.index = {s: i for i, s in enumerate(self.symbols)}
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.symbols)
        if len(self.degrees) != len(self.symbols) or min(self.degrees, default=1) < 1:
            raise ValueError("degrees must be positive, one per generator")

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and (self.name, self.symbols, self.degrees) == (
            other.name, other.symbols, other.degrees)

    def __hash__(self):
        return hash((self.name, self.symbols))

    def __repr__(self):
        return f"Alphabet({self.name!r}, {len(self.symbols)} generators)"

    def symbol(self, name) -> GeneratorSymbol:
        return GeneratorSymbol(name, self.name, self.index[name])

    def word(self, text):
        """Parse a space separated word; '1' is the empty word."""
        text = text.strip()
        if text in ("", "1"):
            return ()
        try:
            return tuple(self.index[s] for s in text.split())
        except KeyError as exc:
            raise KeyError(f"unknown generator {exc.args[0]!r} in alphabet {self.name}") from None

    def word_text(self, w):
        return " ".join(self.symbols[i] for i in w) if w else "1"

    def degree(self, w):
        d = self.degrees
        return sum(d[i] for i in w)

    def word_key(self, w):
        """Degree-then-length-then-lex key of the word order."""
        return (self.degree(w), len(w), w)


class NCElement:
    """Linear combination of tensor words; immutable by convention."""

    __slots__ = ("alphabets", "terms", "_hash")

    def __init__(self, alphabets, terms=None):
        self.alphabets = tuple(alphabets)
        clean = {}
        if terms:
            for key, c in terms.items():
                c = as_scalar(c)
                if c:
                    clean[key] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, alphabets, terms):
        obj = object.__new__(cls)
        obj.alphabets = alphabets
        obj.terms = terms
        obj._hash = None
        return obj

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls, alphabets):
        return cls._make(tuple(alphabets), {})

    @classmethod
    def scalar(cls, alphabets, c=ONE):
        alphabets = tuple(alphabets)
        c = as_scalar(c)
        return cls._make(alphabets, {((),) * len(alphabets): c} if c else {})

    @classmethod
    def one(cls, alphabets):
        return cls.scalar(alphabets, ONE)

    @classmethod
    def gen(cls, alphabet, name, coeff=ONE):
        return cls._make((alphabet,), {((alphabet.index[name],),): as_scalar(coeff)})

    @classmethod
    def from_words(cls, alphabet, text, coeff=ONE):
        return cls._make((alphabet,), {(alphabet.word(text),): as_scalar(coeff)})

    # --- basic properties ----------------------------------------------

    @property
    def legs(self):
        return len(self.alphabets)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def coefficient(self, key):
        return self.terms.get(key, ZERO)

    def degree(self):
        """Maximal total degree over all legs (0 for scalars and zero)."""
        best = 0
        for key in self.terms:
            d = sum(a.degree(w) for a, w in zip(self.alphabets, key))
            best = max(best, d)
        return best

    def scalar_part(self):
        return self.terms.get(((),) * self.legs, ZERO)

    def is_scalar(self):
        return all(all(not w for w in key) for key in self.terms)

    # --- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.alphabets != other.alphabets:
            raise LegMismatchError(f"leg mismatch: {self.alphabets} vs {other.alphabets}")

    def __add__(self, other):
        if not isinstance(other, NCElement):
            other = NCElement.scalar(self.alphabets, as_scalar(other))
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return NCElement._make(self.alphabets, out)

    __radd__ = __add__

    def __neg__(self):
        return NCElement._make(self.alphabets, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCElement):
            other = NCElement.scalar(self.alphabets, as_scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return NCElement._make(self.alphabets, {})
        if c == ONE:
            return self
        return NCElement._make(self.alphabets, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCElement):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = NCElement.one(self.alphabets)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            if self.is_scalar():
                try:
                    return self.scalar_part() == as_scalar(other)
                except TypeError:
                    return False
            return False
        return self.alphabets == other.alphabets and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabets, frozenset(self.terms.items())))
        return self._hash

    def map_coefficients(self, f):
        out = {}
        for k, c in self.terms.items():
            c = f(c)
            if c:
                out[k] = c
        return NCElement._make(self.alphabets, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.items():
            words = "⊗".join(a.word_text(w).replace(" ", "·") for a, w in zip(self.alphabets, key))
            parts.append(f"({c})*{words}" if self.legs else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCElement<{self.legs} legs, {len(self.terms)} terms>"


def multiply(a: NCElement, b: NCElement) -> NCElement:
    a._check(b)
    out = {}
    if a.legs == 1:
        for (wa,), ca in a.terms.items():
            for (wb,), cb in b.terms.items():
                k = (wa + wb,)
                c = ca * cb
                s = out.get(k)
                out[k] = c if s is None else s + c
    else:
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                c = ca * cb
                s = out.get(k)
                out[k] = c if s is None else s + c
    return NCElement._make(a.alphabets, {k: c for k, c in out.items() if c})


def tensor(a: NCElement, b: NCElement) -> NCElement:
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            out[ka + kb] = ca * cb
    return NCElement._make(a.alphabets + b.alphabets, out)


def leg_permute(a: NCElement, perm) -> NCElement:
    """Move leg i of `a` to position perm[i] (0-based)."""
    perm = tuple(perm)
    if sorted(perm) != list(range(a.legs)):
        raise ValueError(f"{perm} is not a permutation of {a.legs} legs")
    inv = [0] * a.legs
    for i, p in enumerate(perm):
        inv[p] = i
    alphabets = tuple(a.alphabets[inv[j]] for j in range(a.legs))
    terms = {tuple(k[inv[j]] for j in range(a.legs)): c for k, c in a.terms.items()}
    return NCElement._make(alphabets, terms)


def flip(a: NCElement) -> NCElement:
    return leg_permute(a, (1, 0))


def _image_lookup(images, alphabet, idx):
    name = alphabet.symbols[idx]
    if name in images:
        return images[name]
    sym = alphabet.symbol(name)
    if sym in images:
        return images[sym]
    raise MissingImageError(f"no image for generator {name!r} of {alphabet.name}")


def apply_leg_maps(a: NCElement, maps, targets=None) -> NCElement:
    """Apply an algebra map to each leg.

    maps[i] is None (identity on leg i) or a dict generator -> NCElement;
    all images for a leg share their legs, which replace leg i in the result.
    `targets[i]` gives the image alphabets when maps[i] has no images to
    inspect.
    """
    if len(maps) != a.legs:
        raise LegMismatchError(f"{len(maps)} maps for {a.legs} legs")
    out_alph = []
    leg_targets = []
    for i, m in enumerate(maps):
        if m is None:
            t = (a.alphabets[i],)
        elif targets is not None and targets[i] is not None:
            t = tuple(targets[i])
        elif m:
            t = next(iter(m.values())).alphabets
        else:
            raise ValueError(f"cannot infer target of leg {i}")
        leg_targets.append(t)
        out_alph.extend(t)
    out_alph = tuple(out_alph)
    caches = [dict() for _ in maps]

    def word_image(i, w):
        cache = caches[i]
        hit = cache.get(w)
        if hit is not None:
            return hit
        m = maps[i]
        if m is None:
            img = NCElement._make(leg_targets[i], {(w,): ONE})
        elif not w:
            img = NCElement.one(leg_targets[i])
        elif len(w) == 1:
            img = _image_lookup(m, a.alphabets[i], w[0])
            if img.alphabets != leg_targets[i]:
                raise LegMismatchError("images of one leg have inconsistent legs")
        else:
            h = len(w) // 2
            img = multiply(word_image(i, w[:h]), word_image(i, w[h:]))
        cache[w] = img
        return img

    total = {}
    for key, c in a.terms.items():
        acc = {(): c}
        for i, w in enumerate(key):
            img = word_image(i, w)
            nxt = {}
            for k1, c1 in acc.items():
                for k2, c2 in img.terms.items():
                    k = k1 + k2
                    v = c1 * c2
                    s = nxt.get(k)
                    nxt[k] = v if s is None else s + v
            acc = nxt
        for k, v in acc.items():
            s = total.get(k)
            total[k] = v if s is None else s + v
    return NCElement._make(out_alph, {k: v for k, v in total.items() if v})


def apply_hom(images, a: NCElement, leg=None) -> NCElement:
    """Apply the generator map `images` to every leg (or only to `leg`)."""
    if leg is None:
        maps = [images] * a.legs
    else:
        maps = [None] * a.legs
        maps[leg] = images
    return apply_leg_maps(a, maps)


def apply_antihom(images, a: NCElement) -> NCElement:
    """Anti-multiplicative extension on a 1-leg element."""
    if a.legs != 1:
        raise LegMismatchError("antihomomorphisms act on one leg")
    rev = NCElement._make(a.alphabets, {(w[::-1],): c for (w,), c in a.terms.items()})
    return apply_hom(images, rev)


def multiply_legs(a: NCElement) -> NCElement:
    """Multiplication map from n legs over one alphabet to one leg."""
    alph = a.alphabets[0]
    if any(x != alph for x in a.alphabets):
        raise LegMismatchError("all legs must share an alphabet")
    out = {}
    for key, c in a.terms.items():
        w = tuple(x for word in key for x in word)
        s = out.get((w,))
        out[(w,)] = c if s is None else s + c
    return NCElement._make((alph,), {k: v for k, v in out.items() if v})


# --- exchange format ------------------------------------------------------

def to_exchange(a: NCElement) -> str:
    lines = []
    for key, c in a.items():
        words = [alph.word_text(w) for alph, w in zip(a.alphabets, key)]
        lines.append(" | ".join([str(c)] + words))
    return "\n".join(lines) + ("\n" if lines else "")


def from_exchange(text: str, alphabets) -> NCElement:
    alphabets = tuple(alphabets)
    terms = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != len(alphabets) + 1:
            raise LegMismatchError(f"expected {len(alphabets)} legs in line {line!r}")
        c = parse(fields[0])
        key = tuple(alph.word(f) for alph, f in zip(alphabets, fields[1:]))
        terms[key] = terms.get(key, ZERO) + c
    return NCElement(alphabets, terms)


def commutator(a: NCElement, b: NCElement) -> NCElement:
    return a * b - b * a


def anticommutator(a: NCElement, b: NCElement) -> NCElement:
    return a * b + b * a


__all__ = [
    "Alphabet", "GeneratorSymbol", "NCElement", "Scalar", "multiply", "tensor", "leg_permute",
    "flip", "apply_hom", "apply_leg_maps", "apply_antihom", "multiply_legs", "to_exchange",
    "from_exchange", "commutator", "anticommutator", "LegMismatchError", "MissingImageError",
]
