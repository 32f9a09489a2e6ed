"""Classical layer: sl2 (x) sl2 valued rational r-matrices, the CYBE residual,
the residue pairing on sl2((t^-1)) and Lagrangian-subalgebra checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .report import CORRECTED, Check, Timer, verdict_of
from .scalar import ONE, U, V, W, ZERO, Scalar, as_scalar

BASIS = ("e", "f", "h")
E, F, H = 0, 1, 2

# [x_i, x_j] = sum_k BRACKET[i][j][k] x_k
_BR = {(E, F): {H: 1}, (H, E): {E: 2}, (H, F): {F: -2}}


def bracket_basis(i, j):
    if (i, j) in _BR:
        return {k: Scalar(c) for k, c in _BR[(i, j)].items()}
    if (j, i) in _BR:
        return {k: Scalar(-c) for k, c in _BR[(j, i)].items()}
    return {}


# invariant form with (alpha, alpha) = 2
FORM = {(E, F): Scalar(1), (F, E): Scalar(1), (H, H): Scalar(2)}


class CutoffTooSmallError(ValueError):
    pass


# --- r-matrices ---------------------------------------------------------------

@dataclass
class ClassicalRMatrix:
    """r = sum m[i][j] x_i (x) x_j with Scalar entries in u, v."""
    m: list
    name: str = ""

    def __add__(self, other):
        return ClassicalRMatrix(linalg.matadd(self.m, other.m), self.name)

    def scale(self, c):
        return ClassicalRMatrix(linalg.matscale(self.m, c), self.name)

    def substitute(self, bindings):
        return [[x.substitute(bindings) for x in row] for row in self.m]


def _zero3():
    return [[ZERO] * 3 for _ in range(3)]


def tensor_basis(i, j, c=ONE):
    m = _zero3()
    m[i][j] = as_scalar(c)
    return ClassicalRMatrix(m)


def wedge(i, j):
    return tensor_basis(i, j) + tensor_basis(j, i).scale(-1)


def casimir():
    """c2 = e (x) f + f (x) e + 1/2 h (x) h."""
    return tensor_basis(E, F) + tensor_basis(F, E) + tensor_basis(H, H, Scalar(1) / 2)


def yang_r():
    return casimir().scale(ONE / (U - V))


def p1():
    return ClassicalRMatrix((yang_r() + wedge(H, F)).m, "P1")


def p2():
    return ClassicalRMatrix((yang_r() + tensor_basis(H, F, U) + tensor_basis(F, H, -V)).m, "P2")


def p2_corrected():
    """P2 with u and v exchanged in the polynomial part; the printed
    assignment does not solve CYBE with r12 = r(u1, u2)."""
    return ClassicalRMatrix((yang_r() + tensor_basis(H, F, V) + tensor_basis(F, H, -U)).m, "P2-corrected")


def swap_uv(r: ClassicalRMatrix):
    return ClassicalRMatrix(r.substitute({"u": V, "v": U}), r.name)


def cybe_residual(r: ClassicalRMatrix):
    """[[r12, r13]] + [[r12, r23]] + [[r13, r23]] as a 3x3x3 array.

    Leg spectral parameters are u, v, w; r12 = r(u, v), r13 = r(u, w),
    r23 = r(v, w).
    """
    r12 = r.substitute({"u": U, "v": V})
    r13 = r.substitute({"u": U, "v": W})
    r23 = r.substitute({"u": V, "v": W})
    out = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]

    def add(i, j, k, c):
        out[i][j][k] = out[i][j][k] + c

    for a in range(3):
        for b in range(3):
            x = r12[a][b]
            if not x:
                continue
            for c in range(3):
                for d in range(3):
                    y = r13[c][d]
                    if y:  # [a (x) b (x) 1, c (x) 1 (x) d] = [a, c] (x) b (x) d
                        for k, s in bracket_basis(a, c).items():
                            add(k, b, d, x * y * s)
                    y = r23[c][d]
                    if y:  # [a (x) b (x) 1, 1 (x) c (x) d] = a (x) [b, c] (x) d
                        for k, s in bracket_basis(b, c).items():
                            add(a, k, d, x * y * s)
    for a in range(3):
        for b in range(3):
            x = r13[a][b]
            if not x:
                continue
            for c in range(3):
                for d in range(3):
                    y = r23[c][d]
                    if y:  # [a (x) 1 (x) b, 1 (x) c (x) d] = a (x) c (x) [b, d]
                        for k, s in bracket_basis(b, d).items():
                            add(a, c, k, x * y * s)
    return out


def residual_is_zero(res):
    return all(not x for plane in res for row in plane for x in row)


def nonzero_components(res):
    return {(BASIS[i], BASIS[j], BASIS[k]): str(res[i][j][k])
            for i in range(3) for j in range(3) for k in range(3) if res[i][j][k]}


# --- loop algebra -------------------------------------------------------------------

class LoopElement:
    """Finite combination of x t^k, stored as {(basis index, k): Scalar}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: as_scalar(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, name, k, c=ONE):
        return cls({(BASIS.index(name), k): c})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return LoopElement(out)

    def __neg__(self):
        return LoopElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LoopElement({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LoopElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{BASIS[i]}t^{k}" for (i, k), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])))

    def degrees(self):
        return [k for (_, k) in self.terms]

    def truncated(self, low):
        return LoopElement({(i, k): v for (i, k), v in self.terms.items() if k >= low})


def loop_bracket(a: LoopElement, b: LoopElement) -> LoopElement:
    out = {}
    for (i, k), x in a.terms.items():
        for (j, l), y in b.terms.items():
            for m, s in bracket_basis(i, j).items():
                key = (m, k + l)
                out[key] = out.get(key, ZERO) + x * y * s
    return LoopElement(out)


def residue_pairing(a: LoopElement, b: LoopElement) -> Scalar:
    """Coefficient of t^-1 in <a(t), b(t)>."""
    total = ZERO
    for (i, k), x in a.terms.items():
        for (j, l), y in b.terms.items():
            if k + l == -1:
                c = FORM.get((i, j))
                if c is not None:
                    total = total + x * y * c
    return total


@dataclass
class LoopSubspace:
    """span(generators) + t^-depth sl2[[t^-1]]."""
    name: str
    generators: list
    depth: int

    def tail_basis(self, cutoff):
        return [LoopElement({(i, k): ONE}) for k in range(-cutoff, -self.depth + 1) for i in range(3)]

    def spanning_set(self, cutoff):
        return [g.truncated(-cutoff) for g in self.generators] + self.tail_basis(cutoff)


def w1(negative=False):
    e, f, h = (lambda k, n=n: LoopElement.basis(n, k) for n in BASIS)
    last = h(-1) - f(0).scale(2) if negative else h(-1) + f(0).scale(2)
    return LoopSubspace("W1-negative" if negative else "W1", [e(-1) - h(0), f(-1), last], 2)


def w2():
    e, f, h = (lambda k, n=n: LoopElement.basis(n, k) for n in BASIS)
    gens = [e(-1) - h(1), f(-1), h(-1), e(-2), f(-2), h(-2) + f(0).scale(2)]
    return LoopSubspace("W2", gens, 3)


def w2_corrected():
    """Subspace attached to p2_corrected by the same reading that attaches
    W1 to P1 and the printed W2 to the printed P2."""
    e, f, h = (lambda k, n=n: LoopElement.basis(n, k) for n in BASIS)
    gens = [e(-2) - h(0), f(-1), h(-1) + f(1).scale(2), e(-1), f(-2), h(-2)]
    return LoopSubspace("W2-corrected", gens, 3)


def _coords(a: LoopElement, cutoff):
    return {(k, i): v for (i, k), v in a.terms.items() if -cutoff <= k <= cutoff}


def _in_span(rows_pivots, a, cutoff):
    pivots, order = rows_pivots
    row = dict(_coords(a, cutoff))
    for col in order:
        c = row.get(col)
        if c is not None:
            for k, v in pivots[col].items():
                s = row.get(k, ZERO) - c * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return not row


@dataclass
class LagrangianReport:
    name: str
    cutoff: int
    results: dict = field(default_factory=dict)   # check -> bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.results.values())


def check_lagrangian(W: LoopSubspace, degree_cutoff: int, containment=None) -> LagrangianReport:
    """Isotropy, closure, complementarity (and containment when the tail
    depth is 2, or when requested) at t-degrees in [-cutoff, cutoff]."""
    K = degree_cutoff
    if K < W.depth + 2:
        raise CutoffTooSmallError(f"cutoff {K} below tail depth {W.depth} + 2")
    if any(abs(k) > K for g in W.generators for k in g.degrees()):
        raise CutoffTooSmallError("generators exceed the cutoff")
    rep = LagrangianReport(W.name, K)
    gens = W.generators
    tail = W.tail_basis(K)

    bad = []
    for i, a in enumerate(gens):
        for j in range(i, len(gens)):
            v = residue_pairing(a, gens[j])
            if v:
                bad.append((f"g{i}", f"g{j}", str(v)))
        for t in tail:
            v = residue_pairing(a, t)
            if v:
                bad.append((f"g{i}", repr(t), str(v)))
    for i, a in enumerate(tail):
        for b in tail[i:]:
            if residue_pairing(a, b):
                bad.append((repr(a), repr(b), "nonzero"))
    rep.results["isotropy"] = not bad
    rep.details["isotropy"] = {"pairs_checked": len(gens) * (len(gens) + 1) // 2 + len(gens) * len(tail),
                               "failures": bad[:10]}

    span = W.spanning_set(K)
    piv = linalg.row_reduce([_coords(a, K) for a in span])
    missing = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:] + tail:
            c = loop_bracket(a, b).truncated(-K)
            if not _in_span(piv, c, K):
                missing.append((repr(a), repr(b), repr(c)))
    rep.results["closure"] = not missing
    rep.details["closure"] = {"failures": missing[:10]}

    poly = [LoopElement({(i, k): ONE}) for k in range(0, K + 1) for i in range(3)]
    rank_w = len(piv[0])
    total = linalg.rank([_coords(a, K) for a in span + poly])
    full = 3 * (2 * K + 1)
    rep.results["complementarity"] = (rank_w + len(poly) == total == full)
    rep.details["complementarity"] = {"dim_W": rank_w, "dim_sum": total, "dim_space": full}

    if containment is None:
        containment = W.depth == 2
    if containment:
        lower = [LoopElement({(i, k): ONE}) for k in range(-K, -1) for i in range(3)]
        inside = all(_in_span(piv, x, K) for x in lower)
        bounded = all(k <= 0 for g in gens for k in g.degrees())
        rep.results["containment"] = inside and bounded
        rep.details["containment"] = {"tail_inside": inside, "nonpositive_degrees": bounded}
    return rep


def lagrangian_checks(W: LoopSubspace, cutoff=6, expect=True, corrected: LoopSubspace | None = None,
                      only=None):
    """One check per property. When a property fails and a corrected
    subspace passes it, the verdict is corrected-pass."""
    with Timer() as t:
        rep = check_lagrangian(W, cutoff)
        alt = check_lagrangian(corrected, cutoff) if corrected is not None and not rep.ok else None
    n = len(rep.results)
    out = []
    for name, ok in rep.results.items():
        if only is not None and name not in only:
            continue
        verdict = verdict_of(ok == expect)
        details = {"holds": ok, **({} if ok else rep.details.get(name, {}))}
        if expect and not ok and alt is not None and alt.results.get(name):
            verdict = CORRECTED
            details["corrected_generators"] = [repr(g) for g in corrected.generators]
        out.append(Check("cybe", f"lagrangian-{W.name}-{name}", f"lagrangian-{name}", verdict,
                         t.elapsed / n, details=details))
    return out


def cybe_checks():
    """CYBE residuals of P1, P2 and controls, as report checks."""
    cases = [
        ("P1", p1(), True, None),
        ("P2", p2(), True, p2_corrected()),
        ("yang", yang_r(), True, None),
        ("negative-e-wedge-f", yang_r() + wedge(E, F), False, None),
        ("negative-h-tensor-f", yang_r() + tensor_basis(H, F), False, None),
    ]
    out = []
    for name, r, expect_zero, alt in cases:
        with Timer() as t:
            res = cybe_residual(r)
            zero = residual_is_zero(res)
            verdict = verdict_of(zero == expect_zero)
            details = {"residual_zero": zero}
            if not zero:
                details["components"] = nonzero_components(res)
                if expect_zero and alt is not None and residual_is_zero(cybe_residual(alt)):
                    verdict = CORRECTED
                    details["corrected"] = "c2/(u-v) + v h(x)f - u f(x)h"
        out.append(Check("cybe", f"cybe-{name}", "cybe-residual", verdict, t.elapsed, details=details))
    with Timer() as t:
        zero = residual_is_zero(cybe_residual(yang_r() + wedge(E, H)))
    out.append(Check("cybe", "cybe-wrong-root", "cybe-residual", verdict_of(zero), t.elapsed,
                     details={"residual_zero": zero,
                              "note": "image of P1 under the Chevalley involution, hence a solution"}))
    return out


def suite_checks(cutoff=6):
    out = cybe_checks()
    out += lagrangian_checks(w1(), cutoff)
    out += lagrangian_checks(w2(), cutoff, corrected=w2_corrected())
    out += lagrangian_checks(w1(negative=True), cutoff, expect=False, only=("isotropy",))
    return out
