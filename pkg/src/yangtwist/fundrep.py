"""Two-dimensional evaluation representation and the 4x4 deformed R-matrix.

Basis of C^2 is (|1>, |-1>); of C^2 (x) C^2 it is |1,1>, |1,-1>, |-1,1>,
|-1,-1>. R-matrices are stored as functions of one difference variable,
the Scalar variable t, and evaluated by substitution.
"""

from __future__ import annotations

from . import linalg
from .cybe import E, F, H, ClassicalRMatrix, casimir, wedge
from .report import Check, Timer, verdict_of
from .scalar import ETA, ONE, T, U, V, W, XI, ZERO, Scalar, as_scalar
from .textio import matrix_to_text

RHO = {
    "e": [[ZERO, ONE], [ZERO, ZERO]],
    "f": [[ZERO, ZERO], [ONE, ZERO]],
    "h": [[ONE, ZERO], [ZERO, -ONE]],
}
_RHO_BY_INDEX = {E: RHO["e"], F: RHO["f"], H: RHO["h"]}
I2 = linalg.identity(2)
I4 = linalg.identity(4)
I8 = linalg.identity(8)

PERM = [[ONE if (i == 0 and j == 0) or (i == 3 and j == 3) or (i, j) in ((1, 2), (2, 1)) else ZERO
         for j in range(4)] for i in range(4)]


class UnknownSymbolError(KeyError):
    pass


def eval_field(symbol: str, w=W, u=U):
    """Image of a current (h+, h-, e+, e-, f+, f-) at w in rho_u, or of a
    finite generator (e, f, h).

    Currents map to their mode part: h^pm(w) -> diag(eta, -eta)/(w - u);
    the leading 1 of h^pm is not included.
    """
    if symbol in RHO:
        return [row[:] for row in RHO[symbol]]
    w, u = as_scalar(w), as_scalar(u)
    c = ETA / (w - u)
    base = symbol.rstrip("+-")
    if symbol[-1:] not in "+-" or base not in RHO:
        raise UnknownSymbolError(symbol)
    return linalg.matscale(RHO[base], c)


def rho2(r: ClassicalRMatrix):
    """(rho (x) rho)(r) as a 4x4 matrix (entries keep their u, v)."""
    out = [[ZERO] * 4 for _ in range(4)]
    for i in range(3):
        for j in range(3):
            c = r.m[i][j]
            if c:
                out = linalg.matadd(out, linalg.matscale(linalg.kron(_RHO_BY_INDEX[i], _RHO_BY_INDEX[j]), c))
    return out


def build_R_fund(xi=XI, eta=ETA):
    """(1 + xi f (x) h)(1 - eta p / t)(1 - xi h (x) f), t = u - v."""
    fh = linalg.kron(RHO["f"], RHO["h"])
    hf = linalg.kron(RHO["h"], RHO["f"])
    left = linalg.matadd(I4, linalg.matscale(fh, xi))
    mid = linalg.matadd(I4, linalg.matscale(PERM, as_scalar(eta) / T), sign=-1)
    right = linalg.matadd(I4, linalg.matscale(hf, xi), sign=-1)
    return linalg.matmul(linalg.matmul(left, mid), right)


def printed_R():
    """The displayed 4x4 matrix."""
    a = ONE - ETA / T
    b = -ETA / T
    return [
        [a, ZERO, ZERO, ZERO],
        [-XI, ONE, b, ZERO],
        [XI, b, ONE, ZERO],
        [XI * XI, -XI, XI, a],
    ]


def yang_R():
    return linalg.matadd(I4, linalg.matscale(PERM, ETA / T), sign=-1)


def at(R, x):
    """Evaluate a difference-form matrix at argument x."""
    x = as_scalar(x)
    return [[c.substitute({"t": x}) for c in row] for row in R]


def _embed(R, legs):
    if legs == (0, 1):
        return linalg.kron(R, I2)
    if legs == (1, 2):
        return linalg.kron(I2, R)
    p23 = linalg.kron(I2, PERM)
    return linalg.matmul(linalg.matmul(p23, linalg.kron(R, I2)), p23)


def qybe_sides(R):
    r12 = _embed(at(R, U - V), (0, 1))
    r13 = _embed(at(R, U - W), (0, 2))
    r23 = _embed(at(R, V - W), (1, 2))
    lhs = linalg.matmul(linalg.matmul(r12, r13), r23)
    rhs = linalg.matmul(linalg.matmul(r23, r13), r12)
    return lhs, rhs


def check_qybe(R) -> bool:
    lhs, rhs = qybe_sides(R)
    return lhs == rhs


def matrix_power_ratio(A):
    """lambda with A^2 = lambda A, or None."""
    A2 = linalg.matmul(A, A)
    lam = None
    for i in range(len(A)):
        for j in range(len(A)):
            if A[i][j]:
                lam = A2[i][j] / A[i][j]
                break
        if lam is not None:
            break
    if lam is None:
        return None
    return lam if A2 == linalg.matscale(A, lam) else None


def projector_check(R):
    """(rank, lambda, image vector) of R evaluated at eta; the image vector
    is normalized to have second component 1."""
    A = at(R, ETA)
    rank = linalg.matrix_rank(A)
    lam = matrix_power_ratio(A)
    basis = linalg.column_space_basis(A)
    vec = None
    if len(basis) == 1:
        v = basis[0]
        pivot = next(x for x in (v[1], v[0], v[2], v[3]) if x)
        vec = [x / pivot for x in v]
    return rank, lam, vec


def linear_part(R):
    """Entries of R - 1 that are jointly linear in (eta, xi)."""
    D = linalg.matadd(R, I4, sign=-1)
    return [[c.homogeneous_part(("eta", "xi"), 1) for c in row] for row in D]


def semiclassical_target():
    """-(rho (x) rho)(eta c2/(u - v) + xi h wedge f), written in t = u - v."""
    r = ClassicalRMatrix(linalg.matadd(linalg.matscale(casimir().m, ETA / T), linalg.matscale(wedge(H, F).m, XI)))
    return linalg.matscale(rho2(r), -ONE)


def semiclassical_compare(R):
    """Returns (ok, scalar) where linear_part(R) - target = scalar * I."""
    diff = linalg.matadd(linear_part(R), semiclassical_target(), sign=-1)
    s = diff[0][0]
    ok = all(diff[i][j] == (s if i == j else ZERO) for i in range(4) for j in range(4))
    return ok, s


def flip_matrix(R):
    return linalg.matmul(linalg.matmul(PERM, R), PERM)


def unitarity_scalar(R):
    """s with R(t) R21(-t) = s I, or None."""
    prod = linalg.matmul(R, flip_matrix(at(R, -T)))
    s = prod[0][0]
    return s if prod == linalg.matscale(I4, s) else None


def yang_normalization_relation():
    """At xi = 0 the three-factor product equals 1 + p/x at x = -t/eta."""
    R0 = at_xi(build_R_fund(), 0)
    other = linalg.matadd(I4, linalg.matscale(PERM, ONE / T))
    return at(other, -T / ETA) == R0


def at_xi(R, value):
    return [[c.substitute({"xi": as_scalar(value)}) for c in row] for row in R]


def export_R(R) -> str:
    return matrix_to_text(R)


# --- report checks ------------------------------------------------------------------

def suite_checks():
    out = []
    with Timer() as t:
        R = build_R_fund()
        P = printed_R()
        bad = [(i + 1, j + 1) for i in range(4) for j in range(4) if R[i][j] != P[i][j]]
    out.append(Check("fundrep", "R-product-equals-display", "R-fundamental", verdict_of(not bad), t.elapsed,
                     details={} if not bad else {"entries": bad}))
    for name, M, expect in (("deformed", R, True), ("yang", yang_R(), True),
                            ("negative-entry41", _perturbed(R), False)):
        with Timer() as t:
            ok = check_qybe(M)
        out.append(Check("fundrep", f"qybe-{name}", "qybe", verdict_of(ok == expect), t.elapsed,
                         details={"holds": ok}))
    with Timer() as t:
        rank, lam, vec = projector_check(R)
        expected = [ZERO, ONE, -ONE, -XI]
        ok = rank == 1 and vec == expected and lam is not None
    out.append(Check("fundrep", "projector-at-eta", "R-projector", verdict_of(ok), t.elapsed,
                     details={"rank": rank, "lambda": str(lam), "image": [str(x) for x in vec or []]}))
    with Timer() as t:
        ok, s = semiclassical_compare(R)
        pure = ok and (s * T / ETA).is_constant()
    out.append(Check("fundrep", "semiclassical-P1", "semiclassical", verdict_of(pure), t.elapsed,
                     details={"identity_shift": str(s)}))
    with Timer() as t:
        s = unitarity_scalar(at_xi(R, 0))
        ok = s == ONE - ETA * ETA / (T * T)
    out.append(Check("fundrep", "yang-unitarity", "unitarity", verdict_of(ok), t.elapsed,
                     details={"scalar": str(s)}))
    with Timer() as t:
        ok = yang_normalization_relation()
    out.append(Check("fundrep", "normalization-vs-1+p/x", "R-normalization", verdict_of(ok), t.elapsed,
                     details={"relation": "R(t)|xi=0 = 1 + p/x at x = -t/eta"}))
    return out


def _perturbed(R):
    M = [row[:] for row in R]
    M[3][0] = 2 * XI * XI
    return M
