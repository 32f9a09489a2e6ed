from math import comb

import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from yangtwist import linalg
from yangtwist.fields import (CONJUGATIONS, FIELD_RELATIONS, KINDS, CurrentAlgebra, ModeRepresentation, TildeFields,
                              build_L_gauss, build_current_presentation, check_representation, cleared_current_relations,
                              conjugation_residuals, corrected_conjugations, corrected_residuals, current_alphabet,
                              decide_series, evaluation_L, field_relation_residuals, gauss_currents, k_series,
                              normalization_constant, overall, rtt_from_fields, sqrt_t_elements, suite_checks,
                              t_power_elements, truncate_series_xi, truncate_xi, xi_parts)
from yangtwist.freealg import NCElement
from yangtwist.fundrep import at_xi, build_R_fund
from yangtwist.presentations import IN_IDEAL, replay
from yangtwist.report import CORRECTED, FAIL, PASS
from yangtwist.rtt import shift_series, z_series
from yangtwist.scalar import ETA, ONE, XI, ZERO, to_text
from yangtwist.series import TruncatedSeries

x, y, eta_s = sympy.symbols("x y eta")
N, NX = 2, 2


def _alg():
    return CurrentAlgebra(N, 7)


# --- current presentation ------------------------------------------------------------

def _sympy_fields(alph, top):
    syms = {n: sympy.Symbol(n, commutative=False) for n in alph.symbols}

    def series(kind, var):
        s = sum(syms[f"{kind}_{k}"] * var ** (k + 1) for k in range(top + 1))
        return 1 + s if kind == "h" else s

    return syms, series


def _to_sympy(a: NCElement, syms):
    total = 0
    for (w,), c in a.terms.items():
        term = sympy.sympify(to_text(c), locals={"eta": eta_s})
        for i in w:
            term = term * syms[a.alphabets[0].symbols[i]]
        total += term
    return total


def test_cleared_relations_match_sympy_expansion():
    # with x = 1/u, y = 1/v: (u - v) = (y - x)/(x y); compare x y times the relations
    alph = current_alphabet(2)
    syms, S = _sympy_fields(alph, 2)
    hu, hv, eu, ev, fu, fv = S("h", x), S("h", y), S("e", x), S("e", y), S("f", x), S("f", y)
    c = lambda a, b: a * b - b * a  # noqa: E731
    a = lambda a, b: a * b + b * a  # noqa: E731
    ref = {
        "e-f": (y - x) * c(eu, fv) + eta_s * x * y * (hu - hv),
        "h-e": (y - x) * c(hu, ev) + eta_s * x * y * a(hu, eu - ev),
        "h-f": (y - x) * c(hu, fv) - eta_s * x * y * a(hu, fu - fv),
        "f-f": (y - x) * c(fu, fv) - eta_s * x * y * (fu - fv) ** 2,
    }
    ours = dict(cleared_current_relations(alph, 3))
    for tag, r in ref.items():
        r = sympy.expand(r)
        for (p, q), v in ours[tag].coeffs.items():
            if p <= 2 and q <= 2:
                assert sympy.expand(r.coeff(x, p + 1).coeff(y, q + 1) - _to_sympy(v, syms)) == 0, (tag, p, q)


def test_h_modes_commute():
    P = build_current_presentation(2)
    for r, t in zip(P.relations, P.tags):
        if t.startswith("h-h"):
            assert all(all(P.alphabet.symbols[i].startswith("h") for i in w) for (w,) in r.terms)
    alph = P.alphabet
    rel = P.relations[P.tags.index("h-h[1,2]")]
    assert rel in (NCElement.from_words(alph, "h_1 h_0") - NCElement.from_words(alph, "h_0 h_1"),
                   NCElement.from_words(alph, "h_0 h_1") - NCElement.from_words(alph, "h_1 h_0"))


def test_lowest_relations():
    P = build_current_presentation(1)
    alph = P.alphabet
    w = lambda t, c=ONE: NCElement.from_words(alph, t, c)  # noqa: E731
    assert normalization_constant() == ETA
    rel = P.relations[P.tags.index("e-f[0,1]")]
    assert rel == w("e_0 f_0") - w("f_0 e_0") - w("h_0", ETA)
    ff = P.relations[P.tags.index("f-f[0,2]")]
    assert ff == w("f_1 f_0") - w("f_0 f_1") + w("f_0 f_0", ETA)


def test_evaluation_modules_satisfy_relations():
    ok, violated = check_representation(2)
    assert ok
    assert violated and all(t.startswith("h-f") for t in violated)


# --- Gauss decomposition ----------------------------------------------------------

def test_k_series_defining_relations():
    alph = current_alphabet(3)
    k1, k2 = k_series(alph, 4)
    h = TruncatedSeries(("uinv",), (4,), (alph,), {(0,): NCElement.one((alph,))})
    for k in range(4):
        h = h + TruncatedSeries(("uinv",), (4,), (alph,), {(k + 1,): NCElement.gen(alph, f"h_{k}")})
    prod = k1 * shift_series(k2, ETA)
    rep = ModeRepresentation(3)
    # k1 and k2 are polynomials in commuting h-modes: test through the representation
    for n in range(1, 5):
        assert rep.vanishes(prod[n])
    assert k2 == h * k1


def _shift_scalars(c, bound, shift):
    """Re-expand sum c_p u^-p at u - shift."""
    out = [ZERO] * (bound + 1)
    for p, v in enumerate(c):
        if p == 0:
            out[0] = out[0] + v
            continue
        for q in range(p, bound + 1):
            out[q] = out[q] + v * shift ** (q - p) * comb(q - 1, q - p)
    return out


def _mul_scalars(a, b, bound):
    out = [ZERO] * (bound + 1)
    for p, x in enumerate(a):
        for q, y in enumerate(b):
            if p + q <= bound:
                out[p + q] = out[p + q] + x * y
    return out


def test_gauss_l_reproduces_normalized_evaluation_operator():
    # the evaluation modules carry a scalar quantum determinant q(u) = k1(u) k2(u - eta);
    # rescaled by g(u) with g(u) g(u - eta) q(u) = 1 the operator is the Gauss-form L
    bound = 3
    rep = ModeRepresentation(2)
    ev = evaluation_L(rep.points, bound)
    cur = gauss_currents(ev, bound)
    n = rep.size
    k2s = [[[ZERO] * n for _ in range(n)] for _ in range(bound + 1)]
    for r in range(n):
        for c in range(n):
            col = _shift_scalars([m[r][c] for m in cur["k2"]], bound, ETA)
            for p in range(bound + 1):
                k2s[p][r][c] = col[p]
    from yangtwist.fields import _mseries_mul
    q = _mseries_mul(cur["k1"], k2s, bound)
    assert all(m == linalg.matscale(linalg.identity(n), m[0][0]) for m in q)
    qs = [m[0][0] for m in q]
    g = [ONE] + [ZERO] * bound
    for m in range(1, bound + 1):
        prod = _mul_scalars(_mul_scalars(g, _shift_scalars(g, bound, ETA), bound), qs, bound)
        g[m] = -prod[m] / 2
    L = build_L_gauss(2)
    for i in range(2):
        for j in range(2):
            for p in range(bound + 1):
                target = [[ZERO] * n for _ in range(n)]
                for a in range(p + 1):
                    target = linalg.matadd(target, linalg.matscale(ev[(i, j)][p - a], g[a]))
                assert rep(L[i][j][p]) == target


def test_gauss_currents_invert_the_decomposition():
    ev = evaluation_L((0, 2), 3)
    cur = gauss_currents(ev, 3)
    one = [linalg.identity(4)] + [[[ZERO] * 4 for _ in range(4)] for _ in range(3)]
    from yangtwist.fields import _mseries_mul
    k1f = _mseries_mul(cur["k1"], cur["f"], 3)
    assert all(linalg.matadd(a, b) == [[ZERO] * 4 for _ in range(4)] for a, b in zip(k1f, ev[(0, 1)]))
    assert cur["h"][0] == one[0]


def test_deformed_constant_term_is_z_matrix():
    alph = current_alphabet(1)
    L = build_L_gauss(1, 4)
    z = z_series(4)
    f0 = NCElement.gen(alph, "f_0")
    zel = NCElement.zero((alph,))
    for n, v in z.coeffs.items():
        for (w,), c in v.terms.items():
            zel = zel + (f0 ** len(w)).scale(c * XI ** n[0])
    zinv = sqrt_t_elements(alph, 4)[0]
    h0 = NCElement.gen(alph, "h_0")
    assert L[0][0][0] == zinv
    assert L[0][1][0] == NCElement.zero((alph,))
    assert L[1][1][0] == truncate_xi(zel, 4)
    assert L[1][0][0] == truncate_xi(h0.scale(XI) * zinv, 4)


def test_undeformed_limit_of_gauss_form():
    L0 = build_L_gauss(2)
    L = build_L_gauss(2, 2)
    for i in range(2):
        for j in range(2):
            for p in range(4):
                got = L[i][j][p].map_coefficients(lambda c: c.substitute({"xi": 0}))
                assert got == L0[i][j][p]


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 5))
def test_square_root_of_t(order):
    alph = current_alphabet(0)
    plus, minus = sqrt_t_elements(alph, order)
    t, t_inv = t_power_elements(alph, order)
    one = NCElement.one((alph,))
    assert truncate_xi(plus * plus, order) == t
    assert truncate_xi(plus * minus, order) == one
    assert truncate_xi(minus * minus, order) == t_inv
    assert truncate_xi(t * t_inv, order) == one


def test_inverse_factors():
    tf = TildeFields(current_alphabet(2), 1, 3, 2)
    for c in (1, -1, 2, -2):
        prod = truncate_series_xi(tf.inv_factor(c) * tf.inv_factor(c, power=1), 2)
        assert prod == tf.one()


# --- RTT from fields ----------------------------------------------------------------

def test_rtt_from_fields_undeformed():
    res = rtt_from_fields(_alg(), build_L_gauss(N), at_xi(build_R_fund(), 0))
    assert res and all(r.verdict == IN_IDEAL for r in res)


def test_rtt_from_fields_deformed():
    alg = _alg()
    res = rtt_from_fields(alg, build_L_gauss(N, NX), build_R_fund(ETA * XI), NX)
    assert {r.xi_power for r in res} == {0, 1, 2}
    assert all(r.verdict == IN_IDEAL for r in res)
    lit = rtt_from_fields(alg, build_L_gauss(N, 1), build_R_fund(XI), 1)
    assert overall([r for r in lit if r.xi_power == 0]) == PASS
    assert overall([r for r in lit if r.xi_power == 1]) == FAIL


def test_rtt_negative_control_without_shift():
    res = rtt_from_fields(_alg(), build_L_gauss(N, 1, shift_e=False), build_R_fund(ETA * XI), 1)
    assert overall(res) == FAIL


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_certificates_replay(data):
    alg = _alg()
    L = build_L_gauss(N)
    from yangtwist.rtt import _relation_matrix, _split_linear
    from yangtwist.fields import l_coefficient
    M0, C = _split_linear(at_xi(build_R_fund(), 0))
    a, b = data.draw(st.integers(0, N)), data.draw(st.integers(0, N))
    rel = _relation_matrix(l_coefficient(L), M0, C, a, b, NCElement.zero((alg.alphabet,)))
    entries = [e for row in rel for e in row if e]
    assume(entries)
    e = data.draw(st.sampled_from(entries))
    cert = alg.groebner.member(e, certificate=True)
    assert cert.verdict == IN_IDEAL
    assert replay(alg.presentation, cert, gb=alg.groebner) == e


# --- tilde relations ---------------------------------------------------------------

def _verdicts(tf, residuals, max_order):
    alg = _alg()
    return {k: overall(decide_series(alg, str(k), s, tf.xi_order, max_order)) for k, s in residuals.items()}


def test_conjugation_relations_printed():
    tf = TildeFields(current_alphabet(N), 1, N + 1, NX)
    v = _verdicts(tf, conjugation_residuals(tf), N + 1)
    assert v == {("conj-h", 1): PASS, ("conj-e", 1): FAIL, ("conj-f", 1): PASS,
                 ("conj-h", -1): FAIL, ("conj-e", -1): PASS, ("conj-f", -1): PASS}
    fixed = _verdicts(tf, corrected_conjugations(tf), N + 1)
    assert set(fixed.values()) == {PASS}


def test_conjugation_of_f_at_first_order():
    # T^(1/2) f~ T^(-1/2) = f~ - eta xi f~^2 + O(xi^2)
    tf = TildeFields(current_alphabet(N), 1, N + 1, 1)
    f = tf.get("f")
    lhs = tf.conj(tf.sqrt_t, f, tf.sqrt_t_inv)
    rhs = tf.trunc(f - (f * f).scale(ETA * XI))
    alg = _alg()
    assert overall(decide_series(alg, "rho7", lhs - rhs, 1, N + 1)) == PASS


def test_tilde_relations_at_xi_zero_are_current_relations():
    tf = TildeFields(current_alphabet(N), 2, N + 1, 0)
    res = field_relation_residuals(tf, ["e-e", "G1-f", "H1-h"])
    assert set(_verdicts(tf, res, N).values()) == {PASS}
    e_e = res["e-e"]
    f = field_relation_residuals(tf, ["G1-f"])["G1-f"]
    assert e_e and f


def test_field_relations_printed_and_corrected():
    tf = TildeFields(current_alphabet(N), 2, N + 1, NX)
    v = _verdicts(tf, field_relation_residuals(tf), N)
    assert v == {"H1-h": PASS, "e-e": PASS, "G1-f": PASS, "H1-f": FAIL, "e-G2": FAIL, "e-H2": FAIL}
    alg = _alg()
    for k, (corr, oracle) in corrected_residuals(tf).items():
        assert overall(decide_series(alg, k, corr, NX, N)) == PASS, k
        assert overall(decide_series(alg, k, oracle, NX, N)) == PASS, k
        assert overall(decide_series(alg, k, corr - oracle, NX, N)) == PASS, k


def test_printed_e_G2_holds_at_xi_zero():
    tf = TildeFields(current_alphabet(N), 2, N + 1, NX)
    s = field_relation_residuals(tf, ["e-G2"])["e-G2"]
    alg = _alg()
    res = decide_series(alg, "e-G2", s, NX, N)
    assert overall([r for r in res if r.xi_power == 0]) == PASS
    assert overall([r for r in res if r.xi_power == 1]) == FAIL


def test_xi_parts_roundtrip():
    alph = current_alphabet(0)
    a = NCElement.gen(alph, "f_0").scale(ONE + XI * ETA) + NCElement.gen(alph, "h_0").scale(XI * XI)
    parts = xi_parts(a)
    assert set(parts) == {0, 1, 2}
    total = sum((p.scale(XI ** k) for k, p in parts.items()), NCElement.zero((alph,)))
    assert total == a


def test_suite_verdicts():
    checks = {c.check_id: c for c in suite_checks(N, NX)}
    assert all(c.verdict in (PASS, CORRECTED) for c in checks.values())
    for tag in CONJUGATIONS + FIELD_RELATIONS:
        assert f"{tag}-N{N}-xi{NX}" in checks
    assert checks[f"H1-f-N{N}-xi{NX}"].verdict == CORRECTED
    assert checks[f"rtt-from-fields-xi0-N{N}"].verdict == PASS
    assert KINDS == ("f", "h", "e")
