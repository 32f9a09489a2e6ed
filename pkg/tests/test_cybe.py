import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yangtwist import linalg
from yangtwist.cybe import (BASIS, E, F, H, CutoffTooSmallError, LoopElement, check_lagrangian, cybe_residual,
                            nonzero_components, p1, p2, p2_corrected, residual_is_zero, residue_pairing,
                            loop_bracket, suite_checks, tensor_basis, w1, w2, w2_corrected, wedge, yang_r)
from yangtwist.report import CORRECTED, PASS
from yangtwist.scalar import ONE, U, V, W, ZERO, Scalar

# fundamental matrices of e, f, h; faithful on sl2, so rho^(x)3 is injective on sl2^(x)3
RHO = {
    E: [[ZERO, ONE], [ZERO, ZERO]],
    F: [[ZERO, ZERO], [ONE, ZERO]],
    H: [[ONE, ZERO], [ZERO, -ONE]],
}
I2 = linalg.identity(2)


def _matrix(r_sub, legs):
    out = [[ZERO] * 8 for _ in range(8)]
    for i in range(3):
        for j in range(3):
            c = r_sub[i][j]
            if not c:
                continue
            mats = [I2, I2, I2]
            mats[legs[0]], mats[legs[1]] = RHO[i], RHO[j]
            out = linalg.matadd(out, linalg.matscale(linalg.kron(linalg.kron(mats[0], mats[1]), mats[2]), c))
    return out


def _comm(a, b):
    return linalg.matadd(linalg.matmul(a, b), linalg.matmul(b, a), sign=-1)


def matrix_residual(r):
    r12 = _matrix(r.substitute({"u": U, "v": V}), (0, 1))
    r13 = _matrix(r.substitute({"u": U, "v": W}), (0, 2))
    r23 = _matrix(r.substitute({"u": V, "v": W}), (1, 2))
    total = linalg.matadd(linalg.matadd(_comm(r12, r13), _comm(r12, r23)), _comm(r13, r23))
    return all(not x for row in total for x in row)


@pytest.mark.parametrize("r", [yang_r(), p1(), p2(), p2_corrected(), yang_r() + wedge(E, F),
                               yang_r() + wedge(E, H), yang_r() + tensor_basis(H, F)])
def test_residual_agrees_with_matrix_oracle(r):
    assert residual_is_zero(cybe_residual(r)) == matrix_residual(r)


def test_p1_and_yang_solve_cybe():
    assert residual_is_zero(cybe_residual(yang_r()))
    assert residual_is_zero(cybe_residual(p1()))


def test_printed_p2_fails_and_exchange_fixes_it():
    res = cybe_residual(p2())
    assert len(nonzero_components(res)) == 3
    assert residual_is_zero(cybe_residual(p2_corrected()))


def test_wrong_root_is_still_a_solution():
    assert residual_is_zero(cybe_residual(yang_r() + wedge(E, H)))


def test_genuine_negative_control():
    assert not residual_is_zero(cybe_residual(yang_r() + wedge(E, F)))


def test_residue_pairing_values():
    e, f, h = (lambda k, n=n: LoopElement.basis(n, k) for n in BASIS)
    assert residue_pairing(e(-1), f(0)) == ONE
    assert residue_pairing(h(-1), h(0)) == Scalar(2)
    assert residue_pairing(e(0), f(0)) == ZERO


loop_elements = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 2), st.integers(-3, 3)), max_size=4).map(
    lambda ts: LoopElement({(i, k): Scalar(c) for i, k, c in ts}))


@settings(max_examples=80, deadline=None)
@given(loop_elements, loop_elements, loop_elements)
def test_pairing_symmetric_and_invariant(a, b, c):
    assert residue_pairing(a, b) == residue_pairing(b, a)
    assert residue_pairing(loop_bracket(a, b), c) + residue_pairing(b, loop_bracket(a, c)) == ZERO


def test_w1_is_lagrangian():
    rep = check_lagrangian(w1(), 6)
    assert rep.results == {"isotropy": True, "closure": True, "complementarity": True, "containment": True}


def test_w1_generators_pairwise_isotropic():
    gens = w1().generators
    for a in gens:
        for b in gens:
            assert residue_pairing(a, b) == ZERO


def test_w1_negative_control_fails_isotropy():
    assert not check_lagrangian(w1(negative=True), 6).results["isotropy"]


def test_printed_w2_not_closed_corrected_is_lagrangian():
    rep = check_lagrangian(w2(), 6)
    assert rep.results["isotropy"] and rep.results["complementarity"]
    assert not rep.results["closure"]
    assert check_lagrangian(w2_corrected(), 6).ok


def test_cutoff_too_small():
    with pytest.raises(CutoffTooSmallError):
        check_lagrangian(w1(), 3)


def test_suite_verdicts():
    verdicts = {c.check_id: c.verdict for c in suite_checks()}
    assert verdicts["cybe-P1"] == PASS
    assert verdicts["cybe-P2"] == CORRECTED
    assert verdicts["lagrangian-W2-closure"] == CORRECTED
    assert verdicts["lagrangian-W1-negative-isotropy"] == PASS
