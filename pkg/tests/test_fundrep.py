import pytest
import sympy
from sympy.physics.quantum import TensorProduct

from yangtwist import linalg
from yangtwist.fundrep import (I4, UnknownSymbolError, at, at_xi, build_R_fund, check_qybe, eval_field,
                               export_R, linear_part, printed_R, projector_check, yang_normalization_relation,
                               semiclassical_compare, suite_checks, unitarity_scalar, yang_R, _perturbed)
from yangtwist.scalar import ETA, ONE, T, U, W, XI, ZERO, Scalar
from yangtwist.textio import matrix_from_text

eta, xi, t, u, v, w = sympy.symbols("eta xi t u v w")
f = sympy.Matrix([[0, 0], [1, 0]])
h = sympy.Matrix([[1, 0], [0, -1]])
P = sympy.Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
I4s = sympy.eye(4)


def sympy_R(x):
    return ((I4s + xi * TensorProduct(f, h)) * (I4s - eta * P / x) * (I4s - xi * TensorProduct(h, f)))


def to_sympy(M):
    return sympy.Matrix([[sympy.sympify(str(c)) for c in row] for row in M])


def test_product_matches_sympy_and_display():
    ours = to_sympy(build_R_fund())
    assert sympy.simplify(ours - sympy_R(t)) == sympy.zeros(4, 4)
    assert build_R_fund() == printed_R()


def test_display_entries():
    R = build_R_fund()
    assert R[0][0] == ONE - ETA / T
    assert R[3][0] == XI * XI


def test_qybe_exact_with_sympy_cross_check():
    assert check_qybe(build_R_fund())
    assert check_qybe(yang_R())
    assert not check_qybe(_perturbed(build_R_fund()))
    I2 = sympy.eye(2)
    P23 = TensorProduct(I2, P)
    r12 = TensorProduct(sympy_R(u - v), I2)
    r23 = TensorProduct(I2, sympy_R(v - w))
    r13 = P23 * TensorProduct(sympy_R(u - w), I2) * P23
    assert sympy.simplify(r12 * r13 * r23 - r23 * r13 * r12) == sympy.zeros(8, 8)


def test_projector_at_eta():
    rank, lam, vec = projector_check(build_R_fund())
    assert rank == 1
    assert lam == Scalar(2)
    assert vec == [ZERO, ONE, -ONE, -XI]
    A = to_sympy(at(build_R_fund(), ETA))
    assert sympy.simplify(A * A - 2 * A) == sympy.zeros(4, 4)


def test_semiclassical_shift_is_pure_eta_over_difference():
    ok, s = semiclassical_compare(build_R_fund())
    assert ok
    assert s == -ETA / (2 * T)


def test_linear_part_vanishes_at_zero_deformation():
    L = linear_part(at_xi(build_R_fund(), 0))
    assert all(not c.substitute({"eta": 0}) for row in L for c in row)


def test_yang_unitarity():
    assert unitarity_scalar(at_xi(build_R_fund(), 0)) == ONE - ETA * ETA / (T * T)


def test_normalization_relation():
    assert yang_normalization_relation()


def test_eval_field():
    assert eval_field("h")[1][1] == -ONE
    m = eval_field("h+")
    assert m[0][0] == ETA / (W - U) and m[1][1] == -ETA / (W - U)
    assert eval_field("e+")[0][1] == ETA / (W - U)
    assert eval_field("f-")[1][0] == ETA / (W - U)
    with pytest.raises(UnknownSymbolError):
        eval_field("k+")


def test_export_round_trip():
    R = build_R_fund()
    assert matrix_from_text(export_R(R)) == R


def test_suite_all_pass():
    assert all(c.verdict == "pass" for c in suite_checks())
