"""Exact 2x2 matrices and their projective classes.

Oracle values here were computed by hand: e.g. [[3,-1],[13,-4]] cubes to the
identity, and [[-1,2/3],[-13/2,10/3]] has characteristic roots (7 +- sqrt13)/6.
"""

import random
from fractions import Fraction

import pytest

from gamma13.exactnum import QuadElem
from gamma13.projmat import Mat2, MatClass, ProjMat, diagonalize
from gamma13 import grammar


def q(a, b=0):
    return QuadElem(Fraction(a), Fraction(b))


def pm(rows):
    return ProjMat.of(rows)


class TestMat2:
    def test_mul(self):
        h = Mat2.of([[0, -1], [13, 0]])
        p_inv_h = Mat2.of([[-13, -1], [13, 0]])
        assert h * p_inv_h == Mat2.of([[-13, 0], [-169, -13]])

    def test_inv_exact(self):
        m = Mat2.of([[3, -1], [13, -4]])
        assert m * m.inv() == Mat2.identity()
        assert m.inv() * m == Mat2.identity()

    def test_inv_of_singular_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Mat2.of([[1, 2], [2, 4]]).inv()

    def test_pow(self):
        g3 = Mat2.of([[3, -1], [13, -4]])
        assert g3 ** 3 == Mat2.identity()
        assert g3 ** -1 == g3.inv()
        assert g3 ** 0 == Mat2.identity()

    def test_scalar_mul(self):
        m = Mat2.of([[1, 0], [13, 1]])
        assert q(0, 1) * m == Mat2.of([[q(0, 1), q(0)], [q(0, 13), q(0, 1)]])

    def test_det_trace(self):
        m = Mat2.of([[2, -1], [13, -6]])
        assert m.det() == q(1)
        assert m.trace() == q(-4)


class TestProjMatCanonical:
    def test_scale_invariance(self):
        assert pm([[2, -1], [13, -6]]) == pm([[-4, 2], [-26, 12]])
        assert hash(pm([[2, -1], [13, -6]])) == hash(pm([[-4, 2], [-26, 12]]))

    def test_scale_by_irrational(self):
        s = q(0, 1)
        m = Mat2.of([[s, -14 * s / 39], [3 * s, -s]])
        assert ProjMat.of(m) == pm([[39, -14], [117, -39]])

    def test_negative_determinant_rejected(self):
        with pytest.raises(ValueError, match="determinant"):
            pm([[1, 0], [0, -1]])

    def test_singular_rejected(self):
        with pytest.raises(ValueError, match="determinant"):
            pm([[1, 2], [2, 4]])

    def test_identity_and_negation(self):
        assert pm([[-1, 0], [0, -1]]) == ProjMat.identity()

    def test_mul_and_inv(self):
        h = pm([[0, -1], [13, 0]])
        p_inv_h = pm([[-13, -1], [13, 0]])
        assert h * p_inv_h == pm([[1, 0], [13, 1]])
        g3 = pm([[3, -1], [13, -4]])
        assert g3 * g3.inv() == ProjMat.identity()

    def test_round_trip_through_text(self):
        for rows in ([[39, -14], [117, -39]], [[2, -1], [13, -6]],
                     [[0, -1], [13, 0]]):
            m = pm(rows)
            assert ProjMat.of(grammar.parse_matrix_entries(str(m))) == m

    def test_text_uses_primitive_integer_form(self):
        assert str(pm([[-4, 2], [-26, 12]])) == "[[2,-1],[13,-6]]"
        s = q(0, 1)
        m = ProjMat.of(Mat2.of([[s, -14 * s / 39], [3 * s, -s]]))
        assert str(m) == "[[39,-14],[117,-39]]"


class TestClassify:
    def test_parabolic(self):
        assert pm([[1, 1], [0, 1]]).classify() is MatClass.PARABOLIC
        assert pm([[1, 0], [13, 1]]).classify() is MatClass.PARABOLIC

    def test_elliptic_orders(self):
        g3 = pm([[3, -1], [13, -4]])
        assert g3.classify() is MatClass.ELLIPTIC
        assert g3.elliptic_order() == 3
        h = pm([[0, -1], [13, 0]])
        assert h.classify() is MatClass.ELLIPTIC
        assert h.elliptic_order() == 2
        d2 = pm([[5, -2], [13, -5]])
        assert d2.elliptic_order() == 2

    def test_hyperbolic(self):
        m = pm([[q(-1), q(Fraction(2, 3))], [q(Fraction(-13, 2)), q(Fraction(10, 3))]])
        assert m.classify() is MatClass.HYPERBOLIC
        assert m.elliptic_order() is None

    def test_order_of_parabolic_is_none(self):
        assert pm([[1, 1], [0, 1]]).elliptic_order() is None


class TestConjugateByH:
    def test_hecke_two_matrices(self):
        assert pm([[2, 0], [0, 1]]).conjugate_by_h(13) == pm([[1, 0], [0, 2]])
        assert pm([[1, 1], [0, 2]]).conjugate_by_h(13) == pm([[2, 0], [-13, 1]])

    def test_involution(self):
        rng = random.Random(10)
        for _ in range(100):
            rows = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
            m = Mat2.of(rows)
            if m.det().sign() <= 0:
                continue
            p = ProjMat.of(m)
            assert p.conjugate_by_h(13).conjugate_by_h(13) == p

    def test_matches_direct_conjugation(self):
        h = Mat2.of([[0, -1], [13, 0]])
        rng = random.Random(11)
        for _ in range(100):
            rows = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
            m = Mat2.of(rows)
            if m.det().sign() <= 0:
                continue
            direct = h * m * h.inv()
            assert ProjMat.of(m).conjugate_by_h(13) == ProjMat.of(direct)


class TestDiagonalize:
    def test_characteristic_roots_7_pm_sqrt13_over_6(self):
        m = Mat2.of([[q(-1), q(Fraction(2, 3))],
                     [q(Fraction(-13, 2)), q(Fraction(10, 3))]])
        a, (lam1, lam2) = diagonalize(m)
        assert lam1 == q(Fraction(7, 6), Fraction(1, 6))
        assert lam2 == q(Fraction(7, 6), Fraction(-1, 6))
        assert a.det().sign() > 0
        assert a.inv() * m * a == Mat2.diag(lam1, lam2)

    def test_already_diagonal(self):
        a, (lam1, lam2) = diagonalize(Mat2.of([[1, 0], [0, 2]]))
        assert (lam1, lam2) == (q(2), q(1))
        assert a.inv() * Mat2.of([[1, 0], [0, 2]]) * a == Mat2.diag(lam1, lam2)

    def test_random_reconstruction(self):
        rng = random.Random(12)
        count = 0
        while count < 100:
            lam1, lam2 = rng.randint(-9, 9), rng.randint(-9, 9)
            if lam1 == lam2:
                continue
            rows = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            basis = Mat2.of(rows)
            if basis.det().is_zero:
                continue
            m = basis * Mat2.diag(q(lam1), q(lam2)) * basis.inv()
            a, (mu1, mu2) = diagonalize(m)
            assert {mu1, mu2} == {q(lam1), q(lam2)}
            assert (mu1 - mu2).sign() > 0
            assert a.inv() * m * a == Mat2.diag(mu1, mu2)
            count += 1

    def test_irrational_roots_outside_field_rejected(self):
        with pytest.raises(ValueError):
            diagonalize(Mat2.of([[1, 1], [1, 2]]))  # roots in Q(sqrt 5)

    def test_elliptic_rejected(self):
        with pytest.raises(ValueError):
            diagonalize(Mat2.of([[3, -1], [13, -4]]))

    def test_parabolic_rejected(self):
        with pytest.raises(ValueError):
            diagonalize(Mat2.of([[1, 1], [0, 1]]))
