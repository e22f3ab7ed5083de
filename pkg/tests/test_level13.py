"""The level-13 derivation data: generator relations, certificates, and the
exact rational-function checks behind the final zero-constant argument.

Every frozen matrix product below (e.g. g3 * d1hat = [[0,-3],[39,-26]],
g3 * d2hat = g2, g3 * d3hat = [[13,-2],[26,0]]) was recomputed by hand
before being asserted here.
"""

import random
import time
from fractions import Fraction

import pytest

from gamma13 import level13
from gamma13.certificate import certificate_from_json, certificate_to_json, verify_certificate
from gamma13.exactnum import QuadElem, ScalarPoly
from gamma13.groupring import RingElem
from gamma13.projmat import Mat2, ProjMat


def q(a, b=0):
    return QuadElem(Fraction(a), Fraction(b))


G3 = ProjMat.of([[3, -1], [13, -4]])
G2 = ProjMat.of([[2, -1], [13, -6]])
D1HAT = ProjMat.of([[39, -14], [117, -39]])
D2HAT = ProjMat.of([[5, -2], [13, -5]])
D3HAT = ProjMat.of([[-26, 8], [-91, 26]])


class TestGeneratorIdentities:
    def test_fricke_translation_conjugation(self):
        h = ProjMat.of([[0, -1], [13, 0]])
        p = ProjMat.of([[1, 1], [0, 1]])
        w = ProjMat.of([[1, 0], [13, 1]])
        assert h * p.inv() * h == w

    def test_g3_has_order_three(self):
        assert G3 ** 3 == ProjMat.identity()
        assert G3.elliptic_order() == 3

    def test_g3_inverse_times_g2_is_an_involution(self):
        elt = G3.inv() * G2
        assert elt == D2HAT
        assert elt ** 2 == ProjMat.identity()

    def test_unit_ideal_factorization(self):
        one = RingElem.one()
        g3 = RingElem.of(G3)
        assert (one - g3) * (one + g3 + g3 * g3) == RingElem.zero()

    def test_h2_h3_commute(self):
        h2, h3 = level13.h2_mat(), level13.h3_mat()
        assert h2 * h3 == h3 * h2

    def test_h2_h3_are_products_of_involutions(self):
        assert ProjMat.of(level13.h2_mat()) == D2HAT * D1HAT
        assert ProjMat.of(level13.h3_mat()) == D3HAT * D1HAT

    def test_hatted_matrices_match_scaled_forms(self):
        s = q(0, 1)
        d1 = Mat2.of([[s, -14 * s / 39], [3 * s, -s]])
        assert ProjMat.of(d1) == D1HAT
        d3 = Mat2.of([[-s, 4 / s], [-7 * s / 2, s]])
        assert ProjMat.of(d3) == D3HAT

    def test_simultaneous_diagonalization(self):
        a = level13.a_matrix()
        ainv = level13.a_inverse()
        assert ainv * a == Mat2.identity()
        lam_minus = q(Fraction(-2, 3), Fraction(-1, 3))
        lam_plus = q(Fraction(2, 3), Fraction(-1, 3))
        assert ainv * level13.h2_mat() * a == Mat2.diag(lam_minus, lam_plus)
        mu_minus = q(Fraction(7, 6), Fraction(-1, 6))
        mu_plus = q(Fraction(7, 6), Fraction(1, 6))
        assert ainv * level13.h3_mat() * a == Mat2.diag(mu_minus, mu_plus)

    def test_frozen_products(self):
        g3, d1, d2, d3 = (m.mat for m in (G3, D1HAT, D2HAT, D3HAT))
        assert ProjMat.of(g3 * d1) == ProjMat.of([[0, -3], [39, -26]])
        assert ProjMat.of(g3 * d2) == G2
        assert ProjMat.of(g3 * d3) == ProjMat.of([[13, -2], [26, 0]])


class TestFCertificate:
    def test_verifies_end_to_end(self):
        start = time.monotonic()
        cert = level13.build_f_certificate()
        report = verify_certificate(cert)
        elapsed = time.monotonic() - start
        assert report.ok
        assert elapsed < 5.0

    def test_contains_all_headline_steps(self):
        cert = level13.build_f_certificate()
        ids = {s.id for s in cert.steps}
        assert {"T2", "T3", "HT2", "HT3", "W", "g2", "R3", "S3", "delta1",
                "H4", "H5", "H6", "H7", "delta3", "delta2"} <= ids

    def test_w_and_g2_collapse_to_identity(self):
        resolved = {s.id: s.result for s in level13.build_f_certificate().steps}
        assert resolved["W"].lhs == RingElem.parse("[[1,0],[13,1]]")
        assert resolved["W"].rhs == RingElem.one()
        assert resolved["g2"].lhs == RingElem.of(G2)
        assert resolved["g2"].rhs == RingElem.one()

    def test_delta_steps_are_factored_annihilators(self):
        resolved = {s.id: s.result for s in level13.build_f_certificate().steps}
        one = RingElem.one()
        e = ScalarPoly.eps()
        g3 = RingElem.of(G3)
        d1 = resolved["delta1"]
        assert d1.lhs == (one - g3) * (one - e * RingElem.of(D1HAT))
        assert d1.rhs == RingElem.zero()
        d2 = resolved["delta2"]
        assert d2.lhs == (one - g3) * (one + RingElem.of(D2HAT))
        assert d2.lhs.coeff_of(G2) == ScalarPoly.const(-1)
        assert d2.rhs == RingElem.zero()
        d3 = resolved["delta3"]
        assert d3.lhs == -((one - g3) * (one - e * RingElem.of(D3HAT)))
        assert d3.rhs == RingElem.zero()

    def test_r3_is_the_two_sided_leftover(self):
        resolved = {s.id: s.result for s in level13.build_f_certificate().steps}
        r3 = resolved["R3"]
        assert r3.lhs == RingElem.parse("[[1,1],[0,3]] + [[1,2],[0,3]]")
        assert r3.rhs == RingElem.parse("[[3,0],[-13,1]] + [[3,0],[-26,1]]")

    def test_h5_four_term_form(self):
        resolved = {s.id: s.result for s in level13.build_f_certificate().steps}
        h5 = resolved["H5"]
        assert h5.lhs == RingElem.parse(
            "[[1,1],[0,4]] + [[1,3],[0,4]] - [[4,0],[-13,1]] - [[4,0],[-39,1]]")
        assert h5.rhs == RingElem.zero()

    def test_json_round_trip(self):
        cert = level13.build_f_certificate()
        back = certificate_from_json(certificate_to_json(cert))
        assert back == cert
        assert verify_certificate(back).ok

    @pytest.mark.parametrize("level", [1, 7, 25])
    def test_generic_level_instances(self, level):
        cert = level13.build_f_certificate(level)
        assert verify_certificate(cert).ok
        ids = {s.id for s in cert.steps}
        assert "delta1" in ids and "delta3" in ids
        assert "delta2" not in ids  # involution trick needs level 13

    def test_level_one_g2_is_integral(self):
        cert = level13.build_f_certificate(1)
        resolved = {s.id: s.result for s in cert.steps}
        assert resolved["g2"].lhs == RingElem.parse("[[2,-1],[1,0]]")


class TestSquareT2:
    def test_final_congruence(self):
        cong = level13.square_t2_derivation()
        assert cong.lhs == RingElem.parse("[[1,1],[0,4]] + [[1,3],[0,4]]")
        assert cong.rhs == RingElem.parse(
            "a2^2 - [[1,1],[0,1]] - a2*[[2,0],[0,1]] - a2*[[1,0],[0,2]]")

    def test_uses_only_linear_rules(self):
        cert = level13.square_t2_certificate()
        assert verify_certificate(cert).ok
        rules = {s.rule for s in cert.steps}
        assert rules <= {"AXIOM", "RIGHT_MUL", "ADD", "SCALE"}

    def test_square_expansion_terms(self):
        cert = level13.square_t2_certificate()
        squared = next(s.result.lhs for s in cert.steps if s.id == "t2sq")
        assert squared.coeff_of([[2, 1], [0, 2]]) == ScalarPoly.const(1)
        assert squared.coeff_of([[1, 2], [0, 4]]) == ScalarPoly.const(1)
        assert squared.coeff_of(ProjMat.identity()) == ScalarPoly.const(2)

    def test_rhs_fixed_by_fricke_conjugation_modulo_units(self):
        cong = level13.square_t2_derivation()

        def conj_and_reduce(elem):
            unit_classes = {ProjMat.of([[1, 1], [0, 1]]),
                            ProjMat.of([[1, 0], [-13, 1]])}
            acc = RingElem.zero()
            for mat, coeff in elem.terms():
                image = mat.conjugate_by_h(13)
                if image in unit_classes:
                    image = ProjMat.identity()
                acc = acc + coeff * RingElem.of(image)
            return acc

        def reduce_units(elem):
            acc = RingElem.zero()
            for mat, coeff in elem.terms():
                if mat == ProjMat.of([[1, 1], [0, 1]]):
                    mat = ProjMat.identity()
                acc = acc + coeff * RingElem.of(mat)
            return acc

        assert conj_and_reduce(cong.rhs) == reduce_units(cong.rhs)


class TestGCertificate:
    def test_verifies(self):
        cert = level13.build_g_certificate()
        assert verify_certificate(cert).ok

    def test_three_deltas_sum(self):
        resolved = {s.id: s.result for s in level13.build_g_certificate().steps}
        cong = resolved["threedeltas"]
        assert cong.lhs == (RingElem.of(D1HAT) + RingElem.of(D2HAT)
                            + RingElem.of(D3HAT))
        assert cong.rhs == RingElem.of(2 * ScalarPoly.eps() - 1)

    def test_h2_h3_signs(self):
        resolved = {s.id: s.result for s in level13.build_g_certificate().steps}
        assert resolved["h2-sign"].lhs == RingElem.of(D2HAT * D1HAT)
        assert resolved["h2-sign"].rhs == RingElem.of(-ScalarPoly.eps())
        assert resolved["h3-sign"].lhs == RingElem.of(D3HAT * D1HAT)
        assert resolved["h3-sign"].rhs == RingElem.one()

    def test_h_power_sign(self):
        resolved = {s.id: s.result for s in level13.build_g_certificate().steps}
        cong = resolved["h-power-sign"]
        h2, h3 = level13.h2_mat(), level13.h3_mat()
        assert cong.lhs == RingElem.of(ProjMat.of(h2 * h2 * h3))
        assert cong.rhs == RingElem.one()

    def test_json_round_trip(self):
        cert = level13.build_g_certificate()
        back = certificate_from_json(certificate_to_json(cert))
        assert back == cert and verify_certificate(back).ok


class TestSignExponent:
    def test_single_h2(self):
        check = level13.sign_exponent_check(1, 0)
        assert check.power_sign.rhs == RingElem.of(-ScalarPoly.eps())
        assert check.even_power.rhs == RingElem.one()

    def test_h2_squared_h3(self):
        check = level13.sign_exponent_check(2, 1)
        assert check.power_sign.rhs == RingElem.one()
        h2, h3 = level13.h2_mat(), level13.h3_mat()
        assert check.power_sign.lhs == RingElem.of(ProjMat.of(h2 * h2 * h3))

    def test_trivial_word(self):
        check = level13.sign_exponent_check(0, 0)
        assert check.power_sign.lhs == RingElem.one()
        assert check.power_sign.rhs == RingElem.one()

    def test_negative_exponents(self):
        check = level13.sign_exponent_check(-3, -2)
        assert check.power_sign.rhs == RingElem.of(-ScalarPoly.eps())
        h2 = ProjMat.of(level13.h2_mat())
        h3 = ProjMat.of(level13.h3_mat())
        assert check.power_sign.lhs == RingElem.of(h2 ** -3 * h3 ** -2)
        assert check.even_power.lhs == RingElem.of(h2 ** -6 * h3 ** -2)

    def test_random_small_exponents(self):
        rng = random.Random(30)
        h2 = ProjMat.of(level13.h2_mat())
        h3 = ProjMat.of(level13.h3_mat())
        for _ in range(10):
            m, n = rng.randint(-8, 8), rng.randint(-8, 8)
            check = level13.sign_exponent_check(m, n)
            expected = ScalarPoly.const(-1) ** abs(m) * ScalarPoly.eps() ** (abs(m) % 2)
            assert check.power_sign.rhs == RingElem.of(expected)
            assert check.power_sign.lhs == RingElem.of(h2 ** m * h3 ** n)
            assert check.even_power.rhs == RingElem.one()

    def test_desk_scale_bound(self):
        with pytest.raises(ValueError):
            level13.sign_exponent_check(9, 0)


class TestConjugatedMatrices:
    def test_displayed_entries(self):
        b, b2 = level13.conjugated_g3_matrices()
        five_minus = q(Fraction(5, 6), Fraction(-1, 3))   # (5-2*sqrt13)/6
        five_plus = q(Fraction(5, 6), Fraction(1, 3))
        half = q(Fraction(1, 2))
        assert b == Mat2.of([[-half, five_minus], [five_plus, -half]])
        assert b2 == -Mat2.of([[half, five_minus], [five_plus, half]])
        assert b.det() == q(1)

    def test_cube_is_identity(self):
        b, b2 = level13.conjugated_g3_matrices()
        assert b * b2 == Mat2.identity()
        assert b ** 3 == Mat2.identity()


class TestBlowup:
    def test_negative_weight_vanishes_identically(self):
        res = level13.blowup_check(-2)
        assert res.identically_zero
        assert res.pole_order == 0
        assert not res.leading_coeff_nonzero

    @pytest.mark.parametrize("k", [2, 4, 6, 8])
    def test_positive_weights_blow_up(self, k):
        res = level13.blowup_check(k)
        assert not res.identically_zero
        assert res.pole_order == k // 2
        assert res.leading_coeff_nonzero

    def test_rejects_odd_and_zero(self):
        with pytest.raises(ValueError):
            level13.blowup_check(3)
        with pytest.raises(ValueError):
            level13.blowup_check(0)


class TestTildeG:
    @pytest.mark.parametrize("k,expected", [
        (2, (-1, -1, -1)), (6, (-1, -1, -1)), (10, (-1, -1, -1)),
        (4, (1, 1, 1)), (8, (1, 1, 1)), (12, (1, 1, 1)),
        (-2, (-1, -1, -1)), (-4, (1, 1, 1)),
    ])
    def test_sign_pattern(self, k, expected):
        assert level13.tilde_g_check(k) == expected

    def test_bounds(self):
        with pytest.raises(ValueError):
            level13.tilde_g_check(18)
        with pytest.raises(ValueError):
            level13.tilde_g_check(5)
