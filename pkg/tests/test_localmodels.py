import random
from fractions import Fraction

import pytest

from massform.csa import lambda_value
from massform.errors import (
    BruteForceTooLargeError,
    NotDivisibleError,
    PrecisionExhaustedError,
)
from massform.localmodels import (
    LocalModel,
    delta_mul,
    gl_count_bruteforce,
    in_iwahori,
    iwahori_index,
    lambda_from_volumes,
    local_volume_report,
    mat_mul,
    mat_pow,
    mat_scalar,
    phi_of_element,
    phi_of_pi,
    phi_of_scalar,
    run_model_checks,
    sublattice_count_bruteforce,
    vol_G,
    vol_Gprime,
)
from massform.orderzeta import local_ideal_count


def test_vol_G_frozen():
    assert vol_G(2, 2) == Fraction(3, 8)
    assert vol_G(3, 2) == Fraction(16, 27)
    assert vol_G(2, 1) == Fraction(1, 2)


def test_vol_Gprime_frozen():
    assert vol_Gprime(2, 1, 2) == Fraction(3, 8)
    assert vol_Gprime(3, 1, 2) == Fraction(8, 27)
    assert vol_Gprime(2, 2, 1) == Fraction(3, 8)


def test_vol_Gprime_with_trivial_index_matches_vol_G():
    for q in (2, 3, 4, 5):
        for r in (1, 2, 3, 4):
            assert vol_Gprime(q, r, 1) == vol_G(q, r)


def test_lambda_from_volumes_frozen():
    assert lambda_from_volumes(2, 2, 2) == 1
    assert lambda_from_volumes(3, 2, 2) == 2
    assert lambda_from_volumes(4, 2, 2) == 3
    assert lambda_from_volumes(2, 2, 1) == 1


def test_lambda_from_volumes_matches_closed_form():
    # same quantity out of two unrelated pipelines
    for q in (2, 3, 4, 5):
        for r in (2, 3, 4, 6):
            for d in (1, 2, 3, 4, 6):
                if r % d != 0:
                    continue
                assert lambda_from_volumes(q, r, d) == lambda_value(q, r, d)
    assert lambda_from_volumes(3, 4, 2) == 52


def test_lambda_from_volumes_requires_divisibility():
    with pytest.raises(NotDivisibleError):
        lambda_from_volumes(2, 4, 3)


def test_volume_report_fields():
    rep = local_volume_report(3, 2, 2)
    assert rep.vol_G == Fraction(16, 27)
    assert rep.vol_Gprime == Fraction(8, 27)
    assert rep.ratio == 2


def test_iwahori_index_frozen():
    assert iwahori_index(2, 1) == 1
    assert iwahori_index(5, 1) == 1
    assert iwahori_index(2, 2) == 4
    assert iwahori_index(2, 3) == 512
    assert iwahori_index(3, 2) == 9


def test_iwahori_index_bruteforce_agrees():
    for q_v, d in ((2, 2), (3, 2), (2, 3)):
        assert iwahori_index(q_v, d, brute_force=True) == iwahori_index(q_v, d)


def test_iwahori_index_bruteforce_bound():
    with pytest.raises(BruteForceTooLargeError):
        iwahori_index(2, 8, brute_force=True)


def test_gl_count_frozen():
    assert gl_count_bruteforce(2, 2) == 6
    assert gl_count_bruteforce(3, 2) == 48
    assert gl_count_bruteforce(2, 3) == 168


def test_gl_count_matches_order_formula():
    # |GL_r(F_q)| = q^{r(r-1)/2} * prod (q^i - 1)
    for q, r in ((2, 2), (3, 2), (4, 2), (2, 3)):
        expected = q ** (r * (r - 1) // 2)
        for i in range(1, r + 1):
            expected *= q ** i - 1
        assert gl_count_bruteforce(q, r) == expected


def test_gl_count_bound():
    with pytest.raises(BruteForceTooLargeError):
        gl_count_bruteforce(2, 5)


def test_sublattice_count_frozen():
    assert sublattice_count_bruteforce(2, 2, 1) == 3
    assert sublattice_count_bruteforce(2, 2, 2) == 7
    assert sublattice_count_bruteforce(2, 1, 3) == 1
    assert sublattice_count_bruteforce(3, 2, 1) == 4


def test_sublattice_count_matches_ideal_count():
    # unramified full matrix case: m_v = r, d_v = 1
    for q_v, r, ell in ((2, 2, 1), (2, 2, 2), (3, 2, 1)):
        assert sublattice_count_bruteforce(q_v, r, ell) == local_ideal_count(
            q_v, r, 1, ell
        )


def test_bezout_normalization():
    for d in (1, 2, 3, 4, 5, 6):
        for b in range(-d, d + 1):
            from math import gcd

            if gcd(b, d) != 1:
                continue
            model = LocalModel.create(2, d, b)
            assert 1 <= model.m_bez <= d
            assert b * model.m_bez + d * model.mprime_bez == 1


def test_model_rejects_bad_inputs():
    with pytest.raises(ValueError):
        LocalModel.create(2, 4, 2)
    with pytest.raises(PrecisionExhaustedError):
        LocalModel.create(2, 2, 1, precision=1)


def test_tau_is_frobenius_power():
    # q_v = 2, d = 2, b = 1: tau is the residue Frobenius x -> x^2,
    # which on F_4 swaps the two non-prime-field elements
    model = LocalModel.create(2, 2, 1)
    f = model.residue_field
    a = model.series([2, 3, 1])
    image = model.tau(a)
    assert image.coeffs[: 3] == (3, 2, 1)
    for code in range(f.q):
        assert model.tau(model.series([code])).coeffs[0] == f.pow(code, 2)


def test_phi_of_pi_power_is_uniformizer():
    for q_v in (2, 3, 4):
        for d in (1, 2, 3, 4, 5):
            model = LocalModel.create(q_v, d, 1)
            lhs = mat_pow(phi_of_pi(model), d, model)
            assert lhs == mat_scalar(model, model.pi())


def test_phi_of_pi_shape_d2():
    model = LocalModel.create(2, 2, 1)
    mat = phi_of_pi(model)
    assert mat[0][0].is_zero() and mat[1][1].is_zero()
    assert mat[1][0] == model.one()
    assert mat[0][1] == model.pi()


def test_phi_entry_pattern_d3():
    # phi(a0 + P a1 + P^2 a2) column j carries tau^j twists, with a pi
    # factor strictly above the diagonal
    model = LocalModel.create(2, 3, 1, precision=5)
    rng = random.Random(7)
    coeffs = [model.random_integral(rng) for _ in range(3)]
    mat = phi_of_element(model, coeffs)
    for i in range(3):
        for j in range(3):
            if i >= j:
                expected = model.tau_power(coeffs[i - j], j)
            else:
                expected = model.tau_power(coeffs[i - j + 3], j).shift(1)
            assert mat[i][j] == expected


def test_phi_scalar_of_base_field_is_central():
    # elements of the base residue field are fixed by tau, so their
    # image is a true scalar matrix
    model = LocalModel.create(3, 2, 1)
    f = model.residue_field
    fixed = [c for c in range(f.q) if f.pow(c, 3) == c]
    assert len(fixed) == 3
    for code in fixed:
        a = model.series([code])
        assert phi_of_scalar(model, a) == mat_scalar(model, a)


def test_phi_multiplicative_random_pairs():
    rng = random.Random(42)
    for q_v, d, b in ((2, 2, 1), (3, 2, 1), (2, 3, 2), (2, 4, 3)):
        model = LocalModel.create(q_v, d, b, precision=5)
        for _ in range(10):
            xs = [model.random_integral(rng) for _ in range(d)]
            ys = [model.random_integral(rng) for _ in range(d)]
            lhs = mat_mul(phi_of_element(model, xs), phi_of_element(model, ys))
            rhs = phi_of_element(model, delta_mul(model, xs, ys))
            assert lhs == rhs


def test_delta_mul_identity_and_associativity():
    model = LocalModel.create(2, 3, 1, precision=5)
    rng = random.Random(3)
    one = [model.one(), model.zero(), model.zero()]
    for _ in range(5):
        xs = [model.random_integral(rng) for _ in range(3)]
        ys = [model.random_integral(rng) for _ in range(3)]
        zs = [model.random_integral(rng) for _ in range(3)]
        assert delta_mul(model, xs, one) == tuple(xs)
        assert delta_mul(model, one, xs) == tuple(xs)
        assert delta_mul(model, delta_mul(model, xs, ys), zs) == delta_mul(
            model, xs, delta_mul(model, ys, zs)
        )


def test_integral_elements_embed_in_order():
    rng = random.Random(11)
    for q_v, d in ((2, 2), (2, 3), (3, 2)):
        model = LocalModel.create(q_v, d, 1)
        for _ in range(10):
            xs = [model.random_integral(rng) for _ in range(d)]
            assert in_iwahori(phi_of_element(model, xs))


def test_negative_valuation_falls_outside_order():
    model = LocalModel.create(2, 2, 1)
    # x = pi^{-1} * (unit at slot 0): not integral, so not in the order
    ys = [model.one(), model.zero()]
    assert not in_iwahori(phi_of_element(model, ys), denominator_exponent=1)
    # but pi * (that x) is the identity, which is in the order
    assert in_iwahori(phi_of_element(model, ys))


def test_in_iwahori_needs_pi_divisibility_above_diagonal():
    model = LocalModel.create(2, 2, 1)
    ones = mat_scalar(model, model.one())
    above = tuple(
        tuple(
            model.one() if (i, j) == (0, 1) else ones[i][j]
            for j in range(2)
        )
        for i in range(2)
    )
    assert not in_iwahori(above)
    scaled = tuple(
        tuple(
            model.pi() if (i, j) == (0, 1) else ones[i][j]
            for j in range(2)
        )
        for i in range(2)
    )
    assert in_iwahori(scaled)


def test_in_iwahori_precision_guard():
    model = LocalModel.create(2, 2, 1, precision=3)
    mat = mat_scalar(model, model.one())
    with pytest.raises(PrecisionExhaustedError):
        in_iwahori(mat, denominator_exponent=3)


def test_run_model_checks_all_green():
    for q_v, d, b in ((2, 2, 1), (2, 3, 2), (3, 2, 1)):
        report = run_model_checks(q_v, d, b, precision=6, pairs=20, seed=1)
        assert report.ok
        assert report.pairs_checked == 20
        assert report.multiplicativity_ok
        assert report.pi_power_ok
        assert report.embedding_in_order_ok
        assert report.negative_valuation_excluded_ok
