import math
from fractions import Fraction

import pytest

from ordense.arith import kronecker
from ordense.decomp import decompose
from ordense.density import (
    DensityValue,
    TruncationConfig,
    _charform_pair,
    _charform_pair_convolution,
    _charform_pair_generic,
    _level_q_accumulators,
    zero_class_series,
    delta_avg,
    delta_charform,
    delta_level_q_series,
    delta_g_zero_class,
    delta_general_series,
    delta_joint_one_mod_q,
    delta_prime_power,
    evaluate_density,
)
from ordense.kummer import kummer_degree, sqrt_qstar_in_kvv

CFG = TruncationConfig(t_max=600, n_max=600, v_max=30_000, prime_cutoff=10**6)


def test_zero_class_closed_forms():
    assert delta_g_zero_class(decompose(2), 3).exact == Fraction(3, 8)
    assert delta_g_zero_class(decompose(8), 3).exact == Fraction(1, 8)
    assert delta_g_zero_class(decompose(2), 5).exact == Fraction(5, 24)
    assert delta_g_zero_class(decompose(2**9), 3).exact == Fraction(1, 24)
    with pytest.raises(ValueError):
        delta_g_zero_class(decompose(2), 2)


def test_classico_matches_closed_form():
    for g in (2, 3, 5, 8, 27, -2, -3, -4, Fraction(16, 81)):
        dec = decompose(g)
        for q in (3, 5, 7):
            cs = zero_class_series(dec, q)
            zc = delta_g_zero_class(dec, q)
            assert abs(cs.value - zc.value) < 1e-12, (g, q)
            assert cs.error_bound < 1e-15


def test_joint_one_mod_q():
    assert delta_joint_one_mod_q(decompose(2), 3, 1).exact == Fraction(1, 16)
    assert delta_joint_one_mod_q(decompose(8), 3, 2).exact == Fraction(3, 16)
    assert delta_joint_one_mod_q(decompose(2), 5, 2).exact == Fraction(1, 96)
    with pytest.raises(ValueError):
        delta_joint_one_mod_q(decompose(2), 3, 6)


def test_stratum_identity_exact():
    # delta_g(0,q) + (q-1) * delta_g(1,q;a,q) = 1/(q-1) as rationals
    for g in (2, 3, 5, 8, 27, -2, -3, -4):
        dec = decompose(g)
        for q in (3, 5, 7):
            lhs = (
                delta_g_zero_class(dec, q).exact
                + (q - 1) * delta_joint_one_mod_q(dec, q, 1).exact
            )
            assert lhs == Fraction(1, q - 1), (g, q)


def test_series_charform_agreement():
    # the full method-agreement panel, including q = 7 and powerful g
    for g in (2, 3, 5, 8, -2, -3, 6, 7, -4):
        dec = decompose(g)
        for q in (3, 5, 7):
            for a in range(1, q):
                d0s, ds = delta_level_q_series(dec, a, q, CFG)
                d0c, dc = _charform_pair(dec, a, q, CFG.prime_cutoff)
                assert abs(ds.value - dc.value) < 3e-6, (g, q, a)
                assert abs(d0s.value - d0c.value) < 3e-6, (g, q, a)
                assert abs(ds.value - dc.value) < ds.error_bound + dc.error_bound


def test_charform_routes_agree_for_generic_g():
    # exponent-free g admit both the explicit product form and the
    # convolution-constant assembly; they share only the A_chi engine
    for g in (2, 5, 6, -3, -2, 10):
        dec = decompose(g)
        for q in (3, 5):
            for a in range(1, q):
                p0, p1 = _charform_pair_generic(dec, a, q, CFG.prime_cutoff)
                c0, c1 = _charform_pair_convolution(dec, a, q, CFG.prime_cutoff)
                assert abs(p0.value - c0.value) < 1e-10, (g, q, a)
                assert abs(p1.value - c1.value) < 1e-10, (g, q, a)


def test_partition_sums_to_one():
    for g in (2, 5, -3, 8):
        dec = decompose(g)
        for q in (3, 5):
            tot_c = delta_g_zero_class(dec, q).value
            tot_s = tot_c
            for a in range(1, q):
                tot_c += delta_charform(dec, a, q, CFG.prime_cutoff).value
                tot_s += delta_level_q_series(dec, a, q, CFG)[1].value
            assert abs(tot_c - 1) < 1e-6, (g, q)
            assert abs(tot_s - 1) < _level_q_tail(dec, q), (g, q)


def _level_q_tail(dec, q):
    return 8.0 * dec.h * q / CFG.v_max * (q - 1) + 1e-9


def test_remark_rewrite_consistency():
    # the sqrt(q*)-restricted accumulator equals the smooth-weight rewrite
    for g in (5, -3, 27, 2):
        dec = decompose(g)
        for q in (3, 5):
            acc1, acc2, acc3 = _level_q_accumulators(dec, q, 20_000)
            for r in range(q):
                assert abs(acc2[r] - acc3[r]) < 1e-12, (g, q, r)


def test_theorem_equality_when_q_does_not_divide_disc():
    # q not dividing D(g0) forces delta = delta0 exactly
    for g, q in ((2, 3), (2, 5), (5, 3), (8, 5)):
        dec = decompose(g)
        for a in range(1, q):
            d0, d = delta_level_q_series(dec, a, q, CFG)
            assert d0.value == d.value, (g, q, a)
            c0, c = _charform_pair(dec, a, q, CFG.prime_cutoff)
            assert abs(c0.value - c.value) < 1e-15


def test_correction_branch_fires():
    dec = decompose(5)
    hit = False
    for a in range(1, 5):
        d0, d = delta_level_q_series(dec, a, 5, CFG)
        if abs(d0.value - d.value) > 1e-4:
            hit = True
    assert hit  # 5 divides D(5) = 5: the sqrt(q*) correction is nonzero


def test_example_stratum_series_oracle():
    # the complementary stratum p = 2 (mod 3): direct v-sum over
    # sqrt(-3) not in K(v,v) of sum_{t = a (3), t | v} mu(v/t) / [K(3v,v):Q]
    from ordense.arith import moebius

    for g in (2, 5):
        dec = decompose(g)
        vmax = 4000
        for a in (1, 2):
            total = 0.0
            for v in range(1, vmax + 1):
                if v % 3 == 0:
                    continue
                if dec.disc_g0 % 3 == 0 and sqrt_qstar_in_kvv(dec, 3, 0, v):
                    continue
                inner = sum(
                    moebius(v // t) for t in range(1, v + 1) if v % t == 0 and t % 3 == a
                )
                if inner:
                    total += inner / kummer_degree(dec, 3 * v, v)
            ref = (
                delta_level_q_series(dec, a, 3, CFG)[1].value
                - delta_joint_one_mod_q(dec, 3, a).value
            )
            assert abs(total - ref) < 2e-3, (g, a, total, ref)


def test_trivial_class_equality_when_d_divides_a():
    # a = 0 (mod d) makes every congruence automorphism trivial: delta = delta0
    cfg = TruncationConfig(t_max=200, n_max=200)
    for g in (2, 5, -3):
        dec = decompose(g)
        for d in (6, 9, 15):
            d0, dv = delta_general_series(dec, 0, d, cfg)
            assert dv.lo is None
            assert d0.value == dv.value, (g, d)


def test_general_series_matches_level_q():
    cfg = TruncationConfig(t_max=600, n_max=600, v_max=30_000, prime_cutoff=10**6)
    for g in (2, -3):
        dec = decompose(g)
        for a in range(3):
            _, dg = delta_general_series(dec, a, 3, cfg)
            if a == 0:
                ref = delta_g_zero_class(dec, 3).value
            else:
                ref = delta_level_q_series(dec, a, 3, cfg)[1].value
            assert abs(dg.value - ref) < 2e-3, (g, a)
            assert abs(dg.value - ref) < dg.error_bound


def test_prime_power_scaling():
    dec = decompose(2)
    lvl = delta_charform(dec, 1, 3, CFG.prime_cutoff)
    sc = delta_prime_power(dec, 1, 3, 2, "auto", CFG)
    assert abs(sc.value - lvl.value / 3) < 1e-15
    assert sc.method == "scaled"
    assert delta_prime_power(dec, 1, 3, 1, "auto", CFG).method == "char_form"
    # exact zero-class scaling
    z9 = delta_prime_power(dec, 0, 3, 2, "auto", CFG)
    assert z9.exact == Fraction(1, 8)
    # partition over all classes mod 9
    tot = sum(delta_prime_power(dec, a, 3, 2, "auto", CFG).value for a in range(9))
    assert abs(tot - 1) < 1e-6


def test_general_series_scaling_law_d9():
    cfg = TruncationConfig(t_max=500, n_max=500, v_max=30_000, prime_cutoff=10**6)
    for g in (2, 5):
        dec = decompose(g)
        for a in (0, 1, 4, 7):
            _, dg = delta_general_series(dec, a, 9, cfg)
            sc = delta_prime_power(dec, a, 3, 2, "auto", cfg)
            assert abs(dg.value - sc.value) < dg.error_bound + sc.error_bound
            assert abs(dg.value - sc.value) < 2e-3, (g, a)


def test_avg_closed_values():
    assert delta_avg(0, 3).exact == Fraction(3, 8)
    assert delta_avg(0, 5).exact == Fraction(5, 24)
    assert delta_avg(0, 9).exact == Fraction(1, 8)
    v3 = delta_avg(1, 3, CFG)
    v9 = delta_avg(1, 9, CFG)
    assert abs(v9.value - v3.value / 3) < 1e-14  # one-prime rescaling
    tot = sum(delta_avg(a, 3, CFG).value for a in range(3))
    assert abs(tot - 1) < 1e-6
    tot9 = sum(delta_avg(a, 9, CFG).value for a in range(9))
    assert abs(tot9 - 1) < 1e-6


def test_avg_series_matches_char():
    cfg = TruncationConfig(t_max=800, n_max=800, prime_cutoff=10**6)
    for a in range(3):
        s = delta_avg(a, 3, cfg, method="series")
        c = delta_avg(a, 3, cfg)
        assert abs(s.value - c.value) < 2e-3, a
        assert abs(s.value - c.value) < s.error_bound


def test_genericity_annihilation():
    # 7 = 1 (mod 3) divides D(7) = 28, so chi(7) = 1 kills every correction
    dec = decompose(7)
    for a in (1, 2):
        cf = delta_charform(dec, a, 3, CFG.prime_cutoff)
        av = delta_avg(a, 3, CFG)
        assert abs(cf.value - av.value) < 1e-12, a
    assert delta_g_zero_class(dec, 3).exact == Fraction(3, 8)


def test_sign_symmetry():
    # odd h with 8 | D(g): delta_g = delta_(-g)
    for g in (2, 6, 10):
        for q in (3, 5):
            dp = decompose(g)
            dn = decompose(-g)
            for a in range(1, q):
                vp = delta_charform(dp, a, q, CFG.prime_cutoff)
                vn = delta_charform(dn, a, q, CFG.prime_cutoff)
                assert abs(vp.value - vn.value) < 1e-12, (g, q, a)


def test_limit_toward_average():
    # along 2, 10, 46, 226 (exponent-free, 8 | D) the distance to the
    # g-free average shrinks
    avg = {a: delta_avg(a, 3, CFG).value for a in (1, 2)}
    dists = []
    for g in (2, 10, 46, 226):
        dec = decompose(g)
        dists.append(
            max(abs(delta_charform(dec, a, 3, CFG.prime_cutoff).value - avg[a]) for a in (1, 2))
        )
    assert all(dists[i + 1] <= dists[i] + 1e-12 for i in range(len(dists) - 1)), dists
    assert dists[-1] < dists[0] / 4


def test_interval_output_for_two_adic_modulus():
    cfg = TruncationConfig(t_max=150, n_max=150)
    dec = decompose(2)
    n_intervals = 0
    lo = hi = 0.0
    for a in range(8):
        d0, dv = delta_general_series(dec, a, 8, cfg)
        if dv.lo is not None:
            n_intervals += 1
            assert dv.lo <= dv.value <= dv.hi
            lo += dv.lo
            hi += dv.hi
        else:
            lo += dv.value
            hi += dv.value
    assert n_intervals > 0
    assert lo - 8 * dv.error_bound <= 1 <= hi + 8 * dv.error_bound


def test_densityvalue_validation():
    with pytest.raises(ValueError):
        DensityValue(2.0, 0.0, True, "series")
    with pytest.raises(ValueError):
        DensityValue(0.5, -1.0, True, "series")
    with pytest.raises(ValueError):
        DensityValue(0.5, 0.0, True, "nonsense")
    with pytest.raises(ValueError):
        DensityValue(0.5, 0.0, True, "closed_form", exact=Fraction(1, 3))


def test_evaluate_density_dispatch():
    v = evaluate_density(2, 0, 3, "auto", CFG)
    assert v.method == "closed_form" and v.exact == Fraction(3, 8)
    v = evaluate_density(2, 1, 3, "auto", CFG)
    assert v.method == "char_form"
    v = evaluate_density(2, 1, 3, "series", CFG)
    assert v.method == "series"
    small = TruncationConfig(t_max=120, n_max=120)
    v = evaluate_density(2, 1, 15, "auto", small)
    assert v.method == "series"
    with pytest.raises(ValueError):
        evaluate_density(2, 1, 3, "closed", CFG)
    with pytest.raises(ValueError):
        evaluate_density(2, 1, 15, "char", CFG)
    with pytest.raises(ValueError):
        evaluate_density(1, 1, 3, "auto", CFG)


def test_negative_even_exponent_flagged():
    dec = decompose(-4)
    val = delta_charform(dec, 1, 3, CFG.prime_cutoff)
    assert not val.rigorous  # cross-check-required branch
    ref = delta_level_q_series(dec, 1, 3, CFG)[1]
    assert abs(val.value - ref.value) < 3e-6


def test_spec_and_config_types():
    from ordense.density import DensitySpec

    spec = DensitySpec(Fraction(2), 1, 3)
    assert spec.d == 3 and spec.a1 is None
    with pytest.raises(ValueError):
        DensitySpec(Fraction(2), 1, 1)
    with pytest.raises(ValueError):
        DensitySpec(Fraction(2), 1, 3, a1=1)
    with pytest.raises(ValueError):
        TruncationConfig(t_max=0)
