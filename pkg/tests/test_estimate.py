import math

import pytest

from codecrypt_lab.errors import InfeasibleParams, ParameterError, UnknownParamSet
from codecrypt_lab.estimate import (
    CostReport,
    asymptotic_exponent,
    ball_volume_H,
    bjmm_cost,
    entropy_q,
    exponent_at,
    gv_distance,
    gv_radius,
    gv_rate,
    lee_brickell_cost,
    mceliece_public_key_bits,
    nist_sizes,
    prange_cost,
    rank_isd_cost,
    relative_gv_distance,
    stern_cost,
    stern_cost_opt,
)
from codecrypt_lab.reference_data import NIST_PARAM_SETS, get_param_set


def h2(x):
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


# ---------------------------------------------------------------------------
# NIST sizes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("row", NIST_PARAM_SETS, ids=lambda row: row.name)
def test_nist_sizes_match_published_rows(row):
    sizes = nist_sizes(row.scheme, row.name)
    assert sizes == {"pk_bytes": row.pk_bytes, "sk_bytes": row.sk_bytes, "ct_bytes": row.ct_bytes}


def test_nist_headline_rows():
    assert nist_sizes("classic-mceliece", 1) == {"pk_bytes": 261120, "sk_bytes": 6492, "ct_bytes": 128}
    assert nist_sizes("bike", 1) == {"pk_bytes": 1541, "sk_bytes": 281, "ct_bytes": 1573}
    assert nist_sizes("hqc", "hqc-128") == {"pk_bytes": 2249, "sk_bytes": 40, "ct_bytes": 4481}


def test_level_lookup():
    assert get_param_set("classic-mceliece", 5).name == "mceliece6688128"
    assert get_param_set("classic-mceliece", "6960119").params["t"] == 119
    with pytest.raises(UnknownParamSet):
        nist_sizes("hqc", 2)


def test_public_key_bits():
    assert mceliece_public_key_bits(3488, 3488 - 768) == 768 * 2720


# ---------------------------------------------------------------------------
# Gilbert-Varshamov
# ---------------------------------------------------------------------------

def test_gv_small_values():
    assert gv_distance(7, 4, 2) == 3
    assert gv_radius(7, 4, 2) == 1
    assert ball_volume_H(1, 7, 2) == 8
    assert ball_volume_H(2, 4, 3) == 1 + 8 + 24


def test_gv_relative_distance():
    delta = relative_gv_distance(0.5, 2)
    assert delta == pytest.approx(0.110028, abs=1e-6)
    assert gv_rate(delta, 2) == pytest.approx(0.5)
    assert gv_rate(0.9, 3) == 0.0
    assert entropy_q(0.0, 2) == 0.0
    assert entropy_q(2 / 3, 3) == pytest.approx(1.0)


def test_gv_rejects_bad_rates():
    with pytest.raises(ParameterError):
        relative_gv_distance(1.0, 2)
    with pytest.raises(ParameterError):
        gv_distance(5, 0, 2)


# ---------------------------------------------------------------------------
# Concrete costs
# ---------------------------------------------------------------------------

def test_prange_cost_formula():
    report = prange_cost(20, 8, 2)
    per_iter = 12**2 * 21 * 2
    assert report.log2_cost == pytest.approx(math.log2(per_iter * 190 / 66))
    assert report.success_probability == pytest.approx(66 / 190)
    assert report.log2_iteration_cost == pytest.approx(math.log2(per_iter))


def test_prange_cost_at_mceliece_1024_size():
    # floating-point transcription through lgamma, independent of the exact binomials
    n, k, t = 1024, 524, 50

    def log2_comb(a, b):
        return (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)) / math.log(2)

    per_iter = float((n - k) ** 2 * (n + 1)) * (1 + 1)  # GF(2) addition plus multiplication
    expected = math.log2(per_iter) + log2_comb(n, t) - log2_comb(n - k, t)
    assert prange_cost(n, k, t, 2).log2_cost == pytest.approx(expected, rel=1e-6)


def test_cost_report_json():
    data = prange_cost(20, 8, 2, q=5).to_json()
    assert set(data) == {"algorithm", "log2_cost", "params", "success_probability", "log2_iteration_cost"}
    assert data["params"] == {"n": 20, "k": 8, "t": 2, "q": 5}


def test_cost_report_rejects_nonsense():
    with pytest.raises(InfeasibleParams):
        CostReport("x", -1.0)
    with pytest.raises(InfeasibleParams):
        prange_cost(20, 8, 13)


def test_stern_without_window_is_prange():
    assert stern_cost(100, 50, 10, ell=0, v=0).log2_cost == pytest.approx(prange_cost(100, 50, 10).log2_cost)


def test_improvements_pay_off_at_scale():
    n, k, t = 1024, 524, 50
    prange = prange_cost(n, k, t).log2_cost
    best_stern = stern_cost_opt(n, k, t)
    assert best_stern.log2_cost < prange
    assert best_stern.params["v"] > 0
    assert lee_brickell_cost(n, k, t, v=2).log2_cost < prange
    bjmm = bjmm_cost(n, k, t, ell=20, v=8, eps1=2, eps2=0)
    assert 0 < bjmm.log2_cost < prange


def test_qary_costs_grow_with_q():
    assert prange_cost(60, 30, 8, q=7).log2_cost > prange_cost(60, 30, 8, q=2).log2_cost
    assert stern_cost_opt(60, 30, 8, q=3).params["q"] == 3


def test_bjmm_cost_infeasible():
    with pytest.raises(InfeasibleParams):
        bjmm_cost(1024, 524, 50, ell=20, v=7, eps1=0, eps2=0)
    with pytest.raises(InfeasibleParams):
        bjmm_cost(1024, 524, 50, ell=20, v=8, eps1=1, eps2=0)


def test_rank_isd_costs():
    assert rank_isd_cost("basis_enum", 2, 5, 4, 2, 1).log2_cost == pytest.approx(5.0)
    assert rank_isd_cost("matrix_enum", 2, 5, 4, 2, 2).log2_cost == pytest.approx(3.0)
    assert rank_isd_cost("algebraic", 2, 5, 4, 2, 1).log2_cost == pytest.approx(3.0)
    with pytest.raises(ParameterError):
        rank_isd_cost("guess", 2, 5, 4, 2, 1)


# ---------------------------------------------------------------------------
# Asymptotic exponents
# ---------------------------------------------------------------------------

def test_prange_exponent_closed_form():
    R = 0.5
    T = relative_gv_distance(R, 2)
    point = exponent_at("prange", R)
    assert point.exponent == pytest.approx(h2(T) - (1 - R) * h2(T / (1 - R)), abs=1e-9)
    assert exponent_at("prange", R, regime="half").exponent < point.exponent


def test_exponent_arguments():
    with pytest.raises(ParameterError):
        exponent_at("prange", 0.5, regime="quarter")
    with pytest.raises(ParameterError):
        exponent_at("bjmm", 0.5, q=3)
    with pytest.raises(ParameterError):
        exponent_at("mmt", 0.5)


@pytest.mark.slow
def test_prange_worst_case_exponent():
    point = asymptotic_exponent("prange")
    assert point.exponent == pytest.approx(0.1208, abs=0.0005)
    assert 0.4 < point.rate < 0.5


@pytest.mark.slow
def test_stern_worst_case_exponent():
    assert asymptotic_exponent("stern").exponent == pytest.approx(0.1166, abs=0.001)


@pytest.mark.slow
def test_bjmm_worst_case_exponent():
    assert asymptotic_exponent("bjmm").exponent == pytest.approx(0.1019, abs=0.002)


@pytest.mark.slow
def test_half_distance_is_cheaper():
    assert asymptotic_exponent("prange", regime="half").exponent < 0.07
