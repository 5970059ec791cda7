import itertools
import math

import galois
import numpy as np
import pytest

from codecrypt_lab import reference_data as ref
from codecrypt_lab.algebra import FieldSpec, from_strings, is_information_set
from codecrypt_lab.errors import DimMismatch, IterationLimit, NoSolution, NoSolutionFound, ParameterError, TooLarge
from codecrypt_lab.isd import (
    BjmmParams,
    SdpInstance,
    SternParams,
    bjmm,
    brute_force_sdp,
    expected_iterations,
    lee_brickell,
    merge,
    prange,
    prange_iteration,
    random_instance,
    stern,
    stern_iteration,
    success_probability,
    wagner,
)

GF2 = galois.GF(2)


def unique_instance(spec, n, k, t, seeds=range(100)):
    """First planted instance whose planted error is the only solution of weight <= t."""
    for seed in seeds:
        inst, e = random_instance(spec, n, k, t, seed)
        oracle = brute_force_sdp(inst)
        if oracle.weight == t and oracle.stats["solutions_at_min"] == 1:
            return inst, e
    raise AssertionError("no instance with a unique solution")


# ---------------------------------------------------------------------------
# Instances and brute force
# ---------------------------------------------------------------------------

def test_instance_shape_checks():
    with pytest.raises(DimMismatch):
        SdpInstance(GF2.Zeros((3, 6)), GF2.Zeros(4), 1)
    with pytest.raises(ParameterError):
        SdpInstance(GF2.Zeros((3, 6)), GF2.Zeros(3), 7)


def test_brute_force_zero_syndrome():
    inst, _ = random_instance(FieldSpec(3), 10, 5, 2, 1)
    zero = SdpInstance(inst.H, inst.gf.Zeros(5), 2)
    assert brute_force_sdp(zero).weight == 0


def test_brute_force_is_lexicographically_least():
    # columns 0 and 1 are equal, so both unit vectors solve the instance
    H = GF2([[1, 1, 0], [0, 0, 1]])
    solution = brute_force_sdp(SdpInstance(H, GF2([1, 0]), 1))
    assert solution.e.tolist() == [0, 1, 0]
    assert solution.stats["solutions_at_min"] == 2


def test_brute_force_no_solution():
    H = GF2([[1, 1, 0], [0, 1, 1]])
    with pytest.raises(NoSolution):
        brute_force_sdp(SdpInstance(H, GF2([1, 0]), 0))


def test_brute_force_budget():
    inst, _ = random_instance(FieldSpec(2), 40, 20, 6, 0)
    with pytest.raises(TooLarge):
        brute_force_sdp(inst, budget=1000)


# ---------------------------------------------------------------------------
# Agreement with the oracle
# ---------------------------------------------------------------------------

SOLVERS = {
    "prange": lambda inst, seed: prange(inst, seed),
    "lee_brickell": lambda inst, seed: lee_brickell(inst, 1, seed),
    "stern": lambda inst, seed: stern(inst, SternParams(2, 1), seed),
}


@pytest.mark.parametrize("name", sorted(SOLVERS))
@pytest.mark.parametrize("q", [2, 3])
def test_solvers_agree_with_brute_force(name, q):
    spec = FieldSpec(q)
    n, k, t = (16, 8, 2) if q == 2 else (12, 6, 2)
    inst, e = unique_instance(spec, n, k, t)
    for seed in range(3):
        solution = SOLVERS[name](inst, seed)
        assert solution.algorithm == name
        assert np.array_equal(solution.e, e)


def test_bjmm_and_wagner_agree_with_brute_force():
    inst, e = unique_instance(FieldSpec(2), 20, 10, 2)
    assert np.array_equal(bjmm(inst, BjmmParams(4, 2, 1), seed=0, max_iters=2000).e, e)
    assert np.array_equal(wagner(inst, 1, 4, 2, seed=0, max_iters=2000).e, e)


def random_case(q, seed, t_min=1):
    """Planted instance with n, k, t drawn from the seed; n <= 24, k <= 12, t <= 4 over
    GF(2) and n <= 16, t <= 3 otherwise. Always n - k > t."""
    rng = np.random.default_rng([seed, q])
    n_max, k_max, t_max = (24, 12, 4) if q == 2 else (16, 8, 3)
    n = int(rng.integers(8, n_max + 1))
    k = int(rng.integers(2, min(k_max, n - 3) + 1))
    t = int(rng.integers(t_min, min(t_max, n - k - 1) + 1))
    inst, _ = random_instance(FieldSpec(q), n, k, t, rng)
    return inst


def _bjmm_window(inst):
    r = inst.n - inst.k
    return min(4, r - 1, r - inst.t + 2)


RANDOMIZED = {
    "prange": lambda inst, seed: prange(inst, seed),
    "lee_brickell": lambda inst, seed: lee_brickell(inst, 1, seed),
    "stern": lambda inst, seed: stern(inst, SternParams(2, min(1, inst.t // 2)), seed),
    "bjmm": lambda inst, seed: bjmm(inst, BjmmParams(_bjmm_window(inst), 2, 1), seed, max_iters=5000),
    "wagner": lambda inst, seed: wagner(inst, 1, 2, 2, seed=seed, max_iters=3000),
}
BINARY_ONLY = ("bjmm", "wagner")


@pytest.mark.slow
@pytest.mark.parametrize(
    "q, name",
    [(2, name) for name in sorted(RANDOMIZED)]
    + [(q, name) for q in (3, 5) for name in sorted(RANDOMIZED) if name not in BINARY_ONLY],
)
def test_random_instances_agree_with_brute_force(q, name):
    t_min = 2 if name in BINARY_ONLY else 1
    for seed in range(100):
        inst = random_case(q, seed, t_min)
        oracle = brute_force_sdp(inst)
        solution = RANDOMIZED[name](inst, seed)
        assert inst.accepts(solution.e), (seed, inst.n, inst.k, inst.t)
        assert oracle.weight <= solution.weight <= inst.t


def test_solvers_are_reproducible():
    inst, _ = random_instance(FieldSpec(2), 24, 12, 4, 3)
    a = stern(inst, SternParams(2, 1), seed=42, record=True)
    b = stern(inst, SternParams(2, 1), seed=42, record=True)
    assert a.transcript == b.transcript
    assert np.array_equal(a.e, b.e)
    assert inst.accepts(a.e)
    assert a.stats["collisions"] > 0


# ---------------------------------------------------------------------------
# Prange
# ---------------------------------------------------------------------------

def prange_f5_instance():
    inp = ref.PRANGE_F5.inputs
    gf = FieldSpec(inp["q"]).gf
    return SdpInstance(from_strings(gf, inp["H"]), from_strings(gf, [inp["s"]])[0], inp["t"])


def test_prange_example_error_has_the_syndrome():
    inst = prange_f5_instance()
    e = from_strings(inst.gf, [ref.PRANGE_F5.expected["e"]])[0]
    assert (e @ inst.H.T).tolist() == [2, 4, 0, 2, 0, 4]
    assert inst.accepts(e)


def test_prange_step_by_step():
    inst = prange_f5_instance()
    exp = ref.PRANGE_F5.expected
    first = prange_iteration(inst, (0, 1, 2, 4))
    assert not first.accepted
    assert np.array_equal(first.s_prime, from_strings(inst.gf, [exp["s_first"]])[0])
    step = prange_iteration(inst, (6, 7, 8, 9))
    assert step.accepted
    assert np.array_equal(step.UH, from_strings(inst.gf, exp["UH"]))


def test_prange_with_forced_information_sets():
    inst = prange_f5_instance()
    sets = [(0, 1, 2, 3), (0, 1, 2, 4), (6, 7, 8, 9)]
    solution = prange(inst, information_sets=sets, record=True)
    assert solution.e.tolist() == [2, 0, 0, 4, 0, 0, 0, 0, 0, 0]
    # the singular set is drawn but is not an iteration
    assert (solution.draws, solution.iterations) == (3, 2)
    assert solution.transcript == tuple(sets)


def test_prange_runs_out_of_sets():
    with pytest.raises(IterationLimit):
        prange(prange_f5_instance(), information_sets=[(0, 1, 2, 4)])


@pytest.mark.slow
def test_prange_mean_iterations():
    # iterations are geometric with p = C(n-k, t)/C(n, t) when the planted error is the only solution
    n, k, t = 20, 8, 2
    p = math.comb(n - k, t) / math.comb(n, t)
    assert p == pytest.approx(66 / 190)
    assert expected_iterations("prange", n, k, t) == pytest.approx(1 / p)
    runs = 1000
    counts = []
    seed = 0
    while len(counts) < runs:
        inst, _ = random_instance(FieldSpec(2), n, k, t, seed)
        seed += 1
        oracle = brute_force_sdp(inst)
        if oracle.weight != t or oracle.stats["solutions_at_min"] != 1:
            continue
        counts.append(prange(inst, seed + 10_000).iterations)
    sigma = math.sqrt((1 - p) / p**2 / runs)
    assert abs(np.mean(counts) - 1 / p) < 3 * sigma


def test_success_probabilities():
    assert success_probability("prange", 20, 8, 2) == pytest.approx(66 / 190)
    assert success_probability("lee_brickell", 20, 8, 2, v=1) == pytest.approx(8 * 12 / 190)
    with pytest.raises(ParameterError):
        success_probability("nope", 20, 8, 2)


# ---------------------------------------------------------------------------
# Lee-Brickell and Stern
# ---------------------------------------------------------------------------

def test_lee_brickell_reaches_what_prange_cannot():
    inst, e = unique_instance(FieldSpec(3), 12, 6, 2)
    support = np.flatnonzero(np.asarray(e)).tolist()
    others = [j for j in range(12) if j not in support]
    # an information set holding exactly one error position
    info = next(
        (support[0], *rest)
        for rest in itertools.combinations(others, 5)
        if is_information_set(inst.H, (support[0], *rest))
    )
    with pytest.raises(IterationLimit):
        prange(inst, information_sets=[info])
    solution = lee_brickell(inst, 1, information_sets=[info])
    assert np.array_equal(solution.e, e)


def test_lee_brickell_rejects_bad_v():
    inst, _ = random_instance(FieldSpec(2), 12, 6, 2, 0)
    with pytest.raises(ParameterError):
        lee_brickell(inst, 3)


def test_stern_24_12_4():
    inst, _ = random_instance(FieldSpec(2), 24, 12, 4, 8)
    solution = stern(inst, SternParams(2, 1), seed=1)
    assert solution.weight <= 4
    assert inst.accepts(solution.e)


@pytest.mark.slow
def test_stern_collision_count_matches_expectation():
    # H = (A | Id) with A and s uniform: every (x, y) pair collides with probability q^-ell
    n, k, ell, v, q = 24, 12, 3, 1, 2
    gf, r = GF2, n - k
    params = SternParams(ell, v)
    m1 = k // 2
    m2 = k - m1
    pairs = math.comb(m1, v) * math.comb(m2, v) * (q - 1) ** (2 * v)
    per_iteration = pairs / q**ell
    rng = np.random.default_rng(7)
    runs, total = 600, 0
    for _ in range(runs):
        H = gf(np.hstack([rng.integers(0, 2, size=(r, k)), np.eye(r, dtype=np.int64)]))
        inst = SdpInstance(H, gf(rng.integers(0, 2, size=r)), 2)
        _, collisions = stern_iteration(inst, params, tuple(range(k)), rng)
        total += collisions
    # pair indicators are pairwise uncorrelated for v = 1
    sigma = math.sqrt(runs * pairs * q**-ell * (1 - q**-ell))
    assert abs(total - runs * per_iteration) < 3 * sigma


def test_stern_without_early_abort_or_intermediate_sums():
    inst, e = unique_instance(FieldSpec(3), 12, 6, 2)
    solution = stern(inst, SternParams(1, 1), seed=5, early_abort=False, intermediate_sums=False)
    assert np.array_equal(solution.e, e)


def test_stern_parameter_checks():
    inst, _ = random_instance(FieldSpec(2), 24, 12, 4, 8)
    with pytest.raises(ParameterError):
        stern(inst, SternParams(12, 1))
    with pytest.raises(ParameterError):
        stern(inst, SternParams(2, 3))


# ---------------------------------------------------------------------------
# Merge, BJMM, Wagner
# ---------------------------------------------------------------------------

def test_merge_matches_double_loop(rng):
    width, u, w = 10, 3, 4
    B = rng.integers(0, 2, size=(5, width))
    L1 = rng.integers(0, 2, size=(30, width))
    L2 = rng.integers(0, 2, size=(25, width))
    target = rng.integers(0, 2, size=5)
    naive = set()
    for x, y in itertools.product(L1, L2):
        z = (x + y) % 2
        if np.array_equal((B[:u] @ z) % 2, target[:u]) and z.sum() == w:
            naive.add(tuple(z.tolist()))
    merged = merge(L1, L2, u, target, w, B)
    assert {tuple(row) for row in merged.tolist()} == naive
    assert len(merged) == len(naive)


def test_merge_keeps_every_weight(rng):
    B = rng.integers(0, 2, size=(2, 6))
    L = rng.integers(0, 2, size=(8, 6))
    merged = merge(L, L, 0, np.zeros(2, dtype=np.int64), None, B, unique=False)
    assert merged.shape == (64, 6)


def test_bjmm_32_16_4():
    inst, _ = random_instance(FieldSpec(2), 32, 16, 4, 4)
    solution = bjmm(inst, BjmmParams(4, 2, 1, 0), seed=2, max_iters=3000)
    assert inst.accepts(solution.e)
    assert solution.stats["final"] > 0


def test_bjmm_parameter_checks():
    inst, _ = random_instance(FieldSpec(2), 32, 16, 4, 4)
    with pytest.raises(ParameterError):
        bjmm(inst, BjmmParams(4, 3))
    with pytest.raises(ParameterError):
        bjmm(inst, BjmmParams(4, 2, 0))  # v1 = 1 is odd
    gf3_inst, _ = random_instance(FieldSpec(3), 12, 6, 2, 0)
    with pytest.raises(ParameterError):
        bjmm(gf3_inst, BjmmParams(2, 2))


@pytest.mark.slow
def test_wagner_two_levels():
    inst, _ = random_instance(FieldSpec(2), 16, 8, 4, 6)
    solution = wagner(inst, 2, 4, 4, u=[2, 4], seed=3, max_iters=5000)
    assert inst.accepts(solution.e)
    assert solution.stats["expected_list"] > 0


def test_wagner_gives_up():
    planted, _ = random_instance(FieldSpec(2), 24, 8, 3, 6)
    inst = SdpInstance(planted.H, planted.s, 1)
    with pytest.raises(NoSolution):
        brute_force_sdp(inst)
    with pytest.raises(NoSolutionFound):
        wagner(inst, 1, 4, 0, seed=0, max_iters=3)


def test_wagner_parameter_checks():
    inst, _ = random_instance(FieldSpec(2), 16, 8, 2, 6)
    with pytest.raises(ParameterError):
        wagner(inst, 3, 4, 8)
    with pytest.raises(ParameterError):
        wagner(inst, 2, 4, 2)
    with pytest.raises(ParameterError):
        wagner(inst, 2, 4, 4, u=[4, 2])
