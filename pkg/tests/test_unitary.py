"""Word maps on SU(k): sampling, defect measurement, decay recursion."""

import math

import numpy as np
import pytest

from fibwords import (
    DecayRow,
    SeedPair,
    SeedSearchError,
    commutator_contraction_check,
    decay_constants,
    decay_report,
    dist_identity,
    estimate_L,
    find_seed_pair,
    parse,
    random_su,
    sampled_defect,
    word_map,
)
from fibwords.unitary import (
    _assemble_rows,
    _defect_levels,
    _free_pair_heuristic,
    _project_unitary,
    _sanov,
    _sanov_is_identity,
    _substituted_lengths,
)


def _unitarity_error(m):
    k = m.shape[-1]
    return np.abs(np.swapaxes(m, -1, -2).conj() @ m - np.eye(k)).max()


def test_random_su_invariants():
    for k in (1, 2, 3, 5):
        u = random_su(k, rng=1)
        assert u.shape == (k, k)
        assert _unitarity_error(u) < 1e-10
        assert abs(np.linalg.det(u) - 1) < 1e-10
    batch = random_su(2, rng=2, count=64)
    assert batch.shape == (64, 2, 2)
    assert _unitarity_error(batch) < 1e-10
    assert np.abs(np.linalg.det(batch) - 1).max() < 1e-10


def test_random_su_deterministic_and_validated():
    assert np.array_equal(random_su(3, rng=7), random_su(3, rng=7))
    with pytest.raises(ValueError):
        random_su(0)
    with pytest.raises(TypeError):
        random_su(2.0)
    with pytest.raises(ValueError):
        random_su(2, count=0)


def test_haar_trace_statistics():
    # for Haar SU(2), |trace| = 2|cos(t)| with density (2/pi) sin^2(t),
    # so the mean is 8/(3 pi); 3 standard errors at 10^4 samples
    u = random_su(2, rng=0, count=10_000)
    traces = np.abs(np.einsum("...ii", u))
    mean = traces.mean()
    se = traces.std() / math.sqrt(traces.size)
    assert abs(mean - 8 / (3 * math.pi)) < 3 * se


def test_dist_identity_examples():
    assert dist_identity(np.eye(2)) == 0.0
    assert abs(dist_identity(-np.eye(2)) - 2.0) < 1e-12
    for theta in (0.1, 1.0, 2.5):
        u = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        assert abs(dist_identity(u) - 2 * abs(math.sin(theta / 2))) < 1e-12
    assert isinstance(dist_identity(np.eye(2)), float)


def test_dist_identity_batch_and_eig_agreement():
    u = random_su(3, rng=5, count=32)
    d = dist_identity(u)
    assert d.shape == (32,)
    # for normal matrices the largest singular value of I - U is
    # max |1 - eigenvalue|
    eig = np.abs(1 - np.linalg.eigvals(u)).max(axis=-1)
    assert np.abs(d - eig).max() < 1e-9


def test_cyclic_invariance():
    u = random_su(2, rng=11, count=256)
    v = random_su(2, rng=12, count=256)
    assert np.abs(dist_identity(u @ v) - dist_identity(v @ u)).max() < 1e-9


def test_word_map_basics():
    u = random_su(2, rng=3)
    v = random_su(2, rng=4)
    assert np.allclose(word_map(parse("e"), u, v), np.eye(2))
    assert np.allclose(word_map(parse("ab"), u, v), u @ v)
    assert np.allclose(word_map(parse("A"), u, v), u.conj().T)
    eye = np.eye(2, dtype=complex)
    assert np.allclose(word_map(parse("abAB"), eye, eye), eye)


def test_word_map_commuting_inputs_kill_commutators():
    u = np.diag([np.exp(0.3j), np.exp(-0.3j)])
    v = np.diag([np.exp(1.1j), np.exp(-1.1j)])
    assert dist_identity(word_map(parse("abAB"), u, v)) < 1e-12


def test_word_map_validates_inputs():
    u = random_su(2, rng=3)
    with pytest.raises(ValueError):
        word_map(parse("ab"), u, random_su(3, rng=4))
    with pytest.raises(ValueError):
        word_map(parse("ab"), np.ones((2, 3)), u)


def test_estimate_L_basics():
    assert estimate_L(parse("e"), 2, 100) == 0.0
    single = estimate_L(parse("a"), 2, 4000)
    assert 1.9 < single <= 2.0 + 1e-12
    comm = estimate_L(parse("abAB"), 2, 2000)
    assert 1.0 < comm <= 2.0 + 1e-9
    with pytest.raises(ValueError):
        estimate_L(parse("a"), 2, 0)
    with pytest.raises(ValueError):
        estimate_L(parse("a"), 2, 100, seed=-1)


def test_estimate_L_deterministic_and_monotone():
    a = estimate_L(parse("abAB"), 2, 500)
    b = estimate_L(parse("abAB"), 2, 500)
    c = estimate_L(parse("abAB"), 2, 2000)
    assert a == b
    assert a <= c


def test_estimate_L_refinement_climbs():
    base = estimate_L(parse("abAB"), 2, 200)
    refined = estimate_L(parse("abAB"), 2, 200, refine=5)
    assert refined >= base
    with pytest.raises(ValueError):
        estimate_L(parse("abAB"), 2, 100, refine=-1)


def test_commutator_contraction_holds_everywhere():
    holds, total = commutator_contraction_check(2, budget=2000)
    assert (holds, total) == (2000, 2000)


def test_contraction_pointwise_and_product_form_refuted():
    u = random_su(2, rng=21, count=500)
    v = random_su(2, rng=22, count=500)
    lhs = dist_identity(u @ v @ np.swapaxes(u, -1, -2).conj()
                        @ np.swapaxes(v, -1, -2).conj())
    rhs = 2 * dist_identity(u) * dist_identity(v)
    assert (lhs <= rhs + 1e-9).all()

    # the same bound is false for plain products: take v = I
    u1 = np.diag([1j, -1j])
    v1 = np.eye(2, dtype=complex)
    prod_lhs = dist_identity(u1 @ v1)
    prod_rhs = 2 * dist_identity(u1) * dist_identity(v1)
    assert prod_lhs > prod_rhs  # sqrt(2) > 0 refutes the product form
    comm = u1 @ v1 @ u1.conj().T @ v1.conj().T
    assert dist_identity(comm) <= prod_rhs + 1e-9  # commutator form survives


def test_substituted_lengths():
    w, v = parse("ab"), parse("bA")
    assert _substituted_lengths(w, v, 6) == [2, 8, 14, 22, 48, 94, 182]
    with pytest.raises(ValueError):
        _substituted_lengths(parse("ab") ** 50, parse("ba") ** 50, 40)


def test_defect_recursion_matches_direct_evaluation():
    # the matrices fed to the recursion are the images of the seed words,
    # so seeding with the generators makes the words plain construction words
    wm = random_su(2, rng=31, count=8)
    vm = random_su(2, rng=32, count=8)
    n_max = 4
    levels = _defect_levels(wm, vm, n_max)

    w, v = parse("a"), parse("b")
    wa, wb = v.inverse(), w * v * w.inverse()
    for n in range(n_max + 1):
        direct = max(
            dist_identity(word_map(wa, wm[i], vm[i])) for i in range(8)
        )
        assert abs(levels[n] - direct) < 1e-10 * max(direct, 1e-30)
        wa, wb = wa * wb, wa.inverse() * wb.inverse()


def test_pointwise_defect_equality_of_both_words():
    # b_n(u, v) is conjugate to a_n(u, v)^-1 in effect: the defects agree
    w, v = parse("ab"), parse("bA")
    wa, wb = v.inverse(), w * v * w.inverse()
    wm = random_su(2, rng=41, count=100)
    vm = random_su(2, rng=42, count=100)
    for n in range(5):
        wa, wb = wa * wb, wa.inverse() * wb.inverse()
        for i in range(0, 100, 25):
            da = dist_identity(word_map(wa, wm[i], vm[i]))
            db = dist_identity(word_map(wb, wm[i], vm[i]))
            assert abs(da - db) < 1e-9 * max(da, 1e-30)


def test_assemble_rows_flags_underflow():
    rows = _assemble_rows([0.25, 0.0], [10, 20], 500)
    assert rows[0] == DecayRow(0, 10, 0.25, -math.log(0.5), 500, False)
    assert rows[1].below_float_range
    assert rows[1].neg_log is None
    assert rows[1].L_hat == 0.0


def test_defect_levels_underflow_deep_in_the_tower():
    rng = np.random.default_rng(5)
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    vm = _project_unitary(np.eye(2) + 1e-3 * (g - g.conj().T) / 2)
    wm = random_su(2, rng=6)
    maxima = _defect_levels(wm, vm, 20)
    assert maxima[0] < 5e-3
    assert maxima[20] == 0.0
    rows = _assemble_rows(maxima, list(range(21)), 1)
    assert not rows[0].below_float_range
    assert rows[20].below_float_range


def test_decay_report_on_plain_word_pair():
    pair = (parse("ab"), parse("bA"))
    rows = decay_report(2, 3, budget=200, pair=pair)
    assert [r.n for r in rows] == [0, 1, 2, 3]
    assert [r.word_length for r in rows] == [2, 8, 14, 22]
    assert all(r.samples == 200 for r in rows)
    for r in rows:
        assert r.L_hat > 0
        assert abs(r.neg_log + math.log(2 * r.L_hat)) < 1e-12
    again = decay_report(2, 3, budget=200, pair=pair)
    assert rows == again


def test_decay_constants():
    rows = [
        DecayRow(0, 2, 0.5, -math.log(1.0), 10),
        DecayRow(1, 8, 0.25, -math.log(0.5), 10),
        DecayRow(2, 14, 1e-3, -math.log(2e-3), 10),
        DecayRow(3, 22, 1e-8, -math.log(2e-8), 10),
        DecayRow(4, 48, 0.0, None, 10, True),
    ]
    consts = decay_constants(rows)
    assert set(consts) == {"C", "D"}
    phi = (1 + math.sqrt(5)) / 2
    expected_d = min(-math.log(2e-3) / phi ** 2, -math.log(2e-8) / phi ** 3)
    assert abs(consts["D"] - expected_d) < 1e-12
    assert consts["C"] > 0
    assert decay_constants(rows[:2]) == {"C": None, "D": None}


def test_seed_pair_unpacks():
    pair = SeedPair(parse("ab"), parse("ba"), 0.5, 100, 0, 1, ())
    w, v, est = pair
    assert (w, v, est) == (parse("ab"), parse("ba"), 0.5)


def test_sampled_defect_on_plain_pair():
    pair = (parse("abAB"), parse("baBA"))
    d1 = sampled_defect(pair, 2, 300)
    d2 = sampled_defect(pair, 2, 300)
    assert d1 == d2
    assert 0 < d1 <= 2 + 1e-9
    # prefix property: more samples can only increase the maximum
    assert d1 <= sampled_defect(pair, 2, 600)


def test_free_pair_heuristic():
    u = random_su(2, rng=51, count=200)
    v = random_su(2, rng=52, count=200)
    ok, _ = _free_pair_heuristic(u, v)
    assert ok
    phases = np.exp(1j * np.linspace(0.2, 1.4, 200))
    du = np.zeros((200, 2, 2), dtype=complex)
    du[:, 0, 0], du[:, 1, 1] = phases, phases.conj()
    dv = np.zeros((200, 2, 2), dtype=complex)
    dv[:, 0, 0], dv[:, 1, 1] = phases.conj(), phases
    ok, closest = _free_pair_heuristic(du, dv)
    assert not ok  # diagonal pairs satisfy the commutator relation


def test_sanov_guard():
    assert _sanov_is_identity(_sanov(b""))
    assert not _sanov_is_identity(_sanov(parse("abAB").letters))
    assert not _sanov_is_identity(_sanov(parse("ab").letters))


def test_find_seed_pair_validation():
    with pytest.raises(ValueError, match="SU\\(1\\)"):
        find_seed_pair(1)
    with pytest.raises(ValueError):
        find_seed_pair(9)
    with pytest.raises(ValueError):
        find_seed_pair(2, budget=0)
    with pytest.raises(SeedSearchError):
        find_seed_pair(2, length_cap=10)


def test_decay_report_validation():
    with pytest.raises(ValueError):
        decay_report(1, 2, 100)
    with pytest.raises(ValueError):
        decay_report(2, -1, 100, pair=(parse("ab"), parse("bA")))
