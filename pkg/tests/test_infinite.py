import numpy as np
import pytest

from matword import corpus, infinite, structure, words
from matword.collection import MatrixCollection
from matword.exceptions import BudgetExhausted, HypothesesNotMet, InvalidLetter

ENTRIES = corpus.build_corpus()


def test_prefix_basics():
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    assert tau.prefix(3).letters == (0, 1, 0)
    assert tau.prefix(1).letters == (0,)
    assert tau.m == 2
    assert tau.prefix(tau.m).covers_all(2)


def test_prefix_with_preperiod():
    tau = infinite.InfiniteWord.periodic((1,), N=2, preperiod=(0, 0, 1))
    assert tau.prefix(6).letters == (0, 0, 1, 1, 1, 1)
    assert tau.m == 3


def test_infinite_word_never_covering():
    tau = infinite.InfiniteWord.periodic((0,), N=2)
    with pytest.raises(InvalidLetter):
        tau.m


def test_seeded_stream_deterministic():
    a = infinite.InfiniteWord.from_seed(99, N=3)
    b = infinite.InfiniteWord.from_seed(99, N=3)
    assert [a.letter(i) for i in range(50)] == [b.letter(i) for i in range(50)]
    assert a.m == b.m
    assert a.description() == "seed:99"


def test_shift():
    tau = infinite.InfiniteWord.periodic((0, 1, 1), N=2)
    sigma = tau.shift()
    assert [sigma.letter(i) for i in range(5)] == [tau.letter(i + 1) for i in range(5)]


def test_phi_counts():
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    np.testing.assert_array_equal(infinite.phi(tau, 5), [3, 2])
    tau1 = infinite.InfiniteWord.periodic((0,), N=1)
    np.testing.assert_array_equal(infinite.phi(tau1, 7), [7])


def test_phi_telescoping_unit_steps():
    tau = infinite.InfiniteWord.from_seed(7, N=3)
    prev = infinite.phi(tau, 1)
    assert prev.sum() == 1
    for p in range(2, 40):
        cur = infinite.phi(tau, p)
        step = cur - prev
        assert step.sum() == 1 and np.all(step >= 0) and step.max() == 1
        assert cur.sum() == p
        prev = cur


def test_a_tilde_example1():
    coll = ENTRIES["example1"].collection
    tup = infinite.a_tilde(coll, words.Word((0,)), q=2, x=np.array([0.0, 1.0]))
    np.testing.assert_allclose(tup.components, [[0.0, 1.0], [1.0, 0.0]], atol=1e-12)


def test_a_tilde_fixed_point():
    entry = ENTRIES["example2"]
    coll = entry.collection
    v1 = np.real(entry.vectors["v1"])
    tup = infinite.a_tilde(coll, words.Word.from_names("AB", coll), q=4, x=v1)
    for row in tup.components:
        np.testing.assert_allclose(row, v1, atol=1e-10)


def test_a_tilde_zero_limit():
    entry = ENTRIES["example2"]
    coll = entry.collection
    x = np.real(entry.vectors["v5"] - 2 * entry.vectors["v6"])
    tup = infinite.a_tilde(coll, words.Word.from_names("AB", coll), q=4, x=x)
    np.testing.assert_allclose(tup.components, np.zeros((4, 6)), atol=1e-8)


def test_a_tilde_chain_invariant():
    entry = ENTRIES["example3"]
    coll = entry.collection
    w = words.Word.from_names("AB", coll)
    x = entry.data["x"] + 0.3
    tup = infinite.a_tilde(coll, w, q=6, x=x)
    M = words.word_product(coll, w)
    for i in range(5):
        np.testing.assert_allclose(M @ tup.components[i], tup.components[i + 1],
                                   atol=1e-9)
    np.testing.assert_allclose(M @ tup.components[5], tup.components[0], atol=1e-9)


def test_a_tilde_propagates_divergence():
    coll = ENTRIES["example6"].collection
    product_word = words.Word.from_names("BA", coll)
    v = np.array([0.0, 0.7, 0.7])
    with pytest.raises(HypothesesNotMet):
        infinite.a_tilde(coll, product_word, q=1, x=v * 1e6, bound=1e3)


def test_q2_certificate_spec_pair():
    # {J2 (+) I1, I3}: x = e1+e2+e3 misses the (1,-1,0) direction, so its
    # column carries the trivial exponent and every prefix shares one tuple
    A1 = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    coll = MatrixCollection(names=("A", "B"), matrices=(A1, np.eye(3)))
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    x = np.ones(3)
    cert = infinite.q2_certificate(coll, tau, x)
    assert cert.q == 2 and cert.kappa == 3 and cert.m == 2
    assert len(cert.support) == 2
    assert cert.p_gammas == tuple(range(2, 2 + 2**3 + 1))
    assert cert.residues.size and np.all(cert.residues == 0)
    assert cert.verify(tau)


def test_q2_certificate_example2():
    entry = ENTRIES["example2"]
    coll = entry.collection
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    x = np.real(entry.vectors["v1"] + entry.vectors["v2"])
    cert = infinite.q2_certificate(coll, tau, x)
    assert cert.q == 4 and cert.kappa == 2
    assert np.all(cert.residues == 0)
    assert cert.verify(tau)
    assert cert.support == (0, 1)
    # the eigenvalue columns are (0, 0) for the fixed vector and (2, 2) for
    # the period-two vector: -1 = exp(2 pi i * 2 / 4)
    columns = sorted(tuple(cert.lambdas[:, j]) for j in range(cert.kappa))
    assert columns == [(0, 0), (2, 2)]
    # all selected prefixes share the parity that pins the tuple
    parities = {p % 2 for p in cert.p_gammas}
    assert len(parities) == 1


def test_q2_certificate_zero_limit():
    entry = ENTRIES["example2"]
    coll = entry.collection
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    x = np.real(entry.vectors["v5"] + 0.5 * entry.vectors["v6"])
    cert = infinite.q2_certificate(coll, tau, x, search_budget=12)
    # xi = 0: every prefix yields the zero tuple and the congruences hold
    # with the trivial exponents
    assert cert.p_gammas == tuple(range(2, 14))
    assert cert.support == ()
    assert np.all(cert.lambdas == 0)
    assert np.all(cert.residues == 0)
    assert cert.verify(tau)


def test_q2_certificate_budget_exhausted():
    entry = ENTRIES["example2"]
    coll = entry.collection
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    x = np.real(entry.vectors["v1"] + entry.vectors["v2"])
    with pytest.raises(BudgetExhausted):
        infinite.q2_certificate(coll, tau, x, search_budget=1)


def test_q2_certificate_rejects_noncommuting():
    coll = ENTRIES["example4"].collection
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    with pytest.raises(HypothesesNotMet):
        infinite.q2_certificate(coll, tau, np.ones(6))


def test_q2_certificate_seeded_tau():
    entry = ENTRIES["example3"]
    coll = entry.collection
    tau = infinite.InfiniteWord.from_seed(1234, N=2)
    rng = np.random.default_rng(77)
    x = rng.normal(size=7)
    cert = infinite.q2_certificate(coll, tau, x)
    assert np.all(cert.residues == 0)
    assert cert.verify(tau)
    assert len(cert.p_gammas) >= 2
    assert all(p >= cert.m for p in cert.p_gammas)
    assert list(cert.p_gammas) == sorted(cert.p_gammas)


def test_q2_pigeonhole_budget_suffices():
    entry = ENTRIES["example2"]
    coll = entry.collection
    tau = infinite.InfiniteWord.from_seed(5, N=2)
    rng = np.random.default_rng(5)
    system = structure.common_eigenvectors(coll)
    q = words.global_period(coll).q
    budget = q**system.kappa + 1
    for _ in range(5):
        x = rng.normal(size=6)
        cert = infinite.q2_certificate(coll, tau, x, search_budget=budget)
        assert len(cert.p_gammas) >= 2


def test_tuple_first_component_stability_commuting():
    entry = ENTRIES["example2"]
    coll = entry.collection
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    rng = np.random.default_rng(88)
    x = rng.normal(size=6)
    assert infinite.tuple_first_component_stability(coll, tau, x,
                                                    range(2, 13))


def test_tuple_first_component_stability_single_letter():
    coll = ENTRIES["example1"].collection
    tau = infinite.InfiniteWord.periodic((0,), N=1)
    assert infinite.tuple_first_component_stability(
        coll, tau, np.array([0.3, 0.7]), range(1, 8)
    )


def test_tuple_first_component_stability_refuses_bad_hypotheses():
    coll = ENTRIES["example6"].collection
    tau = infinite.InfiniteWord.periodic((0, 1), N=2)
    with pytest.raises(HypothesesNotMet):
        infinite.tuple_first_component_stability(coll, tau, np.ones(3),
                                                 range(2, 5))
