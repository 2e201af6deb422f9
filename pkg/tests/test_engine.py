"""Fiber counting, word-map group enumeration, and distribution sets."""

import random

import numpy as np
import pytest

import oracles
from conftest import ALL_SPECS, get_group

from wordmap.engine import (
    DistributionSet,
    FiberDistribution,
    WordMapGroup,
    convolve_distributions,
    derived_subgroup_of,
    distribution_of_table,
    distribution_set,
    enumerate_wordmap_group,
    fiber_distribution,
    solutions_count_xd,
    word_function_table,
)
from wordmap.errors import (
    ArityMismatchError,
    BudgetExceededError,
    CapExceededError,
    MissingParameterError,
)
from wordmap.words import parse_word, random_word

# ---------------------------------------------------------------------------
# fiber_distribution against the scalar oracle

BRUTE_CASES = [
    ("S3", "x y x^-1 y^-1", 2, ()),
    ("S3", "x^2", 2, ()),
    ("Q8", "[x,y]", 2, ()),
    ("Q8", "x^2 y^2", 2, ()),
    ("C6", "x^2 y^3", 2, ()),
    ("D8", "x y x y^-1", 2, ()),
    ("Heis3", "[x,y] z", 3, ()),
    ("Q8", "g0 x g0^-1 x^-1", 1, (2,)),
    ("S4", "x^2", 1, ()),
    ("A4", "x y^2", 2, ()),
    ("C1", "x^5", 1, ()),
]


@pytest.mark.parametrize("spec,text,n,params", BRUTE_CASES)
def test_fiber_distribution_matches_brute_force(spec, text, n, params):
    G = get_group(spec)
    w = parse_word(text, arity_hint=n)
    d = fiber_distribution(w, G, n=n, params=params)
    assert d.counts == oracles.fiber_counts(G, w, n, params)
    assert d.group_order == G.order and d.arity == n


def test_headline_distributions():
    Q8 = get_group("Q8")
    assert fiber_distribution(parse_word("[x,y]"), Q8, 2).counts == (
        40, 24, 0, 0, 0, 0, 0, 0,
    )
    assert fiber_distribution(parse_word("x^2"), Q8, 2).counts == (
        16, 48, 0, 0, 0, 0, 0, 0,
    )
    assert fiber_distribution(parse_word("x^2"), Q8, 1).counts == (
        2, 6, 0, 0, 0, 0, 0, 0,
    )
    # The same word over D8 puts its non-identity mass on a different slot,
    # which is what makes the two groups separable by distributions.
    assert fiber_distribution(parse_word("x^2"), get_group("D8"), 2).counts == (
        48, 0, 16, 0, 0, 0, 0, 0,
    )


def test_absent_variables_pad_analytically():
    Q8 = get_group("Q8")
    d = fiber_distribution(parse_word("x1"), Q8, n=10)
    assert all(c == 8**9 for c in d.counts)
    assert d.total == 8**10
    # Only one variable occurs, so a tiny tuple budget still suffices.
    d = fiber_distribution(parse_word("x^2"), get_group("C2"), n=20, tuple_budget=10)
    assert d.counts == (2**20, 0)
    assert sum(d.counts) == d.total == 2**20


def test_budget_is_charged_on_occurring_variables_only():
    S4 = get_group("S4")
    with pytest.raises(BudgetExceededError) as exc:
        fiber_distribution(parse_word("x y"), S4, tuple_budget=100)
    assert exc.value.required == 24**2
    # The same budget is fine for a one-variable word padded to arity 2.
    fiber_distribution(parse_word("x^2"), S4, n=2, tuple_budget=100)


def test_threaded_evaluation_matches_serial():
    C6 = get_group("C6")
    w = parse_word("x1 x2 x3 x4 x5 x6 x7 x8")  # 6^8 tuples, several chunks
    serial = fiber_distribution(w, C6, threads=1)
    threaded = fiber_distribution(w, C6, threads=3)
    assert serial.counts == threaded.counts
    assert serial.uniform  # exponent sums coprime to 6


def test_arity_restriction_error():
    with pytest.raises(ArityMismatchError):
        fiber_distribution(parse_word("x1 x2"), get_group("S3"), n=1)


def test_missing_parameter_error():
    with pytest.raises(MissingParameterError):
        fiber_distribution(parse_word("g0 x"), get_group("S3"))


def test_distribution_flags():
    S3 = get_group("S3")
    uniform = fiber_distribution(parse_word("x"), S3, 2)
    assert uniform.uniform and uniform.surjective and uniform.uniform_over_support
    comm = fiber_distribution(parse_word("[x,y]"), S3, 2)
    assert comm.surjective is False and comm.uniform is False
    assert comm.support_size == 3  # commutators of S3 fill A3
    assert comm.identity_count == comm.counts[0]
    probs = uniform.probabilities()
    assert sum(probs) == 1
    from fractions import Fraction

    assert probs[0] == Fraction(1, 6)


def test_fiber_distribution_validation():
    with pytest.raises(ValueError):
        FiberDistribution(3, 1, (1, 1))  # wrong length
    with pytest.raises(ValueError):
        FiberDistribution(3, 1, (1, 1, 2))  # wrong mass


# ---------------------------------------------------------------------------
# Function tables

def test_word_function_table_matches_oracle():
    G = get_group("S3")
    for text, n, params in [("[x,y]", 2, ()), ("g0 x^2", 1, (3,)), ("x", 2, ())]:
        w = parse_word(text, arity_hint=n)
        table = word_function_table(w, G, n=n, params=params)
        assert list(table) == oracles.function_table(G, w, n, params)


def test_word_function_table_is_row_major():
    C4 = get_group("C4")
    table = word_function_table(parse_word("x1 x2"), C4, 2)
    for a in range(4):
        for b in range(4):
            assert table[a * 4 + b] == (a + b) % 4


def test_word_function_table_budget():
    with pytest.raises(BudgetExceededError):
        word_function_table(parse_word("x^2"), get_group("S4"), n=4, tuple_budget=1000)


# ---------------------------------------------------------------------------
# Word-map group enumeration

F1_ORDERS = {
    "C2": 2, "C4": 4, "C2xC2": 2, "C6": 6, "C12": 12, "Q8": 4, "D8": 4,
    "Heis3": 3, "C3xC3xC3": 3, "C2xQ8": 4, "S3": 6, "A4": 6, "S4": 12, "D12": 6,
}


def test_one_variable_wordmap_group_has_exponent_many_elements():
    for spec, expected in F1_ORDERS.items():
        G = get_group(spec)
        wmg = enumerate_wordmap_group(G, 1)
        assert wmg.order == expected == G.exponent(), spec
        assert wmg.complete


F2_ORDERS = {
    "C6": 36,
    "Q8": 32,
    "D8": 32,
    "Heis3": 27,
    "C3xC3xC3": 9,
    "C2xQ8": 32,
    "S3": 972,
    "D12": 972,
}


def test_two_variable_wordmap_group_orders():
    for spec, expected in F2_ORDERS.items():
        assert enumerate_wordmap_group(get_group(spec), 2).order == expected, spec


def test_wordmap_group_matches_naive_closure():
    for spec, n in [("C4", 1), ("S3", 1), ("C2xC2", 2), ("C6", 2), ("Q8", 2)]:
        G = get_group(spec)
        wmg = enumerate_wordmap_group(G, n)
        expected = oracles.wordmap_tables(G, n)
        got = {tuple(int(x) for x in wmg.table(i)) for i in range(wmg.order)}
        assert got == expected, spec


def test_abelian_two_variable_maps_are_power_pairs():
    C6 = get_group("C6")
    wmg = enumerate_wordmap_group(C6, 2)
    tables = {tuple(int(x) for x in wmg.table(i)) for i in range(wmg.order)}
    expected = set()
    for a in range(6):
        for b in range(6):
            expected.add(
                tuple((a * x + b * y) % 6 for x in range(6) for y in range(6))
            )
    assert tables == expected


def test_generators_are_projections():
    G = get_group("S3")
    wmg = enumerate_wordmap_group(G, 2)
    x1, x2 = wmg.generator_indices
    t1, t2 = wmg.table(x1), wmg.table(x2)
    for a in range(6):
        for b in range(6):
            assert t1[a * 6 + b] == a
            assert t2[a * 6 + b] == b


def test_index_arithmetic_forms_a_group():
    wmg = enumerate_wordmap_group(get_group("S3"), 2)
    rng = random.Random(1)
    ids = [rng.randrange(wmg.order) for _ in range(10)]
    for i in ids:
        assert wmg.mul_index(i, wmg.inv_index(i)) == 0
        assert wmg.mul_index(0, i) == i
        for j in ids[:4]:
            for k in ids[:4]:
                assert wmg.mul_index(wmg.mul_index(i, j), k) == wmg.mul_index(
                    i, wmg.mul_index(j, k)
                )


def test_index_of_word_agrees_with_direct_evaluation():
    G = get_group("S3")
    wmg = enumerate_wordmap_group(G, 2)
    rng = random.Random(3)
    words = [random_word(2, 7, rng) for _ in range(15)]
    words += [parse_word("x^2", arity_hint=2), parse_word("[x, y x^2 y^2]")]
    for w in words:
        i = wmg.index_of_word(w)
        assert np.array_equal(
            np.asarray(wmg.table(i), dtype=np.int64),
            word_function_table(w, G, n=2),
        ), str(w)


def test_word_of_roundtrip():
    wmg = enumerate_wordmap_group(get_group("Q8"), 2)
    for i in range(wmg.order):
        w = wmg.word_of(i)
        assert wmg.index_of_word(w) == i


def test_enumeration_is_deterministic():
    a = enumerate_wordmap_group(get_group("S3"), 2)
    b = enumerate_wordmap_group(get_group("S3"), 2)
    assert a.tables.tobytes() == b.tables.tobytes()
    assert a.generator_indices == b.generator_indices


def test_enumeration_cap():
    with pytest.raises(CapExceededError) as exc:
        enumerate_wordmap_group(get_group("S3"), 2, map_cap=100)
    partial = exc.value.partial
    assert isinstance(partial, WordMapGroup)
    assert not partial.complete
    assert partial.order == 100
    with pytest.raises(ValueError, match="cap"):
        enumerate_wordmap_group(get_group("S3"), 2, map_cap=3)


def test_index_of_word_rejects_parameters_and_bad_arity():
    wmg = enumerate_wordmap_group(get_group("C4"), 1)
    with pytest.raises(ValueError):
        wmg.index_of_word(parse_word("g0"))
    with pytest.raises(ArityMismatchError):
        wmg.index_of_word(parse_word("x1 x2"))


def test_derived_subgroup_of_wordmap_group():
    assert derived_subgroup_of(enumerate_wordmap_group(get_group("C6"), 2)) == {0}
    s3_derived = derived_subgroup_of(enumerate_wordmap_group(get_group("S3"), 2))
    assert len(s3_derived) == 27


# ---------------------------------------------------------------------------
# Distribution sets

def test_distribution_set_q8():
    D = distribution_set(get_group("Q8"), 2)
    assert D.map_count == 32
    assert D.distributions == (
        (8, 8, 8, 8, 8, 8, 8, 8),
        (16, 48, 0, 0, 0, 0, 0, 0),
        (40, 24, 0, 0, 0, 0, 0, 0),
        (64, 0, 0, 0, 0, 0, 0, 0),
    )
    assert len(D) == 4 and D.complete


def test_distribution_set_s3_one_variable():
    D = distribution_set(get_group("S3"), 1)
    assert D.map_count == 6
    assert D.distributions == (
        (1, 1, 1, 1, 1, 1),
        (3, 1, 1, 0, 0, 1),
        (4, 0, 0, 1, 1, 0),
        (6, 0, 0, 0, 0, 0),
    )


def test_distribution_set_covers_every_map():
    for spec in ("C12", "D8", "Heis3"):
        G = get_group(spec)
        wmg = enumerate_wordmap_group(G, 2)
        D = distribution_set(G, 2)
        seen = {wmg.fiber_counts(i) for i in range(wmg.order)}
        assert set(D.distributions) == seen
        assert all(sum(v) == G.order**2 for v in D.distributions)


def test_distribution_set_requires_sorted_vectors():
    with pytest.raises(ValueError, match="sorted"):
        DistributionSet(2, 1, ((2, 0), (1, 1)), map_count=2)


def test_distribution_of_table():
    G = get_group("S3")
    table = word_function_table(parse_word("x^2"), G, 1)
    d = distribution_of_table(G, table, 1)
    assert d.counts == (4, 0, 0, 1, 1, 0)


# ---------------------------------------------------------------------------
# Counting helpers

def test_solutions_count_xd():
    S3 = get_group("S3")
    assert solutions_count_xd(S3, 1) == (1, (0,))
    assert solutions_count_xd(S3, 2) == (4, (0, 1, 2, 5))
    assert solutions_count_xd(S3, 3) == (3, (0, 3, 4))
    assert solutions_count_xd(S3, 6)[0] == 6
    assert solutions_count_xd(get_group("Q8"), 2) == (2, (0, 1))
    with pytest.raises(ValueError):
        solutions_count_xd(S3, 0)


def test_convolution_matches_disjoint_product():
    for spec, u_text, v_text in [("Q8", "x^2", "x^3"), ("S3", "x^2", "x^2")]:
        G = get_group(spec)
        du = fiber_distribution(parse_word(u_text), G, 1)
        dv = fiber_distribution(parse_word(v_text), G, 1)
        direct = fiber_distribution(
            parse_word(f"x1^{u_text[2:]} x2^{v_text[2:]}"), G, 2
        )
        assert convolve_distributions(du, dv, G).counts == direct.counts


def test_convolution_rejects_other_groups():
    d2 = fiber_distribution(parse_word("x"), get_group("C2"), 1)
    with pytest.raises(ValueError):
        convolve_distributions(d2, d2, get_group("S3"))


def test_every_catalog_group_has_uniform_and_trivial_vectors():
    for spec in ALL_SPECS:
        G = get_group(spec)
        D = distribution_set(G, 1)
        assert tuple([1] * G.order) in D.distributions  # the identity map
        trivial = tuple([G.order] + [0] * (G.order - 1))
        assert trivial in D.distributions  # the empty word
