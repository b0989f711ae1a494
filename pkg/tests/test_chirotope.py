from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings

from conftest import configurations, perm_sign, random_configuration
from neighborly.chirotope import (
    Chirotope,
    VectorConfiguration,
    canonicalize,
    check_gp_relations,
    chirotope_from_configuration,
    cocircuits,
    contract,
    delete,
    dual,
    gale_dual_configuration,
    is_uniform,
    same_oriented_matroid,
)
from neighborly.constructions import cyclic
from neighborly.errors import (
    BudgetExceededError,
    DegenerateConfigurationError,
    LoopContractionError,
    ParseError,
    RankDeficiencyError,
)


def config(*vecs):
    return VectorConfiguration(tuple(tuple(Fraction(x) for x in v) for v in vecs))


def test_standard_basis():
    c = chirotope_from_configuration(config((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert c.sign_string() == "+"


def test_moment_curve_rank3_all_positive():
    c = chirotope_from_configuration(config(*[(1, t, t * t) for t in range(4)]))
    assert c.sign_string() == "++++"


def test_planar_example():
    c = chirotope_from_configuration(config((1, 0), (0, 1), (1, 1)))
    assert c.sign_string() == "++-"


def test_degenerate_configuration():
    with pytest.raises(DegenerateConfigurationError):
        chirotope_from_configuration(config((1, 2), (2, 4), (3, 6)))


def test_rows_follow_label_order():
    v = VectorConfiguration(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))), labels=(2, 1))
    c = chirotope_from_configuration(v)
    assert c.labels == (1, 2) and c.sign_string() == "+"


def test_canonicalize():
    assert canonicalize(Chirotope.from_string(1, "+++")).sign_string() == "+++"
    assert canonicalize(Chirotope.from_string(1, "---")).sign_string() == "+++"
    assert canonicalize(Chirotope.from_string(1, "0-+")).sign_string() == "0+-"


def test_is_uniform():
    assert is_uniform(chirotope_from_configuration(cyclic(2, 5)))
    assert not is_uniform(chirotope_from_configuration(config((1, 0), (0, 1), (1, 0))))
    assert is_uniform(Chirotope.from_string(3, "+"))


def _gp_oracle(c):
    """Recompute every ordered sign from scratch and scan all 3-term relations."""
    base = dict(c.bases())

    def chi(seq):
        if len(set(seq)) < len(seq):
            return 0
        return perm_sign(list(seq)) * base[tuple(sorted(seq))]

    for S in combinations(c.labels, c.rank - 2):
        rest = [l for l in c.labels if l not in S]
        for a, b, x, y in combinations(rest, 4):
            t = [chi(S + (a, b)) * chi(S + (x, y)), -chi(S + (a, x)) * chi(S + (b, y)), chi(S + (a, y)) * chi(S + (b, x))]
            if any(t) and not (1 in t and -1 in t):
                return False
    return True


def test_gp_holds_for_moment_curve():
    assert check_gp_relations(chirotope_from_configuration(cyclic(2, 5)))


def test_gp_detects_flipped_sign():
    c = chirotope_from_configuration(cyclic(2, 5))
    signs = list(c.signs)
    signs[1] = -signs[1]
    bad = Chirotope(3, c.labels, tuple(signs))
    assert _gp_oracle(bad) is False
    assert check_gp_relations(bad) is False


def test_gp_single_basis():
    assert check_gp_relations(Chirotope.from_string(3, "+"))


def test_gp_budget():
    with pytest.raises(BudgetExceededError):
        check_gp_relations(chirotope_from_configuration(cyclic(2, 8)), budget=10)


def test_dual_triangle():
    assert dual(Chirotope.from_string(2, "+++")).sign_string() == "+-+"


def test_dual_cyclic_4_6():
    d = dual(chirotope_from_configuration(cyclic(4, 6)))
    assert d.rank == 1 and d.sign_string() == "+-+-+-"


def test_dual_involution_example():
    c = chirotope_from_configuration(cyclic(2, 6))
    assert dual(dual(c)) == canonicalize(c)


def test_delete_restores_after_extension():
    from neighborly.extension import LexProgram, lex_extend_symbolic

    c = chirotope_from_configuration(cyclic(2, 5))
    ext = lex_extend_symbolic(c, LexProgram.parse("2+,4-,1+"))
    back = delete(ext, 6)
    assert back == c
    assert back.history == ("delete 6",)


def test_delete_cyclic_last():
    c = chirotope_from_configuration(cyclic(2, 5))
    assert delete(c, 5).signs == chirotope_from_configuration(cyclic(2, 4)).signs


def test_delete_guard():
    with pytest.raises(RankDeficiencyError):
        delete(Chirotope.from_string(3, "+"), 1)


def test_delete_keeps_original_labels():
    c = chirotope_from_configuration(cyclic(2, 5))
    assert delete(c, 2).labels == (1, 3, 4, 5)


def test_contract_cone_apex():
    base = [(1, 0, 0), (1, 2, 0), (1, 3, 2), (1, 1, 3), (1, -1, 2)]
    cone = config(*[p + (0,) for p in base], (0, 0, 0, 1))
    c = contract(chirotope_from_configuration(cone), 6)
    assert c.rank == 3
    assert c.signs == chirotope_from_configuration(config(*base)).signs


def test_contract_standard_basis():
    for e in (1, 2, 3):
        c = contract(chirotope_from_configuration(config((1, 0, 0), (0, 1, 0), (0, 0, 1))), e)
        assert c.rank == 2 and c.n == 2 and canonicalize(c).sign_string() == "+"


def test_contract_loop():
    c = chirotope_from_configuration(config((1, 0), (0, 1), (0, 0)))
    with pytest.raises(LoopContractionError):
        contract(c, 3)


def test_minors_commute():
    c = chirotope_from_configuration(cyclic(4, 7))
    assert same_oriented_matroid(delete(contract(c, 2), 5), contract(delete(c, 5), 2))


def test_cocircuits_triangle():
    cs = cocircuits(Chirotope.from_string(2, "+++"))
    assert sorted(sorted(y.zero_set()) for y in cs) == [[1], [1], [2], [2], [3], [3]]
    assert all(len(y.zero_set()) == 1 for y in cs)


def test_cocircuits_rank_one():
    assert len(cocircuits(Chirotope.from_string(1, "+-+-"))) == 2


def test_cocircuits_uniform_zero_count():
    c = chirotope_from_configuration(cyclic(4, 7))
    assert all(len(y.zero_set()) == c.rank - 1 for y in cocircuits(c))


def test_text_round_trip():
    c = chirotope_from_configuration(cyclic(4, 7))
    assert Chirotope.from_text(c.to_text()) == c
    assert c.to_text().endswith("\n")


@pytest.mark.parametrize(
    "text, line",
    [("3\n+\n", 1), ("3 3\n", 2), ("3 3\n+-\n", 2), ("2 3\n+x+\n", 2), ("2 3\n000\n", 2)],
)
def test_text_errors(text, line):
    with pytest.raises(ParseError) as exc:
        Chirotope.from_text(text)
    assert exc.value.line == line


def test_configuration_text_round_trip():
    v = config((1, Fraction(-1, 2)), (3, 0))
    assert VectorConfiguration.from_text(v.to_text()) == v
    assert v.to_text() == "2 2\n1 -1/2\n3 0\n"


@settings(max_examples=100, deadline=None)
@given(configurations(max_n=8, max_r=4, min_r=2))
def test_gp_holds_on_realizable(v):
    assert check_gp_relations(chirotope_from_configuration(v))


@settings(max_examples=60, deadline=None)
@given(configurations(max_n=8, max_r=4))
def test_dual_is_involution(v):
    c = chirotope_from_configuration(v)
    if c.rank == c.n:
        return
    assert dual(dual(c)) == canonicalize(c)


@settings(max_examples=60, deadline=None)
@given(configurations(max_n=8, max_r=4))
def test_dual_matches_gale_transform(v):
    c = chirotope_from_configuration(v)
    if c.rank == c.n:
        return
    g = chirotope_from_configuration(gale_dual_configuration(v))
    assert canonicalize(g) == dual(c)


@settings(max_examples=60, deadline=None)
@given(configurations(max_n=8, max_r=4, min_r=2))
def test_deletion_contraction_duality(v):
    c = chirotope_from_configuration(v)
    if c.n - c.rank < 2:
        return
    for e in c.labels:
        try:
            d = delete(c, e)
        except RankDeficiencyError:
            continue
        assert dual(d) == canonicalize(contract(dual(c), e))


def test_uniform_cocircuit_count(rng):
    for _ in range(10):
        n, r = rng.randint(4, 8), rng.randint(2, 4)
        c = chirotope_from_configuration(random_configuration(rng, n, r))
        assert len(cocircuits(c)) == 2 * comb(n, r - 1)
