import itertools
import random
from fractions import Fraction

import pytest

from collabshare.collab import (
    CollaborationPlan,
    CrossoverSet,
    build_collaboration,
    choose_modulus,
    conflict_probability,
    construct_first,
    construct_followup,
    distribute,
    filler_positions,
    subsets_identical,
    validate_plan,
)
from collabshare.errors import (
    ConstructionError,
    ModulusMismatchError,
    ParameterError,
    SameThresholdError,
)
from collabshare.field import PrimeModulus, is_prime
from collabshare.poly import Point, Polynomial, evaluate, top_coefficient
from collabshare.scheme import SchemeParams, make_rng, reconstruct, secrecy_oracle

from plans import random_plan

Z7 = PrimeModulus(7)
CROSS = CrossoverSet((Point(1, 6), Point(2, 1)), "scheme-1")


def ex1_plan(u=2):
    return CollaborationPlan.build([(3, 5, 1), (4, 6, 3)], u=u)


def ex1_result():
    return build_collaboration(ex1_plan(), make_rng(0), first_coefficients=[3, 2],
                               fillers={"scheme-2": [3]})


def test_choose_modulus():
    assert choose_modulus([1, 3], [5, 6]).p == 7
    assert choose_modulus([0], [1]).p == 2
    bound = 8 + 1
    assert choose_modulus([8], [5]).p == next(q for q in itertools.count(bound) if is_prime(q)) == 11
    with pytest.raises(ParameterError):
        choose_modulus([], [])


def test_choose_modulus_is_strict_in_secret():
    # p = secret would reduce the secret to 0
    assert choose_modulus([7], [2]).p == 11


def test_validate_example_1():
    assert validate_plan(ex1_plan()) == []


def test_validate_same_threshold_rejected():
    plan = CollaborationPlan.build([(3, 5, 1), (3, 5, 3)], u=3)
    with pytest.raises(SameThresholdError):
        validate_plan(plan)


def test_validate_u_equals_t1_warns():
    warnings = validate_plan(ex1_plan(u=3))
    assert [w.code for w in warnings] == ["u-equals-t1"]


def test_validate_followup_needs_free_secret():
    plan = CollaborationPlan.build([(2, 5, 1), (2, 5, 1), (4, 6, 3)], u=2)
    with pytest.raises(ParameterError, match="u < t"):
        validate_plan(plan)


@pytest.mark.parametrize(
    "plan",
    [
        CollaborationPlan.build([(3, 5, 1)], u=1),
        CollaborationPlan.build([(3, 5, 1), (4, 6, 3)], u=4),
        CollaborationPlan.build([(3, 5, 1), (4, 6, 3)], u=2, crossover_x=[1, 6]),
        CollaborationPlan.build([(3, 5, 1), (4, 6, 3)], u=2, crossover_x=[1, 1]),
        CollaborationPlan.build([(3, 5, 1), (4, 6, 3)], u=2, crossover_x=[1]),
        CollaborationPlan(
            (SchemeParams(4, 6, 3, Z7, "a"), SchemeParams(3, 5, 1, Z7, "b")), 2, Z7
        ),
    ],
)
def test_validate_hard_errors(plan):
    with pytest.raises(ParameterError):
        validate_plan(plan)


def test_validate_modulus_mismatch():
    plan = CollaborationPlan(
        (SchemeParams(3, 5, 1, Z7), SchemeParams(4, 6, 3, PrimeModulus(11))), 2, Z7
    )
    with pytest.raises(ModulusMismatchError):
        validate_plan(plan)


def test_plan_build_sorts_and_labels():
    plan = CollaborationPlan.build([(4, 6, 3), (3, 5, 1)], u=2)
    assert [(s.t, s.label) for s in plan.schemes] == [(3, "scheme-2"), (4, "scheme-1")]
    assert plan.crossover_x == (1, 2)
    plan = CollaborationPlan((SchemeParams(3, 5, 1, Z7), SchemeParams(4, 6, 3, Z7)), 2, Z7)
    assert [s.label for s in plan.schemes] == ["scheme-1", "scheme-2"]


def test_construct_first_pinned():
    f, cross = construct_first(SchemeParams(3, 5, 1, Z7), [1, 2], make_rng(0), [3, 2])
    assert f.coeffs == (1, 3, 2)
    assert cross.points == (Point(1, 6), Point(2, 1))


def test_construct_first_no_crossover():
    f, cross = construct_first(SchemeParams(3, 5, 1, Z7), [], make_rng(0))
    assert cross.points == ()
    assert top_coefficient(f) != 0


def test_construct_first_seeded_consistent():
    f, cross = construct_first(SchemeParams(4, 10, 5, PrimeModulus(11)), [2, 5, 7], make_rng(9))
    assert all(evaluate(f, pt.x) == pt.y for pt in cross.points)
    with pytest.raises(ParameterError):
        construct_first(SchemeParams(3, 5, 1, Z7), [6], make_rng(0))


def test_followup_example_1():
    f, retries = construct_followup(SchemeParams(4, 6, 3, Z7), CROSS, [], make_rng(0), filler=[3])
    assert f.coeffs == (3, 5, 6, 6)
    assert retries == 0


def test_followup_table_1_zero_top_retries():
    f, retries = construct_followup(SchemeParams(4, 6, 3, Z7), CROSS, [], make_rng(0), filler=[2])
    assert retries >= 1
    assert top_coefficient(f) != 0
    assert f.coeffs[0] == 3
    assert evaluate(f, 1) == 6 and evaluate(f, 2) == 1


def test_followup_example_2():
    f, retries = construct_followup(SchemeParams(3, 5, 3, Z7), CROSS, [], make_rng(0))
    assert f.coeffs == (3, 0, 3)
    assert retries == 0


def test_followup_conflict_is_redrawn():
    prior = Polynomial.of([1, 3, 2, 4], 7)
    cross = CrossoverSet((Point(1, evaluate(prior, 1)), Point(2, evaluate(prior, 2))))
    filler = [evaluate(prior, 3)]
    f, retries = construct_followup(SchemeParams(4, 6, 1, Z7), cross, [prior], make_rng(1), filler)
    assert retries >= 1
    assert f != prior


def test_followup_forced_conflict_fails():
    prior = Polynomial.of([1, 3, 2], 7)
    with pytest.raises(ConstructionError, match="identical"):
        construct_followup(SchemeParams(3, 5, 1, Z7), CROSS, [prior], make_rng(0))


def test_followup_forced_zero_top_fails():
    # (0,1),(1,2),(2,3) lie on the line 1 + x
    cross = CrossoverSet((Point(1, 2), Point(2, 3)))
    with pytest.raises(ConstructionError, match="top coefficient"):
        construct_followup(SchemeParams(3, 5, 1, Z7), cross, [], make_rng(0))


class Constant:
    def __init__(self, v):
        self.v = v

    def randrange(self, stop):
        return self.v


def test_followup_budget_exhausted():
    with pytest.raises(ConstructionError, match="64"):
        construct_followup(SchemeParams(4, 6, 3, Z7), CROSS, [], Constant(2))


def test_followup_rejects_u_ge_t():
    with pytest.raises(ParameterError, match="u < t"):
        construct_followup(SchemeParams(2, 5, 3, Z7), CROSS, [], make_rng(0))


def test_filler_positions():
    assert filler_positions([1, 2], 1) == [3]
    assert filler_positions([2, 4], 3) == [1, 3, 5]
    assert filler_positions([], 0) == []


def test_build_example_1():
    result = ex1_result()
    assert [f.coeffs for f in result.polynomials] == [(1, 3, 2), (3, 5, 6, 6)]
    assert result.retry_counts == (0, 0)
    ledger = result.ledger
    common = {(e.x, e.y) for e in ledger.values() if e.common}
    assert common == {(1, 6), (2, 1)}
    assert all(e.schemes == ("scheme-1", "scheme-2") for e in ledger.values() if e.common)
    local1 = {(e.x, e.y) for e in ledger.values() if e.schemes == ("scheme-1",)}
    local2 = {(e.x, e.y) for e in ledger.values() if e.schemes == ("scheme-2",)}
    assert local1 == {(3, 0), (4, 3), (5, 3)}
    assert local2 == {(3, 3), (4, 6), (5, 4), (6, 5)}


def test_single_share_sufficiency_example_1():
    result = ex1_result()
    for params in result.plan.schemes:
        shares = result.shares_for(params.label)
        assert len(shares) == params.n
        for sub in itertools.combinations(shares, params.t):
            assert reconstruct(params, list(sub)) == params.secret


def test_build_three_schemes():
    plan = CollaborationPlan.build([(3, 5, 1), (3, 5, 4), (4, 6, 2)], u=2)
    result = build_collaboration(plan, make_rng(0))
    for x in (1, 2):
        assert len({evaluate(f, x) for f in result.polynomials}) == 1
    assert len({f.coeffs for f in result.polynomials}) == 3


def test_build_independent_when_u_zero():
    plan = CollaborationPlan.build([(2, 4, 1), (3, 5, 2)], u=0, p=11)
    result = build_collaboration(plan, make_rng(1))
    assert not any(e.common for e in result.ledger.values())
    assert sum(1 for e in result.ledger.values()) == 9


def test_distribute_custom_crossover_positions():
    plan = CollaborationPlan.build([(3, 5, 1), (4, 6, 3)], u=2, crossover_x=[2, 4])
    result = build_collaboration(plan, make_rng(3))
    local1 = sorted(e.x for e in result.ledger.values() if e.schemes == ("scheme-1",))
    assert local1 == [1, 3, 5]


def test_distribute_rejects_disagreeing_curve():
    plan = ex1_plan()
    bad = Polynomial.of([3, 1, 1, 1], 7)
    with pytest.raises(ParameterError):
        distribute(plan, [Polynomial.of([1, 3, 2], 7), bad], CROSS)


def test_distribute_by_position_not_value():
    # f_2(4) = 6 equals f_1(1) = 6, but share 4 is still scheme-2's own
    result = ex1_result()
    assert result.ledger["scheme-2@4"].y == 6
    assert result.ledger["scheme-2@4"].schemes == ("scheme-2",)


def test_conflict_probability():
    assert conflict_probability(7, 4, 2) == Fraction(1, 7)
    assert conflict_probability(7, 3, 2) == 1
    assert conflict_probability(101, 6, 2) == Fraction(1, 101**3)
    with pytest.raises(ParameterError):
        conflict_probability(7, 2, 2)


def test_subsets_identical():
    assert subsets_identical([(3, 0), (4, 3)], [Point(4, 3), Point(3, 0)])
    assert not subsets_identical([(3, 0)], [(3, 3)])
    assert not subsets_identical([], [])


def test_seeded_build_reproducible():
    rng = random.Random(11)
    for _ in range(50):
        plan = random_plan(rng)
        seed = rng.randrange(2**32)
        a = build_collaboration(plan, make_rng(seed))
        b = build_collaboration(plan, make_rng(seed))
        assert a == b


def test_random_collaborations_invariants():
    rng = random.Random(99)
    for _ in range(200):
        plan = random_plan(rng)
        result = build_collaboration(plan, make_rng(rng.randrange(2**32)))
        coeffs = [f.coeffs for f in result.polynomials]
        assert len(set(coeffs)) == len(coeffs)
        for params, f in zip(plan.schemes, result.polynomials):
            assert f.coeffs[0] == params.secret
            assert len(f.coeffs) == params.t
            assert top_coefficient(f) != 0
            for pt in result.crossover.points:
                assert evaluate(f, pt.x) == pt.y
        for params in plan.schemes:
            shares = result.shares_for(params.label)
            assert len(shares) == params.n


def test_t_equals_u_plus_one_never_returns_bad_curve():
    m = PrimeModulus(7)
    ok = failed = 0
    for seed in range(200):
        plan = CollaborationPlan(
            (SchemeParams(2, 5, 1, m), SchemeParams(3, 5, seed % 7, m)), 2, m
        )
        try:
            result = build_collaboration(plan, make_rng(seed))
        except ConstructionError:
            failed += 1
            continue
        ok += 1
        assert top_coefficient(result.polynomials[1]) != 0
    assert ok and failed


def test_crossover_shares_hide_both_secrets():
    result = ex1_result()
    common = [s for s in result.shares_for("scheme-1") if s.x in (1, 2)]
    for params in result.plan.schemes:
        counts = secrecy_oracle(params, common)
        assert len(set(counts)) == 1
