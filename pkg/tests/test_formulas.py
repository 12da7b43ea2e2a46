import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defdom.errors import InputError
from defdom.formulas import (E2Formula, clause_satisfied, combine,
                             formula_satisfied, satisfying_mu, solve_e2sat)


def test_formula_validation():
    E2Formula(2, 1, ((1, 2, 3),))
    with pytest.raises(InputError):
        E2Formula(2, 1, ((1, 1, 2),))        # repeated variable
    with pytest.raises(InputError):
        E2Formula(2, 1, ((1, -1, 2),))       # same variable, both signs
    with pytest.raises(InputError):
        E2Formula(2, 1, ((1, 2, 4),))        # variable out of range
    with pytest.raises(InputError):
        E2Formula(2, 1, ((0, 1, 2),))        # zero literal
    with pytest.raises(InputError):
        E2Formula(-1, 1, ())


def test_duplicate_clauses_are_allowed():
    f = E2Formula(2, 1, ((1, 2, 3),) * 7)
    assert f.c == 7


def test_clause_and_formula_evaluation():
    f = E2Formula(1, 2, ((1, 2, 3), (-1, 2, -3)))
    values = combine(f, (False,), (True, False))
    assert values == {1: False, 2: True, 3: False}
    assert clause_satisfied(f.clauses[0], values)
    assert clause_satisfied(f.clauses[1], values)
    assert formula_satisfied(f, values)


def test_satisfying_mu_prefers_all_false():
    f = E2Formula(1, 2, ((-1, 2, 3),))
    # with x1 false the clause is already satisfied, so mu = (False, False)
    assert satisfying_mu(f, (False,)) == (False, False)
    # with x1 true some y must be set
    mu = satisfying_mu(f, (True,))
    assert mu is not None and any(mu)


def test_no_example_single_clause_repeated():
    f = E2Formula(2, 1, ((1, 2, 3),) * 7)
    result = solve_e2sat(f)
    assert result.verdict is False
    assert result.winning_nu is None
    assert set(result.refutations) == set(itertools.product((False, True), repeat=2))
    for nu, mu in result.refutations.items():
        values = combine(f, nu, mu)
        assert formula_satisfied(f, values)


def test_yes_example_forcing_unsat():
    # x1 true turns the four clauses into all sign patterns over (y1, y2)
    f = E2Formula(1, 2, ((-1, 2, 3), (-1, -2, 3), (-1, 2, -3), (-1, -2, -3)))
    result = solve_e2sat(f)
    assert result.verdict is True
    assert result.winning_nu == (True,)
    for mu in itertools.product((False, True), repeat=2):
        assert not formula_satisfied(f, combine(f, (True,), mu))


def test_empty_universal_block():
    # b = 0: the only universal response is the empty one
    f = E2Formula(3, 0, ((-1, -2, -3),))
    result = solve_e2sat(f)
    assert result.verdict is True
    assert result.winning_nu == (True, True, True)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2_000))
def test_verdict_matches_quantifier_semantics(seed):
    import random
    rng = random.Random(seed)
    a, b = rng.randint(1, 2), rng.randint(1, 2)
    if a + b < 3:
        a = 3 - b
    clauses = []
    for _ in range(rng.randint(1, 4)):
        variables = rng.sample(range(1, a + b + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    f = E2Formula(a, b, tuple(clauses))
    result = solve_e2sat(f)
    brute = any(
        all(not formula_satisfied(f, combine(f, nu, mu))
            for mu in itertools.product((False, True), repeat=b))
        for nu in itertools.product((False, True), repeat=a))
    assert result.verdict == brute
    if result.verdict:
        assert satisfying_mu(f, result.winning_nu) is None
    else:
        for nu in itertools.product((False, True), repeat=a):
            assert nu in result.refutations
