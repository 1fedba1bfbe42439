import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simplecryst.group import (BUDGET_EXHAUSTED, REDUCED, Abelianization, GroupPresentation,
                               SameColor, abelianize, exponent_matrix, free_reduce,
                               gagliardi_presentation, smith_normal_form, tietze_simplify)

from _graphs import c4c4, case_iii


def P(s, *rels):
    return GroupPresentation(s, tuple(tuple(r) for r in rels))


def test_words_are_reduced():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert P(2, [1, 2, -2]).relators == ((1,),)
    with pytest.raises(ValueError):
        P(1, [2])


def test_format():
    assert str(P(2, [1, -2, 1])) == "<x1,x2 | x1 x2^-1 x1>"


def test_single_relator_kills_generator():
    Q, status = tietze_simplify(P(1, [1]))
    assert status == REDUCED
    assert Q.num_generators == 0 and Q.relators == ()


def test_commutator_and_generator():
    # killing y leaves x free
    Q, _ = tietze_simplify(P(2, [1, 2, -1, -2], [2]))
    assert Q.num_generators == 1 and Q.relators == ()
    Q, _ = tietze_simplify(P(2, [1, 2, -1, -2], [2], [1, 2]))
    assert Q.num_generators == 0


def test_nontrivial_group_survives():
    Q, _ = tietze_simplify(P(2, [1, 2, -1, -2]))
    assert Q.num_generators == 2
    assert abelianize(Q) == Abelianization(2)


def test_budget():
    Q, status = tietze_simplify(P(2, [1, 2], [2]), budget=0)
    assert status == BUDGET_EXHAUSTED
    assert Q.num_generators == 2


def test_abelianize_examples():
    assert abelianize(P(1, [1, 1])) == Abelianization(0, (2,))
    assert abelianize(P(1)) == Abelianization(1)
    assert abelianize(P(0)).is_trivial
    assert abelianize(P(2, [1, 1, 2, 2, 2, 2], [2] * 6)) == Abelianization(0, (2, 6))


def test_same_color(cp2):
    with pytest.raises(SameColor):
        gagliardi_presentation(cp2, 1, 1)


def test_s4_presentation_is_trivial(s4):
    Pr = gagliardi_presentation(s4, 0, 1)
    assert Pr.num_generators == 0


def test_cp2_residue_simplifies_to_trivial(cp2):
    Pr = gagliardi_presentation(cp2.restrict([0, 1, 2, 3]), 0, 1)
    Q, status = tietze_simplify(Pr, 10_000)
    assert Q.num_generators == 0
    assert abelianize(Pr).is_trivial


def test_case_iii_group():
    ab = {abelianize(gagliardi_presentation(case_iii(), i, j))
          for i, j in itertools.combinations(range(4), 2)}
    assert ab == {Abelianization(1)}


def test_pair_independence(cp2, s2xs2):
    for G in (cp2, s2xs2):
        ab = {abelianize(gagliardi_presentation(G, i, j))
              for i, j in itertools.combinations(range(5), 2)}
        assert ab == {Abelianization(0)}
    ab = {abelianize(gagliardi_presentation(c4c4(), i, j))
          for i, j in itertools.combinations(range(4), 2)}
    assert ab == {Abelianization(0, (2,))}


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


small_ints = st.integers(-6, 6)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m))))
def test_smith_form_exact(A):
    D, U, V = smith_normal_form(A)
    assert _matmul(_matmul(U, A), V) == D
    diag = [D[k][k] for k in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert i == j or x == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x == 0 for x in diag[len(nz):])


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8)


@settings(max_examples=150, deadline=None)
@given(st.lists(words, max_size=4))
def test_tietze_preserves_abelianization(rels):
    Pr = P(3, *rels)
    Q, _ = tietze_simplify(Pr)
    assert abelianize(Q) == abelianize(Pr)


@settings(max_examples=100, deadline=None)
@given(st.lists(words, max_size=4))
def test_abelianize_agrees_with_smith_form(rels):
    Pr = P(3, *rels)
    ab = abelianize(Pr)
    M = exponent_matrix(Pr)
    if not M:
        assert ab == Abelianization(3)
        return
    D, _, _ = smith_normal_form(M)
    diag = [D[k][k] for k in range(min(len(D), 3))]
    assert ab.free_rank == 3 - sum(1 for x in diag if x)
    assert ab.torsion == tuple(x for x in diag if x > 1)
