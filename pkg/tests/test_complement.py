# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import pytest

from omegafull.analysis import L_max
from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    LassoWord,
    Letter,
    buchi_to_type,
    enumerate_lassos,
    intersect_empty,
    lasso_member,
)
from omegafull.complement import (
    CRankingSlice,
    RankingState,
    SubsetState,
    complement_rank,
    count_tight,
    extract_slice,
    is_level_ranking,
    is_tight,
    level_rankings,
    max_rank,
    periodic_unrolling,
    tightness,
    validate_c_ranking,
)
from omegafull.nbw import gen_b, gen_fb


class TestRankings:
    def test_max_rank(self):
        assert max_rank(2) == 2
        assert max_rank(4) == 6

    @pytest.mark.parametrize(
        "ranking, tight",
        [
            ((None, None), True),
            ((1, 0), True),
            ((3, 1, None), True),
            ((3, 0, None), False),
            ((2, 0), False),
        ],
    )
    def test_is_tight(self, ranking, tight):
        assert is_tight(ranking) == tight

    def test_tightness(self):
        assert tightness((3, 1, 0)) == 2
        assert tightness((None,)) == 0

    def test_level_rankings_respect_final_states(self):
        rankings = list(level_rankings(2, {0, 1}, {1}))
        assert len(rankings) == 6
        assert all(r[1] % 2 == 0 for r in rankings)
        assert all(is_level_ranking(r, {1}, 2) for r in rankings)

    def test_level_rankings_with_bounds(self):
        rankings = list(level_rankings(2, {0}, {1}, bounds={0: 1}))
        assert rankings == [(0, None), (1, None)]

    def test_is_level_ranking(self):
        assert not is_level_ranking((1, 1), {1}, 2)
        assert not is_level_ranking((3, 0), {1}, 2)
        assert not is_level_ranking((0,), {1}, 2)

    def test_count_tight(self):
        assert count_tight(2) == {1: 2}
        counts = count_tight(3)
        assert set(counts) == {1, 2}
        assert all(v > 0 for v in counts.values())
        with pytest.raises(ValueError):
            count_tight(1)


class TestRankComplement:
    @pytest.mark.parametrize("tight", [False, True])
    def test_complement_of_inf_a(self, inf_a, letters, tight):
        complement = complement_rank(inf_a, tight=tight)
        assert complement.kind == AcceptanceKind.BUCHI
        for word in enumerate_lassos(letters, 4):
            assert lasso_member(complement, word) != lasso_member(inf_a, word)
        assert intersect_empty(inf_a, complement)

    def test_complement_of_nondeterministic(self, fin_a, letters):
        complement = complement_rank(fin_a)
        for word in enumerate_lassos(letters, 4):
            assert lasso_member(complement, word) != lasso_member(fin_a, word)

    def test_annotations(self, inf_a):
        complement = complement_rank(inf_a)
        assert complement.annotations[0] == SubsetState(frozenset({0}))
        assert any(isinstance(s, RankingState) for s in complement.annotations)
        for q in complement.acceptance.final:
            state = complement.annotations[q]
            assert isinstance(state, RankingState) and not state.obligation

    def test_tight_is_not_larger(self, fin_a):
        assert complement_rank(fin_a, tight=True).n <= complement_rank(fin_a).n

    def test_needs_buchi(self, inf_a):
        with pytest.raises(AcceptanceTypeError):
            complement_rank(buchi_to_type(inf_a, AcceptanceKind.PARITY))

    def test_intensional_complement_of_fb2(self):
        complement = complement_rank(gen_fb(2))
        assert complement.symbols is None
        loop = Letter.of([(0, 0)])
        swap = Letter.of([(0, 1), (1, 0)])
        assert lasso_member(complement, LassoWord((), (loop,)))
        assert not lasso_member(complement, LassoWord((), (swap,)))
        assert lasso_member(complement, LassoWord((swap,), (loop,)))
        assert not lasso_member(complement, LassoWord((swap,), (Letter.of([(1, 1)]),)))

    @pytest.mark.parametrize("n", [2, 3])
    def test_complement_of_b_is_large(self, n):
        assert complement_rank(gen_b(n)).n >= L_max(n)[1]


def _check_complement(automaton, letters, bound, tight):
    complement = complement_rank(automaton, tight=tight)
    assert intersect_empty(automaton, complement)
    for word in enumerate_lassos(letters, bound):
        assert lasso_member(complement, word) != lasso_member(automaton, word), word


class TestRandomComplements:
    @pytest.mark.parametrize("tight", [False, True])
    def test_small_random_automata(self, random_buchi, rng, letters, tight):
        for _ in range(10):
            automaton = random_buchi(int(rng.integers(1, 4)), letters)
            _check_complement(automaton, letters, 4, tight)

    @pytest.mark.slow
    @pytest.mark.parametrize("tight", [False, True])
    def test_random_automata(self, random_buchi, rng, letters, tight):
        for _ in range(100):
            automaton = random_buchi(int(rng.integers(1, 5)), letters)
            _check_complement(automaton, letters, 6, tight)

    @pytest.mark.slow
    @pytest.mark.parametrize("tight", [False, True])
    def test_random_automata_three_letters(self, random_buchi, rng, letters, tight):
        alphabet = letters + (Letter.of([(0, 0)], "c"),)
        for _ in range(100):
            automaton = random_buchi(int(rng.integers(1, 4)), alphabet)
            _check_complement(automaton, alphabet, 5, tight)


class TestSlices:
    def test_extract_and_validate(self, inf_a, letters):
        a, b = letters
        complement = complement_rank(inf_a)
        word = LassoWord((a,), (b,))
        found = extract_slice(inf_a, complement, word)
        assert found is not None
        unrolled, ranking_slice = found
        assert len(ranking_slice.levels) == len(unrolled.prefix) + len(unrolled.period) + 1
        assert validate_c_ranking(inf_a, unrolled, ranking_slice)

    def test_no_slice_for_accepted_words(self, inf_a, letters):
        a, b = letters
        complement = complement_rank(inf_a)
        assert extract_slice(inf_a, complement, LassoWord((), (a, b))) is None

    def test_violations_are_reported(self, inf_a, letters):
        _, b = letters
        word = LassoWord((), (b,))
        verdict = validate_c_ranking(inf_a, word, CRankingSlice(((1, 0), (1, None))))
        assert not verdict.valid
        assert any(v.startswith("(i)") for v in verdict.violations)
        assert any(v.startswith("period") for v in verdict.violations)

    def test_even_cycle_is_reported(self, inf_a, letters):
        _, b = letters
        word = LassoWord((), (b,))
        verdict = validate_c_ranking(inf_a, word, CRankingSlice(((0, None), (0, None))))
        assert [v.split(":")[0] for v in verdict.violations] == ["oddness"]
        assert validate_c_ranking(inf_a, word, CRankingSlice(((1, None), (1, None))))

    def test_rank_increase_is_reported(self, inf_a, letters):
        a, _ = letters
        word = LassoWord((a,), (a,))
        verdict = validate_c_ranking(inf_a, word, CRankingSlice(((1, None), (None, 0), (None, 2))))
        assert any(v.startswith("(iii)") for v in verdict.violations)

    def test_periodic_unrolling(self, fin_a, letters):
        a, b = letters
        word = LassoWord((), (b,))
        unrolled = periodic_unrolling(fin_a, word)
        assert all(word.letter_at(t) == unrolled.letter_at(t) for t in range(10))
        assert len(unrolled.prefix) == 1
        assert unrolled.period == (b,)
