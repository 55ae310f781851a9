# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import importlib

import pytest

from omegafull.analysis import L_formula, L_max
from omegafull.automata import (
    AcceptanceKind,
    Automaton,
    AutomatonError,
    Buchi,
    LassoWord,
    Letter,
    lasso_member,
    named_automaton,
)
from omegafull.full import Equivalence, word_equiv
from omegafull.nbw import (
    GAMMA_NAMES,
    ConfusionWitness,
    DirectFailure,
    Gadgets,
    QRanking,
    boundary_states,
    c_relation_letter,
    check_w_word,
    concatenation_property,
    confuse,
    count_q_rankings,
    fb_as_type,
    final_state,
    gamma,
    gamma_alphabet_size,
    gen_b,
    gen_fb,
    hard_word,
    hard_word_gamma,
    identity_main,
    q_rankings,
    random_chains,
    registers,
    substitute_gamma,
    to_final,
    u_ranking_word,
    verify_confusion,
    w_word,
    wfg_properties,
)


def universal_candidate(letters, final: bool = True) -> Automaton:
    """One state looping on every letter of the hard word."""
    letters = sorted(set(letters), key=lambda a: a.key)
    return named_automaton(1, {0}, Buchi({0} if final else set()), [(a, {(0, 0)}) for a in letters], name="universal")


class TestFB:
    def test_gen_fb(self):
        fb = gen_fb(4)
        assert fb.initial == frozenset({0, 1, 2})
        assert fb.acceptance.final == frozenset({final_state(4)}) == frozenset({3})
        with pytest.raises(ValueError):
            gen_fb(1)

    @pytest.mark.parametrize("kind", ["rabin", "streett", "parity", "muller"])
    def test_fb_as_type(self, kind):
        fb = fb_as_type(3, kind)
        assert fb.kind == AcceptanceKind(kind)
        word = LassoWord((), (Letter.of([(0, 2), (2, 0)]),))
        assert lasso_member(fb, word)
        assert not lasso_member(fb, LassoWord((), (identity_main(3),)))

    def test_to_final(self):
        assert to_final({1}, 3).relation == frozenset({(0, 0), (1, 1), (1, 2)})


class TestQRankings:
    def test_lexicographic_order(self):
        assert [r.ranks for r in q_rankings(3, 1)] == [(0, 1), (1, 0), (1, 1)]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_enumeration_matches_formula(self, n):
        for m in range(1, n):
            assert count_q_rankings(n, m) == L_formula(n, m)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [6, 7])
    def test_enumeration_matches_formula_slow(self, n):
        for m in range(1, n):
            assert count_q_rankings(n, m) == L_formula(n, m)

    def test_invalid_rankings(self):
        with pytest.raises(ValueError):
            QRanking(2, (0, 3, 0))
        with pytest.raises(ValueError):
            QRanking(2, (3, 3, 0))
        with pytest.raises(ValueError):
            list(q_rankings(3, 3))

    def test_rank_sets(self):
        f = QRanking(2, (3, 1, 0))
        assert f.rank_set(1) == frozenset({1})
        assert f.attained() == (3, 1, 0)
        assert f.n == 4

    def test_c_relation(self):
        f, g = QRanking(1, (0, 1)), QRanking(1, (1, 0))
        assert c_relation_letter(f, g).relation == frozenset({(1, 0)})

    def test_u_word_length(self):
        assert len(u_ranking_word(QRanking(2, (3, 1, 0)))) == 4
        assert u_ranking_word(QRanking(1, (1, 1))) == ()


class TestWWords:
    def test_single_w_word(self):
        f, g = QRanking(1, (0, 1)), QRanking(1, (1, 0))
        assert check_w_word(gen_fb(3), w_word(f, g), f, g) == []

    def test_w_word_needs_matching_rankings(self):
        with pytest.raises(ValueError):
            w_word(QRanking(1, (0, 1)), QRanking(2, (3, 1)))

    def test_wfg_properties_n3(self):
        report = wfg_properties(3)
        assert report.holds
        assert report.checked == 9

    @pytest.mark.slow
    def test_wfg_properties_n4(self):
        report = wfg_properties(4)
        assert report.holds
        assert report.checked == 18 * 18

    def test_concatenation(self, rng):
        report = concatenation_property(3, random_chains(3, 10, 3, rng))
        assert report.holds
        assert report.checked == 10


class TestHardWord:
    def test_shape(self):
        hard = hard_word(3)
        assert hard.m == 1
        assert len(hard.rankings) == 3
        assert hard.boundaries() == (0, 5, 8)
        assert len(hard.period) == 11

    def test_ranking_count_mismatch(self, monkeypatch):
        fb_module = importlib.import_module("omegafull.nbw.fb")
        monkeypatch.setattr(fb_module, "q_rankings", lambda n, m: iter(()))
        with pytest.raises(AutomatonError):
            fb_module.hard_word(3)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_rejected_by_fb(self, n):
        hard = hard_word(n)
        assert len(hard.rankings) == L_max(n)[1]
        assert not lasso_member(gen_fb(n), hard.lasso())

    @pytest.mark.parametrize("n", [2, 3])
    def test_gamma_translation_rejected_by_b(self, n):
        assert not lasso_member(gen_b(n), LassoWord((), hard_word_gamma(n)))

    @pytest.mark.slow
    def test_gamma_translation_rejected_by_b_n4(self):
        assert not lasso_member(gen_b(4), LassoWord((), hard_word_gamma(4)))


class TestGamma:
    def test_letters(self):
        letters = gamma(4)
        assert tuple(letters) == GAMMA_NAMES
        assert gamma_alphabet_size(4) == 7
        assert letters["rotate"].relation == frozenset({(1, 0), (2, 1), (0, 2), (3, 3)})
        assert letters["clearF"].relation == frozenset({(0, 0), (1, 1), (2, 2)})
        assert [a.key for a in gen_b(4).alphabet()] == list(GAMMA_NAMES)

    def test_degenerate_n2(self):
        letters = gamma(2)
        assert letters["swap01"].relation == letters["copy01"].relation == frozenset({(0, 0)})

    def test_gadget_registers(self):
        b, gadgets = gen_b(4), Gadgets(4)
        assert registers(b, (), 4) == (frozenset({0}), frozenset({1}), frozenset({2}))
        assert registers(b, gadgets.rotate(1), 4) == (frozenset({1}), frozenset({2}), frozenset({0}))
        assert registers(b, gadgets.rotate(3), 4) == registers(b, (), 4)
        assert registers(b, gadgets.swap(0, 2), 4) == (frozenset({2}), frozenset({1}), frozenset({0}))
        assert registers(b, gadgets.copy(0, 2), 4) == (frozenset({0, 2}), frozenset({1}), frozenset({2}))
        assert registers(b, gadgets.copy(2, 0), 4) == (frozenset({0}), frozenset({1}), frozenset({0, 2}))
        assert registers(b, gadgets.copy(1, 0), 4) == (frozenset({0}), frozenset({0, 1}), frozenset({2}))
        assert registers(b, gadgets.clear(1), 4) == (frozenset({0}), frozenset(), frozenset({2}))

    def test_block(self):
        b, gadgets = gen_b(4), Gadgets(4)
        relation = frozenset({(0, 2), (1, 2), (2, 0)})
        assert registers(b, gadgets.block(relation), 4) == (frozenset({2}), frozenset(), frozenset({0, 1}))
        with pytest.raises(ValueError):
            gadgets.block(frozenset({(0, 0), (0, 1), (1, 1)}))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_substitutes_are_strictly_equivalent(self, n):
        fb = gen_fb(n)
        for letter in set(hard_word(n).period):
            assert word_equiv(fb, (letter,), substitute_gamma(letter, n), Equivalence.STRICT), letter

    def test_unsupported_letter(self):
        with pytest.raises(ValueError):
            substitute_gamma(Letter.of([(0, 2), (2, 1)]), 3)


class TestConfuse:
    def test_universal_candidate_is_confused(self):
        hard = hard_word(3)
        candidate = universal_candidate(hard.period)
        outcome = confuse(candidate, 3)
        assert isinstance(outcome, ConfusionWitness)
        assert outcome.verified and outcome.verdict == "refuted"
        assert (outcome.first, outcome.second, outcome.state) == (0, 1, 0)
        assert outcome.cut == (11, 27)
        assert outcome.u == hard.period
        assert lasso_member(gen_fb(3), outcome.word)
        assert verify_confusion(candidate, 3, outcome)

    def test_boundary_states(self):
        hard = hard_word(3)
        candidate = universal_candidate(hard.period)
        outcome = confuse(candidate, 3)
        occupied = boundary_states(outcome.source_run, hard)
        assert occupied == {0: frozenset({0}), 1: frozenset({0}), 2: frozenset({0})}

    def test_rejecting_candidate_fails_directly(self):
        candidate = universal_candidate(hard_word(3).period, final=False)
        outcome = confuse(candidate, 3)
        assert isinstance(outcome, DirectFailure)
        assert outcome.verdict == "refuted"
        assert not lasso_member(gen_fb(3), outcome.word)

    def test_candidate_too_large(self):
        with pytest.raises(ValueError):
            confuse(gen_fb(3), 3)

    def test_random_candidates(self, random_buchi):
        fb = gen_fb(3)
        letters = sorted(set(hard_word(3).period), key=lambda a: a.key)
        for i in range(24):
            candidate = random_buchi(1 + i % 2, letters, density=0.7)
            outcome = confuse(candidate, 3)
            if isinstance(outcome, ConfusionWitness):
                assert outcome.verified
                assert lasso_member(fb, outcome.word)
                assert lasso_member(candidate, outcome.word)
            else:
                assert isinstance(outcome, DirectFailure)
                assert not lasso_member(candidate, outcome.word)

    def test_candidates_accepting_the_hard_word(self, seeded_buchi):
        fb = gen_fb(3)
        hard = hard_word(3)
        witnesses = 0
        for i in range(24):
            candidate = seeded_buchi(1 + i % 2, hard.period)
            assert lasso_member(candidate, hard.lasso())
            outcome = confuse(candidate, 3)
            assert isinstance(outcome, ConfusionWitness)
            assert outcome.verified
            assert lasso_member(fb, outcome.word) and lasso_member(candidate, outcome.word)
            assert outcome.run.occ == outcome.source_run.occ
            assert outcome.run.inf == outcome.source_run.inf
            witnesses += 1
        assert witnesses >= 20
