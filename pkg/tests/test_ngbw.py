# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import pytest

from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    Buchi,
    LassoWord,
    Letter,
    buchi_to_type,
    lasso_member,
    named_automaton,
)
from omegafull.ngbw import (
    APPLIES_TO,
    Collision,
    NoCollision,
    PGCLRanking,
    StandardAcc,
    acc_of,
    build_acc,
    certify_conflict_set,
    check_nk,
    check_seg,
    check_seg_properties,
    collision_extract,
    conflict_case,
    conflict_check,
    conflict_word,
    count_pgcl,
    exponent_triples,
    gen_fb_nk,
    is_gc_segment,
    max_k,
    nonfinal_state,
    pgcl_enumerate,
    pgcl_lower_bound,
    seg_alphabet_size,
    seg_word,
    streett_of,
)
from omegafull.nbw import DirectFailure


def sets(*members):
    return tuple(frozenset(m) for m in members)


@pytest.fixture
def fb32():
    return gen_fb_nk(3, 2)


@pytest.fixture
def seg_words(fb32):
    acc = acc_of(fb32)
    return [seg_word(r, acc) for r in pgcl_enumerate(acc)]


class TestAcceptance:
    def test_build_acc_small(self):
        assert build_acc(3, 2).sets == sets({0}, {1})
        assert build_acc(4, 3).sets == sets({0}, {1}, {2})

    def test_build_acc_repairs(self):
        acc = build_acc(5, 3)
        assert acc.sets == sets({1, 3}, {0, 2}, {1, 2})
        assert acc.is_valid()

    @pytest.mark.parametrize("n, k", [(4, 2), (4, 3), (5, 2), (5, 4), (5, 6)])
    def test_build_acc_is_valid(self, n, k):
        acc = build_acc(n, k)
        assert acc.k == k
        assert acc.violations() == []

    def test_invalid_family(self):
        acc = StandardAcc(4, sets({0}, {0}))
        problems = acc.violations()
        assert any("distinct" in p for p in problems)
        assert not StandardAcc(4, sets({0, 1}, {2})).is_valid()

    @pytest.mark.parametrize("n, k", [(1, 2), (3, 1), (3, 3), (5, 7)])
    def test_check_nk(self, n, k):
        with pytest.raises(ValueError):
            check_nk(n, k)

    def test_max_k(self):
        assert [max_k(n) for n in (3, 4, 5, 6)] == [2, 3, 6, 10]

    def test_gen_fb_nk(self, fb32):
        assert fb32.kind == AcceptanceKind.GENBUCHI
        assert fb32.initial == frozenset({0, 1, 2})
        assert nonfinal_state(3) == 2
        assert all(nonfinal_state(3) not in s for s in fb32.acceptance.sets)


class TestPGCL:
    def test_counts(self):
        assert count_pgcl(build_acc(3, 2)) == 2
        assert count_pgcl(build_acc(4, 2)) == 12
        assert count_pgcl(build_acc(4, 3)) == 48
        assert pgcl_lower_bound(3, 2) == 2
        assert pgcl_lower_bound(4, 3) == 6

    @pytest.mark.parametrize("n, k", [(3, 2), (4, 2), (4, 3), (5, 3)])
    def test_count_meets_lower_bound(self, n, k):
        assert count_pgcl(build_acc(n, k)) >= pgcl_lower_bound(n, k)

    def test_invalid_ranking(self):
        with pytest.raises(ValueError):
            PGCLRanking((1, 1), (0, 0))
        with pytest.raises(ValueError):
            PGCLRanking((1, 2), (0,))
        assert not PGCLRanking((1, 2), (0, 0)).fits(build_acc(3, 2))

    def test_seg_word_letters(self):
        acc = build_acc(3, 2)
        word = seg_word(PGCLRanking((1, 2), (1, 0)), acc)
        assert [a.key for a in word] == [
            "{0>0,1>2}",
            "{0>0,2>1}",
            "{0>2,1>0,1>1}",
            "{0>0,1>1,2>0}",
            "{0>2,1>1}",
            "{1>1,2>0}",
        ]
        with pytest.raises(ValueError):
            seg_word(PGCLRanking((1, 2), (0, 0)), acc)

    def test_seg_alphabet_size(self):
        assert seg_alphabet_size(3, 2) == 8

    def test_check_seg_n3(self, fb32):
        acc = acc_of(fb32)
        for ranking in pgcl_enumerate(acc):
            assert check_seg(fb32, ranking, acc) == []

    def test_seg_properties_n3(self):
        report = check_seg_properties(3, 2)
        assert report.holds and report.checked == 2

    @pytest.mark.slow
    @pytest.mark.parametrize("n, k", [(4, 2), (4, 3)])
    def test_seg_properties_slow(self, n, k):
        assert check_seg_properties(n, k).holds


class TestConflicts:
    def test_gc_segments(self, fb32, seg_words):
        assert all(is_gc_segment(fb32, w) for w in seg_words)
        everything = (Letter.of([(0, 0), (0, 1), (1, 0), (1, 1)]),)
        assert not is_gc_segment(fb32, everything)
        with pytest.raises(ValueError):
            is_gc_segment(fb32, ())

    def test_exponent_triples(self):
        assert len(exponent_triples([1, 2])) == 8
        assert exponent_triples([2, 1, 1])[0] == (1, 1, 1)
        with pytest.raises(ValueError):
            exponent_triples([0, 1])

    def test_conflict_word(self, seg_words):
        first, second = seg_words
        word = conflict_word(first, second, (2, 1, 1))
        assert word.prefix == first + first
        assert word.period == first + second

    def test_conflict_check(self, fb32, seg_words):
        first, second = seg_words
        evidence = conflict_check(fb32, first, second)
        assert evidence.conflicts and len(evidence.accepted) == 8
        assert conflict_check(fb32, second, first)
        with pytest.raises(ValueError):
            conflict_check(fb32, first, first)

    def test_conflict_case(self):
        assert conflict_case(PGCLRanking((1, 2), (1, 0)), PGCLRanking((2, 1), (1, 0))) == "I"
        assert conflict_case(PGCLRanking((1, 2, 3), (1, 0, 0)), PGCLRanking((1, 2, 3), (1, 0, 1))) == "II"
        with pytest.raises(ValueError):
            conflict_case(PGCLRanking((1, 2), (1, 0)), PGCLRanking((1, 2), (1, 0)))

    def test_certify_n3(self, fb32, seg_words):
        certificate = certify_conflict_set(fb32, seg_words)
        assert certificate.bound == 2
        assert certificate.verdict == "grid-checked"
        assert certificate.applies_to == APPLIES_TO
        assert certificate.checked_pairs == 2
        assert certificate.gc_segments == [True, True]

    def test_certify_with_explicit_triples(self, fb32, seg_words):
        certificate = certify_conflict_set(fb32, seg_words, triples=[(1, 2, 2), (2, 1, 1)])
        assert certificate.bound == 2
        assert certificate.exponent_grid == (1, 2)

    def test_certify_rejects_non_segments(self, fb32, seg_words):
        everything = (Letter.of([(0, 0), (0, 1), (1, 0), (1, 1)]),)
        certificate = certify_conflict_set(fb32, [seg_words[0], everything])
        assert certificate.bound is None
        assert certificate.verdict == "rejected"
        assert certificate.applies_to == ()
        assert certificate.non_segments == [1]

    def test_certify_input_errors(self, fb32, seg_words):
        with pytest.raises(ValueError):
            certify_conflict_set(fb32, [])
        with pytest.raises(ValueError):
            certify_conflict_set(fb32, [seg_words[0], seg_words[0]])

    def test_streett_view(self, fb32, seg_words):
        streett = streett_of(fb32)
        assert streett.kind == AcceptanceKind.STREETT
        first, second = seg_words
        for exponents in [(1, 1, 1), (2, 1, 2)]:
            word = conflict_word(first, second, exponents)
            assert lasso_member(streett, word) == lasso_member(fb32, word)
        assert not lasso_member(streett, LassoWord((), first))


class TestCollision:
    def test_collision_on_a_universal_candidate(self, fb32, seg_words):
        first, second = seg_words
        letters = sorted(set(first) | set(second), key=lambda a: a.key)
        candidate = named_automaton(1, {0}, Buchi({0}), [(a, {(0, 0)}) for a in letters])
        outcome = collision_extract(candidate, fb32, first, second)
        assert isinstance(outcome, Collision)
        assert outcome.verified and outcome.verdict == "refuted"
        assert outcome.exponents == (1, 1, 1)
        assert lasso_member(fb32, outcome.word)

    def test_rejecting_candidate(self, fb32, seg_words):
        first, second = seg_words
        letters = sorted(set(first) | set(second), key=lambda a: a.key)
        candidate = named_automaton(1, {0}, Buchi(set()), [(a, {(0, 0)}) for a in letters])
        assert isinstance(collision_extract(candidate, fb32, first, second), DirectFailure)

    def test_needs_buchi_like_acceptance(self, fb32, seg_words):
        first, second = seg_words
        letters = sorted(set(first) | set(second), key=lambda a: a.key)
        candidate = named_automaton(1, {0}, Buchi({0}), [(a, {(0, 0)}) for a in letters])
        with pytest.raises(AcceptanceTypeError):
            collision_extract(buchi_to_type(candidate, AcceptanceKind.PARITY), fb32, first, second)

    def test_no_shared_boundary_state(self):
        x, y = Letter.of([(0, 0)], "x"), Letter.of([(1, 1)], "y")
        candidate = named_automaton(2, {0, 1}, Buchi({0, 1}), [(x, {(0, 0)}), (y, {(1, 1)})])
        outcome = collision_extract(candidate, candidate, (x,), (y,))
        assert isinstance(outcome, NoCollision)
        assert outcome.first_states == frozenset({0})
        assert outcome.second_states == frozenset({1})
        assert outcome.verdict == "no-collision"


@pytest.mark.slow
@pytest.mark.parametrize("n, k", [(4, 2), (4, 3)])
def test_certify_full_size(n, k):
    automaton = gen_fb_nk(n, k)
    acc = acc_of(automaton)
    words = [seg_word(r, acc) for r in pgcl_enumerate(acc)]
    certificate = certify_conflict_set(automaton, words)
    assert certificate.bound == count_pgcl(acc) >= pgcl_lower_bound(n, k)
