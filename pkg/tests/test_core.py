# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import numpy as np
import pytest

from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    Automaton,
    AutomatonError,
    Buchi,
    Final,
    LassoWord,
    Letter,
    UnknownLetterError,
    buchi_to_type,
    canonical_key,
    complement_det,
    complete_with_sink,
    compose,
    degeneralize,
    delta_graph,
    determinize_nfw,
    enumerate_lassos,
    identity_profile,
    inf_sets,
    intersect_empty,
    is_run_of,
    lasso_member,
    lasso_run,
    named_automaton,
    parse_key,
    restrict,
    run_search,
    transition_profile,
    unroll_lasso,
    word_member,
)
from omegafull.full import full_automaton, gen_fa, kill_letter, shift_letter
from omegafull.ngbw import gen_fb_nk


class TestLetters:
    def test_key_is_sorted_relation(self):
        assert canonical_key({(2, 2), (0, 1)}) == "{0>1,2>2}"
        assert Letter.of([(2, 2), (0, 1)]).key == "{0>1,2>2}"

    def test_parse_key_inverts_canonical_key(self):
        relation = frozenset({(0, 1), (2, 2), (1, 0)})
        assert parse_key(canonical_key(relation)) == relation
        assert parse_key("{}") == frozenset()

    @pytest.mark.parametrize("key", ["0>1", "{0-1}", "{a>b}"])
    def test_parse_key_rejects_garbage(self, key):
        with pytest.raises(AutomatonError):
            parse_key(key)

    def test_letters_compare_by_key(self):
        assert Letter.of([(0, 1)]) == Letter(frozenset({(0, 1)}))
        assert Letter.of([(0, 1)], "x") != Letter.of([(0, 1)])
        assert len({Letter.of([(0, 1)]), Letter.of([(0, 1)])}) == 1

    def test_negative_state_rejected(self):
        with pytest.raises(AutomatonError):
            Letter.of([(-1, 0)])


class TestAutomaton:
    def test_empty_initial_set(self):
        with pytest.raises(AutomatonError):
            Automaton(n=2, initial=frozenset(), acceptance=Buchi({1}))

    def test_acceptance_out_of_range(self):
        with pytest.raises(AutomatonError):
            Automaton(n=2, initial={0}, acceptance=Buchi({2}))

    def test_duplicate_letter(self, letters):
        a, _ = letters
        with pytest.raises(AutomatonError):
            named_automaton(2, {0}, Buchi({1}), [(a, a.relation), (a, a.relation)])

    def test_letter_leaving_states(self):
        x = Letter.of([(0, 3)], "x")
        with pytest.raises(AutomatonError):
            named_automaton(2, {0}, Buchi({1}), [(x, x.relation)])

    def test_implicit_full_reads_relations(self):
        automaton = gen_fa(3)
        letter = Letter.of([(0, 2), (1, 1)])
        assert automaton.relation(letter) == letter.relation
        assert automaton.has_letter(letter)
        assert not automaton.has_letter(Letter.of([(0, 3)]))
        with pytest.raises(AutomatonError):
            automaton.relation(Letter.of([(0, 3)]))

    def test_unknown_letter(self, inf_a):
        with pytest.raises(UnknownLetterError):
            inf_a.relation("c")
        assert inf_a.resolve("a").relation == frozenset({(0, 1), (1, 1)})

    def test_restrict(self):
        restricted = restrict(gen_fa(3), [shift_letter(3), kill_letter(3)], name="A_3")
        assert [a.key for a in restricted.alphabet()] == ["a", "b"]
        assert restricted.relation("b") == frozenset({(1, 1), (2, 2)})
        assert restricted.is_deterministic() is False

    def test_deterministic_and_complete(self, inf_a, fin_a):
        assert inf_a.is_deterministic() and inf_a.is_complete()
        assert not fin_a.is_deterministic()


class TestMembership:
    def test_buchi_lassos(self, inf_a, letters):
        a, b = letters
        assert lasso_member(inf_a, LassoWord((), (a,)))
        assert not lasso_member(inf_a, LassoWord((), (b,)))
        assert lasso_member(inf_a, LassoWord((b,), (a, b)))
        assert not lasso_member(inf_a, LassoWord((a, a), (b,)))

    def test_accepting_run_is_a_run(self, inf_a, letters):
        a, b = letters
        word = LassoWord((b, b), (a, b, b))
        run = lasso_run(inf_a, word)
        assert run is not None
        assert is_run_of(inf_a, run, word)
        assert run.inf & inf_a.acceptance.final
        assert lasso_run(inf_a, LassoWord((a,), (b,))) is None

    def test_run_must_cover_whole_periods(self, inf_a, letters):
        a, b = letters
        word = LassoWord((), (a, b))
        run = lasso_run(inf_a, word)
        assert len(run.loop) % 2 == 0
        assert not is_run_of(inf_a, type(run)(run.stem, run.loop[:1]), word)

    def test_nondeterministic(self, fin_a, letters):
        a, b = letters
        assert lasso_member(fin_a, LassoWord((a, a), (b,)))
        assert not lasso_member(fin_a, LassoWord((), (a, b)))

    def test_inf_sets(self, inf_a, letters):
        a, b = letters
        assert inf_sets(inf_a, LassoWord((), (a, b))) == frozenset({frozenset({0, 1})})

    def test_unroll_keeps_the_word(self, inf_a, letters):
        a, b = letters
        word = LassoWord((b,), (a, b))
        unrolled = unroll_lasso(word, 3)
        assert len(unrolled.prefix) == 7
        assert all(word.letter_at(t) == unrolled.letter_at(t) for t in range(20))
        with pytest.raises(ValueError):
            unroll_lasso(word, -1)

    def test_empty_period(self, letters):
        with pytest.raises(ValueError):
            LassoWord(letters, ())

    def test_finite_words(self):
        fa = gen_fa(2)
        assert word_member(fa, (Letter.of([(0, 1)]), Letter.of([(1, 1)])))
        assert not word_member(fa, (Letter.of([(0, 1)]), Letter.of([(0, 0)])))
        assert word_member(fa, ())

    @pytest.mark.parametrize("n", [127, 128, 256])
    def test_many_predecessors(self, n):
        merge = Letter.of([(p, 0) for p in range(n)])
        everything = frozenset(range(n))
        assert word_member(full_automaton(n, everything, Final({0})), (merge,))
        assert lasso_member(full_automaton(n, everything, Buchi({0})), LassoWord((merge,), (merge,)))

    def test_finite_membership_needs_final_acceptance(self, inf_a):
        with pytest.raises(AcceptanceTypeError):
            word_member(inf_a, ())
        with pytest.raises(AcceptanceTypeError):
            lasso_member(gen_fa(2), LassoWord((), (Letter.of([(0, 0)]),)))

    def test_enumerate_lassos(self, letters):
        lassos = list(enumerate_lassos(letters, 2))
        assert len(lassos) == 10
        assert len(set(lassos)) == 10


class TestConversions:
    @pytest.mark.parametrize(
        "kind",
        [
            AcceptanceKind.GENBUCHI,
            AcceptanceKind.RABIN,
            AcceptanceKind.STREETT,
            AcceptanceKind.MULLER,
            AcceptanceKind.PARITY,
        ],
    )
    def test_buchi_to_type_keeps_language(self, inf_a, fin_a, letters, kind):
        for automaton in (inf_a, fin_a):
            converted = buchi_to_type(automaton, kind)
            assert converted.kind == kind
            for word in enumerate_lassos(letters, 3):
                assert lasso_member(converted, word) == lasso_member(automaton, word)

    def test_complement_det(self, inf_a, letters):
        rabin = buchi_to_type(inf_a, AcceptanceKind.RABIN)
        streett = complement_det(rabin)
        assert streett.kind == AcceptanceKind.STREETT
        for word in enumerate_lassos(letters, 4):
            assert lasso_member(streett, word) != lasso_member(inf_a, word)

    def test_complement_det_needs_dual(self, inf_a, fin_a):
        with pytest.raises(AcceptanceTypeError):
            complement_det(inf_a)
        with pytest.raises(AutomatonError):
            complement_det(buchi_to_type(fin_a, AcceptanceKind.PARITY))

    def test_complete_with_sink(self, letters):
        a, b = letters
        partial = named_automaton(1, {0}, Buchi({0}), [(a, {(0, 0)}), (b, set())])
        complete = complete_with_sink(partial)
        assert complete.n == 2
        assert complete.is_complete()
        for word in enumerate_lassos(letters, 3):
            assert lasso_member(complete, word) == lasso_member(partial, word)

    def test_degeneralize(self, rng, random_letter):
        target = gen_fb_nk(3, 2)
        buchi = degeneralize(target)
        assert buchi.kind == AcceptanceKind.BUCHI
        assert buchi.n == 6
        for _ in range(30):
            prefix = tuple(random_letter(3) for _ in range(int(rng.integers(0, 3))))
            period = tuple(random_letter(3, 0.5) for _ in range(int(rng.integers(1, 4))))
            word = LassoWord(prefix, period)
            assert lasso_member(buchi, word) == lasso_member(target, word)

    def test_determinize_reaches_every_subset(self):
        for n in (2, 3, 4):
            automaton = restrict(gen_fa(n), [shift_letter(n), kill_letter(n)])
            dfa, reached = determinize_nfw(automaton)
            assert len(reached) == 2**n
            assert dfa.is_deterministic()

    @pytest.mark.slow
    def test_determinize_up_to_ten_states(self):
        for n in range(5, 11):
            automaton = restrict(gen_fa(n), [shift_letter(n), kill_letter(n)])
            assert len(determinize_nfw(automaton)[1]) == 2**n

    def test_intersect_empty(self, inf_a, fin_a):
        assert intersect_empty(inf_a, fin_a)
        assert not intersect_empty(inf_a, inf_a)
        assert not intersect_empty(fin_a, fin_a)

    @pytest.mark.parametrize("count", [255, 256, 300])
    def test_intersect_empty_with_parallel_letters(self, count):
        loop = named_automaton(1, {0}, Buchi({0}), [(Letter.of([(0, 0)], f"x{i}"), {(0, 0)}) for i in range(count)])
        assert not intersect_empty(loop, loop)

    def test_intersect_empty_needs_buchi(self, inf_a):
        with pytest.raises(AcceptanceTypeError):
            intersect_empty(buchi_to_type(inf_a, AcceptanceKind.PARITY), inf_a)


class TestProfiles:
    def test_composition_matches_concatenation(self, random_letter):
        automaton = gen_fa(3).with_acceptance(Final({2}))
        tracked = [{2}]
        for _ in range(10):
            u = tuple(random_letter(3) for _ in range(3))
            v = tuple(random_letter(3) for _ in range(2))
            whole = transition_profile(automaton, u + v, tracked)
            assert whole == compose(transition_profile(automaton, u, tracked), transition_profile(automaton, v, tracked))

    def test_identity_is_neutral(self, random_letter):
        automaton = gen_fa(3)
        word = tuple(random_letter(3) for _ in range(4))
        profile = transition_profile(automaton, word, [{0}])
        assert identity_profile(3, [{0}]) @ profile == profile

    def test_through(self):
        automaton = gen_fa(3)
        word = (Letter.of([(0, 1)]), Letter.of([(1, 2)]))
        profile = transition_profile(automaton, word, [{1}])
        assert profile.reach[0, 2]
        assert profile.through(0, 2)
        assert not profile.reach[0, 1]

    def test_through_all(self):
        automaton = gen_fa(3)
        tracked = [{1}, {2}]
        tour = (Letter.of([(0, 1)]), Letter.of([(1, 2)]), Letter.of([(2, 0)]))
        assert transition_profile(automaton, tour, tracked).through_all(0, 0)
        short = transition_profile(automaton, (Letter.of([(0, 1)]), Letter.of([(1, 0)])), tracked)
        assert not short.through_all(0, 0)
        assert short.through_all(0, 0, [0])

    def test_avoiding(self):
        automaton = gen_fa(3)
        word = (Letter.of([(0, 1), (0, 0)]), Letter.of([(1, 2), (0, 2)]))
        profile = transition_profile(automaton, word, avoid={1})
        assert profile.avoiding[0, 2]
        profile = transition_profile(automaton, word[:1] + (Letter.of([(1, 2)]),), avoid={1})
        assert profile.reach[0, 2] and not profile.avoiding[0, 2]


class TestRuns:
    def test_run_search_counts(self):
        automaton = gen_fa(3)
        fork = Letter.of([(0, 1), (0, 2)])
        join = Letter.of([(1, 0), (2, 0)])
        result = run_search(automaton, 0, 0, (fork, join))
        assert result.count == 2 and str(result) == "many"
        result = run_search(automaton, 0, 0, (fork, join), must_avoid={2})
        assert result.unique and result.witness == (0, 1, 0)
        assert run_search(automaton, 0, 0, (fork, join), must_visit=[{1}], must_avoid={1}).count == 0

    def test_delta_graph(self):
        word = (Letter.of([(0, 1)]), Letter.of([(1, 2)]))
        graph = delta_graph(gen_fa(3), word)
        assert graph.length == 2
        assert graph.paths_exist(0, 2)
        assert not graph.paths_exist(1, 2)
        assert len(list(graph.edge_list())) == 2
        assert np.array_equal(graph.edges[0], Letter.of([(0, 1)]).matrix(3))
