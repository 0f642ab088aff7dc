import random

import pytest

from interviewplan.errors import (
    NotARefinement,
    NotInterviewCompatible,
    TruthInconsistent,
    UnacceptablePair,
)
from interviewplan.formats import format_instance
from interviewplan.generators import generate
from interviewplan.interviews import (
    apply_interviews,
    interview_compatibility,
    interview_cost,
)
from interviewplan.model import (
    Instance,
    Relation,
    StrictProfile,
    interview_set,
    man,
    validate_instance,
    woman,
)

W = [None, woman(1), woman(2), woman(3)]
M = [None, man(1), man(2), man(3)]


def incomparable_1x3():
    rels = {
        man(1): Relation(man(1), frozenset(W[1:]), frozenset()),
        W[1]: Relation(W[1], frozenset({man(1)}), frozenset()),
        W[2]: Relation(W[2], frozenset({man(1)}), frozenset()),
        W[3]: Relation(W[3], frozenset({man(1)}), frozenset()),
    }
    return Instance(1, 3, rels)


class TestApply:
    def test_empty_set_is_identity(self, fig1):
        assert apply_interviews(fig1.instance, fig1.truth, frozenset()) == fig1.instance

    def test_single_interview_per_agent_changes_nothing(self, fig1):
        T = interview_set([(man(1), woman(1))])
        assert apply_interviews(fig1.instance, fig1.truth, T) == fig1.instance

    def test_two_interviews_order_one_agent(self, fig1):
        T = interview_set([(man(2), woman(1)), (man(2), woman(2))])
        refined = apply_interviews(fig1.instance, fig1.truth, T)
        # m2 met both women and ranks them per the truth; each woman met only m2
        assert refined.relations[man(2)].edges == frozenset({(woman(2), woman(1))})
        for w in (woman(1), woman(2)):
            assert refined.relations[w].edges == frozenset()

    def test_all_interviews_reveal_full_truth(self, tt2):
        every = interview_set((m, w) for m in (man(1), man(2))
                              for w in (woman(1), woman(2)))
        refined = apply_interviews(tt2.instance, tt2.truth, every)
        assert refined == tt2.truth.as_instance()

    def test_inconsistent_truth_rejected(self, fig1, tt2):
        bad = StrictProfile({**tt2.truth.ranking,
                             man(1): (woman(2), woman(1))})
        refined = apply_interviews(fig1.instance, fig1.truth,
                                   interview_set([(man(1), woman(1)), (man(1), woman(2))]))
        with pytest.raises(TruthInconsistent):
            apply_interviews(refined, bad, frozenset())

    def test_unacceptable_pair_rejected(self, tri):
        with pytest.raises(UnacceptablePair):
            apply_interviews(tri.instance, tri.truth,
                             interview_set([(man(1), woman(3))]))

    def test_result_not_flagged_base(self, fig1):
        T = interview_set([(man(2), woman(1)), (man(2), woman(2))])
        assert apply_interviews(fig1.instance, fig1.truth, T).base is False


class TestCompatibility:
    def test_identity_compatible_with_empty_endpoints(self, fig1):
        wit = interview_compatibility(fig1.instance, fig1.instance)
        assert wit.compatible
        assert all(not s for s in wit.endpoints.values())

    def test_learning_about_unmet_candidates_impossible(self):
        # one man learns he likes w1 best but still cannot compare w2 and w3:
        # unreachable, since meeting w2 and w3 would have ranked them too
        base = incomparable_1x3()
        rels = dict(base.relations)
        rels[man(1)] = Relation(man(1), frozenset(W[1:]),
                                frozenset({(W[1], W[2]), (W[1], W[3])}))
        refined = Instance(1, 3, rels, base=False)
        wit = interview_compatibility(base, refined)
        assert not wit.compatible
        agent, pair = wit.offender
        assert agent == man(1) and set(pair) == {W[2], W[3]}
        with pytest.raises(NotInterviewCompatible):
            interview_cost(base, refined)

    def test_apply_then_recognize(self, tt2):
        T = interview_set([(man(1), woman(1)), (man(1), woman(2))])
        refined = apply_interviews(tt2.instance, tt2.truth, T)
        wit = interview_compatibility(tt2.instance, refined)
        assert wit.compatible
        assert wit.endpoints[man(1)] == frozenset({woman(1), woman(2)})

    def test_non_refinement_raises(self, fig1):
        T = interview_set([(man(2), woman(1)), (man(2), woman(2))])
        refined = apply_interviews(fig1.instance, fig1.truth, T)
        with pytest.raises(NotARefinement):
            interview_compatibility(refined, fig1.instance)


class TestCost:
    def test_identity_costs_nothing(self, fig1):
        cost, recovered = interview_cost(fig1.instance, fig1.instance)
        assert cost == 0 and recovered == frozenset()

    def test_single_learner_charges_both_meetings(self, tt2):
        T = interview_set([(man(1), woman(1)), (man(1), woman(2))])
        refined = apply_interviews(tt2.instance, tt2.truth, T)
        cost, recovered = interview_cost(tt2.instance, refined)
        assert cost == 2 and recovered == T

    def test_three_interview_state(self, fig1):
        T = interview_set([(man(2), woman(1)), (man(2), woman(2)), (man(1), woman(2))])
        refined = apply_interviews(fig1.instance, fig1.truth, T)
        cost, recovered = interview_cost(fig1.instance, refined)
        assert cost == 3 and recovered == T

    def test_isolated_meetings_recover_nothing(self, fig1):
        # each agent meets at most one candidate: no comparisons form, so
        # the recovered minimal set is empty
        T = interview_set([(man(1), woman(1)), (man(2), woman(2))])
        refined = apply_interviews(fig1.instance, fig1.truth, T)
        assert refined == fig1.instance
        cost, recovered = interview_cost(fig1.instance, refined)
        assert cost == 0 and recovered == frozenset()


class TestRoundTrip:
    def test_random_roundtrips(self):
        rng = random.Random(20240817)
        for seed in range(300):
            inst, truth = generate("random_smti", n=4, seed=seed,
                                   tie_cap=3, density=0.85)
            pairs = inst.acceptable_pairs()
            T = interview_set(rng.sample(pairs, rng.randint(0, len(pairs))))
            refined = apply_interviews(inst, truth, T)
            wit = interview_compatibility(inst, refined)
            assert wit.compatible
            cost, recovered = interview_cost(inst, refined)
            assert cost <= len(T)
            assert recovered <= T
            again = apply_interviews(inst, truth, recovered)
            assert again == refined
            assert format_instance(again) == format_instance(refined)

    def test_edge_growth_is_monotone_in_interviews(self):
        rng = random.Random(7)
        for seed in range(50):
            inst, truth = generate("random_smti", n=3, seed=seed, tie_cap=3)
            pairs = list(inst.acceptable_pairs())
            rng.shuffle(pairs)
            cut = rng.randint(0, len(pairs))
            small = apply_interviews(inst, truth, interview_set(pairs[:cut]))
            large = apply_interviews(inst, truth, interview_set(pairs))
            for a in inst.agents():
                assert small.relations[a].edges <= large.relations[a].edges

    def test_tie_shaped_states_stay_closure_free(self):
        # for class-shaped knowledge states, applying interviews never
        # creates an implied-but-unlearned comparison: the literal edge set
        # already equals its transitive closure
        for seed in range(40):
            inst, truth = generate("random_smti", n=4, seed=seed,
                                   tie_cap=4, density=0.9)
            rng = random.Random(seed)
            pairs = inst.acceptable_pairs()
            T = interview_set(rng.sample(pairs, rng.randint(0, len(pairs))))
            refined = apply_interviews(inst, truth, T)
            rebased = Instance(refined.n_men, refined.n_women,
                               refined.relations, base=True)
            assert validate_instance(rebased).ok
