"""Shared enumeration and checking helpers for the test suite."""

import itertools

from interviewplan.blockers import analyze_blockers, is_resolved
from interviewplan.interviews import apply_interviews, interview_cost
from interviewplan.model import Instance, Relation, StrictProfile, man, woman
from interviewplan.stability import Stability, is_stable


def all_2x2_markets():
    """Every 2x2 market: each subset of the four pairs as mutual
    acceptability, every class-shaped knowledge state per agent, every
    consistent truth."""
    men = (man(1), man(2))
    women = (woman(1), woman(2))
    all_pairs = [(m, w) for m in men for w in women]
    for mask in range(16):
        accepted = [p for i, p in enumerate(all_pairs) if mask >> i & 1]
        acc = {a: set() for a in men + women}
        for m, w in accepted:
            acc[m].add(w)
            acc[w].add(m)
        agents = list(men + women)
        per_agent_states = []
        for a in agents:
            mine = sorted(acc[a])
            if len(mine) < 2:
                states = [(frozenset(), (tuple(mine),))]
            else:
                c1, c2 = mine
                states = [
                    (frozenset(), ((c1, c2),)),            # cannot compare
                    (frozenset({(c1, c2)}), ((c1, c2),)),  # strict
                    (frozenset({(c2, c1)}), ((c2, c1),)),  # strict, reversed
                ]
            per_agent_states.append(states)
        for combo in itertools.product(*per_agent_states):
            rels = {a: Relation(a, frozenset(acc[a]), combo[i][0])
                    for i, a in enumerate(agents)}
            inst = Instance(2, 2, rels)
            truth_options = []
            for i, a in enumerate(agents):
                edges, orders = combo[i]
                if edges or len(acc[a]) < 2:
                    truth_options.append(orders)
                else:
                    c1, c2 = sorted(acc[a])
                    truth_options.append(((c1, c2), (c2, c1)))
            for ranking in itertools.product(*truth_options):
                truth = StrictProfile(dict(zip(agents, ranking)))
                yield inst, truth


def check_resolution_equivalence(inst, truth, mu):
    """Over every interview subset: the target is super-stable exactly when
    every potential blocker is resolved, and each super-stabilizing subset
    recovers all forced interviews.  Returns the number of subsets tried."""
    report = analyze_blockers(inst, truth, mu)
    mandatory = frozenset(report.pairs) | frozenset(report.mandated_pairs(mu))
    pairs = sorted(inst.acceptable_pairs())
    tried = 0
    for k in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, k):
            refined = apply_interviews(inst, truth, frozenset(chosen))
            super_ok = is_stable(refined, mu, Stability.SUPER)
            resolved = all(is_resolved(refined, b, mu) for b in report.blockers)
            assert super_ok == resolved, (chosen, super_ok, resolved)
            if super_ok:
                _, recovered = interview_cost(inst, refined)
                assert mandatory <= recovered, (chosen, mandatory, recovered)
            tried += 1
    return tried
