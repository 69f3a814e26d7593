"""Hypothesis strategies for small elections."""

from hypothesis import strategies as st

from controlapprox.election import Approval, Election, Ranking, Rule, Voter

NAMES = ("p", "a", "b", "c", "d", "e")


@st.composite
def candidate_lists(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    return NAMES[:n]


@st.composite
def voters(draw, rule, candidates, weights=(1, 2, 3)):
    w = draw(st.sampled_from(weights))
    if Rule(rule) is Rule.APPROVAL:
        approved = draw(st.frozensets(st.sampled_from(candidates)))
        return Voter(Approval(approved, frozenset(candidates)), w)
    return Voter(Ranking(tuple(draw(st.permutations(candidates)))), w)


@st.composite
def elections(draw, rule, min_candidates=1, max_candidates=5, max_voters=6, weights=(1, 2, 3)):
    C = draw(candidate_lists(min_candidates, max_candidates))
    vs = draw(st.lists(voters(rule, C, weights), max_size=max_voters))
    return Election(C, tuple(vs))
