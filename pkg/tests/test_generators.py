import random

import pytest

from setlink.core import SetFamily, to_mask
from setlink.errors import CapacityExceeded, UnknownFixture
from setlink.functions import LinkageFunction, SetFunction, WeightedGraph
from setlink.generators import (
    FIXTURE_NAMES,
    complete_graph,
    connected_subgraph_family,
    diamond_graph,
    enumerate_families,
    enumerate_monotone_linkages,
    enumerate_set_functions,
    fixture,
    random_monotone_linkage,
)
from setlink.properties import has_chain_property, is_accessible, is_monotone_linkage

S = to_mask


def sets(*groups):
    return sorted(S(g) for g in groups)


class TestFixtures:
    def test_acc_not_chain(self):
        assert list(fixture("acc_not_chain").members) == sets([], [1], [2], [2, 3], [1, 2, 3])

    def test_chain_not_acc(self):
        assert list(fixture("chain_not_acc").members) == sets([1], [3], [1, 2], [2, 3], [1, 2, 3])

    def test_fig2a(self):
        want = sets([], [1], [2], [3], [1, 2], [2, 4], [3, 4], [1, 2, 3], [1, 2, 3, 4])
        assert list(fixture("fig2a").members) == want

    def test_fig2b(self):
        want = sets([], [1], [4], [1, 3], [3, 4], [1, 2, 3], [2, 3, 4], [1, 2, 3, 4])
        assert list(fixture("fig2b").members) == want

    def test_pi_neq_piF(self):
        pi = fixture("pi_neq_piF")
        assert pi(2, 0b11) == 2
        assert [pi(1, 0b01), pi(1, 0b11), pi(2, 0b10)] == [1, 1, 1]

    def test_bool2_nonqc(self):
        F = fixture("bool2_nonqc")
        assert F.values == {0b01: 1, 0b10: 1, 0b11: 0}

    def test_kinds(self):
        assert isinstance(fixture("diamond_graph"), WeightedGraph)
        assert isinstance(fixture("bool2_nonqc"), SetFunction)
        assert isinstance(fixture("pi_neq_piF"), LinkageFunction)
        assert len(FIXTURE_NAMES) == 8

    def test_unknown(self):
        with pytest.raises(UnknownFixture):
            fixture("nope")


class TestConnectedSubgraphs:
    def test_diamond(self):
        fam = connected_subgraph_family(diamond_graph())
        want = sets(
            [], [1], [2], [3], [4], [1, 2], [2, 3], [3, 4], [1, 4],
            [1, 2, 3], [2, 3, 4], [1, 3, 4], [1, 2, 4], [1, 2, 3, 4],
        )
        assert len(fam) == 14 and list(fam.members) == want

    def test_edgeless(self):
        fam = connected_subgraph_family(WeightedGraph.build(2, []))
        assert list(fam.members) == sets([], [1], [2])

    def test_complete(self):
        assert connected_subgraph_family(complete_graph(3)) == SetFamily.powerset(3)


class TestEnumerateFamilies:
    def test_n1_accessible(self):
        got = list(enumerate_families(1, ["accessible"]))
        assert [f.members for f in got] == [(0,), (0, 1)]

    def test_n2_count(self):
        assert sum(1 for _ in enumerate_families(2)) == 16

    def test_n3_filters_hold(self):
        got = list(enumerate_families(3, ["accessible", "chain"]))
        assert got
        assert all(is_accessible(f) and has_chain_property(f) for f in got)
        assert len(set(got)) == len(got)

    def test_shards_partition(self):
        whole = list(enumerate_families(3, ["accessible"]))
        parts = [f for i in range(3) for f in enumerate_families(3, ["accessible"], shard=(i, 3))]
        assert sorted(whole, key=lambda f: f.members) == sorted(parts, key=lambda f: f.members)

    def test_capacity(self):
        with pytest.raises(CapacityExceeded):
            next(enumerate_families(5))

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("SETLINK_MAX_N", "5")
        assert next(enumerate_families(5)).members == ()


class TestEnumerateSetFunctions:
    def test_count(self):
        fam = SetFamily.from_sets(3, [[], [1], [2], [1, 2], [1, 2, 3]])
        assert sum(1 for _ in enumerate_set_functions(fam, (0, 1))) == 16

    def test_indicator_is_quasiconcave(self):
        fam = fixture("acc_not_chain")
        got = list(enumerate_set_functions(fam, (0, 1), quasiconcave_only=True))
        assert SetFunction.indicator(fam, S([1])) in got
        assert SetFunction.constant(fam, 0) in got and SetFunction.constant(fam, 1) in got

    def test_budget(self):
        with pytest.raises(CapacityExceeded):
            next(enumerate_set_functions(SetFamily.powerset(4), range(5)))


class TestEnumerateLinkages:
    def test_n1(self):
        assert sum(1 for _ in enumerate_monotone_linkages(1, (1, 2))) == 2

    def test_n2_matches_filtered_product(self):
        import itertools

        keys = [(1, 0b01), (1, 0b11), (2, 0b10), (2, 0b11)]
        brute = []
        for combo in itertools.product((1, 2), repeat=4):
            pi = LinkageFunction.from_table(2, dict(zip(keys, combo)))
            if is_monotone_linkage(pi):
                brute.append(pi)
        got = list(enumerate_monotone_linkages(2, (1, 2)))
        assert len(got) == len(brute) == 9
        assert all(a.equals(b) for a, b in zip(got, brute))

    def test_constants_present(self):
        got = list(enumerate_monotone_linkages(2, (1, 2)))
        for c in (1, 2):
            assert any(pi.equals(LinkageFunction.constant(2, c)) for pi in got)

    def test_all_monotone_at_n3(self):
        assert all(is_monotone_linkage(pi) for pi in enumerate_monotone_linkages(3, (1, 2)))

    def test_capacity(self):
        with pytest.raises(CapacityExceeded):
            next(enumerate_monotone_linkages(4, (1, 2)))

    def test_random_is_monotone_and_seeded(self):
        a = random_monotone_linkage(5, range(4), random.Random(2))
        b = random_monotone_linkage(5, range(4), random.Random(2))
        assert is_monotone_linkage(a) and a.equals(b)
