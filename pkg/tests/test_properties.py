import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from setlink.core import GroundSet, SetFamily, complement_family, elements_of, to_mask
from setlink.errors import DomainMismatch, EmptyFamily, InternalError
from setlink.functions import LinkageFunction, SetFunction
from setlink.generators import fixture
from setlink.properties import (
    Verdict,
    analyze,
    has_chain_property,
    has_heritage,
    is_accessible,
    is_closure_space,
    is_convex_geometry,
    is_monotone_linkage,
    is_quasiconcave,
    is_up_accessible,
)
from strategies import families

S = to_mask
POWER3 = SetFamily.powerset(3)


def fs(mask):
    return frozenset(elements_of(mask))


class TestVerdict:
    def test_true_verdict_has_no_witness(self):
        with pytest.raises(InternalError):
            Verdict("p", True, {"X": 1})

    def test_false_verdict_needs_witness(self):
        with pytest.raises(InternalError):
            Verdict("p", False)

    def test_json_rendering(self):
        v = Verdict("heritage", False, {"X": S([1, 3]), "Y": 0b1111, "element": 1})
        assert v.to_json(GroundSet(4)) == {
            "property": "heritage",
            "holds": False,
            "witness": {"X": [1, 3], "Y": [1, 2, 3, 4], "element": 1},
        }
        assert v.describe(GroundSet(4)) == "heritage: fails (X={1,3}, Y={1,2,3,4}, element=1)"

    def test_bool_passes_through(self):
        v = Verdict("thm1", False, {"chain": True, "note": "x"})
        assert v.to_json(GroundSet(2))["witness"] == {"chain": True, "note": "x"}


class TestAccessible:
    def test_acc_not_chain(self):
        assert is_accessible(fixture("acc_not_chain"))

    def test_chain_not_acc(self):
        v = is_accessible(fixture("chain_not_acc"))
        assert not v and v.witness == {"X": S([1])}

    def test_powerset(self):
        assert is_accessible(POWER3)

    def test_empty_family_refused(self):
        with pytest.raises(EmptyFamily):
            is_accessible(SetFamily(GroundSet(2), []))

    @given(families())
    def test_matches_definition(self, family):
        if not family.members:
            return
        assert is_accessible(family).holds == naive.accessible(naive.as_sets(family))

    @given(families())
    def test_accessible_contains_empty(self, family):
        if family.members and is_accessible(family):
            assert 0 in family


class TestUpAccessible:
    def test_fig2b(self):
        assert is_up_accessible(fixture("fig2b"))

    def test_powerset(self):
        assert is_up_accessible(POWER3)

    def test_gap(self):
        v = is_up_accessible(SetFamily.from_sets(3, [[], [1], [1, 2, 3]]))
        assert not v and v.witness == {"X": S([1])}

    @given(families())
    def test_dual_of_accessible(self, family):
        if not family.members:
            return
        assert is_up_accessible(family).holds == is_accessible(complement_family(family)).holds


class TestChain:
    def test_acc_not_chain(self):
        v = has_chain_property(fixture("acc_not_chain"))
        assert not v and v.witness == {"X": S([1]), "Y": S([1, 2, 3])}

    def test_chain_not_acc(self):
        assert has_chain_property(fixture("chain_not_acc"))

    def test_fig2(self):
        assert has_chain_property(fixture("fig2b"))
        assert not has_chain_property(fixture("fig2a"))

    @settings(max_examples=200)
    @given(families())
    def test_matches_definition(self, family):
        if not family.members:
            return
        assert has_chain_property(family).holds == naive.chain(naive.as_sets(family))

    @given(families())
    def test_complement_invariant(self, family):
        if not family.members:
            return
        assert has_chain_property(family).holds == has_chain_property(complement_family(family)).holds

    @given(families(need_empty=True))
    def test_chain_with_empty_is_accessible(self, family):
        if has_chain_property(family):
            assert is_accessible(family)


class TestHeritage:
    def test_fig2a(self):
        assert has_heritage(fixture("fig2a"))

    def test_fig2b(self):
        v = has_heritage(fixture("fig2b"))
        assert not v and v.witness == {"X": S([1, 3]), "Y": 0b1111, "element": 1}

    def test_diamond(self):
        v = has_heritage(fixture("diamond_connected"))
        assert not v and v.witness == {"X": S([1, 2, 3]), "Y": 0b1111, "element": 2}

    def test_powerset(self):
        assert has_heritage(POWER3)

    @settings(max_examples=200)
    @given(families())
    def test_matches_definition(self, family):
        if not family.members:
            return
        assert has_heritage(family).holds == naive.heritage(naive.as_sets(family))


class TestClosureSpace:
    def test_fig2a(self):
        v = is_closure_space(fixture("fig2a"))
        assert not v and v.witness == {"X": S([2, 4]), "Y": S([3, 4])}

    def test_fig2b(self):
        v = is_closure_space(fixture("fig2b"))
        assert not v and v.witness == {"X": S([1, 3]), "Y": S([3, 4])}

    def test_powerset(self):
        assert is_closure_space(POWER3)

    def test_missing_top(self):
        v = is_closure_space(SetFamily.from_sets(3, [[], [1]]))
        assert v.witness == {"missing": 0b111}

    @given(families())
    def test_matches_definition(self, family):
        want = naive.closure_space(naive.as_sets(family), family.ground.elements())
        assert is_closure_space(family).holds == want


class TestConvexGeometry:
    def test_nested_chain(self):
        assert is_convex_geometry(SetFamily.from_sets(3, [[], [1], [1, 2], [1, 2, 3]]))

    def test_fig2(self):
        assert not is_convex_geometry(fixture("fig2a"))
        assert not is_convex_geometry(fixture("fig2b"))

    def test_powerset(self):
        assert is_convex_geometry(POWER3)

    @settings(max_examples=300)
    @given(families(need_empty=True))
    def test_routes_agree(self, family):
        # the checker raises InternalError itself if the two routes disagree
        is_convex_geometry(family)


class TestMonotone:
    def test_degree(self):
        from setlink.generators import diamond_graph

        assert is_monotone_linkage(LinkageFunction.degree(diamond_graph()))

    def test_violation(self):
        pi = LinkageFunction.from_table(2, {(1, 0b01): 5, (1, 0b11): 3}, default=1)
        v = is_monotone_linkage(pi)
        assert not v and v.witness == {"x": 1, "X": S([1]), "y": 2}

    def test_pi_neq_piF(self):
        assert is_monotone_linkage(fixture("pi_neq_piF"))


class TestQuasiConcave:
    def test_bool2_nonqc(self):
        F = fixture("bool2_nonqc")
        v = is_quasiconcave(F, F.family)
        assert not v and v.witness == {"X": S([1]), "Y": S([2]), "Z": S([1, 2])}

    def test_constant(self):
        fam = fixture("fig2b")
        assert is_quasiconcave(SetFunction.constant(fam, 7), fam)

    def test_indicator_on_acc_not_chain(self):
        fam = fixture("acc_not_chain")
        assert is_quasiconcave(SetFunction.indicator(fam, S([1])), fam)

    def test_missing_value(self):
        F = fixture("bool2_nonqc")
        with pytest.raises(DomainMismatch):
            is_quasiconcave(F, SetFamily.powerset(3))

    @settings(max_examples=300)
    @given(families(max_n=3), st.data())
    def test_matches_definition(self, family, data):
        pos = family.nonempty
        if not pos:
            return
        vals = data.draw(st.lists(st.integers(0, 3), min_size=len(pos), max_size=len(pos)))
        F = SetFunction(family, dict(zip(pos, vals)))
        want = naive.quasiconcave({fs(X): v for X, v in zip(pos, vals)}, naive.as_sets(family))
        assert is_quasiconcave(F, family).holds == want


class TestAnalyze:
    def test_fig2a_report(self):
        rep = analyze(fixture("fig2a")).to_json()
        assert rep["heritage"]["holds"] is True
        assert rep["chain"]["holds"] is False
        assert rep["closure_space"]["witness"] == {"X": [2, 4], "Y": [3, 4]}

    def test_diamond_report(self):
        rep = analyze(fixture("diamond_connected"))
        assert rep.accessible and rep.chain and not rep.heritage

    def test_powerset_all_true(self):
        assert all(analyze(POWER3).verdicts())
