import pytest
from hypothesis import given
from hypothesis import strategies as st

import policyverif as pv

from helpers import CABIN_HOSTS

host_names = st.text(min_size=1, max_size=8)
host_sets = st.frozensets(host_names, max_size=6)


def test_make_policy_minimal():
    p = pv.make_policy({"A", "B"}, {("A", "B")})
    assert len(p.hosts) == 2
    assert len(p.flows) == 1


def test_make_policy_chain():
    p = pv.make_policy({"v1", "v2", "v3"}, {("v1", "v2"), ("v2", "v3")})
    assert p.flows == {("v1", "v2"), ("v2", "v3")}


def test_make_policy_rejects_dangling_endpoint():
    with pytest.raises(pv.DanglingEndpoint) as exc:
        pv.make_policy({"A"}, {("A", "B")})
    assert exc.value.flow == ("A", "B")


def test_make_policy_rejects_empty_name():
    with pytest.raises(ValueError):
        pv.make_policy({""}, set())


def test_allow_all_two_hosts():
    p = pv.allow_all({"A", "B"})
    assert p.flows == {("A", "A"), ("A", "B"), ("B", "A"), ("B", "B")}


def test_allow_all_empty_and_singleton():
    assert pv.allow_all(set()) == pv.Policy(frozenset(), frozenset())
    assert pv.allow_all({"A"}).flows == {("A", "A")}


def test_deny_all():
    p = pv.deny_all({"A", "B"})
    assert p.hosts == {"A", "B"}
    assert p.flows == frozenset()
    assert pv.deny_all(set()) == pv.Policy(frozenset(), frozenset())


def test_deny_all_cabin_hosts():
    p = pv.deny_all(CABIN_HOSTS)
    assert len(p.hosts) == 10
    assert len(p.flows) == 0


@given(host_sets)
def test_allow_all_cardinality_and_deny_subset(hosts):
    full = pv.allow_all(hosts)
    assert len(full.flows) == len(hosts) ** 2
    assert pv.deny_all(hosts).flows <= full.flows


@given(host_sets)
def test_flows_within_host_square(hosts):
    full = pv.allow_all(hosts)
    assert all(s in full.hosts and r in full.hosts for s, r in full.flows)


def test_total_map_configured_and_default():
    np = pv.total_map({"db1": pv.Clearance.confidential}, pv.Clearance.unclassified)
    assert np.lookup("db1") is pv.Clearance.confidential
    assert np.lookup("web") is pv.Clearance.unclassified
    assert np.lookup("not-even-in-any-policy") is pv.Clearance.unclassified


def test_total_map_empty_config_is_constant():
    np = pv.total_map({}, "bottom")
    assert np.lookup("anything") == "bottom"


def test_total_map_cabin_blp_defaults_wifi():
    from helpers import cabin_blp_trust

    inst = cabin_blp_trust()
    np = inst.mapping()
    assert np.lookup("Wifi") == pv.BlpTrustAttr(pv.Clearance.unclassified, False)
    assert np.lookup("CC") == pv.BlpTrustAttr(pv.Clearance.secret, False)


@given(host_names, st.sampled_from(list(pv.Clearance)))
def test_total_map_is_total(host, default):
    np = pv.total_map({}, default)
    assert np.lookup(host) is default


def test_policy_is_immutable():
    p = pv.make_policy({"A"}, set())
    with pytest.raises(AttributeError):
        p.hosts = frozenset()


def test_sorted_accessors_are_lexicographic():
    p = pv.make_policy({"b", "a", "c"}, {("c", "a"), ("a", "b"), ("a", "a")})
    assert p.sorted_hosts() == ["a", "b", "c"]
    assert p.sorted_flows() == [("a", "a"), ("a", "b"), ("c", "a")]
