"""Shared builders for the test suite: random corpora, independent oracles,
and the cabin-network fixture."""

from __future__ import annotations

import itertools
import random

import policyverif as pv


def random_policy(rng: random.Random, max_hosts=5, max_edges=8, prefix="h"):
    n = rng.randint(1, max_hosts)
    hosts = [f"{prefix}{i}" for i in range(n)]
    pairs = [(a, b) for a in hosts for b in hosts]
    rng.shuffle(pairs)
    k = rng.randint(0, min(max_edges, len(pairs)))
    return pv.make_policy(hosts, pairs[:k])


def exhaustive_assignments(hosts, universe):
    """Every total mapping from the hosts into the attribute universe."""
    hosts = sorted(hosts)
    for combo in itertools.product(universe, repeat=len(hosts)):
        yield dict(zip(hosts, combo))


# Small per-template attribute universes for exhaustive-assignment corpora.
# Chosen so satisfied and violated cases both occur, and (for blp_trust,
# domain_hierarchy, security_gateway) every branch of the predicate fires.
CORPUS = {
    "blp_basic": dict(
        template=pv.blp_basic,
        attrs=[pv.Clearance.unclassified, pv.Clearance.secret],
        max_hosts=5,
    ),
    "blp_trust": dict(
        template=pv.blp_trust,
        attrs=[
            pv.BlpTrustAttr(pv.Clearance.secret, False),
            pv.BlpTrustAttr(pv.Clearance.unclassified, False),
            pv.BlpTrustAttr(pv.Clearance.unclassified, True),
        ],
        max_hosts=4,
    ),
    "domain_hierarchy": dict(
        template=pv.domain_hierarchy,
        attrs=[
            pv.DomAttr(pv.UNASSIGNED, 0),
            pv.DomAttr(pv.domain_name("a.b"), 0),
            pv.DomAttr(pv.domain_name("b"), 1),
        ],
        # the unassigned bottom has no file literal; hosts get it by omission
        file_attrs=[pv.DomAttr(pv.domain_name("a.b"), 0), pv.DomAttr(pv.domain_name("b"), 1)],
        max_hosts=4,
    ),
    "security_gateway": dict(
        template=pv.security_gateway,
        attrs=[pv.SgwRole.sgw, pv.SgwRole.memb, pv.SgwRole.default],
        max_hosts=4,
    ),
}


def always_false_template():
    """A deliberately broken template: monotone, but false even on the
    flow-less policy, so violations are never repairable."""
    return pv.Template(
        "always_false",
        pv.Strategy.ACS,
        None,
        lambda g, mapping: False,
    )


def assert_def3_conjuncts(inst, policy, flow_set):
    """The three defining properties of one offending flow set."""
    assert flow_set <= policy.flows
    assert not pv.eval_instance(inst, policy)
    remainder = policy.without_flows(flow_set)
    assert pv.eval_instance(inst, remainder)
    for flow in flow_set:
        again = pv.Policy(policy.hosts, remainder.flows | {flow})
        assert not pv.eval_instance(inst, again)


def satisfied_variant(inst, policy):
    """A sub-policy of ``policy`` on which the instance holds."""
    removal = {f for fs in pv.offending_flows(inst, policy) for f in fs}
    return policy.without_flows(removal)


# ---------------------------------------------------------------------------
# cabin network fixture

CABIN_HOSTS = ["CC", "C1", "C2", "Wifi", "IFEsrv", "IFE1", "IFE2", "P1", "P2", "SAT"]


def cabin_domain_hierarchy():
    level = pv.domain_name
    return pv.InvariantInstance(
        pv.domain_hierarchy(),
        {
            "CC": pv.DomAttr(level("crew.aircraft"), 1),
            "C1": pv.DomAttr(level("crew.aircraft"), 0),
            "C2": pv.DomAttr(level("crew.aircraft"), 0),
            "IFEsrv": pv.DomAttr(level("entertain.aircraft"), 0),
            "IFE1": pv.DomAttr(level("entertain.aircraft"), 0),
            "IFE2": pv.DomAttr(level("entertain.aircraft"), 0),
            "SAT": pv.DomAttr(level("INET.entertain.aircraft"), 0),
            "Wifi": pv.DomAttr(level("POD.entertain.aircraft"), 1),
            "P1": pv.DomAttr(level("POD.entertain.aircraft"), 0),
            "P2": pv.DomAttr(level("POD.entertain.aircraft"), 0),
        },
    )


def cabin_security_gateway():
    return pv.InvariantInstance(
        pv.security_gateway(),
        {"IFEsrv": pv.SgwRole.sgwa, "IFE1": pv.SgwRole.memb, "IFE2": pv.SgwRole.memb},
    )


def cabin_blp_trust():
    secret = pv.Clearance.secret
    confidential = pv.Clearance.confidential
    return pv.InvariantInstance(
        pv.blp_trust(),
        {
            "CC": pv.BlpTrustAttr(secret, False),
            "C1": pv.BlpTrustAttr(secret, False),
            "C2": pv.BlpTrustAttr(secret, False),
            "IFE1": pv.BlpTrustAttr(confidential, False),
            "IFE2": pv.BlpTrustAttr(confidential, False),
            "IFEsrv": pv.BlpTrustAttr(pv.Clearance.unclassified, True),
        },
    )


def cabin_invariants():
    return (cabin_domain_hierarchy(), cabin_security_gateway(), cabin_blp_trust())
