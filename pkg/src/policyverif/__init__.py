"""Verification of network security policies against attribute-based invariants.

A policy is a directed graph of allowed flows between hosts.  Security
invariants pair a template (the formal semantics: strategy, evaluation
predicate, secure default attribute) with scenario-specific host
attributes.  The library evaluates invariants, explains violations as
minimal sets of offending flows, names the offending hosts, completes
partial attribute configurations with provably checkable defaults, and
constructs the maximal policy all invariants admit.
"""

from .engine import (
    InvariantResult,
    PolicyDiff,
    Scenario,
    VerificationReport,
    construct_max_policy,
    diff,
    verify,
)
from .errors import (
    BadAttribute,
    DanglingEndpoint,
    InvariantRejected,
    PolicyVerifError,
    ScenarioError,
    ScenarioFormatError,
    ScenarioSyntaxError,
    TooLarge,
    UnknownHost,
    UnknownTemplate,
)
from .dot import export_dot
from .graph import (
    Flow,
    FlowSet,
    HostId,
    HostMapping,
    Policy,
    allow_all,
    deny_all,
    make_policy,
    total_map,
)
from .invariants import (
    DEFAULT_EDGE_BOUND,
    EdgePredicate,
    InvariantInstance,
    Strategy,
    Template,
    check_deny_all_validity,
    check_monotonicity,
    check_secure_default,
    check_unique_default,
    compose,
    edge_template,
    eval_instance,
    find_monotonicity_counterexample,
    find_secure_default_counterexample,
    offenders,
    offending_flows,
    offending_flows_bruteforce,
)
from .scenario import (
    TEMPLATE_REGISTRY,
    parse_scenario,
    scenario_from_data,
    scenario_to_data,
    serialize_policy,
    serialize_scenario,
)
from .templates import (
    TOP,
    UNASSIGNED,
    BlpTrustAttr,
    Clearance,
    DomAttr,
    DomainName,
    ReachRole,
    SgwRole,
    blp_basic,
    blp_trust,
    chop,
    domain_fragment,
    domain_hierarchy,
    domain_name,
    format_domain,
    leq_domain,
    no_transitive_access,
    security_gateway,
)

__all__ = [
    "BadAttribute",
    "BlpTrustAttr",
    "Clearance",
    "DEFAULT_EDGE_BOUND",
    "DanglingEndpoint",
    "DomAttr",
    "DomainName",
    "EdgePredicate",
    "Flow",
    "FlowSet",
    "HostId",
    "HostMapping",
    "InvariantInstance",
    "InvariantRejected",
    "InvariantResult",
    "Policy",
    "PolicyDiff",
    "PolicyVerifError",
    "ReachRole",
    "Scenario",
    "ScenarioError",
    "ScenarioFormatError",
    "ScenarioSyntaxError",
    "SgwRole",
    "Strategy",
    "TEMPLATE_REGISTRY",
    "TOP",
    "Template",
    "TooLarge",
    "UNASSIGNED",
    "UnknownHost",
    "UnknownTemplate",
    "VerificationReport",
    "allow_all",
    "blp_basic",
    "blp_trust",
    "check_deny_all_validity",
    "check_monotonicity",
    "check_secure_default",
    "check_unique_default",
    "chop",
    "compose",
    "construct_max_policy",
    "deny_all",
    "diff",
    "domain_fragment",
    "domain_hierarchy",
    "domain_name",
    "edge_template",
    "eval_instance",
    "export_dot",
    "find_monotonicity_counterexample",
    "find_secure_default_counterexample",
    "format_domain",
    "leq_domain",
    "make_policy",
    "no_transitive_access",
    "offenders",
    "offending_flows",
    "offending_flows_bruteforce",
    "parse_scenario",
    "scenario_from_data",
    "scenario_to_data",
    "security_gateway",
    "serialize_policy",
    "serialize_scenario",
    "total_map",
    "verify",
]

__version__ = "0.1.0"
