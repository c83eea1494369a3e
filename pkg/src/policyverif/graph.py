"""Security policies as directed graphs, plus host attribute mappings.

A policy is a set of hosts and a set of allowed flows between them.  Host
attributes live outside the graph: users supply a partial host-to-attribute
configuration and a default attribute turns it into a total mapping.  All
types here are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Generic, Iterable, Mapping, Tuple, TypeVar

from .errors import DanglingEndpoint

A = TypeVar("A")

HostId = str
Flow = Tuple[HostId, HostId]
FlowSet = frozenset  # frozenset[Flow]; one repair option for a violation


@dataclass(frozen=True)
class Policy:
    """A directed graph of allowed flows.  Every flow endpoint is a host."""

    hosts: frozenset
    flows: frozenset

    def __post_init__(self):
        for flow in self.flows:
            if flow[0] not in self.hosts or flow[1] not in self.hosts:
                raise DanglingEndpoint(flow)

    def sorted_hosts(self) -> list:
        return sorted(self.hosts)

    def sorted_flows(self) -> list:
        return sorted(self.flows)

    def without_flows(self, removed: Iterable[Flow]) -> "Policy":
        return Policy(self.hosts, self.flows - frozenset(removed))


def _checked_hosts(hosts: Iterable[HostId]) -> frozenset:
    hostset = frozenset(hosts)
    for h in hostset:
        if not isinstance(h, str) or not h:
            raise ValueError(f"host names must be non-empty strings, got {h!r}")
    return hostset


def make_policy(hosts: Iterable[HostId], flows: Iterable[Flow]) -> Policy:
    """Build a policy, rejecting flows whose endpoints are not in ``hosts``."""
    return Policy(_checked_hosts(hosts), frozenset((s, r) for s, r in flows))


def allow_all(hosts: Iterable[HostId]) -> Policy:
    """The most permissive policy: every ordered pair, reflexive pairs included."""
    hostset = _checked_hosts(hosts)
    return Policy(hostset, frozenset((s, r) for s in hostset for r in hostset))


def deny_all(hosts: Iterable[HostId]) -> Policy:
    """Same hosts, no flows at all."""
    return Policy(_checked_hosts(hosts), frozenset())


@dataclass(frozen=True)
class HostMapping(Generic[A]):
    """Total host-to-attribute function: configured entries plus a default.

    ``lookup`` is defined for every host id, including ids that never occur
    in any policy.
    """

    entries: Mapping[HostId, A] = field(default_factory=dict)
    default: A = None

    def lookup(self, host: HostId) -> A:
        return self.entries.get(host, self.default)


def total_map(config: Mapping[HostId, A], default: A) -> HostMapping:
    """Complete a partial attribute configuration with a default attribute."""
    return HostMapping(dict(config), default)
