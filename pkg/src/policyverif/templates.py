"""Concrete invariant templates and their attribute types.

Shipped templates:

* ``blp_basic`` -- label-based information flow control in the style of a
  simplified Bell-LaPadula model: a flow may only raise the security
  clearance, never lower it.
* ``blp_trust`` -- the same, extended with a trust flag: a trusted host may
  receive anything and declassify it to its own clearance.
* ``domain_hierarchy`` -- hierarchical command structures over dotted domain
  names; a host's trust level lets it act that many levels further up.
* ``security_gateway`` -- domain members must talk to each other through a
  central gateway; a fixed role table decides each sender/receiver pair.
* ``no_transitive_access`` -- a reachability invariant (designated source
  hosts must not reach designated sink hosts over any path).  It has no
  per-edge structure, so it exercises the brute-force analysis route.

The literal parse/format helpers define the attribute syntax used in
scenario files.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterator

from .graph import HostMapping, Policy
from .invariants import Strategy, Template, edge_template


# ---------------------------------------------------------------------------
# clearances and Bell-LaPadula style templates

class Clearance(IntEnum):
    """Totally ordered security clearances, lowest first."""

    unclassified = 0
    confidential = 1
    secret = 2
    topsecret = 3


def parse_clearance(literal) -> Clearance:
    if isinstance(literal, str):
        try:
            return Clearance[literal.lower()]
        except KeyError:
            pass
    raise ValueError(f"expected one of {', '.join(c.name for c in Clearance)}")


def format_clearance(value: Clearance) -> str:
    return value.name


@dataclass(frozen=True)
class BlpTrustAttr:
    """Security clearance plus a trust flag."""

    sc: Clearance
    trust: bool = False


_BLP_BASIC = edge_template(
    "blp_basic",
    Strategy.IFS,
    Clearance.unclassified,
    lambda snd, rcv: snd <= rcv,
)

_BLP_TRUST = edge_template(
    "blp_trust",
    Strategy.IFS,
    BlpTrustAttr(Clearance.unclassified, False),
    lambda snd, rcv: rcv.trust or snd.sc <= rcv.sc,
)


def blp_basic() -> Template:
    """Receiver clearance must dominate sender clearance on every flow."""
    return _BLP_BASIC


def blp_trust() -> Template:
    """Like ``blp_basic``, but trusted receivers may accept anything."""
    return _BLP_TRUST


# ---------------------------------------------------------------------------
# domain hierarchy

_KIND_UNASSIGNED, _KIND_NAME, _KIND_TOP = 0, 1, 2


@dataclass(frozen=True)
class DomainName:
    """A position in a dotted-name hierarchy, or one of two synthetic ends.

    Regular positions carry their labels most-specific-first, so the
    wheels sub-department of engineering at company cc is
    ``("wh", "e", "cc")``.  UNASSIGNED sits below every position and is the
    level of hosts nobody configured.  TOP sits above every position; it is
    not assignable to hosts and only arises when trust saturates ``chop``.
    """

    kind: int
    labels: tuple = ()

    def __repr__(self):
        return f"DomainName({format_domain(self)!r})"


UNASSIGNED = DomainName(_KIND_UNASSIGNED)
TOP = DomainName(_KIND_TOP)


def domain_name(dotted: str) -> DomainName:
    """Parse ``"wh.e.cc"`` into a regular hierarchy position."""
    if not isinstance(dotted, str) or not dotted:
        raise ValueError("domain name must be a non-empty dotted string")
    labels = tuple(dotted.split("."))
    if any(not label for label in labels):
        raise ValueError(f"domain name {dotted!r} has an empty label")
    return DomainName(_KIND_NAME, labels)


def format_domain(d: DomainName) -> str:
    if d.kind == _KIND_NAME:
        return ".".join(d.labels)
    return "<unassigned>" if d.kind == _KIND_UNASSIGNED else "<top>"


def leq_domain(a: DomainName, b: DomainName) -> bool:
    """Is ``a`` below or at the same hierarchy position as ``b``?

    Regular names compare by the suffix relation (``wh.e.cc`` is below
    ``e.cc`` and ``cc``, but unrelated to ``br.e.cc``).  UNASSIGNED is below
    everything and TOP above everything.
    """
    if a.kind == _KIND_UNASSIGNED or b.kind == _KIND_TOP:
        return True
    if a.kind == _KIND_TOP or b.kind == _KIND_UNASSIGNED:
        return False
    n = len(b.labels)
    return len(a.labels) >= n and a.labels[len(a.labels) - n:] == b.labels


def chop(d: DomainName, n: int) -> DomainName:
    """Strip the ``n`` most specific labels, the hierarchy ascent a trust
    level of ``n`` grants.

    Chopping everything (or more) saturates to TOP: such a host may act as
    if it sat at the hierarchy root.  The synthetic ends are fixed points.
    """
    if n <= 0 or d.kind != _KIND_NAME:
        return d
    if n >= len(d.labels):
        return TOP
    return DomainName(_KIND_NAME, d.labels[n:])


@dataclass(frozen=True)
class DomAttr:
    """Hierarchy position plus a non-negative trust level."""

    level: DomainName
    trust: int = 0


_DOMAIN_HIERARCHY = edge_template(
    "domain_hierarchy",
    Strategy.ACS,
    DomAttr(UNASSIGNED, 0),
    lambda snd, rcv: leq_domain(rcv.level, chop(snd.level, snd.trust)),
)


def domain_hierarchy() -> Template:
    """Flows may only stay level or descend the hierarchy, after the
    sender's trust-granted ascent."""
    return _DOMAIN_HIERARCHY


def parse_dom_attr(literal) -> DomAttr:
    if not isinstance(literal, dict):
        raise ValueError('expected an object like {"level": "a.b", "trust": 0}')
    unknown = set(literal) - {"level", "trust"}
    if unknown:
        raise ValueError(f"unknown keys {sorted(unknown)}")
    if "level" not in literal:
        raise ValueError('missing "level"')
    level = domain_name(literal["level"])
    trust = literal.get("trust", 0)
    if not isinstance(trust, int) or isinstance(trust, bool) or trust < 0:
        raise ValueError('"trust" must be a non-negative integer')
    return DomAttr(level, trust)


def format_dom_attr(value: DomAttr) -> dict:
    if value.level.kind != _KIND_NAME:
        # the synthetic ends are not assignable in scenario files: omitting a
        # host already means the unassigned bottom, and granting TOP directly
        # would hand out unlimited command power by typo
        raise ValueError(f"level {format_domain(value.level)} is not representable; omit the host instead")
    return {"level": format_domain(value.level), "trust": value.trust}


def parse_blp_trust(literal) -> BlpTrustAttr:
    if not isinstance(literal, dict):
        raise ValueError('expected an object like {"sc": "secret", "trust": false}')
    unknown = set(literal) - {"sc", "trust"}
    if unknown:
        raise ValueError(f"unknown keys {sorted(unknown)}")
    if "sc" not in literal:
        raise ValueError('missing "sc"')
    trust = literal.get("trust", False)
    if not isinstance(trust, bool):
        raise ValueError('"trust" must be a boolean')
    return BlpTrustAttr(parse_clearance(literal["sc"]), trust)


def format_blp_trust(value: BlpTrustAttr) -> dict:
    return {"sc": value.sc.name, "trust": value.trust}


# ---------------------------------------------------------------------------
# security gateway

class SgwRole(Enum):
    """Roles of the security gateway architecture.

    ``sgw`` is the gateway itself, ``sgwa`` a gateway additionally
    accessible from outside, ``memb`` a domain member, and ``default``
    everything else.
    """

    sgw = "sgw"
    sgwa = "sgwa"
    memb = "memb"
    default = "default"


# The only forbidden sender/receiver role pairs: members must not talk to
# each other directly, and the outside world reaches neither members nor
# the inward-facing gateway.
_SGW_DENIED = frozenset(
    {
        (SgwRole.memb, SgwRole.memb),
        (SgwRole.default, SgwRole.sgw),
        (SgwRole.default, SgwRole.memb),
    }
)

_SECURITY_GATEWAY = edge_template(
    "security_gateway",
    Strategy.ACS,
    SgwRole.default,
    lambda snd, rcv: (snd, rcv) not in _SGW_DENIED,
    exempt_reflexive=True,
)


def security_gateway() -> Template:
    """Role-table access control; in-host traffic is always permitted."""
    return _SECURITY_GATEWAY


def parse_sgw_role(literal) -> SgwRole:
    if isinstance(literal, str):
        try:
            return SgwRole[literal.lower()]
        except KeyError:
            pass
    raise ValueError(f"expected one of {', '.join(r.name for r in SgwRole)}")


def format_sgw_role(value: SgwRole) -> str:
    return value.name


# ---------------------------------------------------------------------------
# transitive reachability (no per-edge structure)

class ReachRole(Enum):
    """Marks hosts for the reachability invariant."""

    src = "src"
    snk = "snk"
    none = "none"


def _no_reach_evaluate(g: Policy, mapping: HostMapping) -> bool:
    get = mapping.entries.get
    dft = mapping.default
    sources = [h for h in g.hosts if get(h, dft) is ReachRole.src]
    sinks = {h for h in g.hosts if get(h, dft) is ReachRole.snk}
    if not sources or not sinks:
        return True
    succ = {}
    for s, r in g.flows:
        succ.setdefault(s, []).append(r)
    seen = set()
    frontier = [r for s in sources for r in succ.get(s, ())]
    while frontier:
        host = frontier.pop()
        if host in seen:
            continue
        if host in sinks:
            return False
        seen.add(host)
        frontier.extend(succ.get(host, ()))
    return True


_NO_TRANSITIVE_ACCESS = Template(
    "no_transitive_access",
    Strategy.ACS,
    ReachRole.src,
    _no_reach_evaluate,
)


def no_transitive_access() -> Template:
    """No directed path may lead from a source-marked host to a sink-marked one.

    Mostly useful for exercising the brute-force analysis: reachability is a
    path property, so violations can have several alternative repair sets.
    """
    return _NO_TRANSITIVE_ACCESS


def parse_reach_role(literal) -> ReachRole:
    if isinstance(literal, str):
        try:
            return ReachRole[literal.lower()]
        except KeyError:
            pass
    raise ValueError(f"expected one of {', '.join(r.name for r in ReachRole)}")


def format_reach_role(value: ReachRole) -> str:
    return value.name


# ---------------------------------------------------------------------------
# bounded attribute universes for the default-attribute checks

def domain_fragment(depth: int = 3, labels: tuple = ("a", "b"), max_trust: int = 2) -> list:
    """A finite slice of the domain-attribute space.

    Every domain name of at most ``depth`` labels over the given alphabet,
    paired with every trust up to ``max_trust``, plus the unassigned bottom.
    The bottom only appears with trust zero: trust buys ascent from one's
    hierarchy position, and the bottom is not a position, so nonzero trust
    adds nothing there and would only duplicate the same semantics under
    another name.
    """

    def names(d: int) -> Iterator[tuple]:
        if d == 0:
            yield ()
            return
        for suffix in names(d - 1):
            yield suffix
            for label in labels:
                yield (label,) + suffix

    fragment = [DomAttr(UNASSIGNED, 0)]
    for name in sorted(set(names(depth))):
        if not name:
            continue
        for trust in range(max_trust + 1):
            fragment.append(DomAttr(DomainName(_KIND_NAME, name), trust))
    return fragment
