"""Graphviz DOT rendering of policies and diffs.

Conventions: policy flows are solid edges; flows the invariants would
permit but the policy omits are dashed; flows the invariants forbid are
solid red, kept visible because the picture is feedback, not output.
Self-flows are omitted entirely (in-host communication is always
permitted).  Output is byte-stable: nodes and edges appear in lexicographic
order.
"""

from __future__ import annotations

from typing import Optional

from .engine import PolicyDiff
from .graph import Policy


def _quote(name: str) -> str:
    escaped = name.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def export_dot(policy: Policy, diff: Optional[PolicyDiff] = None) -> str:
    """Render a policy (optionally annotated with a diff) as a DOT digraph."""
    violating = diff.violating if diff is not None else frozenset()
    missing = diff.permitted_missing if diff is not None else frozenset()
    lines = ["digraph policy {"]
    for host in policy.sorted_hosts():
        lines.append(f"  {_quote(host)};")
    shown = {(s, r) for s, r in policy.flows if s != r} | set(missing)
    for s, r in sorted(shown):
        if (s, r) in violating:
            attrs = " [color=red]"
        elif (s, r) in missing:
            attrs = " [style=dashed]"
        else:
            attrs = ""
        lines.append(f"  {_quote(s)} -> {_quote(r)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
