"""The reduced dynamics graph: a binary tree of dynamics prefixes.

Each node carries the residue class whose members share its prefix.
Terminal nodes are reduced patterns; live nodes at the depth cap are
marked ``truncated``.
"""

import json
from dataclasses import dataclass, field

from .form import PrefixStatus, classify_counts
from .residue import ResidueClass, partition_split

__all__ = ["MAX_DEPTH", "DynNode", "build_graph", "export_dot", "export_json",
           "parse_json", "iter_nodes"]

MAX_DEPTH = 30


@dataclass
class DynNode:
    prefix: str
    cls: ResidueClass
    kind: str = "live"  # "live" or "terminal"
    truncated: bool = False
    children: list = field(default_factory=list)

    @property
    def depth(self):
        return len(self.prefix)


def build_graph(L):
    if not 1 <= L <= MAX_DEPTH:
        raise ValueError(f"depth must be in [1, {MAX_DEPTH}]")
    root = DynNode("", ResidueClass(0, 0))
    # [0]_2 terminates at once and is not expanded
    odd = DynNode("I", ResidueClass(1, 1))
    root.children = [odd, DynNode("O", ResidueClass(0, 1), kind="terminal")]
    stack = [(odd, 1, 0)]
    while stack:
        node, a, b = stack.pop()
        if node.depth >= L:
            node.truncated = True
            continue
        (cls_o, s_o), (cls_i, s_i) = partition_split(node.cls, node.prefix)
        child_i = DynNode(s_i, cls_i)
        child_o = DynNode(s_o, cls_o)
        if classify_counts(a, b + 1) is PrefixStatus.TERMINAL:
            child_o.kind = "terminal"
        else:
            stack.append((child_o, a, b + 1))
        stack.append((child_i, a + 1, b))
        node.children = [child_i, child_o]
    return root


def iter_nodes(root):
    """Pre-order walk, I child before O child."""
    stack = [root]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children))


def _label(node):
    return "root" if node.cls.t == 0 else str(node.cls)


def export_dot(root):
    lines = ["digraph reduced_dynamics {", '  "root" [shape=doublecircle];']
    for n in iter_nodes(root):
        if n is root:
            continue
        attrs = [f'prefix="{n.prefix}"']
        if n.kind == "terminal":
            attrs.append("shape=box")
        else:
            attrs.append("shape=ellipse")
        if n.truncated:
            attrs.append("style=dashed")
        lines.append(f'  "{_label(n)}" [{", ".join(attrs)}];')
    for n in iter_nodes(root):
        for c in n.children:
            lines.append(f'  "{_label(n)}" -> "{_label(c)}" [label="{c.prefix[-1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_dict(node):
    return {
        "prefix": node.prefix,
        "i": str(node.cls.i),
        "t": node.cls.t,
        "kind": node.kind,
        "truncated": node.truncated,
        "children": [_to_dict(c) for c in node.children],
    }


def export_json(root):
    return json.dumps(_to_dict(root), separators=(",", ":"))


def _from_dict(d):
    return DynNode(d["prefix"], ResidueClass(int(d["i"]), d["t"]), d["kind"],
                   d.get("truncated", False), [_from_dict(c) for c in d["children"]])


def parse_json(text):
    return _from_dict(json.loads(text))
