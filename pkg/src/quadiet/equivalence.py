"""Equivalence of IETs up to rescaling and reversal, and the equivalence graph."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import ClassBudgetExceeded
from .iet import IET, STEP_CAP
from .induction import PHI, PSI, rauzy_step
from .quadfield import QuadNum

__all__ = [
    "EquivClassKey",
    "EquivGraph",
    "canonical_key",
    "equivalent",
    "build_graph",
    "export_dot",
    "export_json",
]


@dataclass(frozen=True, order=True)
class EquivClassKey:
    """Permutation (0-based) and lengths rescaled to total length 1."""

    perm: tuple[int, ...]
    unit_lengths: tuple[QuadNum, ...]

    def to_iet(self) -> IET:
        return IET(self.perm, self.unit_lengths, 0, self.unit_lengths[0].d)

    def label(self) -> str:
        perm = " ".join(str(p + 1) for p in self.perm)
        return f"[{perm}] ({', '.join(map(str, self.unit_lengths))})"


def _conjugated_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    s = len(perm)
    out = [0] * s
    for i, p in enumerate(perm):
        out[s - 1 - i] = s - 1 - p
    return tuple(out)


def canonical_key(T: IET) -> EquivClassKey:
    total = T.total_length
    unit = tuple(lam / total for lam in T.lengths)
    a = EquivClassKey(T.perm, unit)
    b = EquivClassKey(_conjugated_perm(T.perm), unit[::-1])
    return min(a, b)


def equivalent(T: IET, S: IET) -> bool:
    if T.s != S.s:
        return False
    a, b = canonical_key(T), canonical_key(S)
    if T.d != S.d:
        # across fields only rational unit lengths can coincide
        rational = all(x.is_rational for x in a.unit_lengths + b.unit_lengths)
        return rational and a == b
    return a == b


@dataclass
class EquivGraph:
    root: EquivClassKey
    vertices: dict[EquivClassKey, IET] = field(default_factory=dict)
    edges: set[tuple[EquivClassKey, str, EquivClassKey]] = field(default_factory=set)

    def sorted_vertices(self) -> list[EquivClassKey]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[tuple[int, str, int]]:
        index = {k: i for i, k in enumerate(self.sorted_vertices())}
        return sorted((index[a], lab, index[b]) for a, lab, b in self.edges)

    def unlabeled_edges(self) -> set[tuple[EquivClassKey, EquivClassKey]]:
        return {(a, b) for a, _, b in self.edges}

    def successors(self, key: EquivClassKey) -> set[EquivClassKey]:
        return {b for a, _, b in self.edges if a == key}


def build_graph(T: IET, max_classes: int = 10**4, max_steps: int = STEP_CAP) -> EquivGraph:
    """Breadth-first exploration of the classes reachable under psi and phi.

    Each class is expanded once from the representative rebuilt from its key,
    so the result does not depend on which member was reached first.
    """
    root = canonical_key(T)
    graph = EquivGraph(root)
    graph.vertices[root] = root.to_iet()
    frontier = deque([root])
    while frontier:
        level = sorted(frontier)
        frontier.clear()
        for key in level:
            rep = graph.vertices[key]
            for label in (PSI, PHI):
                target = canonical_key(rauzy_step(rep, label, max_steps).transform)
                graph.edges.add((key, label, target))
                if target not in graph.vertices:
                    if len(graph.vertices) >= max_classes:
                        raise ClassBudgetExceeded(f"more than {max_classes} classes")
                    graph.vertices[target] = target.to_iet()
                    frontier.append(target)
    return graph


def export_dot(G: EquivGraph) -> str:
    keys = G.sorted_vertices()
    lines = ["digraph equivalence {"]
    for i, k in enumerate(keys):
        shape = "doublecircle" if k == G.root else "circle"
        lines.append(f'  v{i} [shape={shape}, label="{k.label()}"];')
    for a, lab, b in G.sorted_edges():
        lines.append(f'  v{a} -> v{b} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _triple(x: QuadNum) -> list[int]:
    return [x.m, x.n, x.r]


def export_json(G: EquivGraph) -> str:
    keys = G.sorted_vertices()
    d = keys[0].unit_lengths[0].d
    doc = {
        "d": d,
        "root": keys.index(G.root),
        "vertices": [
            {
                "id": i,
                "perm": [p + 1 for p in k.perm],
                "unit_lengths": [_triple(x) for x in k.unit_lengths],
            }
            for i, k in enumerate(keys)
        ],
        "edges": [{"source": a, "label": lab, "target": b} for a, lab, b in G.sorted_edges()],
    }
    return json.dumps(doc, indent=2) + "\n"
