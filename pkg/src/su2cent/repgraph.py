"""Representation graphs of SU(2) subgroups (the affine Dynkin diagrams).

Nodes carry module dimensions; edges carry tensor multiplicities.  Node
labels are ints for plain path/cycle nodes and strings like "0'", "3+" for
the primed and forked nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import groups
from .groups import (
    SubgroupSpec, CYCLIC, DIHEDRAL, TETRAHEDRAL, OCTAHEDRAL, ICOSAHEDRAL,
    CYCLIC_INF, DIHEDRAL_INF,
)


def label_key(label):
    """Deterministic ordering of node labels."""
    if isinstance(label, int):
        return (label, 0)
    body = label.rstrip("'+-")
    suffix = label[len(body):]
    rank = {"": 0, "+": 1, "-": 2, "'": 3}[suffix]
    return (int(body), rank)


def effective_modulus(n):
    """n for odd n, n/2 for even n: the modulus of all cyclic congruences."""
    return n // 2 if n % 2 == 0 else n


@dataclass
class RepGraph:
    spec: SubgroupSpec | None
    nodes: list
    dims: dict
    adj: dict  # label -> {label: multiplicity}
    trivial_node: object
    defining_node: object
    branch_node: object
    diameter: object  # int or math.inf
    truncation: int | None = None

    def neighbors(self, label):
        return self.adj[label]

    def degree(self, label):
        return sum(self.adj[label].values())

    def distances_from(self, start):
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist


def _make(spec, dims, edges, trivial, defining, branch, diameter, trunc=None):
    adj = {label: {} for label in dims}
    for a, b, m in edges:
        adj[a][b] = adj[a].get(b, 0) + m
        adj[b][a] = adj[b].get(a, 0) + m
    nodes = sorted(dims, key=label_key)
    return RepGraph(spec, nodes, dict(dims), adj, trivial, defining, branch,
                    diameter, trunc)


def su2_path(depth):
    """The half-infinite path of SU(2) itself, truncated at the given node."""
    dims = {r: r + 1 for r in range(depth + 1)}
    edges = [(r, r + 1, 1) for r in range(depth)]
    return _make(None, dims, edges, 0, 1, None, math.inf, depth)


def build_graph(spec, truncation=None):
    if spec.family == CYCLIC:
        n = spec.n
        if n < 2:
            raise ValueError("representation graph needs n >= 2")
        dims = {ell: 1 for ell in range(n)}
        if n == 2:
            edges = [(0, 1, 2)]
        else:
            edges = [(ell, (ell + 1) % n, 1) for ell in range(n)]
        return _make(spec, dims, edges, 0, 1, 0, effective_modulus(n))
    if spec.family == DIHEDRAL:
        n = spec.n
        dims = {0: 1, "0'": 1, n: 1, "%d'" % n: 1}
        dims.update({ell: 2 for ell in range(1, n)})
        edges = [(0, 1, 1), ("0'", 1, 1)]
        edges += [(ell, ell + 1, 1) for ell in range(1, n - 1)]
        edges += [(n - 1, n, 1), (n - 1, "%d'" % n, 1)]
        return _make(spec, dims, edges, 0, 1, 1, n)
    if spec.family == TETRAHEDRAL:
        dims = {"0": 1, "1": 2, "2": 3, "3+": 2, "3-": 2, "4+": 1, "4-": 1}
        edges = [("0", "1", 1), ("1", "2", 1), ("2", "3+", 1),
                 ("3+", "4+", 1), ("2", "3-", 1), ("3-", "4-", 1)]
        return _make(spec, dims, edges, "0", "1", "2", 4)
    if spec.family == OCTAHEDRAL:
        dims = {"0": 1, "1": 2, "2": 3, "3": 4, "4+": 3, "4-": 2,
                "5": 2, "6+": 1}
        edges = [("0", "1", 1), ("1", "2", 1), ("2", "3", 1),
                 ("3", "4+", 1), ("3", "4-", 1), ("4+", "5", 1),
                 ("5", "6+", 1)]
        return _make(spec, dims, edges, "0", "1", "3", 6)
    if spec.family == ICOSAHEDRAL:
        dims = {"0": 1, "1": 2, "2": 3, "3": 4, "4": 5, "5": 6,
                "6+": 4, "6-": 3, "7": 2}
        edges = [("0", "1", 1), ("1", "2", 1), ("2", "3", 1), ("3", "4", 1),
                 ("4", "5", 1), ("5", "6+", 1), ("5", "6-", 1),
                 ("6+", "7", 1)]
        return _make(spec, dims, edges, "0", "1", "5", 7)
    if spec.family == CYCLIC_INF:
        if truncation is None:
            raise ValueError("infinite family requires a truncation depth")
        dims = {ell: 1 for ell in range(-truncation, truncation + 1)}
        edges = [(ell, ell + 1, 1) for ell in range(-truncation, truncation)]
        return _make(spec, dims, edges, 0, 1, 0, math.inf, truncation)
    if spec.family == DIHEDRAL_INF:
        if truncation is None:
            raise ValueError("infinite family requires a truncation depth")
        dims = {0: 1, "0'": 1}
        dims.update({ell: 2 for ell in range(1, truncation + 1)})
        edges = [(0, 1, 1), ("0'", 1, 1)]
        edges += [(ell, ell + 1, 1) for ell in range(1, truncation)]
        return _make(spec, dims, edges, 0, 1, 1, math.inf, truncation)
    raise ValueError("unknown family %r" % spec.family)


def branch_and_diameter(graph):
    """(branch node, diameter) under the conventions for each family."""
    return graph.branch_node, graph.diameter


def verify_mckay(spec, graph):
    """Decompose every irrep tensor V by exact characters; compare with edges."""
    data = groups.group_data(spec)
    n_field = groups.conductor(spec)
    chi_v = [groups.mat_trace(data.elements[c[0]]) for c in data.classes]
    report = {"group": spec.name, "edges": [], "ok": True}
    reps = data.irreps
    for lam in reps:
        product = [a * b for a, b in zip(lam.character, chi_v)]
        for mu in reps:
            ip = data.inner_product(product, mu.character)
            mult = int(ip.to_fraction())
            expected = graph.adj[lam.label].get(mu.label, 0)
            ok = mult == expected
            if mult or expected:
                report["edges"].append(
                    {"from": str(lam.label), "to": str(mu.label),
                     "graph": expected, "characters": mult, "ok": ok}
                )
            if not ok:
                report["ok"] = False
    return report


def cartan_matrix(graph):
    """c = 2I - A as a nested list in node order."""
    nodes = graph.nodes
    return [
        [
            (2 if a == b else 0) - graph.adj[a].get(b, 0)
            for b in nodes
        ]
        for a in nodes
    ]


def cartan_nullity(graph):
    """Nullity of the Cartan matrix over Q (affine graphs give 1)."""
    m = [[Fraction(x) for x in row] for row in cartan_matrix(graph)]
    rows = len(m)
    cols = rows
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rows - rank


def dimension_vector_in_nullspace(graph):
    """Check A d = 2 d for the node dimension vector, exactly."""
    for a in graph.nodes:
        total = sum(mult * graph.dims[b] for b, mult in graph.adj[a].items())
        if total != 2 * graph.dims[a]:
            return False
    return True


def to_dot(graph, name=None):
    lines = ["graph %s {" % (name or "repgraph")]
    lines.append('  rankdir=LR;')
    for node in graph.nodes:
        shape = []
        if node == graph.trivial_node:
            shape.append("color=blue")
        elif node == graph.defining_node:
            shape.append("color=red")
        attrs = ', '.join(['label="%s", dim=%d' % (node, graph.dims[node])] + shape)
        lines.append('  "%s" [%s];' % (node, attrs))
    seen = set()
    for a in graph.nodes:
        for b, mult in sorted(graph.adj[a].items(), key=lambda kv: label_key(kv[0])):
            if (b, a) in seen:
                continue
            seen.add((a, b))
            for _ in range(mult):
                lines.append('  "%s" -- "%s";' % (a, b))
    lines.append("}")
    return "\n".join(lines)


def to_json(graph):
    return {
        "group": graph.spec.name if graph.spec else "SU2",
        "nodes": [
            {"label": str(node), "dim": graph.dims[node]} for node in graph.nodes
        ],
        "edges": [
            {"from": str(a), "to": str(b), "multiplicity": m}
            for a in graph.nodes
            for b, m in sorted(graph.adj[a].items(), key=lambda kv: label_key(kv[0]))
            if label_key(a) <= label_key(b)
        ],
        "trivial": str(graph.trivial_node),
        "defining": str(graph.defining_node),
        "branch": str(graph.branch_node),
        "diameter": None if graph.diameter == math.inf else graph.diameter,
    }
