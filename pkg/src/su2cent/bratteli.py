"""Walk counting on representation graphs: level sets, multiplicities,
centralizer dimensions, and the old/new classification of Bratteli edges."""

from __future__ import annotations

from dataclasses import dataclass

from .repgraph import RepGraph, label_key


@dataclass
class MultiplicityTable:
    graph: RepGraph
    levels: list  # levels[k] is {label: multiplicity}

    def level(self, k):
        return self.levels[k]

    def support(self, k):
        return {label for label, m in self.levels[k].items() if m > 0}


def multiplicities(graph, K):
    """Walk counts from the trivial node: levels 0..K."""
    if K < 0:
        raise ValueError("K must be >= 0")
    current = {graph.trivial_node: 1}
    levels = [dict(current)]
    for _ in range(K):
        nxt = {}
        for label, count in current.items():
            for nb, mult in graph.adj[label].items():
                nxt[nb] = nxt.get(nb, 0) + mult * count
        current = nxt
        levels.append(dict(current))
    return MultiplicityTable(graph, levels)


def dim_centralizer_walks(graph, k):
    """Number of closed walks of length 2k at the trivial node."""
    table = multiplicities(graph, 2 * k)
    closed = table.levels[2 * k].get(graph.trivial_node, 0)
    paired = sum(m * m for m in table.levels[k].values())
    if closed != paired:
        raise AssertionError("walk-reversal identity failed at k=%d" % k)
    return closed


def module_dims_walks(graph, k):
    """Irreducible-module dimension vector at level k, by walk counting."""
    return multiplicities(graph, k).levels[k]


def bimodule_identity_check(graph, k):
    """2^k = sum of d^lambda m_k^lambda, exactly."""
    level = multiplicities(graph, k).levels[k]
    total = sum(graph.dims[label] * m for label, m in level.items())
    return {"k": k, "lhs": 2 ** k, "rhs": total, "ok": total == 2 ** k}


def classify_edges(graph, K):
    """Partition Bratteli edges below level K into reflected/new.

    An edge (lambda at level k) -> (mu at level k+1) is a reflection of the
    previous level exactly when mu already occurred at level k-1; the
    remaining (new) edges trace out a copy of the representation graph.
    """
    table = multiplicities(graph, K)
    supports = [table.support(k) for k in range(K + 1)]
    result = []
    for k in range(K):
        reflected, new = [], []
        for label in sorted(supports[k], key=label_key):
            for nb in sorted(graph.adj[label], key=label_key):
                if nb not in supports[k + 1]:
                    continue
                edge = (label, nb)
                if k >= 1 and nb in supports[k - 1]:
                    reflected.append(edge)
                elif k == 0 or nb not in supports[k - 1]:
                    new.append(edge)
        result.append({"level": k, "reflected": reflected, "new": new})
    return result


def new_edge_union(graph, K):
    """Undirected label pairs appearing as new edges anywhere below level K."""
    pairs = set()
    for entry in classify_edges(graph, K):
        for a, b in entry["new"]:
            pairs.add(tuple(sorted((a, b), key=label_key)))
    return pairs


def bratteli_to_dot(graph, K, name=None):
    table = multiplicities(graph, K)
    classified = classify_edges(graph, K)
    lines = ["digraph %s {" % (name or "bratteli")]
    for k in range(K + 1):
        level = table.levels[k]
        labels = sorted(level, key=label_key)
        lines.append("  { rank=same; %s }" % "; ".join(
            '"%s@%d"' % (label, k) for label in labels))
        for label in labels:
            lines.append(
                '  "%s@%d" [label="%s:%s", level=%d];'
                % (label, k, label, level[label], k)
            )
    for entry in classified:
        k = entry["level"]
        for kind, style in (("reflected", "solid"), ("new", "bold")):
            for a, b in entry[kind]:
                attrs = 'style=%s' % style
                if kind == "new":
                    attrs += ', color=red'
                lines.append(
                    '  "%s@%d" -> "%s@%d" [%s];' % (a, k, b, k + 1, attrs)
                )
    lines.append("}")
    return "\n".join(lines)


def level_json(graph, k):
    level = multiplicities(graph, k).levels[k]
    return {
        "group": graph.spec.name if graph.spec else "SU2",
        "k": k,
        "multiplicities": {
            str(label): str(level[label])
            for label in sorted(level, key=label_key)
        },
        "dim": str(sum(m * m for m in level.values())),
    }
