"""Jones-Wenzl idempotents, branch idempotent chains, and the relation
verifier for the tower of centralizer algebras."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import bratteli, groups, repgraph
from . import tensor_endo as te
from .repgraph import effective_modulus
from .tensor_endo import SparseEndo, tl_generator


# ---------------------------------------------------------------------------
# Jones-Wenzl


@lru_cache(maxsize=None)
def _jones_wenzl_raw(n):
    """The n-th Jones-Wenzl idempotent on V^(tensor n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return SparseEndo.identity(1)
    prev = _jones_wenzl_raw(n - 1).lift(n)
    e = tl_generator(n, n - 1)
    return prev - (prev * e * prev).scale(Fraction(n - 1, n))


def jones_wenzl(k, n):
    """f_n realized on V^(tensor k), acting in the first n slots."""
    if not 1 <= n <= k:
        raise ValueError("need 1 <= n <= k")
    return _jones_wenzl_raw(n).lift(k)


def weight_vector(k, t):
    """Sum of all simple tensors of weight t, as a sparse vector."""
    return {r: 1 for r in te.all_sign_tuples(k) if te.weight(r) == t}


def symmetric_projection_check(k):
    """f_k fixes every weight vector and has rank k+1."""
    f = jones_wenzl(k, k)
    report = {"k": k, "fixed": [], "trace": f.trace(), "ok": True}
    for t in range(k + 1):
        w = weight_vector(k, t)
        ok = f.apply(w) == w
        report["fixed"].append({"t": t, "ok": ok})
        report["ok"] = report["ok"] and ok
    if f * f != f or f.trace() != k + 1:
        report["ok"] = False
    return report


def tl_subalgebra_basis(k, top=None):
    """Echelon basis of the subalgebra generated by e_1..e_top inside
    End(V^(tensor k))."""
    top = k - 1 if top is None else top
    gens = [tl_generator(k, i) for i in range(1, top + 1)]
    return te.algebra_closure([SparseEndo.identity(k)] + gens, generators=gens)


def jw_relation_report(k):
    """Exact verification of the Jones-Wenzl identities on V^(tensor k)."""
    checks = []
    fs = {n: jones_wenzl(k, n) for n in range(1, k + 1)}
    es = {i: tl_generator(k, i) for i in range(1, k)}
    for n in range(1, k + 1):
        checks.append(("JW1 n=%d" % n, fs[n] * fs[n] == fs[n]))
        for i in range(1, n):
            checks.append(
                ("JW2 i=%d n=%d" % (i, n),
                 (es[i] * fs[n]).is_zero() and (fs[n] * es[i]).is_zero())
            )
        for i in range(n + 1, k):
            checks.append(("JW3 i=%d n=%d" % (i, n), es[i] * fs[n] == fs[n] * es[i]))
        if n <= k - 1:
            lhs = es[n] * fs[n] * es[n]
            prev = fs[n - 1] if n > 1 else SparseEndo.identity(k)
            rhs = (prev * es[n]).scale(Fraction(n + 1, n))
            checks.append(("JW4 n=%d" % n, lhs == rhs))
        for m in range(1, n):
            checks.append(("JW6 m=%d n=%d" % (m, n), fs[m] * fs[n] == fs[n] * fs[m]))
    # JW5: 1 - f_n lies in the algebra generated by e_1..e_{n-1}
    for n in range(2, k + 1):
        span = te.endo_span(tl_subalgebra_basis(k, n - 1))
        diff = SparseEndo.identity(k) - fs[n]
        checks.append(("JW5 n=%d" % n, span.contains(diff.entries)))
    return {"k": k, "checks": [{"id": c, "ok": ok} for c, ok in checks],
            "ok": all(ok for _, ok in checks)}


# ---------------------------------------------------------------------------
# branch idempotent chains


@dataclass
class ChainEntry:
    label: object       # chain label ("+2", "3+", 5, ...)
    node: object        # representation-graph node this projects onto
    level: int          # tensor power where the idempotent first lives
    dim: int            # dimension of the irreducible G-module
    endo: SparseEndo
    parent: object      # chain label of the parent entry (None at the top)
    via: str            # "jones-wenzl" | "characters" | "recursion"


@dataclass
class IdempotentChain:
    spec: groups.SubgroupSpec
    entries: dict       # chain label -> ChainEntry
    branch_level: int
    complete_at: int    # no new idempotents appear past this level (diam)
    corner_units: dict | None = None  # cyclic only: 2x2 block at level n~

    def entry(self, label):
        return self.entries[label]

    def in_order(self):
        return sorted(self.entries.values(), key=lambda e: (e.level, str(e.label)))


def _cyclic_chain(spec, up_to):
    n = spec.n
    nt = effective_modulus(n)
    graph = repgraph.build_graph(spec)
    top = min(up_to, nt)
    entries = {}
    prev = {+1: None, -1: None}
    for sign in (+1, -1):
        node = sign % n
        if n == 2:
            # the two arms meet immediately (n~ = 1): the isotypic projector
            # cannot separate the copies, so take the diagonal matrix unit
            f1 = SparseEndo.matrix_unit((sign,), (sign,))
            via = "matrix-unit"
        else:
            f1 = groups.character_projector(spec, node, 1)
            via = "characters"
        label = "%+d" % sign
        entries[label] = ChainEntry(label, node, 1, 1, f1, None, via)
        prev[sign] = entries[label]
        for j in range(2, top + 1):
            parent = prev[sign]
            lifted = parent.endo.lift(j)
            e = tl_generator(j, j - 1)
            f = lifted - lifted * e * lifted
            label = "%+d" % (sign * j)
            node = (sign * j) % n
            entries[label] = ChainEntry(label, node, j, 1, f, parent.label,
                                        "recursion")
            prev[sign] = entries[label]
    corners = None
    if top == nt:
        ones = (1,) * nt
        neg = (-1,) * nt
        corners = {
            ("+", "+"): SparseEndo.matrix_unit(ones, ones),
            ("-", "-"): SparseEndo.matrix_unit(neg, neg),
            ("-", "+"): SparseEndo.matrix_unit(neg, ones),
            ("+", "-"): SparseEndo.matrix_unit(ones, neg),
        }
    return IdempotentChain(spec, entries, 0, nt, corners)


def _tree_chain(spec, up_to):
    graph = repgraph.build_graph(spec)
    data = groups.group_data(spec)
    ell = graph.branch_node
    dist = graph.distances_from(graph.trivial_node)
    branch_dist = dist[ell]
    diam = graph.diameter
    top = min(up_to, diam)
    entries = {}
    # spine: Jones-Wenzl idempotents up to the branch node
    spine = {0: graph.trivial_node}
    for d in range(1, branch_dist + 1):
        spine[d] = next(
            node for node in graph.nodes
            if dist[node] == d and graph.dims[node] == d + 1
        )
    for d in range(1, min(branch_dist, top) + 1):
        node = spine[d]
        entries[node] = ChainEntry(
            node, node, d, graph.dims[node], jones_wenzl(d, d),
            spine[d - 1] if d > 1 else None, "jones-wenzl",
        )
    # walk outward from the branch node
    order = sorted(
        (node for node in graph.nodes if branch_dist < dist[node] <= top),
        key=lambda nd: (dist[nd], repgraph.label_key(nd)),
    )
    for node in order:
        d = dist[node]
        parent = next(nb for nb in graph.adj[node] if dist[nb] == d - 1)
        parent_entry = entries.get(parent)
        parent_degree = graph.degree(parent)
        if d == branch_dist + 1 or parent_degree > 2:
            endo = groups.character_projector(spec, node, d)
            via = "characters"
        else:
            grand = next(nb for nb in graph.adj[parent] if dist[nb] == d - 2)
            ratio = Fraction(graph.dims[grand], graph.dims[parent])
            lifted = parent_entry.endo.lift(d)
            e = tl_generator(d, d - 1)
            endo = lifted - (lifted * e * lifted).scale(ratio)
            via = "recursion"
        entries[node] = ChainEntry(
            node, node, d, graph.dims[node], endo,
            parent if parent in entries else None, via,
        )
    return IdempotentChain(spec, entries, branch_dist, diam)


@lru_cache(maxsize=None)
def branch_idempotent_chain(spec, up_to_level=None):
    """All projection idempotents onto first appearances of graph nodes.

    Jones-Wenzl idempotents along the spine, character projectors at branch
    splits, and the two-step recursion past them.
    """
    if spec.family == groups.CYCLIC:
        limit = effective_modulus(spec.n)
    else:
        limit = repgraph.build_graph(spec).diameter
    if up_to_level is None:
        up_to_level = limit
    return _cyclic_chain(spec, up_to_level) if spec.family == groups.CYCLIC \
        else _tree_chain(spec, up_to_level)


def verify_chain(chain):
    """Idempotency, trace, group-commutation, and the conditional-expectation
    relations for every entry of a branch chain."""
    spec = chain.spec
    gens = groups.generators(spec)
    report = {"group": spec.name, "entries": [], "ok": True}
    for entry in chain.in_order():
        f = entry.endo
        checks = {
            "idempotent": f * f == f,
            "trace": f.trace() == entry.dim,
            "commutes": all(te.commutes_with(f, g) for g in gens),
        }
        if entry.parent is not None:
            parent = chain.entry(entry.parent)
            ratio = Fraction(entry.dim, parent.dim)
            d = entry.level
            e_next = tl_generator(d + 1, d)
            lhs = e_next * f.lift(d + 1) * e_next
            rhs = (parent.endo.lift(d + 1) * e_next).scale(ratio)
            checks["e f e"] = lhs == rhs
            eps = te.conditional_expectation(f)
            checks["expectation"] = eps == parent.endo.lift(d - 1).scale(ratio / 2)
        elif entry.level == 1:
            # parent is the trivial idempotent 1 at level 0
            e1 = tl_generator(2, 1)
            checks["e f e"] = e1 * entry.endo.lift(2) * e1 == e1.scale(
                Fraction(entry.dim, 1))
            checks["expectation"] = te.conditional_expectation(entry.endo) == \
                SparseEndo.identity(0).scale(Fraction(entry.dim, 2))
        ok = all(checks.values())
        report["entries"].append(
            {"label": str(entry.label), "level": entry.level, "via": entry.via,
             "checks": checks, "ok": ok}
        )
        report["ok"] = report["ok"] and ok
    return report


# ---------------------------------------------------------------------------
# relation suite


def fingerprint(endo):
    payload = json.dumps(endo.to_json(), sort_keys=True)
    return hashlib.sha1(payload.encode()).hexdigest()[:12]


def _check(report, rel_id, lhs, rhs):
    ok = lhs == rhs
    report["checks"].append(
        {"relation": rel_id, "ok": ok,
         "lhs": fingerprint(lhs), "rhs": fingerprint(rhs)}
    )
    if not ok:
        report["ok"] = False


def _tl_checks(report, k):
    es = {i: tl_generator(k, i) for i in range(1, k)}
    for i in range(1, k):
        _check(report, "TL1 e%d" % i, es[i] * es[i], es[i].scale(2))
    for i in range(1, k - 1):
        _check(report, "TL2 e%d e%d e%d" % (i, i + 1, i), es[i] * es[i + 1] * es[i], es[i])
        _check(report, "TL2 e%d e%d e%d" % (i + 1, i, i + 1), es[i + 1] * es[i] * es[i + 1], es[i + 1])
    for i in range(1, k):
        for j in range(i + 2, k):
            _check(report, "TL3 e%d e%d" % (i, j), es[i] * es[j], es[j] * es[i])


def _sequence_to_rim(spec):
    """The distinct-node path from the branch node to distance diam.

    Returns (ell, [node labels nu_0..nu_m], [dims d_0..d_m]).
    """
    graph = repgraph.build_graph(spec)
    dist = graph.distances_from(graph.trivial_node)
    ell = dist[graph.branch_node]
    far = max(graph.nodes, key=lambda nd: (dist[nd], ))
    target_dist = graph.diameter
    # walk back from a maximal-distance node, preferring lexically small labels
    candidates = [nd for nd in graph.nodes if dist[nd] == target_dist]
    candidates.sort(key=repgraph.label_key)
    path = [candidates[0]]
    while dist[path[-1]] > ell:
        prev = [nb for nb in graph.adj[path[-1]] if dist[nb] == dist[path[-1]] - 1]
        prev.sort(key=repgraph.label_key)
        path.append(prev[0])
    path.reverse()
    dims = [graph.dims[nd] for nd in path]
    return ell, path, dims


def verify_relation_suite(spec, k, check_generation=True, guard=8):
    """Exact verification of the generator relations at (G, k).

    Covers the Temperley-Lieb relations, the branch-idempotent relations
    (dominance, recursion, annihilation/commutation, the conditional
    expectation exchange, and the past-the-rim contraction), the cyclic
    corner-unit relations, the dihedral primed-node relations, and the
    tower-generation claims by span closure against the walk dimension.
    """
    report = {"group": spec.name, "k": k, "checks": [], "ok": True}
    _tl_checks(report, k)
    if spec.family == groups.CYCLIC:
        _cyclic_relations(report, spec, k)
    elif spec.family == groups.DIHEDRAL:
        _rim_relations(report, spec, k)
        _dihedral_relations(report, spec, k)
    else:
        _rim_relations(report, spec, k)
    if check_generation:
        _generation_checks(report, spec, k, guard)
    return report


def _rim_relations(report, spec, k):
    ell, path, dims = _sequence_to_rim(spec)
    chain = branch_idempotent_chain(spec)
    diam = ell + len(path) - 1
    m = len(path) - 1
    top = min(m, max(k - ell, 0))
    if top < 1:
        return
    # b_j = f_{nu_j} lifted to level k (or to the level its relation needs)
    def b(j, level):
        if j == 0:
            base = jones_wenzl(max(ell, 1), ell) if ell >= 1 else SparseEndo.identity(0)
            if ell == 0:
                return SparseEndo.identity(level)
            return base.lift(level)
        return chain.entry(path[j]).endo.lift(level)

    for j in range(0, top + 1):
        for i in range(0, j + 1):
            lvl = max(ell + j, 1)
            bi, bj = b(i, lvl), b(j, lvl)
            _check(report, "dominance b%d b%d" % (i, j), bi * bj, bj)
            _check(report, "dominance b%d b%d (right)" % (j, i), bj * bi, bj)
    for j in range(1, top):
        # the two-summand recursion only applies through degree-2 nodes
        # (for D_n the step onto node n passes a degree-3 node instead)
        if chain.entry(path[j + 1]).via != "recursion":
            continue
        lvl = ell + j + 1
        bj = b(j, lvl)
        e = tl_generator(lvl, ell + j)
        rhs = bj - (bj * e * bj).scale(Fraction(dims[j - 1], dims[j]))
        _check(report, "recursion b%d" % (j + 1), b(j + 1, lvl), rhs)
    for j in range(1, top + 1):
        lvl = max(k, ell + j)
        bj = b(j, lvl)
        for i in range(1, ell + j):
            e = tl_generator(lvl, i)
            _check(report, "annihilation e%d b%d" % (i, j), e * bj, SparseEndo.zero(lvl))
            _check(report, "annihilation b%d e%d" % (j, i), bj * e, SparseEndo.zero(lvl))
        for i in range(ell + j + 1, lvl):
            e = tl_generator(lvl, i)
            _check(report, "commutation e%d b%d" % (i, j), e * bj, bj * e)
    for j in range(1, top + 1):
        lvl = ell + j + 1
        e = tl_generator(lvl, ell + j)
        lhs = e * b(j, lvl) * e
        rhs = (b(j - 1, lvl) * e).scale(Fraction(dims[j], dims[j - 1]))
        _check(report, "exchange e b%d e" % j, lhs, rhs)
    if k > diam:
        lvl = diam + 1
        bm = b(m, lvl)
        e = tl_generator(lvl, diam)
        _check(report, "contraction b%d" % m, bm,
               (bm * e * bm).scale(Fraction(dims[m - 1], dims[m])))


def _cyclic_relations(report, spec, k):
    n = spec.n
    nt = effective_modulus(n)
    chain = branch_idempotent_chain(spec)
    top = min(nt, k)

    def b(sign, j, level):
        return chain.entry("%+d" % (sign * j)).endo.lift(level)

    # (a)-(e) with b_j = b_j^+ and with b_j = b_j^-
    for sign in (+1, -1):
        tag = "+" if sign > 0 else "-"
        for j in range(1, top):
            lvl = j + 1
            bj = b(sign, j, lvl)
            e = tl_generator(lvl, j)
            _check(report, "recursion b%d%s" % (j + 1, tag),
                   b(sign, j + 1, lvl), bj - bj * e * bj)
            _check(report, "exchange e b%d%s e" % (j, tag),
                   e * bj * e,
                   (b(sign, j - 1, lvl) if j > 1 else SparseEndo.identity(lvl)) * e)
        for j in range(1, top + 1):
            for i in range(1, j + 1):
                lvl = max(j, 1)
                _check(report, "dominance b%d%s b%d%s" % (i, tag, j, tag),
                       b(sign, i, lvl) * b(sign, j, lvl), b(sign, j, lvl))
    # orthogonality of the two arms
    for i in range(1, top + 1):
        for j in range(1, top + 1):
            lvl = max(i, j)
            _check(report, "arm-orthogonality b%d+ b%d-" % (i, j),
                   b(+1, i, lvl) * b(-1, j, lvl), SparseEndo.zero(lvl))
            _check(report, "arm-orthogonality b%d- b%d+" % (j, i),
                   b(-1, j, lvl) * b(+1, i, lvl), SparseEndo.zero(lvl))
    if k >= nt and chain.corner_units:
        corners = chain.corner_units
        for key, unit in corners.items():
            _check(report, "corner b%s%s idempotent-or-unit" % key,
                   unit * unit,
                   unit if key[0] == key[1] else SparseEndo.zero(nt))
        for (z1, g1), u1 in corners.items():
            for (z2, g2), u2 in corners.items():
                expected = corners[(z1, g2)] if g1 == z2 else SparseEndo.zero(nt)
                _check(report, "corner b_%s^%s b_%s^%s" % (g1, z1, g2, z2),
                       u1 * u2, expected)
        # diagonal corners coincide with the rim idempotents
        _check(report, "corner diag +", corners[("+", "+")], b(+1, nt, nt))
        _check(report, "corner diag -", corners[("-", "-")], b(-1, nt, nt))
        # lower rim idempotents absorb or kill the off-diagonal corners
        # according to the adjacent sign
        for j in range(1, nt):
            for (z, g), u in corners.items():
                if z == g:
                    continue
                lvl = nt
                for eps, tag in ((+1, "+"), (-1, "-")):
                    left = b(eps, j, lvl) * u
                    _check(report, "corner b%d%s b_%s^%s" % (j, tag, g, z),
                           left, u if tag == z else SparseEndo.zero(lvl))
                    right = u * b(eps, j, lvl)
                    _check(report, "corner b_%s^%s b%d%s" % (g, z, j, tag),
                           right, u if tag == g else SparseEndo.zero(lvl))


def _dihedral_relations(report, spec, k):
    n = spec.n
    if k < n:
        return
    chain = branch_idempotent_chain(spec)
    prime = chain.entry("%d'" % n).endo
    b_top = chain.entry(n).endo

    def b(j, level):
        # b_j projects V^(x (j+1)) onto node j+1
        return chain.entry(j + 1).endo.lift(level)

    lvl = n
    bp = prime.lift(lvl)
    for j in range(1, n - 1):
        _check(report, "prime dominance b%d b'" % j, b(j, lvl) * bp, bp)
        _check(report, "prime dominance b' b%d" % j, bp * b(j, lvl), bp)
    _check(report, "prime idempotent", bp * bp, bp)
    _check(report, "prime orthogonal", b_top.lift(lvl) * bp, SparseEndo.zero(lvl))
    _check(report, "prime orthogonal (right)", bp * b_top.lift(lvl),
           SparseEndo.zero(lvl))
    lvl = n + 1
    bp = prime.lift(lvl)
    e_n = tl_generator(lvl, n)
    fn_minus_1 = (b(n - 2, lvl) if n >= 3 else SparseEndo.identity(lvl))
    _check(report, "prime exchange e%d b' e%d" % (n, n),
           e_n * bp * e_n, (fn_minus_1 * e_n).scale(Fraction(1, 2)))
    for i in range(1, n):
        e_i = tl_generator(lvl, i)
        _check(report, "prime annihilation e%d b'" % i, e_i * bp,
               SparseEndo.zero(lvl))
        _check(report, "prime annihilation b' e%d" % i, bp * e_i,
               SparseEndo.zero(lvl))
    for i in range(n + 1, min(k, lvl)):
        e_i = tl_generator(lvl, i)
        _check(report, "prime commutation e%d b'" % i, e_i * bp, bp * e_i)
    _check(report, "prime contraction", bp, (bp * e_n * bp).scale(2))
    bt = b_top.lift(lvl)
    _check(report, "top contraction", bt, (bt * e_n * bt).scale(2))


def _generation_checks(report, spec, k, guard):
    """Tower-generation claims: the span closure of the stated generators
    has the full walk-count dimension."""
    if k < 2:
        return
    graph = repgraph.build_graph(spec)
    target = bratteli.dim_centralizer_walks(graph, k)
    try:
        lower = [b.lift(k) for b in groups.centralizer_basis(spec, k - 1, guard)]
    except te.SolverGuardError:
        return
    gens = lower + [tl_generator(k, k - 1)]
    chain = branch_idempotent_chain(spec)
    extra = []
    if spec.family == groups.CYCLIC:
        nt = effective_modulus(spec.n)
        if k <= nt:
            extra = [chain.entry("%+d" % k).endo]
        if k == nt and chain.corner_units:
            extra += [chain.corner_units[("+", "-")], chain.corner_units[("-", "+")]]
    else:
        new_nodes = [e for e in chain.in_order() if e.level == k]
        if new_nodes:
            extra = [new_nodes[0].endo]
            if spec.family == groups.DIHEDRAL and k == spec.n:
                extra = [chain.entry(spec.n).endo, chain.entry("%d'" % spec.n).endo]
            if spec.family == groups.DIHEDRAL and k == 2 and spec.n == 2:
                entries = [e.endo for e in chain.in_order() if e.level == 2]
                extra = entries[:2]
    basis = te.algebra_closure(gens + extra, generators=gens + extra,
                               max_dim=target)
    ok = len(basis) == target
    report["checks"].append(
        {"relation": "generation dim Z_%d" % k, "ok": ok,
         "lhs": str(len(basis)), "rhs": str(target)}
    )
    if not ok:
        report["ok"] = False
