"""Explicit matrix-unit bases of the centralizer algebras and the exact
irreducible-module constructions they act on."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .dimensions import minimal_a
from .repgraph import effective_modulus
from .tensor_endo import (
    SparseEndo, all_sign_tuples, weight, neg_tuple, dominates, succ_key,
)


@dataclass(frozen=True)
class MatrixUnitLabel:
    family: str          # "cyclic" | "dihedral" | "dihedral-signed" | "planar-rook"
    row: tuple
    col: tuple
    node: object
    sign: int | None = None  # +1 / -1 for the dihedral 0/n blocks


@dataclass
class ModuleBasis:
    node: object
    vectors: list  # sparse vectors {sign tuple: scalar}
    @property
    def dim(self):
        return len(self.vectors)


def _tuples_by_weight(k):
    by_weight = {}
    for r in all_sign_tuples(k):
        by_weight.setdefault(weight(r), []).append(r)
    for rows in by_weight.values():
        rows.sort(key=succ_key)
    return by_weight


# ---------------------------------------------------------------------------
# cyclic


def cyclic_level_labels(n, k):
    """The nodes of C_n appearing in V^(tensor k)."""
    return [ell for ell in range(n) if minimal_a(k, ell, n) is not None]


def cyclic_labels(n, k):
    """All matrix-unit labels (r, s) with weights congruent mod n-tilde."""
    nt = effective_modulus(n)
    by_weight = _tuples_by_weight(k)
    labels = []
    for a in range(k + 1):
        for b in range(k + 1):
            if (a - b) % nt != 0:
                continue
            for r in by_weight[a]:
                for s in by_weight[b]:
                    labels.append(MatrixUnitLabel("cyclic", r, s, (k - 2 * a) % n))
    return labels


def cyclic_basis(n, k):
    """The matrix-unit basis, realized as endomorphisms."""
    return [
        (label, SparseEndo.matrix_unit(label.row, label.col))
        for label in cyclic_labels(n, k)
    ]


def cyclic_central_basis(n, k):
    """The central idempotents z_ell, one per node in the level set."""
    out = {}
    for ell in cyclic_level_labels(n, k):
        entries = {}
        for r in all_sign_tuples(k):
            if (k - 2 * weight(r) - ell) % n == 0:
                entries[(r, r)] = 1
        out[ell] = SparseEndo(k, entries, prune=False)
    return out


def cyclic_module_basis(n, k, ell):
    """Basis vectors of the irreducible module labelled ell (weight classes)."""
    nt = effective_modulus(n)
    a = minimal_a(k, ell, n)
    if a is None:
        return ModuleBasis(ell, [])
    vectors = [
        {r: 1}
        for r in sorted(all_sign_tuples(k), key=succ_key)
        if weight(r) % nt == a % nt
    ]
    return ModuleBasis(ell, vectors)


# ---------------------------------------------------------------------------
# planar rook


def tuple_to_set(r):
    """Positions (1-based) of the -1 entries."""
    return frozenset(i + 1 for i, x in enumerate(r) if x == -1)


def set_to_tuple(R, k):
    return tuple(-1 if i + 1 in R else 1 for i in range(k))


def planar_rook_units(k):
    """Matrix-unit labels of the infinite-cyclic centralizer with the
    subset-pair correspondence."""
    by_weight = _tuples_by_weight(k)
    labels = []
    iso = {}
    for a in range(k + 1):
        for r in by_weight[a]:
            for s in by_weight[a]:
                label = MatrixUnitLabel("planar-rook", r, s, k - 2 * a)
                labels.append(label)
                iso[(r, s)] = (tuple_to_set(r), tuple_to_set(s))
    return labels, iso


def rook_product(x, y):
    """Multiply formal sums of subset-pair units: X_RS X_TU = d_ST X_RU."""
    out = {}
    for (r, s), a in x.items():
        for (t, u), b in y.items():
            if s == t:
                key = (r, u)
                out[key] = out.get(key, 0) + a * b
    return {key: val for key, val in out.items() if val != 0}


def planar_rook_module_dims(k):
    """Dimensions of the irreducible modules, indexed by ell = k - 2a."""
    return {k - 2 * a: comb(k, a) for a in range(k + 1)}


# ---------------------------------------------------------------------------
# dihedral


def power_of_i(exponent):
    """i^exponent as a rational sign; exponent must be even."""
    if exponent % 2 != 0:
        raise ValueError("i^odd is not rational; parity condition violated")
    return 1 if exponent % 4 == 0 else -1


def dihedral_level_labels(n, k):
    """Unprimed nodes of D_n occurring in V^(tensor k)."""
    return [ell for ell in range(n + 1) if minimal_a(k, ell, 2 * n) is not None]


def dihedral_node_class(n, k, ell):
    """The index tuples attached to node ell.

    For the two-dimensional nodes 1..n-1 this is the full congruence class
    k - 2|r| = ell mod 2n (the r > -r filter would undercount whenever the
    class contains weights above k/2); for ell in {0, n} the class is closed
    under negation and the dominant representatives are kept.
    """
    rows = [
        r for r in sorted(all_sign_tuples(k), key=succ_key)
        if (k - 2 * weight(r) - ell) % (2 * n) == 0
    ]
    if ell % n == 0:  # ell = 0 or n
        rows = [r for r in rows if dominates(r, neg_tuple(r))]
    return rows


def dihedral_basis(n, k):
    """Basis e_{r,s} = E_{r,s} + E_{-r,-s} over dominant representatives."""
    by_weight = _tuples_by_weight(k)
    out = []
    for a in range(k + 1):
        for b in range(k + 1):
            if (a - b) % n != 0:
                continue
            for r in by_weight[a]:
                if not dominates(r, neg_tuple(r)):
                    continue
                for s in by_weight[b]:
                    label = MatrixUnitLabel("dihedral", r, s, None)
                    endo = SparseEndo(
                        k, {(r, s): 1, (neg_tuple(r), neg_tuple(s)): 1}
                    )
                    out.append((label, endo))
    return out


def paired_unit(r, s):
    """e_{r,s} = E_{r,s} + E_{-r,-s}."""
    return SparseEndo(len(r), {(r, s): 1, (neg_tuple(r), neg_tuple(s)): 1})


def signed_unit(r, s, sign, i_power):
    """e^{+-}_{r,s} for the one-dimensional node pairs."""
    half = Fraction(1, 2)
    entries = {
        (r, s): half,
        (neg_tuple(r), neg_tuple(s)): half,
        (r, neg_tuple(s)): sign * i_power * half,
        (neg_tuple(r), s): sign * i_power * half,
    }
    return SparseEndo(len(r), entries)


def dihedral_matrix_unit_basis(n, k):
    """Block decomposition: node -> {"size", "units"} with exact matrix units.

    Two-dimensional nodes contribute one block; the nodes 0 and n each split
    into a +/- pair of blocks for the primed companions.
    """
    blocks = {}
    for ell in dihedral_level_labels(n, k):
        rows = dihedral_node_class(n, k, ell)
        if not rows:
            continue
        if 1 <= ell <= n - 1:
            units = {
                (r, s): (MatrixUnitLabel("dihedral", r, s, ell), paired_unit(r, s))
                for r in rows for s in rows
            }
            blocks[ell] = {"size": len(rows), "units": units}
        else:
            ip = power_of_i(ell - k)
            for sign, name in ((+1, ell), (-1, _primed(ell, n))):
                units = {
                    (r, s): (
                        MatrixUnitLabel("dihedral-signed", r, s, name, sign),
                        signed_unit(r, s, sign, ip),
                    )
                    for r in rows for s in rows
                }
                blocks[name] = {"size": len(rows), "units": units}
    return blocks


def _primed(ell, n):
    return "%d'" % ell


def dihedral_block_sizes(n, k):
    blocks = dihedral_matrix_unit_basis(n, k)
    return {node: data["size"] for node, data in blocks.items()}


def dihedral_module_basis(n, k, label):
    """Exact basis of the irreducible module attached to one node."""
    if isinstance(label, int) and 1 <= label <= n - 1:
        rows = dihedral_node_class(n, k, label)
        return ModuleBasis(label, [{r: 1} for r in rows])
    if isinstance(label, str) and label.endswith("'"):
        ell = int(label[:-1])
        sign = -1
    else:
        ell = int(label)
        sign = +1
    if ell % n != 0 and ell != n:
        raise ValueError("primed labels exist only at 0 and n")
    rows = dihedral_node_class(n, k, ell)
    ip = power_of_i(ell - k)
    vectors = []
    for r in rows:
        vec = {r: 1}
        other = neg_tuple(r)
        coeff = sign * ip
        vec[other] = vec.get(other, 0) + coeff
        vectors.append(vec)
    return ModuleBasis(label, vectors)


# ---------------------------------------------------------------------------
# the infinite dihedral group


def dinf_level_labels(k):
    return [ell for ell in range(k % 2, k + 1, 2)]


def dinf_basis(k):
    """Basis of the infinite-dihedral centralizer: dominant paired units."""
    by_weight = _tuples_by_weight(k)
    out = []
    for a in range(k + 1):
        for r in by_weight[a]:
            if not dominates(r, neg_tuple(r)):
                continue
            for s in by_weight[a]:
                out.append((MatrixUnitLabel("dihedral", r, s, None), paired_unit(r, s)))
    return out


def dinf_module_dims(k):
    dims = {}
    for ell in dinf_level_labels(k):
        b = (k - ell) // 2
        dims[ell] = comb(k, b)
        if ell == 0:
            dims[0] = comb(k, b) // 2
            dims["0'"] = comb(k, b) // 2
    return dims


def dinf_rook_image(k):
    """The subset-pair units spanning the image subalgebra Q_k.

    Odd k: all pairs with |R| = |S| <= (k-1)/2.  Even k: all pairs with
    |R| = |S| <= k/2 - 1 together with the dominant and anti-dominant pairs
    at |R| = k/2.
    """
    units = []
    for a in range(k // 2 + (0 if k % 2 == 0 else 1)):
        for R in itertools.combinations(range(1, k + 1), a):
            for S in itertools.combinations(range(1, k + 1), a):
                units.append((frozenset(R), frozenset(S)))
    if k % 2 == 0:
        half = k // 2
        dominant = [
            r for r in all_sign_tuples(k)
            if weight(r) == half and dominates(r, neg_tuple(r))
        ]
        for r in dominant:
            for s in dominant:
                units.append((tuple_to_set(r), tuple_to_set(s)))
                units.append((tuple_to_set(neg_tuple(r)), tuple_to_set(neg_tuple(s))))
    return units


def dinf_rook_iso(k):
    """The basis correspondence of the infinite-dihedral centralizer with Q_k.

    Returns (basis, phi) where basis is a list of (endo, formal image) pairs
    suitable for checking multiplicativity on both sides.
    """
    out = []
    by_weight = _tuples_by_weight(k)
    for a in range(k + 1):
        if 2 * a > k:
            break
        if 2 * a < k:
            for r in by_weight[a]:
                for s in by_weight[a]:
                    endo = paired_unit(r, s)
                    image = {(tuple_to_set(r), tuple_to_set(s)): 1}
                    out.append((endo, image))
        else:
            ip = power_of_i(-k)
            dominant = [r for r in by_weight[a] if dominates(r, neg_tuple(r))]
            for r in dominant:
                for s in dominant:
                    plus = signed_unit(r, s, +1, ip)
                    minus = signed_unit(r, s, -1, ip)
                    out.append((plus, {(tuple_to_set(r), tuple_to_set(s)): 1}))
                    out.append(
                        (minus,
                         {(tuple_to_set(neg_tuple(r)), tuple_to_set(neg_tuple(s))): 1})
                    )
    return out


def expand_in_dinf_basis(endo, k):
    """Coefficients of an endomorphism in the D-infinity basis of level k."""
    coeffs = {}
    ip = power_of_i(-k) if k % 2 == 0 else None
    for r in sorted(all_sign_tuples(k), key=succ_key):
        if not dominates(r, neg_tuple(r)):
            continue
        a = weight(r)
        for s in all_sign_tuples(k):
            if weight(s) != a:
                continue
            if 2 * a < k:
                val = endo.entries.get((r, s), 0)
                if val != 0:
                    coeffs[("e", r, s)] = val
            elif dominates(s, neg_tuple(s)):
                base = endo.entries.get((r, s), 0)
                cross = endo.entries.get((r, neg_tuple(s)), 0)
                plus = base + ip * cross
                minus = base - ip * cross
                if plus != 0:
                    coeffs[("+", r, s)] = plus
                if minus != 0:
                    coeffs[("-", r, s)] = minus
    return coeffs
