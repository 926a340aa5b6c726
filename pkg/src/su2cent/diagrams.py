"""Two-row diagram calculi for the cyclic and dihedral matrix-unit bases.

A cyclic diagram is an ordered pair of subsets (top, bottom) recording the
minus positions of a matrix-unit label; sizes agree modulo n-tilde.  A
dihedral diagram is a set partition of the 2k vertices into at most two
blocks with t(B) = b(B) mod n for each block; partitions are stored by a
canonical block and are invariant under the global sign swap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .repgraph import effective_modulus
from .tensor_endo import SparseEndo, dominates, neg_tuple
from .matrix_units import set_to_tuple, tuple_to_set

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"


def _canonical_block(top, bottom, k):
    """Pick the block whose top indicator tuple dominates its complement."""
    r = set_to_tuple(top, k)
    if dominates(r, neg_tuple(r)):
        return frozenset(top), frozenset(bottom)
    full = frozenset(range(1, k + 1))
    return full - frozenset(top), full - frozenset(bottom)


@dataclass(frozen=True)
class TwoRowDiagram:
    family: str
    k: int
    top: frozenset
    bottom: frozenset

    def __post_init__(self):
        if self.family not in (CYCLIC, DIHEDRAL):
            raise ValueError("unknown diagram family %r" % self.family)

    def blocks(self):
        """The set partition (dihedral view): two (top, bottom) pairs."""
        full = frozenset(range(1, self.k + 1))
        return (
            (self.top, self.bottom),
            (full - self.top, full - self.bottom),
        )

    def to_json(self):
        return {
            "family": self.family,
            "k": self.k,
            "top": sorted(self.top),
            "bottom": sorted(self.bottom),
        }

    @staticmethod
    def from_json(data):
        return make_diagram(
            data["family"], data["k"],
            frozenset(data["top"]), frozenset(data["bottom"]),
        )


def make_diagram(family, k, top, bottom):
    top = frozenset(top)
    bottom = frozenset(bottom)
    if family == DIHEDRAL:
        top, bottom = _canonical_block(top, bottom, k)
    return TwoRowDiagram(family, k, top, bottom)


def diagram_from_pair(r, s, family, modulus=None):
    """The diagram of a matrix-unit label; minus positions become the block."""
    k = len(r)
    top = tuple_to_set(r)
    bottom = tuple_to_set(s)
    if modulus is not None and (len(top) - len(bottom)) % modulus != 0:
        raise ValueError("pair violates the congruence condition")
    return make_diagram(family, k, top, bottom)


def multiply(d1, d2):
    """Diagram product; None encodes the zero product."""
    if d1.family != d2.family or d1.k != d2.k:
        raise ValueError("diagrams are not composable")
    if d1.family == CYCLIC:
        if d1.bottom != d2.top:
            return None
        return make_diagram(CYCLIC, d1.k, d1.top, d2.bottom)
    full = frozenset(range(1, d1.k + 1))
    if d1.bottom == d2.top:
        return make_diagram(DIHEDRAL, d1.k, d1.top, d2.bottom)
    if d1.bottom == full - d2.top:
        return make_diagram(DIHEDRAL, d1.k, d1.top, full - d2.bottom)
    return None


def diagram_action(d, k=None):
    """The 0/1 endomorphism realized by a diagram."""
    k = d.k if k is None else k
    if k != d.k:
        raise ValueError("degree mismatch")
    r = set_to_tuple(d.top, k)
    s = set_to_tuple(d.bottom, k)
    if d.family == CYCLIC:
        return SparseEndo.matrix_unit(r, s)
    return SparseEndo(k, {(r, s): 1, (neg_tuple(r), neg_tuple(s)): 1})


def enumerate_diagrams(family, n, k):
    """All valid canonical diagrams for the given group parameters."""
    if family == CYCLIC:
        nt = effective_modulus(n)
        out = []
        for a in range(k + 1):
            for b in range(k + 1):
                if (a - b) % nt != 0:
                    continue
                for top in itertools.combinations(range(1, k + 1), a):
                    for bottom in itertools.combinations(range(1, k + 1), b):
                        out.append(
                            TwoRowDiagram(CYCLIC, k, frozenset(top), frozenset(bottom))
                        )
        return out
    out = []
    for a in range(k + 1):
        for top in itertools.combinations(range(1, k + 1), a):
            r = set_to_tuple(frozenset(top), k)
            if not dominates(r, neg_tuple(r)):
                continue
            for b in range(k + 1):
                if (a - b) % n != 0:
                    continue
                for bottom in itertools.combinations(range(1, k + 1), b):
                    out.append(
                        TwoRowDiagram(DIHEDRAL, k, frozenset(top), frozenset(bottom))
                    )
    return out


def block_shape(d):
    """Sorted (top size, bottom size) pairs of the two blocks."""
    return tuple(sorted((len(t), len(b)) for t, b in d.blocks()))
