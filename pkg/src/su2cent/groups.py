"""The finite subgroups of SU(2): exact generators, elements, and characters.

Group elements are 2x2 matrices over a cyclotomic field, stored as nested
tuples (row-major, index 0 corresponds to the basis vector v_{-1}).  The
cyclic and binary dihedral families come with explicit irreducible matrices;
the three exceptional groups carry exact character data derived from the
tensor rules of their representation graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycloNum, root_of_unity
from . import tensor_endo as te

CYCLIC = "cyclic"
DIHEDRAL = "binary_dihedral"
TETRAHEDRAL = "binary_tetrahedral"
OCTAHEDRAL = "binary_octahedral"
ICOSAHEDRAL = "binary_icosahedral"
CYCLIC_INF = "cyclic_infinite"
DIHEDRAL_INF = "binary_dihedral_infinite"

_FINITE = (CYCLIC, DIHEDRAL, TETRAHEDRAL, OCTAHEDRAL, ICOSAHEDRAL)


class UnsupportedFamilyError(ValueError):
    """Raised when an operation needs a finite family."""


@dataclass(frozen=True)
class SubgroupSpec:
    family: str
    n: int | None = None

    def __post_init__(self):
        if self.family in (CYCLIC, DIHEDRAL):
            if self.n is None or self.n < 1:
                raise ValueError("cyclic/dihedral families need n >= 1")
        elif self.family == CYCLIC and self.n < 1:
            raise ValueError("n >= 1 required")

    @property
    def is_finite(self):
        return self.family in _FINITE

    @property
    def order(self):
        if self.family == CYCLIC:
            return self.n
        if self.family == DIHEDRAL:
            return 4 * self.n
        if self.family == TETRAHEDRAL:
            return 24
        if self.family == OCTAHEDRAL:
            return 48
        if self.family == ICOSAHEDRAL:
            return 120
        return None

    @property
    def name(self):
        return {
            CYCLIC: "C%d" % (self.n or 0),
            DIHEDRAL: "D%d" % (self.n or 0),
            TETRAHEDRAL: "T",
            OCTAHEDRAL: "O",
            ICOSAHEDRAL: "I",
            CYCLIC_INF: "Cinf",
            DIHEDRAL_INF: "Dinf",
        }[self.family]


def parse_group(text):
    """Parse selectors like C8, D5, T, O, I, Cinf, Dinf."""
    text = text.strip()
    lowered = text.lower()
    if lowered == "t":
        return SubgroupSpec(TETRAHEDRAL)
    if lowered == "o":
        return SubgroupSpec(OCTAHEDRAL)
    if lowered == "i":
        return SubgroupSpec(ICOSAHEDRAL)
    if lowered == "cinf":
        return SubgroupSpec(CYCLIC_INF)
    if lowered == "dinf":
        return SubgroupSpec(DIHEDRAL_INF)
    if text and text[0] in "CcDd" and text[1:].isdigit():
        n = int(text[1:])
        return SubgroupSpec(CYCLIC if text[0] in "Cc" else DIHEDRAL, n)
    raise ValueError("unrecognized group selector: %r" % text)


def conductor(spec):
    """Smallest cyclotomic conductor holding all generator entries."""
    if spec.family == CYCLIC:
        return spec.n
    if spec.family == DIHEDRAL:
        two_n = 2 * spec.n
        return 4 * two_n // _gcd(4, two_n)
    if spec.family in (TETRAHEDRAL, OCTAHEDRAL):
        return 8
    if spec.family == ICOSAHEDRAL:
        return 20
    return 4  # infinite families: only i is ever needed


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# 2x2 exact matrix helpers


def mat(entries, n):
    out = []
    for row in entries:
        cells = []
        for val in row:
            if isinstance(val, CycloNum):
                cells.append(val.embed_into(n) if val.n != n else val)
            else:
                cells.append(CycloNum.from_rational(val, n))
        out.append(tuple(cells))
    return tuple(out)


def mat_mul(a, b):
    return tuple(
        tuple(
            a[i][0] * b[0][j] + a[i][1] * b[1][j]
            for j in range(2)
        )
        for i in range(2)
    )


def mat_key(a):
    return tuple(a[i][j].key() for i in range(2) for j in range(2))


def mat_det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def mat_trace(a):
    return a[0][0] + a[1][1]


def mat_dagger(a):
    return (
        (a[0][0].conjugate(), a[1][0].conjugate()),
        (a[0][1].conjugate(), a[1][1].conjugate()),
    )


def mat_identity(n):
    return mat(((1, 0), (0, 1)), n)


def is_special_unitary(a):
    n = a[0][0].n
    one = mat_identity(n)
    return mat_det(a) == CycloNum.one(n) and mat_mul(mat_dagger(a), a) == one


# ---------------------------------------------------------------------------
# generators


def generators(spec, zeta_order=None):
    """Generator matrices whose closure has exactly the declared order.

    Infinite families have no root-of-unity parameter of their own; passing
    ``zeta_order=m`` substitutes the order-m matrices for finite-level tests.
    """
    if spec.family == CYCLIC:
        n = spec.n
        z = root_of_unity(n)
        return [mat(((z.inverse(), 0), (0, z)), n)]
    if spec.family == DIHEDRAL:
        n_field = conductor(spec)
        z = root_of_unity(2 * spec.n).embed_into(n_field)
        i = root_of_unity(4).embed_into(n_field)
        g = mat(((z.inverse(), 0), (0, z)), n_field)
        h = mat(((0, i), (i, 0)), n_field)
        return [g, h]
    if spec.family in (TETRAHEDRAL, OCTAHEDRAL, ICOSAHEDRAL):
        n_field = conductor(spec)
        i = root_of_unity(4).embed_into(n_field)
        half = Fraction(1, 2)
        qi = mat(((i, 0), (0, -i)), n_field)
        qj = mat(((0, 1), (-1, 0)), n_field)
        omega = mat(
            (((i - 1) * half, (i + 1) * half), ((i - 1) * half, (-1 - i) * half)),
            n_field,
        )
        if spec.family == TETRAHEDRAL:
            return [qi, qj, omega]
        if spec.family == OCTAHEDRAL:
            z8 = root_of_unity(8)
            sigma = mat(((z8, 0), (0, z8.inverse())), 8)
            return [qi, qj, omega, sigma]
        # binary icosahedral: adjoin the golden quaternion (phi + i/phi + j)/2
        z5 = root_of_unity(5).embed_into(20)
        inv_phi = z5 + z5 ** 4
        phi = inv_phi + 1
        gamma = mat(
            (
                ((phi + inv_phi * i) * half, half),
                (-half, (phi - inv_phi * i) * half),
            ),
            20,
        )
        return [qi, qj, omega, gamma]
    if spec.family in (CYCLIC_INF, DIHEDRAL_INF):
        if zeta_order is None:
            raise UnsupportedFamilyError(
                "infinite family has no exact matrix model; "
                "pass zeta_order for a finite stand-in"
            )
        stand_in = SubgroupSpec(
            CYCLIC if spec.family == CYCLIC_INF else DIHEDRAL, zeta_order
        )
        return generators(stand_in)
    raise UnsupportedFamilyError(spec.family)


# ---------------------------------------------------------------------------
# enumeration and class structure


class GroupData:
    """Enumerated elements, conjugacy classes, and character table."""

    def __init__(self, spec):
        if not spec.is_finite:
            raise UnsupportedFamilyError("cannot enumerate %s" % spec.family)
        self.spec = spec
        self.generators = generators(spec)
        self.elements = self._closure()
        self.index = {mat_key(m): i for i, m in enumerate(self.elements)}
        if len(self.elements) != spec.order:
            raise AssertionError(
                "closure size %d != declared order %d"
                % (len(self.elements), spec.order)
            )
        self.class_of, self.classes = self._conjugacy_classes()
        self.irreps = _build_irreps(self)

    def _closure(self):
        n = conductor(self.spec)
        identity = mat_identity(n)
        seen = {mat_key(identity)}
        order = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for m in frontier:
                for g in self.generators:
                    prod = mat_mul(m, g)
                    key = mat_key(prod)
                    if key not in seen:
                        seen.add(key)
                        order.append(prod)
                        nxt.append(prod)
            frontier = nxt
        return order

    def _conjugacy_classes(self):
        class_of = [-1] * len(self.elements)
        classes = []
        for start in range(len(self.elements)):
            if class_of[start] >= 0:
                continue
            cls = [start]
            class_of[start] = len(classes)
            frontier = [start]
            while frontier:
                nxt = []
                for idx in frontier:
                    m = self.elements[idx]
                    for g in self.generators:
                        conj = mat_mul(mat_mul(g, m), mat_dagger(g))
                        j = self.index[mat_key(conj)]
                        if class_of[j] < 0:
                            class_of[j] = len(classes)
                            cls.append(j)
                            nxt.append(j)
                frontier = nxt
            classes.append(sorted(cls))
        return class_of, classes

    # -- class function helpers -----------------------------------------

    def class_sizes(self):
        return [len(c) for c in self.classes]

    def char_value(self, char, element_index):
        return char[self.class_of[element_index]]

    def inner_product(self, phi, psi):
        """(1/|G|) sum over G of phi(g) conj(psi(g)), exact."""
        total = CycloNum.zero(conductor(self.spec))
        for ci, cls in enumerate(self.classes):
            total = total + phi[ci] * psi[ci].conjugate() * len(cls)
        return total / len(self.elements)


@lru_cache(maxsize=None)
def group_data(spec):
    return GroupData(spec)


def enumerate_elements(spec):
    return group_data(spec).elements


# ---------------------------------------------------------------------------
# irreducible representations


@dataclass
class IrrepData:
    label: object
    dim: int
    matrices: list | None  # one matrix per generator, or None
    character: list = field(default_factory=list)  # class index -> CycloNum


def _one_dim_characters(data):
    """Lifts of the characters of G/[G,G] (a cyclic group here)."""
    elements, index = data.elements, data.index
    # commutator subgroup by closure of commutators
    comm_keys = set()
    comms = []
    for a in elements:
        for g in data.generators:
            c = mat_mul(mat_mul(a, g), mat_dagger(mat_mul(g, a)))
            key = mat_key(c)
            if key not in comm_keys:
                comm_keys.add(key)
                comms.append(c)
    # close under multiplication
    frontier = list(comms)
    while frontier:
        nxt = []
        for x in frontier:
            for y in comms[:]:
                p = mat_mul(x, y)
                key = mat_key(p)
                if key not in comm_keys:
                    comm_keys.add(key)
                    comms.append(p)
                    nxt.append(p)
        frontier = nxt
    subgroup = {index[k] for k in comm_keys}
    # cosets
    coset_of = {}
    reps = []
    for i, m in enumerate(elements):
        if i in coset_of:
            continue
        cid = len(reps)
        reps.append(i)
        for j in subgroup:
            prod = mat_mul(m, elements[j])
            coset_of[index[mat_key(prod)]] = cid
    m_order = len(reps)
    # find a generating coset of the cyclic quotient
    gen_coset = None
    for i in range(len(elements)):
        powers = set()
        c = coset_of[i]
        acc = elements[i]
        powers.add(c)
        cur = acc
        for _ in range(m_order - 1):
            cur = mat_mul(cur, acc)
            powers.add(coset_of[index[mat_key(cur)]])
        if len(powers) == m_order:
            gen_coset = i
            break
    # discrete log of each coset relative to the generator
    log = {coset_of[index[mat_key(mat_identity(conductor(data.spec)))]]: 0}
    cur = elements[gen_coset]
    for p in range(1, m_order):
        log[coset_of[index[mat_key(cur)]]] = p
        cur = mat_mul(cur, elements[gen_coset])
    n_field = conductor(data.spec)
    chars = []
    for t in range(m_order):
        zeta = root_of_unity(m_order, t).embed_into(
            n_field * m_order // _gcd(n_field, m_order)
        ) if n_field % m_order else root_of_unity(m_order, t).embed_into(n_field)
        values = []
        for cls in data.classes:
            rep = cls[0]
            values.append(zeta ** log[coset_of[rep]])
        chars.append(values)
    return chars


def _build_irreps(data):
    spec = data.spec
    if spec.family == CYCLIC:
        return _cyclic_irreps(data)
    if spec.family == DIHEDRAL:
        return _dihedral_irreps(data)
    return _exceptional_irreps(data)


def _cyclic_irreps(data):
    n = data.spec.n
    z = root_of_unity(n)
    # each element is diag(z^-a, z^a): recover a from the (1,1) entry
    power_of = {(z ** a).key(): a for a in range(n)}
    exps = [power_of[m[1][1].key()] for m in data.elements]
    irreps = []
    for ell in range(n):
        character = []
        for cls in data.classes:
            a = exps[cls[0]]
            character.append(z ** (ell * a))
        irreps.append(
            IrrepData(ell, 1, [mat(((z ** ell,),), n)], character)
        )
    return irreps


def _dihedral_word(data, m):
    """Write a D_n element as (a, reflected) with m = g^a h^reflected."""
    n_field = conductor(data.spec)
    two_n = 2 * data.spec.n
    z = root_of_unity(two_n).embed_into(n_field)
    zero = CycloNum.zero(n_field)
    diagonal = m[0][1] == zero and m[1][0] == zero
    power_of = {(z ** a).key(): a for a in range(two_n)}
    if diagonal:
        return power_of[m[1][1].key()], 0
    i = root_of_unity(4).embed_into(n_field)
    # g^a h = [[0, i z^-a], [i z^a, 0]]
    return power_of[(m[1][0] / i).key()], 1


def _dihedral_irreps(data):
    n = data.spec.n
    n_field = conductor(data.spec)
    z = root_of_unity(2 * n).embed_into(n_field)
    i = root_of_unity(4).embed_into(n_field)
    one = CycloNum.one(n_field)
    words = [_dihedral_word(data, m) for m in data.elements]

    def one_dim(g_val, h_val):
        return [
            (g_val ** words[cls[0]][0]) * (h_val ** words[cls[0]][1])
            for cls in data.classes
        ]

    irreps = [
        IrrepData(0, 1, [mat(((1,),), n_field), mat(((1,),), n_field)],
                  one_dim(one, one)),
        IrrepData("0'", 1, [mat(((1,),), n_field), mat(((-1,),), n_field)],
                  one_dim(one, -one)),
    ]
    for ell in range(1, n):
        g_mat = mat(((z ** (-ell), 0), (0, z ** ell)), n_field)
        h_mat = mat(((0, i ** ell), (i ** ell, 0)), n_field)
        character = []
        for cls in data.classes:
            a, refl = words[cls[0]]
            if refl:
                character.append(CycloNum.zero(n_field))
            else:
                character.append(z ** (ell * a) + z ** (-ell * a))
        irreps.append(IrrepData(ell, 2, [g_mat, h_mat], character))
    i_n = i ** n
    irreps.append(
        IrrepData(n, 1, [mat(((-1,),), n_field), mat(((i_n,),), n_field)],
                  one_dim(-one, i_n))
    )
    irreps.append(
        IrrepData("%d'" % n, 1,
                  [mat(((-1,),), n_field), mat(((-i_n,),), n_field)],
                  one_dim(-one, -i_n))
    )
    return irreps


def _cf_mul(a, b):
    return [x * y for x, y in zip(a, b)]


def _cf_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _exceptional_irreps(data):
    """Characters of T, O, I walked out along the tensor rules of the graph."""
    spec = data.spec
    n_field = conductor(spec)
    chi_v = [mat_trace(data.elements[cls[0]]) for cls in data.classes]
    chi_0 = [CycloNum.one(n_field) for _ in data.classes]
    one_dims = _one_dim_characters(data)
    nontrivial = [
        c for c in one_dims
        if any(not (v == CycloNum.one(n_field)) for v in c)
    ]

    def entry(label, dim, char):
        assert char[data.class_of[0]].to_fraction() == dim, label
        return IrrepData(label, dim, None, char)

    if spec.family == TETRAHEDRAL:
        # order the two cube-root twists deterministically by their values
        nontrivial.sort(key=lambda c: [v.key() for v in c])
        psi_plus, psi_minus = nontrivial
        chi_1 = chi_v
        chi_2 = _cf_sub(_cf_mul(chi_1, chi_v), chi_0)
        return [
            entry("0", 1, chi_0),
            entry("1", 2, chi_1),
            entry("2", 3, chi_2),
            entry("3+", 2, _cf_mul(psi_plus, chi_v)),
            entry("3-", 2, _cf_mul(psi_minus, chi_v)),
            entry("4+", 1, psi_plus),
            entry("4-", 1, psi_minus),
        ]
    if spec.family == OCTAHEDRAL:
        sgn = nontrivial[0]
        chi_1 = chi_v
        chi_2 = _cf_sub(_cf_mul(chi_1, chi_v), chi_0)
        chi_3 = _cf_sub(_cf_mul(chi_2, chi_v), chi_1)
        chi_5 = _cf_mul(sgn, chi_v)
        chi_4p = _cf_sub(_cf_mul(chi_5, chi_v), sgn)
        chi_4m = _cf_sub(_cf_sub(_cf_mul(chi_3, chi_v), chi_2), chi_4p)
        return [
            entry("0", 1, chi_0),
            entry("1", 2, chi_1),
            entry("2", 3, chi_2),
            entry("3", 4, chi_3),
            entry("4+", 3, chi_4p),
            entry("4-", 2, chi_4m),
            entry("5", 2, chi_5),
            entry("6+", 1, sgn),
        ]
    # binary icosahedral
    chi = [chi_0, chi_v]
    for j in range(2, 6):
        chi.append(_cf_sub(_cf_mul(chi[j - 1], chi_v), chi[j - 2]))
    # the second 3-dim irrep is the Galois twist sqrt5 -> -sqrt5 of node 2
    # (fixes i = zeta_20^5, sends zeta_5 to zeta_5^2: exponent 17 mod 20)
    chi_6m = [v.galois(17) for v in chi[2]]
    chi_6p = _cf_sub(_cf_sub(_cf_mul(chi[5], chi_v), chi[4]), chi_6m)
    chi_7 = _cf_sub(_cf_mul(chi_6p, chi_v), chi[5])
    return [
        entry("0", 1, chi[0]),
        entry("1", 2, chi[1]),
        entry("2", 3, chi[2]),
        entry("3", 4, chi[3]),
        entry("4", 5, chi[4]),
        entry("5", 6, chi[5]),
        entry("6+", 4, chi_6p),
        entry("6-", 3, chi_6m),
        entry("7", 2, chi_7),
    ]


def irreps(spec):
    return group_data(spec).irreps


def irrep_by_label(spec, label):
    for rep in group_data(spec).irreps:
        if rep.label == label or str(rep.label) == str(label):
            return rep
    raise KeyError("no irrep labelled %r" % (label,))


# ---------------------------------------------------------------------------
# character projectors


def character_projector(spec, label, k):
    """The exact isotypic projector (dim/|G|) sum of conj(chi(g)) g^(x k)."""
    data = group_data(spec)
    rep = irrep_by_label(spec, label)
    scale = Fraction(rep.dim, len(data.elements))
    n_field = conductor(spec)
    minus_one = mat(((-1, 0), (0, -1)), n_field)
    # fold g and -g together: (-g)^(x k) = (-1)^k g^(x k)
    weights = {}
    skip = set()
    sign = -1 if k % 2 else 1
    for idx, m in enumerate(data.elements):
        if idx in skip:
            continue
        w = rep.character[data.class_of[idx]].conjugate() * scale
        neg_idx = data.index.get(mat_key(mat_mul(minus_one, m)))
        if neg_idx is not None and neg_idx != idx:
            skip.add(neg_idx)
            w_neg = rep.character[data.class_of[neg_idx]].conjugate() * scale
            w = w + w_neg * sign
        if not w.is_zero():
            weights[idx] = w
    acc = {}
    for idx, w in weights.items():
        gk = te.group_action(data.elements[idx], k)
        for key, val in gk.entries.items():
            prod = w * val
            if key in acc:
                acc[key] = acc[key] + prod
            else:
                acc[key] = prod
    return te.SparseEndo(k, acc)


@lru_cache(maxsize=None)
def centralizer_basis(spec, k, guard=8):
    """Exact basis of End_G(V^(x k)) from the commutant nullspace solver."""
    return te.commutant_basis(generators(spec), k, guard)


def group_to_json(spec):
    data = group_data(spec)
    return {
        "family": spec.family,
        "name": spec.name,
        "order": len(data.elements),
        "elements": [
            [[cell.to_json() for cell in row] for row in m]
            for m in data.elements
        ],
        "irreps": [
            {
                "label": str(rep.label),
                "dim": rep.dim,
                "character": [v.to_json() for v in rep.character],
            }
            for rep in data.irreps
        ],
    }
