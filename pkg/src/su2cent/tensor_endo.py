"""Exact sparse endomorphisms of the k-fold tensor power of C^2.

Basis vectors of V^(tensor k) are indexed by sign tuples r in {-1,+1}^k.
Matrices are dictionaries mapping (row_tuple, col_tuple) to an exact scalar
(int, Fraction, or CycloNum); zero entries are never stored.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycloNum


# ---------------------------------------------------------------------------
# sign tuples

def all_sign_tuples(k):
    return list(itertools.product((-1, 1), repeat=k))


def weight(r):
    """Number of -1 entries."""
    return sum(1 for x in r if x == -1)


def succ_key(r):
    """Sort key for the weight-then-lexicographic order (1 > -1).

    Sorting ascending by this key lists tuples from largest to smallest.
    """
    return (weight(r), tuple(-x for x in r))


def dominates(r, s):
    """True when r is strictly greater than s in the weight/lex order."""
    return succ_key(r) < succ_key(s)


def neg_tuple(r):
    return tuple(-x for x in r)


@lru_cache(maxsize=None)
def tuple_order(k):
    """All sign tuples of length k, largest first."""
    return tuple(sorted(all_sign_tuples(k), key=succ_key))


# ---------------------------------------------------------------------------
# scalar helpers

def is_zero_scalar(x):
    if isinstance(x, CycloNum):
        return x.is_zero()
    return x == 0


def conj_scalar(x):
    if isinstance(x, CycloNum):
        return x.conjugate()
    return x


def inv_scalar(x):
    if isinstance(x, CycloNum):
        return x.inverse()
    return Fraction(1, 1) / Fraction(x)


# ---------------------------------------------------------------------------


class SparseEndo:
    """Sparse exact endomorphism of V^(tensor k)."""

    __slots__ = ("k", "entries")

    def __init__(self, k, entries=None, prune=True):
        self.k = k
        if entries is None:
            entries = {}
        if prune:
            entries = {
                key: val for key, val in entries.items() if not is_zero_scalar(val)
            }
        self.entries = entries

    # -- constructors --------------------------------------------------

    @staticmethod
    def identity(k):
        return SparseEndo(k, {(r, r): 1 for r in all_sign_tuples(k)}, prune=False)

    @staticmethod
    def zero(k):
        return SparseEndo(k, {}, prune=False)

    @staticmethod
    def matrix_unit(r, s, value=1):
        return SparseEndo(len(r), {(r, s): value})

    # -- structure -----------------------------------------------------

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseEndo):
            return NotImplemented
        if self.k != other.k:
            return False
        if set(self.entries) != set(other.entries):
            return (self - other).is_zero()
        for key, val in self.entries.items():
            if not is_zero_scalar(val - other.entries[key]):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        return "SparseEndo(k=%d, nnz=%d)" % (self.k, len(self.entries))

    def copy(self):
        return SparseEndo(self.k, dict(self.entries), prune=False)

    # -- linear operations ----------------------------------------------

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("tensor degrees differ")
        out = dict(self.entries)
        for key, val in other.entries.items():
            if key in out:
                total = out[key] + val
                if is_zero_scalar(total):
                    del out[key]
                else:
                    out[key] = total
            else:
                out[key] = val
        return SparseEndo(self.k, out, prune=False)

    def __neg__(self):
        return SparseEndo(
            self.k, {key: -val for key, val in self.entries.items()}, prune=False
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if is_zero_scalar(c):
            return SparseEndo.zero(self.k)
        return SparseEndo(self.k, {key: c * val for key, val in self.entries.items()})

    def __mul__(self, other):
        """Matrix product (self applied after other is self*other as maps)."""
        if not isinstance(other, SparseEndo):
            return NotImplemented
        if self.k != other.k:
            raise ValueError("tensor degrees differ")
        by_row = {}
        for (s, u), val in other.entries.items():
            by_row.setdefault(s, []).append((u, val))
        out = {}
        for (r, s), val in self.entries.items():
            cols = by_row.get(s)
            if cols is None:
                continue
            for u, w in cols:
                key = (r, u)
                prod = val * w
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return SparseEndo(self.k, out)

    def tensor(self, other):
        out = {}
        for (r1, s1), v1 in self.entries.items():
            for (r2, s2), v2 in other.entries.items():
                out[(r1 + r2, s1 + s2)] = v1 * v2
        return SparseEndo(self.k + other.k, out)

    def lift(self, k):
        """Embed into End(V^(tensor k)) as self (x) identity on the right."""
        if k < self.k:
            raise ValueError("cannot lift to a smaller degree")
        if k == self.k:
            return self
        out = {}
        for tail in all_sign_tuples(k - self.k):
            for (r, s), val in self.entries.items():
                out[(r + tail, s + tail)] = val
        return SparseEndo(k, out, prune=False)

    def trace(self):
        total = 0
        for (r, s), val in self.entries.items():
            if r == s:
                total = total + val
        return total

    def dagger(self):
        """Conjugate transpose."""
        return SparseEndo(
            self.k,
            {(s, r): conj_scalar(val) for (r, s), val in self.entries.items()},
            prune=False,
        )

    def apply(self, vec):
        """Apply to a sparse vector {tuple: scalar}."""
        out = {}
        by_col = {}
        for (r, s), val in self.entries.items():
            by_col.setdefault(s, []).append((r, val))
        for s, c in vec.items():
            for r, val in by_col.get(s, ()):
                if r in out:
                    out[r] = out[r] + val * c
                else:
                    out[r] = val * c
        return {r: v for r, v in out.items() if not is_zero_scalar(v)}

    def to_json(self):
        items = sorted(
            self.entries.items(), key=lambda kv: (succ_key(kv[0][0]), succ_key(kv[0][1]))
        )
        def enc(v):
            if isinstance(v, CycloNum):
                return v.to_json()
            return str(Fraction(v))
        return {
            "k": self.k,
            "entries": [[list(r), list(s), enc(v)] for (r, s), v in items],
        }


# ---------------------------------------------------------------------------
# operators from the tensor calculus


def tl_generator(k, i):
    """The Temperley-Lieb generator acting in slots i, i+1 (1-indexed)."""
    if not 1 <= i <= k - 1:
        raise ValueError("slot index out of range")
    out = {}
    for prefix in all_sign_tuples(i - 1):
        for tail in all_sign_tuples(k - i - 1):
            minus_plus = prefix + (-1, 1) + tail
            plus_minus = prefix + (1, -1) + tail
            out[(minus_plus, minus_plus)] = 1
            out[(plus_minus, plus_minus)] = 1
            out[(minus_plus, plus_minus)] = -1
            out[(plus_minus, minus_plus)] = -1
    return SparseEndo(k, out, prune=False)


def matrix2_to_endo(matrix):
    """A 2x2 matrix (nested tuples, index 0 <-> v_{-1}) as an endo of V."""
    out = {}
    signs = (-1, 1)
    for a in range(2):
        for b in range(2):
            val = matrix[a][b]
            if not is_zero_scalar(val):
                out[((signs[a],), (signs[b],))] = val
    return SparseEndo(1, out)


def group_action(matrix, k):
    """The diagonal action g^(tensor k) of a 2x2 matrix as a SparseEndo."""
    if k == 0:
        return SparseEndo.identity(0)
    g1 = matrix2_to_endo(matrix)
    result = g1
    for _ in range(k - 1):
        result = result.tensor(g1)
    return result


def apply_gate_left(endo, matrix, slot):
    """(1 x .. x g x .. x 1) * endo with g in the given 1-indexed slot."""
    i = slot - 1
    out = {}
    signs = (-1, 1)
    for (r, s), val in endo.entries.items():
        rs = r[i]
        for a in range(2):
            coeff = matrix[a][(rs + 1) // 2]
            if is_zero_scalar(coeff):
                continue
            new_r = r[:i] + (signs[a],) + r[i + 1:]
            key = (new_r, s)
            prod = coeff * val
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return SparseEndo(endo.k, out)


def apply_gate_right(endo, matrix, slot):
    """endo * (1 x .. x g x .. x 1) with g in the given 1-indexed slot."""
    i = slot - 1
    out = {}
    signs = (-1, 1)
    for (r, s), val in endo.entries.items():
        row_idx = (s[i] + 1) // 2
        for b in range(2):
            coeff = matrix[row_idx][b]
            if is_zero_scalar(coeff):
                continue
            new_s = s[:i] + (signs[b],) + s[i + 1:]
            key = (r, new_s)
            prod = val * coeff
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return SparseEndo(endo.k, out)


def group_mul_left(matrix, endo):
    """g^(tensor k) * endo computed one tensor slot at a time."""
    result = endo
    for slot in range(1, endo.k + 1):
        result = apply_gate_left(result, matrix, slot)
    return result


def group_mul_right(endo, matrix):
    """endo * g^(tensor k) computed one tensor slot at a time."""
    result = endo
    for slot in range(1, endo.k + 1):
        result = apply_gate_right(result, matrix, slot)
    return result


def commutes_with(endo, matrix):
    """Exact test of g^(tensor k) X = X g^(tensor k)."""
    return group_mul_left(matrix, endo) == group_mul_right(endo, matrix)


def conditional_expectation(a):
    """Averaging map End(V^(tensor k)) -> End(V^(tensor k-1)) over the last slot."""
    if a.k < 1:
        raise ValueError("need k >= 1")
    out = {}
    for (r, s), val in a.entries.items():
        if r[-1] != s[-1]:
            continue
        key = (r[:-1], s[:-1])
        if key in out:
            out[key] = out[key] + val
        else:
            out[key] = val
    half = Fraction(1, 2)
    return SparseEndo(a.k - 1, {key: half * val for key, val in out.items()})


def trace_form(a, b):
    """tr(a*b) without forming the product."""
    if a.k != b.k:
        raise ValueError("tensor degrees differ")
    total = 0
    for (r, s), val in a.entries.items():
        w = b.entries.get((s, r))
        if w is not None:
            total = total + val * w
    return total


def unique_compression(a):
    """The unique b in End(V^(tensor k)) with a*e_k = (b x 1)*e_k.

    a acts on V^(tensor (k+1)); the formula reads the coefficients of a on
    the two sign patterns of the last two slots.
    """
    if a.k < 2:
        raise ValueError("need k+1 >= 2")
    k = a.k - 1
    out = {}
    for r in all_sign_tuples(k):
        for s in all_sign_tuples(k):
            t = -s[-1]
            row = r + (t,)
            first = a.entries.get((row, s + (t,)), 0)
            second = a.entries.get((row, s[:-1] + (t, s[-1])), 0)
            val = first - second
            if not is_zero_scalar(val):
                out[(r, s)] = val
    return SparseEndo(k, out, prune=False)


# ---------------------------------------------------------------------------
# exact linear algebra over sparse coordinate dictionaries


class VectorSpan:
    """Echelon basis of sparse vectors keyed by hashable coordinates.

    Coordinates are ordered by their sort key; each stored row is normalized
    to pivot coefficient 1 and reduced against all earlier pivots.
    """

    def __init__(self, coord_key=None):
        self.coord_key = coord_key or (lambda c: c)
        self.rows = {}  # pivot coordinate -> row dict

    def _reduce(self, vec):
        vec = dict(vec)
        changed = True
        while changed:
            changed = False
            for coord in sorted(vec, key=self.coord_key):
                if is_zero_scalar(vec[coord]):
                    del vec[coord]
                    changed = True
                    continue
                row = self.rows.get(coord)
                if row is None:
                    continue
                factor = vec[coord]
                for c2, v2 in row.items():
                    if c2 in vec:
                        vec[c2] = vec[c2] - factor * v2
                    else:
                        vec[c2] = -(factor * v2)
                changed = True
                break
        return {c: v for c, v in vec.items() if not is_zero_scalar(v)}

    def residual(self, vec):
        return self._reduce(vec)

    def contains(self, vec):
        return not self._reduce(vec)

    def add(self, vec):
        """Insert a vector; returns True if it enlarged the span."""
        rem = self._reduce(vec)
        if not rem:
            return False
        pivot = min(rem, key=self.coord_key)
        inv = inv_scalar(rem[pivot])
        row = {c: inv * v for c, v in rem.items()}
        row[pivot] = 1
        # keep earlier rows reduced against the new pivot
        for piv, existing in self.rows.items():
            if pivot in existing:
                factor = existing[pivot]
                for c2, v2 in row.items():
                    if c2 in existing:
                        existing[c2] = existing[c2] - factor * v2
                    else:
                        existing[c2] = -(factor * v2)
                self.rows[piv] = {
                    c: v for c, v in existing.items() if not is_zero_scalar(v)
                }
        self.rows[pivot] = row
        return True

    @property
    def dim(self):
        return len(self.rows)


def endo_span(elements):
    """VectorSpan of endomorphisms, coordinates ordered by the tuple order."""
    span = VectorSpan(coord_key=lambda rs: (succ_key(rs[0]), succ_key(rs[1])))
    for elem in elements:
        span.add(elem.entries)
    return span


def algebra_closure(seed, generators=None, max_dim=None):
    """Basis of the unital algebra generated by the seed elements.

    Multiplies span representatives by the generators until the span stops
    growing; returns the list of echelon basis rows as SparseEndos.
    """
    if not seed:
        raise ValueError("empty seed")
    k = seed[0].k
    gens = list(generators) if generators is not None else list(seed)
    span = VectorSpan(coord_key=lambda rs: (succ_key(rs[0]), succ_key(rs[1])))
    queue = [SparseEndo.identity(k)]
    span.add(queue[0].entries)
    for elem in seed:
        if span.add(elem.entries):
            queue.append(elem)
    while queue:
        current = queue.pop()
        for g in gens:
            for product in (current * g, g * current):
                if span.add(product.entries):
                    queue.append(product)
                    if max_dim is not None and span.dim > max_dim:
                        raise RuntimeError("span exceeded expected dimension")
    return [SparseEndo(k, dict(row)) for row in span.rows.values()]


# ---------------------------------------------------------------------------
# commutant solver


class SolverGuardError(RuntimeError):
    """Raised when a commutant solve exceeds the configured size guard."""


def commutant_basis(generator_matrices, k, guard=8):
    """Exact basis of {X : X g^(tensor k) = g^(tensor k) X for all generators}.

    Gaussian elimination over the cyclotomic field on the sparse linear
    system [X, g] = 0 stacked over the generator matrices.
    """
    if k > guard:
        raise SolverGuardError(
            "commutant solve at k=%d exceeds guard %d" % (k, guard)
        )
    tuples = tuple_order(k)
    var_index = {}
    for r in tuples:
        for s in tuples:
            var_index[(r, s)] = len(var_index)

    pivots = {}  # var -> fully forward-reduced row {var: scalar}

    def insert_row(row):
        row = dict(row)
        while row:
            var = min(row, key=var_index.get)
            if is_zero_scalar(row[var]):
                del row[var]
                continue
            pivot_row = pivots.get(var)
            if pivot_row is None:
                inv = inv_scalar(row[var])
                pivots[var] = {c: inv * v for c, v in row.items()}
                pivots[var][var] = 1
                return
            factor = row[var]
            for c, v in pivot_row.items():
                if c in row:
                    row[c] = row[c] - factor * v
                    if is_zero_scalar(row[c]):
                        del row[c]
                else:
                    row[c] = -(factor * v)

    for matrix in generator_matrices:
        G = group_action(matrix, k).entries
        by_row = {}
        by_col = {}
        for (a, b), val in G.items():
            by_row.setdefault(a, []).append((b, val))
            by_col.setdefault(b, []).append((a, val))
        for r in tuples:
            for u in tuples:
                row = {}
                for s, gv in by_col.get(u, ()):
                    key = (r, s)
                    row[key] = row.get(key, 0) + gv
                for s, gv in by_row.get(r, ()):
                    key = (s, u)
                    row[key] = row.get(key, 0) - gv
                row = {c: v for c, v in row.items() if not is_zero_scalar(v)}
                if row:
                    insert_row(row)

    free_vars = [v for v in var_index if v not in pivots]
    free_vars.sort(key=var_index.get)
    # back-substitution per free variable, pivots in decreasing order
    pivot_vars = sorted(pivots, key=var_index.get, reverse=True)
    basis = []
    for fv in free_vars:
        x = {fv: 1}
        for pv in pivot_vars:
            row = pivots[pv]
            total = 0
            for c, v in row.items():
                if c == pv:
                    continue
                xc = x.get(c)
                if xc is not None:
                    total = total + v * xc
            if not is_zero_scalar(total):
                x[pv] = -total
        basis.append(SparseEndo(k, x))
    basis.sort(key=lambda e: min((succ_key(r), succ_key(s)) for r, s in e.entries))
    return basis
