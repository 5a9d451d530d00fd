"""Finitely generated abelian groups presented by integer relation matrices.

A group is Z^n modulo the sublattice spanned by the rows of its relation
matrix.  All questions (equality, kernels, pullbacks, solvability) reduce
to Smith normal form, so everything here is exact and decidable.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import intmat
from .intmat import as_int_matrix, zeros


class ParentMismatch(ValueError):
    pass


class TargetMismatch(ValueError):
    pass


class IllDefinedMorphism(ValueError):
    pass


class FgAbGroup:
    """Z^n_generators / (row lattice of `relations`).

    The normal form (invariant factors and free rank) is computed once at
    construction; instances are immutable afterwards.
    """

    def __init__(self, n_generators, relations=None, name=None):
        if n_generators < 0:
            raise ValueError("negative generator count")
        self.n_generators = int(n_generators)
        if relations is None:
            relations = zeros(0, self.n_generators)
        self.relations = as_int_matrix(relations, (0, self.n_generators))
        if self.relations.shape[1] != self.n_generators:
            raise ValueError(
                f"relation rows have length {self.relations.shape[1]}, "
                f"expected {self.n_generators}")
        self.name = name
        # Smith data of relations^T turns lattice membership into
        # per-coordinate divisibility checks.
        self._snf = intmat.smith(self.relations.T)
        n = self.n_generators
        diag = self._snf.diag
        self._mods = [diag[i] if i < len(diag) else 0 for i in range(n)]
        self.invariant_factors = tuple(d for d in self._mods if d >= 2)
        self.free_rank = sum(1 for d in self._mods if d == 0)
        assert self.free_rank + len(self.invariant_factors) <= max(n, 0)

    # -- elements ---------------------------------------------------------

    def element(self, coords):
        return GroupElement(self, coords)

    def zero(self):
        return GroupElement(self, [0] * self.n_generators)

    def generator(self, i):
        coords = [0] * self.n_generators
        coords[i] = 1
        return GroupElement(self, coords)

    def canonical_key(self, coords):
        """Tuple identifying the element class (residues in SNF basis)."""
        y = self._snf.U @ np.array([int(c) for c in coords], dtype=object)
        return tuple(int(y[i]) % m if (m := self._mods[i]) else int(y[i])
                     for i in range(self.n_generators))

    def canonical_coords(self, coords):
        """The canonical representative of the class of `coords`."""
        key = self.canonical_key(coords)
        x = self._snf.U_inv @ np.array(key, dtype=object)
        return tuple(int(v) for v in x)

    def key_add(self, k1, k2):
        """Add two canonical keys (classes add coordinatewise mod factors)."""
        return tuple((a + b) % m if m else a + b
                     for a, b, m in zip(k1, k2, self._mods))

    def in_relation_lattice(self, coords):
        return all(k == 0 for k in self.canonical_key(coords))

    # -- structure --------------------------------------------------------

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if not self.is_finite:
            raise ValueError("infinite group")
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def elements(self):
        """All elements of a finite group, as canonical representatives."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        ranges = [range(m) for m in self._mods]
        for y in itertools.product(*ranges):
            x = self._snf.U_inv @ np.array(y, dtype=object)
            yield GroupElement(self, [int(v) for v in x])

    def describe(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        label = self.name or self.describe()
        return f"FgAbGroup({label})"


class GroupElement:
    def __init__(self, parent, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != parent.n_generators:
            raise ValueError(
                f"coordinate length {len(coords)} != {parent.n_generators}")
        self.parent = parent
        self.coords = coords

    def key(self):
        return self.parent.canonical_key(self.coords)

    def canonical(self):
        return GroupElement(self.parent, self.parent.canonical_coords(self.coords))

    def __add__(self, other):
        _require_same_parent(self, other)
        return GroupElement(self.parent,
                            [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        _require_same_parent(self, other)
        return GroupElement(self.parent,
                            [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return GroupElement(self.parent, [-a for a in self.coords])

    def __mul__(self, k):
        return GroupElement(self.parent, [int(k) * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        _require_same_parent(self, other)
        return self.key() == other.key()

    def __hash__(self):
        return hash((id(self.parent), self.key()))

    def __repr__(self):
        return f"<{self.coords} in {self.parent!r}>"


def _require_same_parent(a, b):
    if a.parent is not b.parent:
        raise ParentMismatch(f"elements of {a.parent!r} vs {b.parent!r}")


def element_eq(group, a, b):
    """True iff a - b lies in the relation lattice of `group`."""
    if a.parent is not group or b.parent is not group:
        raise ParentMismatch("element does not belong to the given group")
    return a.key() == b.key()


class GroupMorphism:
    """Morphism given by an integer matrix on generator coordinates.

    Well-definedness (relations map into relations) is checked at
    construction and can only fail for hand-built matrices.
    """

    def __init__(self, source, target, matrix, name=None, _skip_check=False):
        self.source = source
        self.target = target
        self.matrix = as_int_matrix(
            matrix, (target.n_generators, source.n_generators))
        if self.matrix.shape != (target.n_generators, source.n_generators):
            raise ValueError(
                f"matrix shape {self.matrix.shape} != "
                f"({target.n_generators}, {source.n_generators})")
        self.name = name
        self._solve_cache = None
        if not _skip_check:
            for row in self.source.relations:
                image = self.matrix @ row
                if not self.target.in_relation_lattice(image):
                    raise IllDefinedMorphism(
                        f"relation {list(row)} maps to {list(image)} "
                        "outside the target relation lattice")

    def __call__(self, x):
        if x.parent is not self.source:
            raise ParentMismatch("argument not in the source group")
        return GroupElement(self.target, self.matrix @ np.array(x.coords, dtype=object))

    def then(self, other):
        """Diagrammatic composition: apply self first, then `other`."""
        if other.source is not self.target:
            raise TargetMismatch("composition mismatch")
        return GroupMorphism(self.source, other.target,
                             other.matrix @ self.matrix)

    def __repr__(self):
        label = self.name or f"{self.source.describe()} -> {self.target.describe()}"
        return f"GroupMorphism({label})"

    def _target_solver(self):
        # Smith data of [matrix | target relation columns], cached: solving
        # f(x) = y means solving this system exactly once per morphism.
        if self._solve_cache is None:
            C = intmat.hstack(self.matrix, self.target.relations.T)
            self._solve_cache = (C, intmat.smith(C))
        return self._solve_cache


def identity_morphism(G):
    return GroupMorphism(G, G, intmat.identity(G.n_generators), name="id")


def zero_morphism(G, H):
    return GroupMorphism(G, H, zeros(H.n_generators, G.n_generators), name="0")


def scalar_morphism(G, k):
    return GroupMorphism(G, G, int(k) * intmat.identity(G.n_generators))


def morphism_eq(f, g):
    """Equality of morphisms: generator images agree in the target."""
    if f.source is not g.source or f.target is not g.target:
        return False
    diff = f.matrix - g.matrix
    return all(f.target.in_relation_lattice(diff[:, j])
               for j in range(f.source.n_generators))


def free_group(rank, name=None):
    return FgAbGroup(rank, None, name=name)


def cyclic_group(d, name=None):
    return FgAbGroup(1, [[int(d)]], name=name)


def product_group(torsion, free_rank=0, name=None):
    """Z/d1 + Z/d2 + ... + Z^free_rank in the obvious presentation."""
    n = len(torsion) + free_rank
    rows = []
    for i, d in enumerate(torsion):
        row = [0] * n
        row[i] = int(d)
        rows.append(row)
    return FgAbGroup(n, as_int_matrix(rows, (0, n)), name=name)


def direct_sum(G, H):
    """(G + H, inclusion and projection morphisms)."""
    n, m = G.n_generators, H.n_generators
    rel = zeros(G.relations.shape[0] + H.relations.shape[0], n + m)
    rel[:G.relations.shape[0], :n] = G.relations
    rel[G.relations.shape[0]:, n:] = H.relations
    S = FgAbGroup(n + m, rel)
    i1 = GroupMorphism(G, S, intmat.vstack(intmat.identity(n), zeros(m, n)))
    i2 = GroupMorphism(H, S, intmat.vstack(zeros(n, m), intmat.identity(m)))
    p1 = GroupMorphism(S, G, intmat.hstack(intmat.identity(n), zeros(n, m)))
    p2 = GroupMorphism(S, H, intmat.hstack(zeros(m, n), intmat.identity(m)))
    return S, i1, i2, p1, p2


def _preimage_lattice(M, target_relation_cols):
    """Column generators of {x : M x lies in the given column lattice}."""
    C = intmat.hstack(M, target_relation_cols)
    kb = intmat.kernel_basis(C)
    return kb[:M.shape[1], :]


def kernel(f):
    """(K, incl) with incl: K -> source injective and image = ker f."""
    P = _preimage_lattice(f.matrix, f.target.relations.T)
    t = P.shape[1]
    rel_cols = _preimage_lattice(P, f.source.relations.T)
    K = FgAbGroup(t, rel_cols.T)
    incl = GroupMorphism(K, f.source, P)
    return K, incl


def image(f):
    """(Img, incl) presenting the image subgroup of the target."""
    rel_cols = _preimage_lattice(f.matrix, f.target.relations.T)
    Img = FgAbGroup(f.source.n_generators, rel_cols.T)
    incl = GroupMorphism(Img, f.target, f.matrix)
    return Img, incl


def cokernel(f):
    """Target modulo the image: stack target relations with matrix columns."""
    rel = intmat.vstack(f.target.relations, f.matrix.T)
    return FgAbGroup(f.target.n_generators, rel)


def is_isomorphism(f):
    K, _ = kernel(f)
    return K.is_trivial and cokernel(f).is_trivial


def solve(f, y):
    """Some x with f(x) = y, or None.  Deterministic for fixed input.

    Works modulo the target relations: solves matrix·x + relations·c = y
    through the Smith decomposition, pinning free coordinates to zero.
    """
    if y.parent is not f.target:
        raise ParentMismatch("rhs not in the target group")
    C, snf = f._target_solver()
    z = intmat.solve_linear(C, y.coords, decomposition=snf)
    if z is None:
        return None
    return GroupElement(f.source, z[:f.source.n_generators])


class PullbackResult:
    def __init__(self, group, pr1, pr2, incl):
        self.group = group
        self.pr1 = pr1
        self.pr2 = pr2
        self.incl = incl

    def __iter__(self):
        yield self.group
        yield self.pr1
        yield self.pr2

    def pair(self, p):
        return self.pr1(p), self.pr2(p)

    def from_pair(self, x, y):
        """Element of the pullback group mapping to (x, y), or None."""
        S = self.incl.target
        target = GroupElement(S, list(x.coords) + list(y.coords))
        return solve(self.incl, target)


def pullback(f, g):
    """Fiber product of f and g over their common target.

    Presented as the kernel of the difference map (x, y) -> f(x) - g(y).
    """
    if f.target is not g.target:
        raise TargetMismatch("pullback of morphisms with different targets")
    S, i1, i2, p1, p2 = direct_sum(f.source, g.source)
    diff = GroupMorphism(S, f.target,
                         intmat.hstack(f.matrix, -g.matrix))
    K, incl = kernel(diff)
    pr1 = incl.then(p1)
    pr2 = incl.then(p2)
    return PullbackResult(K, pr1, pr2, incl)


# -- JSON interchange ------------------------------------------------------

def _check_int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"{where}: expected exact integer, got {v!r}")
    return v


def group_from_json(obj, name=None):
    if not isinstance(obj, dict):
        raise ValueError("group record must be an object")
    n = _check_int(obj.get("generators"), "generators")
    rel = obj.get("relations", [])
    for i, row in enumerate(rel):
        for j, v in enumerate(row):
            _check_int(v, f"relations[{i}][{j}]")
    return FgAbGroup(n, as_int_matrix(rel, (0, n)), name=name or obj.get("name"))


def group_to_json(G):
    return {"generators": G.n_generators,
            "relations": [[int(v) for v in row] for row in G.relations]}


def morphism_from_json(obj, source, target, name=None):
    mat = obj.get("matrix")
    if mat is None:
        raise ValueError("morphism record missing 'matrix'")
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            _check_int(v, f"matrix[{i}][{j}]")
    return GroupMorphism(
        source, target,
        as_int_matrix(mat, (target.n_generators, source.n_generators)),
        name=name or obj.get("name"))
