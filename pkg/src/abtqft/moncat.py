"""Symmetric monoidal categories built from morphisms of abelian groups.

A morphism phi: A_mor -> A_ob yields a category whose objects are the
elements of A_ob and whose morphisms a -> b are the solutions x of
a + phi(x) = b, composed by addition.  Commutative squares of group
morphisms induce monoidal functors; their homotopy (essential) fibers
admit an explicit description as a fiber product, and a diagonal fill
lambda induces a comparison functor onto the kernel category which is an
equivalence exactly when the source's vertical morphism is invertible.
"""

from __future__ import annotations

from . import fgab
from .analytic import AnalyticMorphism
from .fgab import (FgAbGroup, GroupMorphism, element_eq,
                   morphism_eq, kernel, pullback, solve, is_isomorphism)
from . import intmat


class NonComposable(ValueError):
    pass


class HomMembershipError(ValueError):
    pass


class TriangleMismatch(ValueError):
    pass


class HomSet:
    """Coset presentation of a hom-set: particular + kernel.

    `kernel_group` and `kernel_incl` present the subgroup of the ambient
    morphism group acting simply transitively on the hom-set; the coset is
    never enumerated unless asked, so infinite hom-sets are first-class.
    """

    EMPTY = "empty"
    NONEMPTY = "nonempty"

    def __init__(self, particular, kernel_group, kernel_incl, member_fn):
        self.particular = particular
        self.kernel_group = kernel_group
        self.kernel_incl = kernel_incl
        self._member = member_fn

    @property
    def status(self):
        return self.EMPTY if self.particular is None else self.NONEMPTY

    @property
    def is_empty(self):
        return self.particular is None

    @property
    def kernel_generators(self):
        if self.kernel_incl is None:
            return []
        return [self.kernel_incl(self.kernel_group.generator(i))
                for i in range(self.kernel_group.n_generators)]

    def contains(self, x):
        return self._member(x)

    def elements(self):
        """Enumerate the coset (kernel subgroup must be finite)."""
        if self.is_empty:
            return
        if self.kernel_group is None or self.kernel_group.is_trivial:
            yield self.particular
            return
        for k in self.kernel_group.elements():
            yield self.particular + self.kernel_incl(k)

    def element_keys(self):
        return {x.key() for x in self.elements()}


class CatMorphism:
    """A morphism src -> tgt carried by the element `x` of A_mor."""

    def __init__(self, cat, src, tgt, x):
        if not cat.hom_contains(src, tgt, x):
            raise HomMembershipError(
                f"{x!r} is not a morphism {src!r} -> {tgt!r}")
        self.cat = cat
        self.src = src
        self.tgt = tgt
        self.x = x

    def then(self, other):
        return self.cat.compose(self, other)

    def __repr__(self):
        return f"CatMorphism({self.x!r}: {self.src!r} -> {self.tgt!r})"


class MorTensorCat:
    """The symmetric monoidal category of a group morphism phi.

    Objects are elements of phi's target, Hom(a, b) = {x : a + phi(x) = b},
    composition and tensor are sums, the unit is zero and the dual of an
    object is its negative.  Every object is invertible, so the category
    is a groupoid.

    phi may also be an AnalyticMorphism (exp, inclusions, scalings); the
    category then works with floats under tolerance equality, and only
    the coset operations are available (the exact fiber machinery needs
    integer presentations).
    """

    def __init__(self, phi):
        self.phi = phi
        self.analytic = isinstance(phi, AnalyticMorphism)
        self.obj_group = phi.target
        self.mor_group = phi.source
        self._kernel = None

    @classmethod
    def from_group(cls, A):
        """A^tensor: the discrete groupoid on A (phi from the zero group)."""
        zero = FgAbGroup(0, None, name="0")
        return cls(GroupMorphism(zero, A, intmat.zeros(A.n_generators, 0)))

    def kernel_pair(self):
        if self._kernel is None:
            self._kernel = kernel(self.phi)
        return self._kernel

    def unit(self):
        return self.obj_group.zero()

    def _ob_eq(self, a, b):
        if self.analytic:
            return self.obj_group.eq(a, b)
        return element_eq(self.obj_group, a, b)

    def hom(self, a, b):
        """Hom(a, b) as a coset; empty iff b - a misses the image of phi."""
        if self.analytic:
            particular = self.phi.lift(self.obj_group.add(b, -a))
            return AnalyticHomSet(self, a, b, particular)
        if a.parent is not self.obj_group or b.parent is not self.obj_group:
            raise fgab.ParentMismatch("objects must live in the object group")
        particular = solve(self.phi, b - a)
        K, incl = self.kernel_pair()

        def member(x):
            return element_eq(self.obj_group, a + self.phi(x), b)

        if particular is None:
            return HomSet(None, K, incl, member)
        return HomSet(particular, K, incl, member)

    def hom_contains(self, a, b, x):
        if self.analytic:
            return self.obj_group.eq(self.obj_group.add(a, self.phi(x)), b)
        if x.parent is not self.mor_group:
            raise fgab.ParentMismatch("morphism carrier must live in A_mor")
        return element_eq(self.obj_group, a + self.phi(x), b)

    def morphism(self, x, src, tgt):
        return CatMorphism(self, src, tgt, x)

    def identity(self, a):
        return CatMorphism(self, a, a, self.mor_group.zero())

    def compose(self, m1, m2):
        """m1 followed by m2; carried by the sum of the carriers."""
        if m1.cat is not self or m2.cat is not self:
            raise NonComposable("morphisms from different categories")
        if not self._ob_eq(m1.tgt, m2.src):
            raise NonComposable(f"target {m1.tgt!r} != source {m2.src!r}")
        return CatMorphism(self, m1.src, m2.tgt, m1.x + m2.x)

    def tensor_objects(self, a, b):
        if self.analytic:
            return self.obj_group.add(a, b)
        return a + b

    def tensor_morphisms(self, m1, m2):
        if self.analytic:
            return CatMorphism(self, self.obj_group.add(m1.src, m2.src),
                               self.obj_group.add(m1.tgt, m2.tgt),
                               self.mor_group.add(m1.x, m2.x))
        return CatMorphism(self, m1.src + m2.src, m1.tgt + m2.tgt,
                           m1.x + m2.x)

    def dual(self, a):
        if self.analytic:
            return self.obj_group.neg(a)
        return -a

    def __repr__(self):
        return f"MorTensorCat({self.phi!r})"


class AnalyticHomSet:
    """Hom-set of an analytic category: a float particular plus the
    kernel of phi (a list of generators, or None for a continuous one)."""

    def __init__(self, cat, a, b, particular):
        self.cat = cat
        self.a = a
        self.b = b
        self.particular = particular

    @property
    def status(self):
        return HomSet.EMPTY if self.particular is None else HomSet.NONEMPTY

    @property
    def is_empty(self):
        return self.particular is None

    @property
    def kernel_generators(self):
        return self.cat.phi.kernel_generators()

    def contains(self, x):
        return self.cat.hom_contains(self.a, self.b, x)


def hom(cat, a, b):
    return cat.hom(a, b)


def compose(cat, m1, m2):
    return cat.compose(m1, m2)


def tensor(cat, m1, m2):
    return cat.tensor_morphisms(m1, m2)


def dual(cat, a):
    return cat.dual(a)


class CommSquare:
    """A morphism in the arrow category of abelian groups.

    Vertical legs f_mor, f_ob over horizontal phi_H, phi_G; the square
    must commute, which is checked on construction.
    """

    def __init__(self, phi_H, phi_G, f_ob, f_mor):
        if f_ob.source is not phi_H.target or f_ob.target is not phi_G.target:
            raise fgab.TargetMismatch("f_ob does not connect the object groups")
        if f_mor.source is not phi_H.source or f_mor.target is not phi_G.source:
            raise fgab.TargetMismatch("f_mor does not connect the morphism groups")
        if not morphism_eq(phi_H.then(f_ob), f_mor.then(phi_G)):
            raise fgab.IllDefinedMorphism("square does not commute")
        self.phi_H = phi_H
        self.phi_G = phi_G
        self.f_ob = f_ob
        self.f_mor = f_mor

    def source_cat(self):
        return MorTensorCat(self.phi_H)

    def target_cat(self):
        return MorTensorCat(self.phi_G)


class MonoidalFunctor:
    """Functor between MorTensorCats acting linearly on objects/carriers."""

    def __init__(self, source, target, object_map, carrier_map, name=None):
        self.source = source
        self.target = target
        self._object_map = object_map
        self._carrier_map = carrier_map
        self.name = name

    def apply_object(self, a):
        return self._object_map(a)

    def apply(self, m):
        return CatMorphism(self.target, self._object_map(m.src),
                           self._object_map(m.tgt), self._carrier_map(m.x))

    def preserves_unit(self):
        return element_eq(self.target.obj_group,
                          self._object_map(self.source.unit()),
                          self.target.unit())

    def preserves_tensor_on(self, m1, m2):
        lhs = self.apply(self.source.tensor_morphisms(m1, m2))
        rhs = self.target.tensor_morphisms(self.apply(m1), self.apply(m2))
        return (element_eq(self.target.mor_group, lhs.x, rhs.x)
                and element_eq(self.target.obj_group, lhs.src, rhs.src))

    def preserves_composition_on(self, m1, m2):
        lhs = self.apply(self.source.compose(m1, m2))
        rhs = self.target.compose(self.apply(m1), self.apply(m2))
        return element_eq(self.target.mor_group, lhs.x, rhs.x)


def functor_from_square(square):
    """The monoidal functor phi_H^tensor -> phi_G^tensor of a square."""
    src = square.source_cat()
    tgt = square.target_cat()
    return MonoidalFunctor(src, tgt,
                           object_map=square.f_ob,
                           carrier_map=square.f_mor,
                           name="functor_from_square")


class HofibCat:
    """Homotopy fiber of the functor of a commutative square.

    Objects are pairs (g, h) with phi_G(g) = f_ob(h); the pair structure
    is the fiber product of phi_G and f_ob.  Morphisms (g,h) -> (g',h')
    are the x in H_mor solving f_mor(x) = g' - g and phi_H(x) = h' - h.
    """

    def __init__(self, square):
        self.square = square
        pb = pullback(square.phi_G, square.f_ob)
        self.object_group = pb.group
        self.pullback = pb
        # the two constraints stacked into one morphism out of H_mor
        pair_target, i1, i2, _, _ = fgab.direct_sum(
            square.phi_G.source, square.phi_H.target)
        self._pair_group = pair_target
        self._i1 = i1
        self._i2 = i2
        self.stacked = GroupMorphism(
            square.phi_H.source, pair_target,
            i1.matrix @ square.f_mor.matrix + i2.matrix @ square.phi_H.matrix)
        self._stacked_kernel = None

    def unit(self):
        return (self.square.phi_G.source.zero(), self.square.phi_H.target.zero())

    def is_object(self, g, h):
        if g.parent is not self.square.phi_G.source:
            raise fgab.ParentMismatch("g must live in G_mor")
        if h.parent is not self.square.phi_H.target:
            raise fgab.ParentMismatch("h must live in H_ob")
        return element_eq(self.square.phi_G.target,
                          self.square.phi_G(g), self.square.f_ob(h))

    def require_object(self, g, h):
        if not self.is_object(g, h):
            raise ValueError(f"({g!r}, {h!r}) is not an object: "
                             "phi_G(g) != f_ob(h)")

    def object_from_pair(self, g, h):
        self.require_object(g, h)
        return self.pullback.from_pair(g, h)

    def tensor(self, p, q):
        return (p[0] + q[0], p[1] + q[1])

    def _pair_element(self, g, h):
        return self._i1(g) + self._i2(h)

    def hom(self, p, q):
        """Solutions of the two simultaneous constraints, as a coset."""
        g, h = p
        g2, h2 = q
        self.require_object(g, h)
        self.require_object(g2, h2)
        rhs = self._pair_element(g2 - g, h2 - h)
        particular = solve(self.stacked, rhs)
        if self._stacked_kernel is None:
            self._stacked_kernel = kernel(self.stacked)
        K, incl = self._stacked_kernel

        def member(x):
            return element_eq(self._pair_group, self.stacked(x), rhs)

        return HomSet(particular, K, incl, member)

    def hom_contains(self, p, q, x):
        rhs = self._pair_element(q[0] - p[0], q[1] - p[1])
        return element_eq(self._pair_group, self.stacked(x), rhs)


def hofiber(square):
    return HofibCat(square)


def hofiber_hom(fiber, p, q):
    return fiber.hom(p, q)


class DiagonalFill:
    """A diagonal lambda: H_ob -> G_mor splitting the square into two
    commuting triangles: f_mor = lambda . phi_H and f_ob = phi_G . lambda."""

    def __init__(self, square, lam):
        if lam.source is not square.phi_H.target:
            raise fgab.TargetMismatch("lambda must start at H_ob")
        if lam.target is not square.phi_G.source:
            raise fgab.TargetMismatch("lambda must end at G_mor")
        if not morphism_eq(square.f_mor, square.phi_H.then(lam)):
            raise TriangleMismatch("f_mor != lambda . phi_H")
        if not morphism_eq(square.f_ob, lam.then(square.phi_G)):
            raise TriangleMismatch("f_ob != phi_G . lambda")
        self.square = square
        self.lam = lam


class XiFunctor:
    """The comparison functor from the homotopy fiber to ker(phi_G)^tensor.

    Acts on objects as (g, h) -> g - lambda(h); the value provably lies in
    the kernel of phi_G and is re-checked on every application.  Morphisms
    go to identities after the constancy check of the images.
    """

    def __init__(self, fiber, fill):
        if fill.square is not fiber.square:
            raise TriangleMismatch("fill belongs to a different square")
        self.fiber = fiber
        self.fill = fill
        K, incl = kernel(fiber.square.phi_G)
        self.kernel_group = K
        self.kernel_incl = incl
        self.target = MorTensorCat.from_group(K)

    def apply_object(self, p):
        g, h = p
        self.fiber.require_object(g, h)
        value = g - self.fill.lam(h)
        phi_G = self.fiber.square.phi_G
        if not element_eq(phi_G.target, phi_G(value), phi_G.target.zero()):
            raise AssertionError("Xi value escaped the kernel of phi_G")
        coords = solve(self.kernel_incl, value)
        assert coords is not None, "kernel presentation failed to absorb value"
        return value, coords

    def apply_morphism(self, p, q, x):
        """Image of a connecting morphism: the identity, once constancy of
        the object images is verified."""
        if not self.fiber.hom_contains(p, q, x):
            raise HomMembershipError("x does not connect the given objects")
        vp, cp = self.apply_object(p)
        vq, cq = self.apply_object(q)
        G_mor = self.fiber.square.phi_G.source
        if not element_eq(G_mor, vp, vq):
            raise AssertionError(
                "constancy violated: Xi images of connected objects differ")
        return self.target.identity(cp)


def xi_lambda(fiber, fill):
    return XiFunctor(fiber, fill)


def xi_is_equivalence(square, fill):
    """Xi_lambda is an equivalence iff phi_H is an isomorphism."""
    if fill.square is not square:
        raise TriangleMismatch("fill belongs to a different square")
    return is_isomorphism(square.phi_H)


def xi_equivalence_by_enumeration(square, fill):
    """Directly decide whether Xi is an equivalence on finite instances.

    Essential surjectivity plus fully-faithfulness, checked by brute
    force.  Translation invariance reduces hom-set checks over all object
    pairs to checks over single objects (the differences).
    """
    fiber = HofibCat(square)
    xi = XiFunctor(fiber, fill)
    H_mor = square.phi_H.source
    if not (fiber.object_group.is_finite and H_mor.is_finite
            and xi.kernel_group.is_finite):
        raise ValueError("enumeration oracle needs finite groups")

    # essential surjectivity: every kernel element is an object's image
    for k in xi.kernel_group.elements():
        g = xi.kernel_incl(k)
        h = square.phi_H.target.zero()
        if not fiber.is_object(g, h):
            return False
        value, _ = xi.apply_object((g, h))
        if not element_eq(square.phi_G.source, value, g):
            return False

    # fully faithful: difference objects with trivial Xi image must have
    # exactly one connecting morphism from the unit; nontrivial image, none
    buckets = {}
    for x in H_mor.elements():
        key = (square.f_mor(x).key(), square.phi_H(x).key())
        buckets[key] = buckets.get(key, 0) + 1
    lam = fill.lam
    G_mor = square.phi_G.source
    for p in fiber.object_group.elements():
        dg, dh = fiber.pullback.pair(p)
        n_solutions = buckets.get((dg.key(), dh.key()), 0)
        xi_trivial = element_eq(G_mor, dg - lam(dh), G_mor.zero())
        if xi_trivial and n_solutions != 1:
            return False
        if not xi_trivial and n_solutions != 0:
            return False
    return True


def mirror_exp_square(N=24):
    """Exact integral mirror of the analytic square (id_R, exp):
    H = id_Z over G = (Z -> Z/N), with the identity diagonal fill.

    Returns (square, fill).
    """
    H_mor = fgab.free_group(1, "Z")
    H_ob = fgab.free_group(1, "Z")
    G_mor = fgab.free_group(1, "Z")
    G_ob = fgab.cyclic_group(N, f"Z/{N}")
    phi_H = GroupMorphism(H_mor, H_ob, [[1]], name="id")
    phi_G = GroupMorphism(G_mor, G_ob, [[1]], name="proj")
    f_ob = GroupMorphism(H_ob, G_ob, [[1]], name="proj")
    f_mor = GroupMorphism(H_mor, G_mor, [[1]], name="id")
    square = CommSquare(phi_H, phi_G, f_ob, f_mor)
    fill = DiagonalFill(square, GroupMorphism(H_ob, G_mor, [[1]], name="lambda"))
    return square, fill


class AnalyticExpSquare:
    """The analytic square (id_R, exp) with its identity diagonal fill.

    Supports exactly what the numeric pipeline needs: recognizing a pair
    (g, h) in R x_{U(1)} R as an object within tolerance and evaluating
    the comparison functor (g, h) -> g - h into ker(exp) = Z.
    """

    def __init__(self, tolerance=1e-6):
        self.tolerance = float(tolerance)

    def is_object(self, g, h):
        from .analytic import circle_distance
        return circle_distance(g, h) <= self.tolerance

    def xi(self, g, h):
        """g - h, which is an integer up to tolerance for genuine objects."""
        return g - h

    def xi_integer(self, g, h):
        if not self.is_object(g, h):
            raise ValueError(
                f"({g}, {h}) is not an object of the analytic homotopy "
                f"fiber: exp images differ by more than {self.tolerance}")
        return round(g - h)
