"""Random generators and brute-force oracles for the algebraic layers.

Everything here enumerates: the generators build random finite groups,
morphisms and commutative squares, and the oracle helpers answer hom-set
and fiber questions by exhaustive search so the fast coset machinery can
be checked against them.
"""

from __future__ import annotations

import numpy as np

from . import fgab, intmat
from .fgab import FgAbGroup, GroupMorphism

_FACTORS = (2, 3, 4, 5, 6, 8, 9, 12)


def random_finite_group(rng, max_order=100, max_factors=2, obfuscate=True):
    """Random finite abelian group, sometimes in a scrambled presentation."""
    while True:
        k = rng.randint(1, max_factors)
        factors = [rng.choice(_FACTORS) for _ in range(k)]
        order = 1
        for d in factors:
            order *= d
        if order <= max_order:
            break
    G = fgab.product_group(factors)
    if obfuscate and rng.random() < 0.5:
        G = scrambled_presentation(G, rng)
    return G


def scrambled_presentation(G, rng):
    """Same group, different presentation: unimodular generator change
    plus redundant relation rows."""
    n = G.n_generators
    V = intmat.identity(n)
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            V[:, i] += rng.randint(-2, 2) * V[:, j]
    rel = G.relations @ V
    rows = [list(r) for r in rel]
    if rows and rng.random() < 0.5:
        extra = np.zeros(n, dtype=object)
        for r in rel:
            extra += rng.randint(-1, 1) * r
        rows.append(list(extra))
    return FgAbGroup(n, intmat.as_int_matrix(rows, (0, n)))


def random_morphism(rng, G, H):
    """Random well-defined morphism G -> H, via canonical coordinates.

    In Smith bases both groups are products of cyclics, where a morphism
    component Z/d -> Z/m is exactly a multiple of m/gcd(d, m); the matrix
    is conjugated back to the original presentations.
    """
    n, m = G.n_generators, H.n_generators
    C = intmat.zeros(m, n)
    for i in range(n):
        d = G._mods[i]
        for j in range(m):
            mod = H._mods[j]
            if mod == 1:
                continue
            if mod == 0:
                if d == 0:
                    C[j, i] = rng.randint(-3, 3)
                continue
            if d == 0:
                C[j, i] = rng.randrange(mod)
            else:
                import math
                step = mod // math.gcd(d, mod)
                C[j, i] = step * rng.randrange(mod // step)
    M = H._snf.U_inv @ C @ G._snf.U
    return GroupMorphism(G, H, M)


def random_automorphism(rng, G, H):
    """Random isomorphism between two presentations of one canonical
    group (unit scalars on each cyclic factor)."""
    assert G._mods == H._mods
    import math
    n = G.n_generators
    C = intmat.zeros(n, n)
    for i in range(n):
        d = G._mods[i]
        if d == 1:
            C[i, i] = 0
        elif d == 0:
            C[i, i] = rng.choice([1, -1])
        else:
            units = [u for u in range(1, d) if math.gcd(u, d) == 1]
            C[i, i] = rng.choice(units)
    M = H._snf.U_inv @ C @ G._snf.U
    f = GroupMorphism(G, H, M)
    assert fgab.is_isomorphism(f)
    return f


def random_square(rng, max_order=60, force_iso=None):
    """Random commutative square built from (phi_H, phi_G, lambda).

    Setting f_mor = lambda . phi_H and f_ob = phi_G . lambda guarantees
    commutativity and the existence of a diagonal fill.  `force_iso`
    forces phi_H to be (or not be) an isomorphism.
    """
    from .moncat import CommSquare, DiagonalFill

    if force_iso is None:
        force_iso = rng.random() < 0.4
    if force_iso:
        factors = []
        while True:
            k = rng.randint(1, 2)
            factors = [rng.choice(_FACTORS) for _ in range(k)]
            order = 1
            for d in factors:
                order *= d
            if order <= max_order:
                break
        H_mor = fgab.product_group(factors)
        H_ob = fgab.product_group(factors)
        phi_H = random_automorphism(rng, H_mor, H_ob)
    else:
        H_mor = random_finite_group(rng, max_order)
        H_ob = random_finite_group(rng, max_order)
        phi_H = random_morphism(rng, H_mor, H_ob)
    G_mor = random_finite_group(rng, max_order)
    G_ob = random_finite_group(rng, max_order)
    phi_G = random_morphism(rng, G_mor, G_ob)
    lam = random_morphism(rng, H_ob, G_mor)
    f_mor = phi_H.then(lam)
    f_ob = lam.then(phi_G)
    square = CommSquare(phi_H, phi_G, f_ob, f_mor)
    return square, DiagonalFill(square, lam)


# -- brute-force oracles ----------------------------------------------------

def brute_hom_table(phi):
    """For each object key pair, the set of solution keys, by exhaustion."""
    A_ob, A_mor = phi.target, phi.source
    images = [(x.key(), phi(x).key()) for x in A_mor.elements()]
    table = {}
    ob_keys = [(a, a.key()) for a in A_ob.elements()]
    for a, ka in ob_keys:
        for xk, fk in images:
            kb = A_ob.key_add(ka, fk)
            table.setdefault((ka, kb), set()).add(xk)
    return table, [k for _, k in ob_keys]


def brute_fiber_objects(square):
    """Enumerated fiber product {(g, h) : phi_G(g) = f_ob(h)} as key pairs."""
    pairs = set()
    f_ob_img = [(h.key(), square.f_ob(h).key())
                for h in square.phi_H.target.elements()]
    for g in square.phi_G.source.elements():
        tg = square.phi_G(g).key()
        for hk, fk in f_ob_img:
            if fk == tg:
                pairs.add((g.key(), hk))
    return pairs


def brute_connecting_buckets(square):
    """x-solutions of the two simultaneous constraints, bucketed by the
    right-hand side keys (f_mor(x), phi_H(x))."""
    buckets = {}
    for x in square.phi_H.source.elements():
        key = (square.f_mor(x).key(), square.phi_H(x).key())
        buckets.setdefault(key, set()).add(x.key())
    return buckets
