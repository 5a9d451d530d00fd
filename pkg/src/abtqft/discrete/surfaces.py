"""Triangulated metric surfaces and their discrete Levi-Civita transport.

A closed oriented triangulated surface with edge lengths determines a
U(1) connection on its dual complex: each triangle carries an intrinsic
flat chart, transport across a shared edge is the rotation aligning the
edge direction in the two charts, and the holonomy around a vertex is its
angle defect.  Summing the per-vertex curvatures reproduces the Euler
characteristic (discrete Gauss-Bonnet), which is the degree computation
behind the tangent-bundle Chern number.
"""

from __future__ import annotations

import math

import numpy as np

from ..analytic import wrap_unit, wrap_half
from .complexes import CellComplex, ComplexError
from .connections import LatticeConnection

TWO_PI = 2.0 * math.pi


class DegenerateTriangle(ValueError):
    pass


class NotClosed(ValueError):
    pass


def _side_tail_head(complex, e, sign):
    tail, head = complex.edge_endpoints(e)
    return (tail, head) if sign == 1 else (head, tail)


class MetricSurface:
    """A 2-complex whose faces are triangles with valid edge lengths.

    Precomputes, per face, the corner angles and the direction angle of
    each directed side in the face's intrinsic chart (side 0 at angle 0,
    turning left by the exterior angle at each junction).
    """

    def __init__(self, complex):
        if complex.dim != 2:
            raise ComplexError("metric surface must be 2-dimensional")
        if complex.edge_lengths is None:
            raise ComplexError("metric surface needs edge_lengths")
        self.complex = complex
        self.lengths = complex.edge_lengths
        nf = complex.n_cells[2]
        self.corner_angles = []
        self.side_dirs = []
        self.corner_vertex = []
        for f in range(nf):
            sides = complex.boundary[2][f]
            if len(sides) != 3:
                raise ComplexError(f"face {f} is not a triangle")
            # sides must chain head-to-tail
            verts = []
            for j in range(3):
                t0, h0 = _side_tail_head(complex, *sides[j - 1])
                t1, h1 = _side_tail_head(complex, *sides[j])
                if h0 != t1:
                    raise ComplexError(
                        f"face {f}: sides {j-1} and {j} do not chain")
                verts.append(t1)
            L = [float(self.lengths[e]) for e, _ in sides]
            angles = []
            for j in range(3):
                a, b, c = L[j - 1], L[j], L[(j + 1) % 3]
                if min(a, b, c) <= 0.0:
                    raise DegenerateTriangle(f"face {f} has a zero side")
                cosv = (a * a + b * b - c * c) / (2.0 * a * b)
                if not -1.0 < cosv < 1.0:
                    raise DegenerateTriangle(
                        f"face {f} violates the strict triangle inequality")
                angles.append(math.acos(cosv))
            dirs = [0.0, 0.0, 0.0]
            for j in (1, 2):
                dirs[j] = dirs[j - 1] + (math.pi - angles[j])
            closure = dirs[2] + (math.pi - angles[0])
            assert abs(closure - TWO_PI) < 1e-9, "chart failed to close"
            self.corner_angles.append(angles)
            self.side_dirs.append(dirs)
            self.corner_vertex.append(verts)

    def edge_direction_in_chart(self, f, slot):
        """Chart angle of the global orientation of the edge at `slot`."""
        e, sign = self.complex.boundary[2][f][slot]
        d = self.side_dirs[f][slot]
        return d if sign == 1 else d + math.pi

    def angle_defect(self, v):
        total = 0.0
        for f in range(self.complex.n_cells[2]):
            for j in range(3):
                if self.corner_vertex[f][j] == v:
                    total += self.corner_angles[f][j]
        return TWO_PI - total


class TangentBundle:
    """Levi-Civita transport of a closed metric surface on its dual.

    dual vertices = faces, dual edges = primal edges (oriented from the
    face traversing the edge positively to the other one), dual faces =
    primal vertices with their counterclockwise corner rings.  The lift
    of each dual face is chosen so its curvature equals defect / 2 pi.
    """

    def __init__(self, surface):
        self.surface = surface
        cx = surface.complex
        ne, nf, nv = cx.n_cells[1], cx.n_cells[2], cx.n_cells[0]

        # side slots per edge; a closed coherently oriented surface has
        # exactly one +1 slot and one -1 slot per edge
        slots = {e: {} for e in range(ne)}
        for f in range(nf):
            for j, (e, sign) in enumerate(cx.boundary[2][f]):
                if sign in slots[e]:
                    raise NotClosed(
                        f"edge {e} traversed twice with the same sign; "
                        "surface not closed and coherently oriented")
                slots[e][sign] = (f, j)
        for e in range(ne):
            if set(slots[e]) != {1, -1}:
                raise NotClosed(f"edge {e} is a boundary edge")
        self._slots = slots

        dual_edge_bnd = []
        turns = np.zeros(ne)
        for e in range(ne):
            f_plus, j_plus = slots[e][1]
            f_minus, j_minus = slots[e][-1]
            a_plus = surface.edge_direction_in_chart(f_plus, j_plus)
            a_minus = surface.edge_direction_in_chart(f_minus, j_minus)
            turns[e] = wrap_unit((a_minus - a_plus) / TWO_PI)
            dual_edge_bnd.append([(f_plus, -1), (f_minus, 1)])

        self.rings = [self._ring(v) for v in range(nv)]
        dual_face_bnd = [[(e, sign) for e, sign in ring] for ring in self.rings]

        self.dual = CellComplex({0: nf, 1: ne, 2: nv},
                                {1: dual_edge_bnd, 2: dual_face_bnd},
                                name="dual")
        self.defects = np.array([surface.angle_defect(v) for v in range(nv)])

        bare = LatticeConnection(self.dual, turns)
        lifts = np.zeros(nv, dtype=np.int64)
        for v in range(nv):
            target = self.defects[v] / TWO_PI
            frac = bare.face_fraction(v)
            lifts[v] = round(target - frac)
            if abs(target - frac - lifts[v]) > 1e-9:
                raise AssertionError(
                    f"ring holonomy at vertex {v} does not match its "
                    f"angle defect: {frac} vs {target}")
        self.connection = LatticeConnection(self.dual, turns, lifts)

    def _ring(self, v):
        """Counterclockwise crossings around v as (edge, sign) pairs.

        Corners are tracked as (face, slot) with the junction vertex at
        the tail of the slot's side, so surfaces with glued or repeated
        vertices (one-vertex tori, identified polygons) work unchanged.
        """
        cx = self.surface.complex
        corners = [(f, j) for f in range(cx.n_cells[2]) for j in range(3)
                   if self.surface.corner_vertex[f][j] == v]
        if not corners:
            raise ComplexError(f"vertex {v} has no incident triangle")
        start = corners[0]
        ring = []
        seen = set()
        f, j = start
        while True:
            e, sign = cx.boundary[2][f][(j - 1) % 3]
            ring.append((e, sign))
            f2, j2 = self._slots[e][-sign]
            f, j = f2, j2
            if (f, j) == start:
                break
            if (f, j) in seen:
                raise ComplexError(f"vertex {v} link is not a single cycle")
            seen.add((f, j))
        if len(ring) != len(corners):
            raise ComplexError(
                f"vertex {v} link splits into several cycles")
        return ring

    def curvature_at_vertex(self, v):
        return self.connection.curvature(v)

    def chern_number(self):
        from .connections import chern_number
        return chern_number(self.connection,
                            [(v, 1) for v in range(self.dual.n_cells[2])])

    def punctured(self, v):
        return PuncturedSurface(self, v)


class PuncturedSurface:
    """A tangent bundle with one dual face removed.

    The remaining 2-chain has the reversed vertex ring as boundary; its
    induced traversal carries the canonical transport lifts used by the
    1-dimensional structure-lift pipeline.
    """

    def __init__(self, bundle, vertex):
        self.bundle = bundle
        self.vertex = vertex
        nv = bundle.dual.n_cells[2]
        if not (0 <= vertex < nv):
            raise ComplexError(f"no vertex {vertex}")
        self.chain = [(f, 1) for f in range(nv) if f != vertex]

    def total_curvature(self):
        from .connections import total_curvature
        return total_curvature(self.bundle.connection, self.chain)

    def boundary_cycle(self):
        """(edge, sign) pairs of the boundary circle, induced orientation."""
        ring = self.bundle.rings[self.vertex]
        return [(e, -s) for e, s in reversed(ring)]

    def boundary_turns(self):
        """Effective transport turn of each boundary crossing, in order.

        These depend on the per-face chart gauge; only their number and
        their sum mod 1 (the boundary holonomy) are gauge invariants.
        """
        conn = self.bundle.connection
        return [wrap_unit(s * conn.edge_turns[e])
                for e, s in self.boundary_cycle()]

    def boundary_length(self):
        return len(self.bundle.rings[self.vertex])

    def boundary_holonomy(self):
        """Holonomy of the boundary circle (induced orientation), in [0, 1)."""
        conn = self.bundle.connection
        total = 0.0
        for e, s in self.boundary_cycle():
            total += wrap_half(s * conn.edge_turns[e])
        return wrap_unit(total)


def tangent_connection(complex_or_surface):
    """Discrete Levi-Civita transport of a closed triangulated surface.

    Accepts a CellComplex with edge lengths (or a MetricSurface) and
    returns the TangentBundle; `.connection` is the induced lattice
    connection on the dual complex and `.chern_number()` recovers the
    Euler characteristic.
    """
    if isinstance(complex_or_surface, MetricSurface):
        surface = complex_or_surface
    else:
        surface = MetricSurface(complex_or_surface)
    return TangentBundle(surface)


# -- mesh library -----------------------------------------------------------

def build_triangle_surface(n_vertices, triangles, lengths=None,
                           default_length=1.0, coords=None, name=None):
    """Simplicial surface from counterclockwise vertex triples.

    Edges are keyed by unordered vertex pairs, so no repeated vertices or
    parallel edges are allowed here; meshes with identifications are
    built from explicit cell data instead.
    """
    edge_index = {}
    edge_bnd = []

    def eid(a, b):
        if a == b:
            raise ComplexError("loop edge in a simplicial surface")
        key = (min(a, b), max(a, b))
        if key not in edge_index:
            edge_index[key] = len(edge_bnd)
            edge_bnd.append([(key[0], -1), (key[1], 1)])
        return edge_index[key]

    def side(a, b):
        e = eid(a, b)
        return (e, 1 if a < b else -1)

    faces = [[side(a, b), side(b, c), side(c, a)] for a, b, c in triangles]
    ne = len(edge_bnd)
    if lengths is None:
        L = [default_length] * ne
    elif callable(lengths):
        L = [0.0] * ne
        for (a, b), e in edge_index.items():
            L[e] = lengths(a, b)
    else:
        L = [0.0] * ne
        for (a, b), e in edge_index.items():
            L[e] = lengths[(a, b)]
    return CellComplex({0: n_vertices, 1: ne, 2: len(faces)},
                       {1: edge_bnd, 2: faces}, coords=coords,
                       edge_lengths=L, name=name)


def icosahedron():
    """The regular icosahedron with its round coordinates."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    coords = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            coords.append((0.0, a, b))
            coords.append((a, b, 0.0))
            coords.append((b, 0.0, a))
    coords = np.array(coords)
    # faces as outward-oriented triples over the 12 vertices
    tris = []
    edge_len = 2.0
    n = len(coords)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                dij = np.linalg.norm(coords[i] - coords[j])
                djk = np.linalg.norm(coords[j] - coords[k])
                dik = np.linalg.norm(coords[i] - coords[k])
                if max(abs(dij - edge_len), abs(djk - edge_len),
                       abs(dik - edge_len)) < 1e-9:
                    normal = np.cross(coords[j] - coords[i],
                                      coords[k] - coords[i])
                    center = (coords[i] + coords[j] + coords[k]) / 3.0
                    if np.dot(normal, center) > 0:
                        tris.append((i, j, k))
                    else:
                        tris.append((i, k, j))
    assert len(tris) == 20
    return build_triangle_surface(
        12, tris, default_length=edge_len, coords=coords, name="icosahedron")


def flat_torus(n=4, m=4):
    """Flat square torus: n x m grid of squares, each split by a diagonal."""
    if n < 3 or m < 3:
        raise ComplexError("torus grid needs n, m >= 3 to stay simplicial")

    def vid(i, j):
        return (j % m) * n + (i % n)

    tris = []
    for j in range(m):
        for i in range(n):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))

    def lengths(a, b):
        ai, aj = a % n, a // n
        bi, bj = b % n, b // n
        di = min((ai - bi) % n, (bi - ai) % n)
        dj = min((aj - bj) % m, (bj - aj) % m)
        return math.sqrt(2.0) if (di and dj) else 1.0

    return build_triangle_surface(n * m, tris, lengths=lengths,
                                  name=f"torus{n}x{m}")


def equilateral_torus(n=4, m=4):
    """Flat rhombic torus: the same combinatorics with every length 1."""
    if n < 3 or m < 3:
        raise ComplexError("torus grid needs n, m >= 3 to stay simplicial")

    def vid(i, j):
        return (j % m) * n + (i % n)

    tris = []
    for j in range(m):
        for i in range(n):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return build_triangle_surface(n * m, tris, default_length=1.0,
                                  name=f"eqtorus{n}x{m}")


def flipped_torus(n=4, m=4):
    """Equilateral torus with one diagonal flipped.

    The flip creates two 5-valent and two 7-valent vertices while every
    length stays 1, so vertex (0,0) acquires the same equilateral 5-ring
    as an icosahedron vertex but the surface keeps genus 1.
    """
    if n < 3 or m < 3:
        raise ComplexError("torus grid needs n, m >= 3 to stay simplicial")

    def vid(i, j):
        return (j % m) * n + (i % n)

    tris = []
    for j in range(m):
        for i in range(n):
            if i == 0 and j == 0:
                tris.append((vid(0, 0), vid(1, 0), vid(0, 1)))
                tris.append((vid(1, 0), vid(1, 1), vid(0, 1)))
            else:
                tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
                tris.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return build_triangle_surface(n * m, tris, default_length=1.0,
                                  name=f"fliptorus{n}x{m}")


def _bipyramid_sphere(k, name, rim_length=1.0):
    """Closed sphere mesh: a k-fan around a center, capped by an apex.

    Spokes have length 1 and the rim `rim_length`.  With everything 1 the
    k = 6 poles are flat and k = 5 gives them an icosahedral defect; with
    rim 2*sin(pi/8) the k = 8 poles are flat as well.
    """
    center, apex = 0, k + 1
    ring = [1 + i for i in range(k)]
    tris = []
    for i in range(k):
        a, b = ring[i], ring[(i + 1) % k]
        tris.append((center, a, b))
        tris.append((apex, b, a))
    ring_set = set(ring)

    def lengths(a, b):
        return rim_length if (a in ring_set and b in ring_set) else 1.0

    return build_triangle_surface(k + 2, tris, lengths=lengths, name=name)


def hex_sphere():
    return _bipyramid_sphere(6, "hexsphere")


def pent_sphere():
    return _bipyramid_sphere(5, "pentsphere")


def oct_sphere():
    """Sphere with flat 8-valent poles (rim shrunk to 2 sin(pi/8))."""
    return _bipyramid_sphere(8, "octsphere", rim_length=2.0 * math.sin(math.pi / 8.0))


def genus2_surface():
    """Genus-2 surface from a regular octagon with glued sides.

    One center vertex, one identified boundary vertex, eight spokes and
    four glued boundary edges; the whole negative curvature sits at the
    identified vertex (defect -4 pi).
    """
    spoke_len = 1.0
    base_len = 2.0 * math.sin(math.pi / 8.0)
    # edges: 0..7 spokes (center -> rim), 8..11 glued octagon sides
    edge_bnd = [[(0, -1), (1, 1)] for _ in range(8)]
    edge_bnd += [[(1, -1), (1, 1)] for _ in range(4)]
    lengths = [spoke_len] * 8 + [base_len] * 4
    # octagon side word a b a^-1 b^-1 c d c^-1 d^-1
    word = [(8, 1), (9, 1), (8, -1), (9, -1), (10, 1), (11, 1), (10, -1), (11, -1)]
    faces = []
    for i in range(8):
        base_e, base_s = word[i]
        faces.append([(i, 1), (base_e, base_s), ((i + 1) % 8, -1)])
    return CellComplex({0: 2, 1: 12, 2: 8}, {1: edge_bnd, 2: faces},
                       edge_lengths=lengths, name="genus2")


def jittered_lengths(surface, rng, scale=0.05, frozen_edges=()):
    """Copy of a surface with lengths multiplied by 1 +- scale.

    Edges in `frozen_edges` keep their length, so boundary rings shared
    between paired surfaces stay metrically identical.
    """
    frozen = set(frozen_edges)
    L = list(surface.edge_lengths)
    for e in range(len(L)):
        if e not in frozen:
            L[e] = L[e] * (1.0 + scale * (2.0 * rng.random() - 1.0))
    return CellComplex(
        {k: surface.n_cells[k] for k in range(surface.dim + 1)},
        {k: surface.boundary[k] for k in range(1, surface.dim + 1)},
        coords=surface.coords, edge_lengths=L,
        name=(surface.name or "surface") + "-jittered")


def ring_triangle_edges(surface, vertex):
    """Edges of all triangles having a corner at `vertex` (for freezing)."""
    ms = MetricSurface(surface) if not isinstance(surface, MetricSurface) else surface
    edges = set()
    cx = ms.complex
    for f in range(cx.n_cells[2]):
        if vertex in ms.corner_vertex[f]:
            edges.update(e for e, _ in cx.boundary[2][f])
    return edges
