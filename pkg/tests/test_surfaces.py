import math
import random

import pytest

from abtqft.analytic import circle_distance
from abtqft.discrete import surfaces as S
from abtqft.discrete import tangent_connection, chern_number


ALL_MESHES = [
    ("icosahedron", S.icosahedron, 2),
    ("flat_torus", lambda: S.flat_torus(4, 4), 0),
    ("equilateral_torus", lambda: S.equilateral_torus(3, 5), 0),
    ("flipped_torus", lambda: S.flipped_torus(4, 4), 0),
    ("hex_sphere", S.hex_sphere, 2),
    ("pent_sphere", S.pent_sphere, 2),
    ("oct_sphere", S.oct_sphere, 2),
    ("genus2", S.genus2_surface, -2),
]


@pytest.mark.parametrize("name,builder,chi", ALL_MESHES)
def test_chern_equals_euler_characteristic(name, builder, chi):
    surface = builder()
    bundle = tangent_connection(surface)
    assert bundle.chern_number() == chi
    # the combinatorial count agrees
    v, e, f = (surface.n_cells[0], surface.n_cells[1], surface.n_cells[2])
    assert v - e + f == chi


@pytest.mark.parametrize("name,builder,chi", ALL_MESHES)
def test_vertex_curvature_is_angle_defect(name, builder, chi):
    surface = builder()
    ms = S.MetricSurface(surface)
    bundle = S.TangentBundle(ms)
    for v in range(surface.n_cells[0]):
        assert bundle.curvature_at_vertex(v) == pytest.approx(
            ms.angle_defect(v) / (2 * math.pi), abs=1e-9)


def test_total_defect_theorem():
    # sum of defects = 2 pi chi, combinatorially forced for triangle meshes
    for name, builder, chi in ALL_MESHES:
        ms = S.MetricSurface(builder())
        total = sum(ms.angle_defect(v)
                    for v in range(ms.complex.n_cells[0]))
        assert total == pytest.approx(2 * math.pi * chi, abs=1e-9)


def test_jitter_preserves_chern():
    rng = random.Random(31)
    for name, builder, chi in ALL_MESHES:
        surface = S.jittered_lengths(builder(), rng)
        assert tangent_connection(surface).chern_number() == chi


def test_degenerate_triangle_rejected():
    surface = S.icosahedron()
    lengths = list(surface.edge_lengths)
    lengths[0] = 4.0 + lengths[1] + lengths[2]  # violates every triangle
    from abtqft.discrete.complexes import CellComplex
    broken = CellComplex({k: surface.n_cells[k] for k in range(3)},
                         {k: surface.boundary[k] for k in (1, 2)},
                         edge_lengths=lengths)
    with pytest.raises(S.DegenerateTriangle):
        tangent_connection(broken)


def test_not_closed_rejected():
    from abtqft.discrete.complexes import triangulated_grid
    W = triangulated_grid(2, 2)
    lengths = [1.0] * W.n_cells[1]
    W2 = type(W)({k: W.n_cells[k] for k in range(3)},
                 {k: W.boundary[k] for k in (1, 2)}, edge_lengths=lengths)
    with pytest.raises(S.NotClosed):
        tangent_connection(W2)


def test_punctured_invariants():
    bundle = tangent_connection(S.icosahedron())
    p = bundle.punctured(0)
    assert p.boundary_length() == 5
    # total curvature = chi - defect/2pi of the removed vertex
    assert p.total_curvature() == pytest.approx(2 - 1 / 6, abs=1e-9)
    # boundary holonomy is the removed vertex's defect, reversed
    assert circle_distance(p.boundary_holonomy(), -1 / 6) <= 1e-9
    # the boundary cycle is an actual cycle of the dual complex
    vec = bundle.dual.chain_vector(1, p.boundary_cycle())
    chain = bundle.dual.chain_vector(2, p.chain)
    removed = bundle.dual.chain_vector(2, [(p.vertex, 1)])
    expected = -bundle.dual.boundary_of(2, removed)
    assert (bundle.dual.boundary_of(2, chain) == expected).all()
    assert bundle.dual.is_cycle(1, vec)


def test_matching_rings_across_surfaces():
    # the 5-rings of the icosahedron, the pentagonal sphere poles and the
    # flipped torus 5-valent vertices carry the same boundary data
    data = set()
    for mesh, v in [(S.icosahedron(), 0), (S.pent_sphere(), 0),
                    (S.pent_sphere(), 6), (S.flipped_torus(4, 4), 0)]:
        p = tangent_connection(mesh).punctured(v)
        data.add((p.boundary_length(), round(p.boundary_holonomy(), 9)))
    assert len(data) == 1


def test_dual_complex_closed():
    for name, builder, chi in ALL_MESHES:
        bundle = tangent_connection(builder())
        chain = bundle.dual.fundamental_chain(2)
        assert bundle.dual.is_cycle(2, chain)  # no boundary: closed surface


def test_ring_triangle_edges_cover_incident_faces():
    surface = S.icosahedron()
    edges = S.ring_triangle_edges(surface, 0)
    ms = S.MetricSurface(surface)
    for f in range(surface.n_cells[2]):
        if 0 in ms.corner_vertex[f]:
            for e, _ in surface.boundary[2][f]:
                assert e in edges
