import math
import random

import numpy as np
import pytest

import abtqft.discrete as D
import abtqft.invariants as I
from abtqft.analytic import circle_distance, wrap_unit
from abtqft.invariants import scenes as scn


# -- table ---------------------------------------------------------------------

def test_shipped_table_valid():
    entries = I.shipped_table()
    assert I.validate_table(entries.values()).valid
    assert entries["K3"].half_p1() == -24
    assert entries["S4"].a_hat == 0


def test_table_detects_corruption():
    bad = I.Closed4Entry("bad", -24, -8, "1", True)
    report = I.validate_table([bad])
    conditions = {v[1] for v in report.violations}
    assert "spin p1 = 0 mod 48" in conditions
    assert "spin a_hat even" in conditions

    wrong_ahat = I.Closed4Entry("wrong", -48, -16, "3", True)
    report = I.validate_table([wrong_ahat])
    assert any(v[1] == "a_hat = -p1/24" for v in report.violations)

    wrong_sig = I.Closed4Entry("sig", -48, -15, "2", True)
    report = I.validate_table([wrong_sig])
    assert any(v[1] == "p1 = 3*signature" for v in report.violations)


def test_entry_json_roundtrip():
    e = I.Closed4Entry("X", 48, 16, "-2", True)
    e2 = I.Closed4Entry.from_json(e.to_json())
    assert e2.a_hat == e.a_hat and e2.integral_p1 == e.integral_p1
    with pytest.raises(ValueError):
        I.Closed4Entry.from_json({"name": "Y", "integral_p1": 1.5,
                                  "signature": 0, "a_hat": "0"})


# -- field theory evaluators -----------------------------------------------------

def test_z_stokes_closed_examples():
    C3 = D.circle_complex(3)
    unit = D.Cochain(C3, 1, [1.0, 1.0, 1.0])
    assert I.z_stokes_closed(C3, unit) == 3.0

    # an exact boundary scene gives zero: the circle bounds the disk and
    # the cochain extends as a coboundary
    W = D.triangulated_grid(3, 3)
    f = D.Cochain(W, 0, [math.sin(i) for i in range(W.n_cells[0])])
    omega = D.coboundary(f)
    boundary = W.boundary_of(2, W.fundamental_chain(2))
    value = I.z_stokes(W, omega, chain=boundary)
    assert abs(value) <= 1e-12
    assert abs(I.z_stokes_rel(W, omega)) <= 1e-12

    # disjoint union: sum of parts (two circles in one complex)
    C6 = D.circle_complex(6)
    two = D.CellComplex(
        {0: 6, 1: 6},
        {1: [[(i, -1), ((i + 1) % 3, 1)] for i in range(3)]
            + [[(3 + i, -1), (3 + (i + 1) % 3, 1)] for i in range(3)]})
    omega2 = D.Cochain(two, 1, [1.0] * 3 + [0.5] * 3)
    assert I.z_stokes_closed(two, omega2) == pytest.approx(4.5)


def test_z_stokes_closed_rejects_nonclosed():
    W = D.triangulated_grid(2, 2)
    rng = random.Random(1)
    omega = D.Cochain(W, 1, [rng.uniform(-1, 1) for _ in range(W.n_cells[1])])
    with pytest.raises(I.NotClosedCochain):
        I.z_stokes_closed(W, omega)


def test_z_hol_examples():
    C3 = D.circle_complex(3)
    assert I.z_hol(D.LatticeConnection.trivial(C3)) == 0.0

    # two disjoint circles multiply (turns add)
    two = D.CellComplex(
        {0: 6, 1: 6},
        {1: [[(i, -1), ((i + 1) % 3, 1)] for i in range(3)]
            + [[(3 + i, -1), (3 + (i + 1) % 3, 1)] for i in range(3)]})
    conn = D.LatticeConnection(two, [0.1, 0.1, 0.1, 0.2, 0.1, 0.05])
    assert I.z_hol(conn) == pytest.approx(wrap_unit(0.65))

    # functoriality: a disk bounding a circle
    disk = D.polygon_disk(4)
    conn2 = D.LatticeConnection(disk, [0.3, 0.2, 0.4, 0.35], [2])
    rel = I.z_hol_rel(conn2)
    hol = D.boundary_holonomy(conn2, [(0, 1)])
    assert circle_distance(rel, hol) <= 1e-12


def test_z_spin_values():
    assert I.z_spin_object(-1.0) == 0.0  # exp(-2 pi i) = 1
    assert I.z_spin_object(0.25) == 0.25
    assert I.z_spin_morphism(-24) == -24.0
    # closed-manifold check through the table
    k3 = I.shipped_table()["K3"]
    assert I.z_spin_morphism(float(k3.half_p1())) == -24.0


# -- providers -------------------------------------------------------------------

def test_provider_table_vs_quadrature():
    table = I.SpinGeometryProvider("Table")
    quad = I.SpinGeometryProvider("Quadrature", refinement=1)
    a = table.eta_integral("S3", "Lie-framing")
    b = quad.eta_integral("S3", "Lie-framing")
    assert abs(a - b) < 1e-3


def test_provider_rejects_unknown_and_quadrature_4d():
    provider = I.SpinGeometryProvider("Table")
    with pytest.raises(I.ProviderError):
        provider.eta_integral("S3", "unknown-structure")
    quad = I.SpinGeometryProvider("Quadrature")
    with pytest.raises(I.ProviderError):
        quad.half_p1_integral("D4", "flat-extension")
    with pytest.raises(I.ProviderError):
        provider.half_p1_integral("D4", "flat-extension", glue=("CP2",))
    with pytest.raises(I.ProviderError):
        I.SpinGeometryProvider("Oracle")


def test_scene_rejects_user_compatibility_flag():
    with pytest.raises(I.IncompatibleScene):
        I.BnrScene([{"m3": {"key": "S3"}, "eta": {"key": "Lie-framing"},
                     "w4": {"key": "D4"},
                     "nabla": {"key": "flat-extension"},
                     "compatible": True}])


def test_scene_rejects_mismatched_bounding():
    scene = I.BnrScene([{"m3": {"key": "empty"}, "eta": {"key": "empty"},
                         "w4": {"key": "D4"},
                         "nabla": {"key": "flat-extension"}}])
    with pytest.raises(I.IncompatibleScene):
        scene.resolve()


# -- psi -------------------------------------------------------------------------

def test_psi_generator_and_gluing():
    base = I.psi(I.BnrScene.s3_lie(), certify=True)
    assert base.integer_value == 1 and base.residue == 1
    assert math.gcd(base.residue, 24) == 1
    for entry in base.certificate:
        assert entry["difference"] % 24 == 0

    glued = I.psi(I.BnrScene.s3_lie(glue=["K3"]))
    assert glued.integer_value == -23
    assert glued.residue == base.residue

    double = I.psi(I.BnrScene.s3_lie(glue=["K3", "K3"]))
    assert double.integer_value == -47


def test_psi_empty_and_union():
    assert I.psi(I.BnrScene.empty()).integer_value == 0
    u = I.BnrScene.s3_lie().union(I.BnrScene.s3_lie(glue=["K3-rev"]))
    assert I.psi(u).integer_value == 1 + 25


def test_psi_union_json():
    scene = I.BnrScene.from_json({"union": [
        {"m3": {"key": "S3"}, "eta": {"key": "Lie-framing"},
         "w4": {"key": "D4"}, "nabla": {"key": "flat-extension"}},
        {"m3": {"key": "empty"}, "eta": {"key": "empty"},
         "w4": {"key": "empty"}, "nabla": {"key": "empty"}},
    ]})
    assert I.psi(scene).integer_value == 1


def test_psi_integrality_enforced(monkeypatch):
    monkeypatch.setitem(scn._ETA_TABLE, ("S3", "Lie-framing"), -1.4)
    with pytest.raises(I.NonIntegralInvariant):
        I.psi(I.BnrScene.s3_lie())


def test_psi_quadrature_provider():
    result = I.psi(I.BnrScene.s3_lie(eta_provider="quadrature",
                                     refinement=1))
    assert result.integer_value == 1
    assert abs(result.raw - 1.0) < 1e-3


def test_hofiber_semantics_matches_psi():
    for scene in (I.BnrScene.s3_lie(), I.BnrScene.empty(),
                  I.BnrScene.s3_lie(glue=["K3"]),
                  I.BnrScene.s3_lie().union(I.BnrScene.empty())):
        direct = I.psi(scene)
        text, factored = I.hofiber_bordism_semantics(scene)
        assert factored.raw == direct.raw
        assert factored.integer_value == direct.integer_value
        assert "Xi" in text


def test_hofiber_semantics_rejects_incoherent_pair(monkeypatch):
    monkeypatch.setitem(scn._ETA_TABLE, ("S3", "Lie-framing"), -1.4)
    with pytest.raises(I.NonIntegralInvariant):
        I.hofiber_bordism_semantics(I.BnrScene.s3_lie())


def test_result_rendering():
    r = I.psi(I.BnrScene.s3_lie())
    out = r.render()
    assert out.startswith("raw=1 int=1 mod24=1 convention=")


# -- chern-simons ------------------------------------------------------------------

def test_cs_quadrature_convergence():
    v1 = I.cs_su2_quadrature(1)
    assert abs(abs(v1) - 1.0) < 0.1
    vol = I.sphere_volume_quadrature(1)
    assert abs(vol - 2 * math.pi ** 2) < 1e-3


@pytest.mark.slow
def test_cs_quadrature_refinement_4():
    v4 = I.cs_su2_quadrature(4)
    assert abs(abs(v4) - 1.0) < 1e-3
    assert abs(I.sphere_volume_quadrature(4) - 2 * math.pi ** 2) < 1e-6


def test_cs_rejects_bad_refinement():
    with pytest.raises(ValueError):
        I.cs_su2_quadrature(0)


def test_cs_integrand_is_constant_density():
    # the pulled-back 3-form is a constant multiple of the volume form
    from abtqft.invariants.chern_simons import _frame_density
    rng = np.random.default_rng(17)
    chi = rng.uniform(0.2, math.pi - 0.2, 64)
    theta = rng.uniform(0.2, math.pi - 0.2, 64)
    phi = rng.uniform(0.0, 2 * math.pi, 64)
    dens = _frame_density(chi, theta, phi)
    assert np.std(dens) < 1e-9
    assert np.mean(dens) == pytest.approx(12.0, abs=1e-9)


def test_z_spin_quadrature_object_is_unit():
    quad = I.SpinGeometryProvider("Quadrature", refinement=1)
    value = I.z_spin_object(quad.eta_integral("S3", "Lie-framing"))
    assert circle_distance(value, 0.0) < 1e-3


# -- su pipeline --------------------------------------------------------------------

def test_su_trivial_disk():
    scene = I.SuScene([0.0] * 4, [scn.disk_bounding([0.0] * 4)])
    assert I.su_psi(scene).integer_value == 0


def test_su_icosa_vs_fliptorus():
    icosa = I.tangent_bounding("icosahedron", 0)
    flip = I.tangent_bounding("flip-torus", 0)
    scene = I.SuScene.from_primary(icosa, extra=[flip])
    result = I.su_psi(scene)
    assert result.integer_value == 1
    diffs = {c["bounding"]: c["difference"] for c in result.certificate}
    assert diffs[flip.label] == -2  # the sphere's worth of curvature


def test_su_lift_shift_covariance():
    scene = I.SuScene.from_primary(I.tangent_bounding("hex-sphere", 0))
    base = I.su_psi(scene)
    for k in (1, 2, 5):
        shifted = I.su_psi(scene.shifted(0, k))
        assert shifted.integer_value == base.integer_value - k
        assert shifted.residue == (base.residue - k) % 2


def test_su_lift_mismatch_rejected():
    icosa = I.tangent_bounding("icosahedron", 0)
    scene = I.SuScene.from_primary(icosa)
    bad = I.SuScene([a + 0.01 for a in scene.lifts], [icosa])
    with pytest.raises(I.IncompatibleScene):
        I.su_psi(bad)
    short = I.SuScene([0.0] * 3, [icosa])
    with pytest.raises(I.IncompatibleScene):
        I.su_psi(short)


def test_su_odd_difference_reported_not_fatal():
    icosa = I.tangent_bounding("icosahedron", 0)
    scene = I.SuScene.from_primary(icosa)
    odd_disk = scene.disk_bounding(extra_lift=1, label="odd-disk")
    scene2 = I.SuScene(scene.lifts, [icosa, odd_disk])
    result = I.su_psi(scene2)
    flagged = [c for c in result.certificate if not c["in_hypothesis"]]
    assert any(c["bounding"] == "odd-disk" and c["difference"] % 2 == 1
               for c in flagged)


def test_su_odd_tangent_pair_is_fatal():
    icosa = I.tangent_bounding("icosahedron", 0)
    fake = I.SuBounding("tangent", icosa.k, icosa.holonomy,
                        icosa.curvature + 1.0, "fake")
    scene = I.SuScene.from_primary(icosa, extra=[fake])
    with pytest.raises(I.ParityCertificateError):
        I.su_psi(scene)


def test_su_monoidality():
    # disjoint union of scenes: raws add (evaluate two scenes and a
    # joined one whose lift vector is the concatenation)
    s1 = I.SuScene.from_primary(I.tangent_bounding("icosahedron", 1))
    s2 = I.SuScene.from_primary(I.tangent_bounding("eq-torus", 2))
    r1, r2 = I.su_psi(s1), I.su_psi(s2)
    joint = I.SuBounding(
        "tangent", s1.boundings[0].k + s2.boundings[0].k,
        s1.boundings[0].holonomy + s2.boundings[0].holonomy,
        s1.boundings[0].curvature + s2.boundings[0].curvature,
        "disjoint-union")
    joined = I.SuScene(s1.lifts + s2.lifts, [joint])
    assert I.su_psi(joined).integer_value == (r1.integer_value
                                              + r2.integer_value)


def test_su_scene_json():
    scene = I.SuScene.from_json({"su": {
        "primary": {"mesh": "icosahedron", "puncture": 0},
        "boundings": [{"mesh": "pent-sphere", "puncture": 0}],
        "lift_shifts": [[0, 1]],
    }})
    result = I.su_psi(scene)
    assert result.integer_value == 0  # 1 shifted down by 1
    assert {c["difference"] for c in result.certificate} == {0}


def test_random_su_scenes_even():
    rng = random.Random(99)
    for _ in range(20):
        scene = I.random_su_scene(rng)
        result = I.su_psi(scene)
        assert all(c["difference"] % 2 == 0 for c in result.certificate)
