"""The mod-24 and mod-2 bordism invariant pipelines.

The 3d invariant of a scene is half the Pontryagin Chern-Weil integral of
the bounding datum minus the integral of the canonical structure 3-form;
it is an integer whenever the provider data are consistent, and well
defined mod 24 because alternative bounding data differ by half the
Pontryagin number of a closed spin 4-manifold.  The 1d analog subtracts
the boundary structure lifts from the total curvature of a bounding
surface and is well defined mod 2 by the evenness of the Euler
characteristic of closed oriented surfaces.
"""

from __future__ import annotations

from ..analytic import circle_distance, wrap_unit
from ..moncat import AnalyticExpSquare
from .scenes import SIGN_CONVENTION, IncompatibleScene

PSI_TOLERANCE = 1e-6
SU_TOLERANCE = 1e-9


class NonIntegralInvariant(ValueError):
    """Raised when a provider-consistent scene fails integrality.

    Integrality is a theorem, so a violation always means corrupt or
    inconsistent input data; it must halt rather than round.
    """


class ParityCertificateError(ValueError):
    pass


class InvariantResult:
    def __init__(self, raw, modulus, tolerance, certificate=None,
                 convention=SIGN_CONVENTION):
        nearest = round(raw)
        if abs(raw - nearest) > tolerance:
            raise NonIntegralInvariant(
                f"value {raw!r} is {abs(raw - nearest):.3e} from the nearest "
                f"integer (tolerance {tolerance}); provider data inconsistent")
        self.raw = float(raw)
        self.integer_value = int(nearest)
        self.modulus = int(modulus)
        self.residue = self.integer_value % self.modulus
        self.certificate = certificate or []
        self.convention = convention
        for entry in self.certificate:
            diff = entry.get("difference")
            if diff is not None and entry.get("in_hypothesis", True):
                assert diff % self.modulus == 0

    def render(self):
        return (f"raw={self.raw:.12g} int={self.integer_value} "
                f"mod{self.modulus}={self.residue} "
                f"convention={self.convention}")

    def __repr__(self):
        return f"InvariantResult({self.render()})"


def psi(scene, certify=False):
    """The mod-24 invariant of a scene (sums over disjoint components)."""
    components = scene.resolve()
    raw = 0.0
    for comp in components:
        assert comp.compatible, "provider failed to certify compatibility"
        raw += comp.nabla_value - comp.eta_value
    certificate = _psi_certificate(scene, components) if certify else None
    return InvariantResult(raw, 24, PSI_TOLERANCE, certificate)


def _psi_certificate(scene, components):
    """Evaluate every alternative bounding datum and record differences.

    All differences must land in 24Z; a violation is a data error.
    """
    certificate = []
    for comp, alts in zip(components, scene.alternatives()):
        base_raw = comp.nabla_value - comp.eta_value
        base_int = round(base_raw)
        alt_ints = []
        for label, nabla_value in alts:
            alt_raw = nabla_value - comp.eta_value
            alt_int = round(alt_raw)
            if abs(alt_raw - alt_int) > PSI_TOLERANCE:
                raise NonIntegralInvariant(
                    f"alternative bounding {label} of {comp.label} "
                    f"gives non-integral value {alt_raw}")
            diff = alt_int - base_int
            if diff % 24 != 0:
                raise ParityCertificateError(
                    f"bounding change {label} shifted the invariant by "
                    f"{diff}, not a multiple of 24; table data corrupt")
            alt_ints.append(alt_int)
            certificate.append({"component": comp.label, "bounding": label,
                                "integer": alt_int, "difference": diff,
                                "in_hypothesis": True})
        # every pairwise change of bounding datum lands in 24Z
        assert all((a - b) % 24 == 0 for a in alt_ints for b in alt_ints)
    return certificate


def hofiber_bordism_semantics(scene):
    """Evaluate the scene through the homotopy-fiber factorization.

    The scene is read as an object of the lax essential fiber over the
    spin-side theory: the closed 3-scene is the underlying object, the
    bounding 4-scene the connecting morphism from the empty scene.  The
    two field theories produce the pair (half Pontryagin integral,
    structure-form integral) in R x_{U(1)} R, and the comparison functor
    onto ker(exp) = Z subtracts them.  The arithmetic is identical to
    psi, which is asserted.
    """
    components = scene.resolve()
    square = AnalyticExpSquare(tolerance=PSI_TOLERANCE)
    raw = 0.0
    lines = []
    for comp in components:
        assert comp.compatible
        g = comp.nabla_value
        h = comp.eta_value
        if not square.is_object(g, h):
            raise NonIntegralInvariant(
                f"({g}, {h}) is not an object of the essential fiber: "
                "the exponentials disagree beyond tolerance")
        raw += square.xi(g, h)
        lines.append(
            f"{comp.label}: object value h={h:.12g}, connecting morphism "
            f"value g={g:.12g}, fiber pair -> Xi(g,h)={g - h:.12g}")
    result = InvariantResult(raw, 24, PSI_TOLERANCE)
    direct = psi(scene)
    assert result.raw == direct.raw, "factorization disagrees with psi"
    assert result.integer_value == direct.integer_value
    description = "\n".join(lines)
    return description, result


def su_psi(scene, certify=True):
    """The mod-2 invariant of a 1d scene with its bounding surfaces.

    raw = total curvature of the primary bounding minus the sum of the
    scene's structure lifts; integer by construction.  Certification
    evaluates every bounding; differences between tangent-type boundings
    must be even, and an odd difference involving a raw-connection
    bounding is reported as out-of-hypothesis rather than fatal.
    """
    total_lift = scene.sum_lifts()
    scene_hol = wrap_unit(total_lift)
    raws = []
    for b in scene.boundings:
        if b.k != len(scene.lifts):
            raise IncompatibleScene(
                f"bounding {b.label} has boundary length {b.k}, "
                f"scene circle has {len(scene.lifts)} edges")
        if circle_distance(b.holonomy, scene_hol) > SU_TOLERANCE:
            raise IncompatibleScene(
                f"bounding {b.label} does not restrict to the scene "
                f"circle: boundary holonomy {b.holonomy} vs "
                f"exp(sum of lifts) {scene_hol} (lift mismatch)")
        raws.append(b.curvature - total_lift)

    certificate = []
    if certify:
        primary = scene.boundings[0]
        base_int = round(raws[0])
        for b, r in zip(scene.boundings, raws):
            r_int = round(r)
            if abs(r - r_int) > SU_TOLERANCE:
                raise NonIntegralInvariant(
                    f"bounding {b.label} gives non-integral value {r}")
            diff = r_int - base_int
            tangent_pair = b.kind == "tangent" and primary.kind == "tangent"
            if diff % 2 != 0:
                if tangent_pair:
                    raise ParityCertificateError(
                        f"tangent bounding pair ({primary.label}, {b.label}) "
                        f"differs by odd {diff}; this contradicts the "
                        "evenness of closed surface Euler characteristics")
                certificate.append({"bounding": b.label, "integer": r_int,
                                    "difference": diff, "kind": b.kind,
                                    "in_hypothesis": False,
                                    "note": "odd difference: bounding is "
                                            "outside the tangent hypothesis"})
            else:
                certificate.append({"bounding": b.label, "integer": r_int,
                                    "difference": diff, "kind": b.kind,
                                    "in_hypothesis": tangent_pair})
    return InvariantResult(raws[0], 2, SU_TOLERANCE, certificate,
                           convention="su-lifts")
