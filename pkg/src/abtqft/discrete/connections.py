"""Lattice U(1) connections: edge transport, holonomy, curvature lifts.

Edge values are stored as "turns" t_e in [0, 1), standing for the circle
element exp(2*pi*i*t_e); traversing an edge against its orientation
contributes -t_e.  Each 2-cell carries an explicit integer curvature lift
n_f, so curvature(f) = n_f + principal(sum of boundary turns) and the
integer ambiguity of the log is visible data rather than a hidden choice.
"""

from __future__ import annotations

import numpy as np

from ..analytic import wrap_unit, wrap_half, circle_distance


class ConnectionDataError(ValueError):
    pass


class NonCycleError(ValueError):
    pass


class LatticeConnection:
    def __init__(self, complex, edge_turns, face_lifts=None):
        edge_turns = np.asarray(edge_turns, dtype=float)
        if edge_turns.shape != (complex.n_cells[1],):
            raise ConnectionDataError(
                f"{len(edge_turns)} edge phases for {complex.n_cells[1]} edges")
        if face_lifts is None:
            face_lifts = np.zeros(complex.n_cells[2], dtype=np.int64)
        face_lifts = np.asarray(face_lifts)
        if face_lifts.shape != (complex.n_cells[2],):
            raise ConnectionDataError(
                f"{len(face_lifts)} face lifts for {complex.n_cells[2]} faces")
        if face_lifts.size and not np.issubdtype(face_lifts.dtype, np.integer):
            raise ConnectionDataError("face lifts must be integers")
        self.complex = complex
        self.edge_turns = np.array([wrap_unit(t) for t in edge_turns])
        self.face_lifts = face_lifts.astype(np.int64)

    @classmethod
    def trivial(cls, complex):
        return cls(complex, np.zeros(complex.n_cells[1]))

    def edge_value(self, e, sign=1):
        return wrap_unit(sign * self.edge_turns[e])

    def face_fraction(self, f, start=0):
        """Principal branch in (-1/2, 1/2] of the boundary edge product.

        `start` rotates the traversal order; the result is branch-stable
        under that rotation (the sum is reassociated, the wrap is not).
        """
        sides = self.complex.boundary[2][f]
        k = len(sides)
        total = 0.0
        for i in range(k):
            e, sign = sides[(start + i) % k]
            total += sign * self.edge_turns[e]
        return wrap_half(total)

    def curvature(self, f):
        """Lifted curvature of face f in turns: lift + principal fraction."""
        return float(self.face_lifts[f]) + self.face_fraction(f)

    def with_lifts(self, face_lifts):
        return LatticeConnection(self.complex, self.edge_turns, face_lifts)

    def gauge_transformed(self, vertex_turns):
        """Multiply edge values by the coboundary of a circle 0-cochain."""
        vertex_turns = np.asarray(vertex_turns, dtype=float)
        if vertex_turns.shape != (self.complex.n_cells[0],):
            raise ConnectionDataError("one gauge turn per vertex required")
        new = self.edge_turns.copy()
        for e in range(self.complex.n_cells[1]):
            tail, head = self.complex.edge_endpoints(e)
            new[e] = wrap_unit(new[e] + vertex_turns[head] - vertex_turns[tail])
        return LatticeConnection(self.complex, new, self.face_lifts)

    def to_json(self):
        return {"edge_phases": self.edge_turns.tolist(),
                "face_lifts": self.face_lifts.tolist()}

    @classmethod
    def from_json(cls, complex, obj):
        phases = obj.get("edge_phases")
        if phases is None:
            raise ConnectionDataError("connection record missing 'edge_phases'")
        return cls(complex, phases, obj.get("face_lifts"))


def holonomy(conn, loop):
    """Circle value (in turns) of the transport around a closed 1-chain.

    `loop` is a list of (edge, sign) pairs; it must be a cycle.  The value
    does not depend on the starting point since the turns simply add.
    """
    cx = conn.complex
    vec = cx.chain_vector(1, loop)
    if np.any(cx.boundary_of(1, vec)):
        raise NonCycleError("holonomy of a non-closed 1-chain")
    total = 0.0
    for e, sign in loop:
        total += sign * conn.edge_turns[e]
    return wrap_unit(total)


def holonomy_of_vector(conn, chain_vec):
    """Holonomy against a dense integer 1-chain vector (must be a cycle)."""
    cx = conn.complex
    chain_vec = np.asarray(chain_vec, dtype=np.int64)
    if np.any(cx.boundary_of(1, chain_vec)):
        raise NonCycleError("holonomy of a non-closed 1-chain")
    return wrap_unit(float(np.dot(chain_vec.astype(float), conn.edge_turns)))


def total_curvature(conn, surface_chain):
    """Sum of lifted face curvatures over a 2-chain of (face, coeff) pairs.

    Satisfies exp(2 pi i total) = holonomy of the chain boundary for
    every lift choice.
    """
    total = 0.0
    for f, coeff in surface_chain:
        if not (0 <= f < conn.complex.n_cells[2]):
            raise ConnectionDataError(f"no 2-cell with index {f}")
        total += coeff * conn.curvature(f)
    return total


def total_curvature_vector(conn, chain_vec):
    total = 0.0
    for f, coeff in enumerate(np.asarray(chain_vec, dtype=np.int64)):
        if coeff:
            total += int(coeff) * conn.curvature(f)
    return total


def boundary_holonomy(conn, surface_chain):
    vec = conn.complex.chain_vector(2, surface_chain)
    return holonomy_of_vector(conn, conn.complex.boundary_of(2, vec))


def chern_number(conn, closed_surface, tol=1e-9):
    """Integer total curvature of a closed 2-cycle.

    Raises on non-cycles; a total further than `tol` from an integer can
    only come from corrupted data and is an error as well.
    """
    cx = conn.complex
    vec = cx.chain_vector(2, closed_surface)
    if np.any(cx.boundary_of(2, vec)):
        raise NonCycleError("chern number needs a closed surface (a 2-cycle)")
    total = total_curvature(conn, closed_surface)
    nearest = round(total)
    if abs(total - nearest) > tol:
        raise ConnectionDataError(
            f"total curvature {total} of a cycle is not an integer "
            f"(off by {abs(total - nearest):.3e}); connection data corrupt")
    return int(nearest)


def holonomy_curvature_gap(conn, surface_chain):
    """Circular distance between exp(total curvature) and the boundary
    holonomy; zero up to float re-association."""
    total = total_curvature(conn, surface_chain)
    hol = boundary_holonomy(conn, surface_chain)
    return circle_distance(total, hol)
