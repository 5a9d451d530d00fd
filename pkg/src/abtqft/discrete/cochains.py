"""Real-valued cochains with coboundary, integration and the Stokes check."""

from __future__ import annotations

import numpy as np


class DegreeError(ValueError):
    pass


class Cochain:
    """A degree-k cochain: one finite real per k-cell of its complex."""

    def __init__(self, complex, degree, values):
        if not (0 <= degree <= 3):
            raise DegreeError(f"degree {degree} out of range")
        values = np.asarray(values, dtype=float)
        if values.shape != (complex.n_cells[degree],):
            raise DegreeError(
                f"{len(values)} values for {complex.n_cells[degree]} "
                f"cells of dimension {degree}")
        if not np.all(np.isfinite(values)):
            raise ValueError("cochain values must be finite")
        self.complex = complex
        self.degree = degree
        self.values = values

    @classmethod
    def zero(cls, complex, degree):
        return cls(complex, degree, np.zeros(complex.n_cells[degree]))

    def __add__(self, other):
        return Cochain(self.complex, self.degree, self.values + other.values)

    def __sub__(self, other):
        return Cochain(self.complex, self.degree, self.values - other.values)

    def __mul__(self, k):
        return Cochain(self.complex, self.degree, float(k) * self.values)

    __rmul__ = __mul__


def coboundary(omega):
    """(d omega)(c) = signed sum of omega over the boundary of c."""
    k = omega.degree
    if k >= 3:
        raise DegreeError("coboundary of a top-degree cochain")
    B = omega.complex.boundary_matrix(k + 1)
    return Cochain(omega.complex, k + 1, B.T @ omega.values)


def integrate(omega, chain):
    """Signed sum of a k-cochain over a k-chain of (cell, coeff) pairs.

    Summation order follows the chain listing so results are bit-stable.
    """
    total = 0.0
    for idx, coeff in chain:
        if not (0 <= idx < omega.complex.n_cells[omega.degree]):
            raise DegreeError(f"no {omega.degree}-cell with index {idx}")
        total += coeff * omega.values[idx]
    return total


def integrate_vector(omega, chain_vec):
    """Integrate against a dense coefficient vector (fixed cell order)."""
    if len(chain_vec) != omega.complex.n_cells[omega.degree]:
        raise DegreeError("chain vector length mismatch")
    return float(np.dot(np.asarray(chain_vec, dtype=float), omega.values))


def chain_from_vector(vec):
    return [(i, int(c)) for i, c in enumerate(vec) if c != 0]


def is_closed(omega, tol=1e-12):
    if omega.degree >= omega.complex.dim:
        return True
    d = coboundary(omega)
    return bool(np.all(np.abs(d.values) <= tol))


def check_stokes(W, omega, chain=None):
    """(lhs, rhs) with lhs the boundary integral and rhs the bulk one.

    `chain` is a (k+1)-chain vector on W; by default the fundamental chain
    of all (k+1)-cells.  Stokes makes the two sides agree up to float
    re-association.
    """
    k = omega.degree
    if k + 1 > W.dim:
        raise DegreeError(
            f"complex has no {k + 1}-cells to integrate d(omega) over")
    if chain is None:
        chain = W.fundamental_chain(k + 1)
    chain = np.asarray(chain, dtype=np.int64)
    boundary_chain = W.boundary_of(k + 1, chain)
    lhs = integrate_vector(omega, boundary_chain)
    rhs = integrate_vector(coboundary(omega), chain)
    return lhs, rhs
