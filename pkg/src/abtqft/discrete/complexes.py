"""Oriented cell complexes of dimension <= 3 with signed boundary data."""

from __future__ import annotations

import numpy as np


class ComplexError(ValueError):
    pass


class CellComplex:
    """Graded cells with signed boundary incidence lists.

    `boundary[k]` holds, for each k-cell, a list of (face_index, sign)
    pairs over the (k-1)-cells.  The chain-complex identity boundary of
    boundary = 0 is verified at construction.  Optional vertex coordinates
    and edge lengths support quadrature and metric constructions.
    """

    def __init__(self, cell_counts, boundary, coords=None, edge_lengths=None,
                 name=None):
        self.dim = max((k for k, n in cell_counts.items() if n > 0), default=0)
        self.n_cells = {k: int(cell_counts.get(k, 0)) for k in range(4)}
        self.boundary = {k: [list(map(tuple, b)) for b in boundary.get(k, [])]
                         for k in range(1, 4)}
        self.name = name
        for k in range(1, 4):
            if len(self.boundary[k]) != self.n_cells[k]:
                raise ComplexError(
                    f"dimension {k}: {len(self.boundary[k])} boundary lists "
                    f"for {self.n_cells[k]} cells")
            for c, faces in enumerate(self.boundary[k]):
                for idx, sign in faces:
                    if not (0 <= idx < self.n_cells[k - 1]):
                        raise ComplexError(
                            f"cell {c} of dimension {k} references "
                            f"missing {k-1}-cell {idx}")
                    if sign not in (1, -1):
                        raise ComplexError(f"boundary sign {sign} is not +-1")
        self._bnd_matrix = {}
        for k in range(1, self.dim + 1):
            B = self.boundary_matrix(k)
            if k >= 2:
                if np.any(self.boundary_matrix(k - 1) @ B):
                    raise ComplexError(
                        f"boundary of boundary nonzero in dimension {k}")
        self.coords = None if coords is None else np.asarray(coords, dtype=float)
        if self.coords is not None and len(self.coords) != self.n_cells[0]:
            raise ComplexError("one coordinate row per vertex required")
        self.edge_lengths = (None if edge_lengths is None
                             else np.asarray(edge_lengths, dtype=float))
        if (self.edge_lengths is not None
                and len(self.edge_lengths) != self.n_cells[1]):
            raise ComplexError("one length per edge required")

    def boundary_matrix(self, k):
        """Integer matrix of the boundary operator on k-chains."""
        if k not in self._bnd_matrix:
            M = np.zeros((self.n_cells[k - 1], self.n_cells[k]), dtype=np.int64)
            for c, faces in enumerate(self.boundary.get(k, [])):
                for idx, sign in faces:
                    M[idx, c] += sign
            self._bnd_matrix[k] = M
        return self._bnd_matrix[k]

    # -- chains -----------------------------------------------------------

    def chain_vector(self, k, chain):
        """Coefficient vector of a chain given as (cell, coeff) pairs."""
        v = np.zeros(self.n_cells[k], dtype=np.int64)
        for idx, coeff in chain:
            if not (0 <= idx < self.n_cells[k]):
                raise ComplexError(f"no {k}-cell with index {idx}")
            v[idx] += coeff
        return v

    def fundamental_chain(self, k):
        return np.ones(self.n_cells[k], dtype=np.int64)

    def boundary_of(self, k, chain_vec):
        if k < 1:
            raise ComplexError("0-chains have no boundary")
        return self.boundary_matrix(k) @ chain_vec

    def is_cycle(self, k, chain_vec):
        return not np.any(self.boundary_of(k, chain_vec))

    def edge_endpoints(self, e):
        """(tail, head) of an edge from its signed boundary."""
        tail = head = None
        for idx, sign in self.boundary[1][e]:
            if sign == 1:
                head = idx
            else:
                tail = idx
        if tail is None or head is None:
            raise ComplexError(f"edge {e} lacks a (+1, -1) endpoint pair")
        return tail, head

    def __repr__(self):
        counts = ", ".join(f"{self.n_cells[k]}x{k}d"
                           for k in range(self.dim + 1))
        return f"CellComplex({self.name or counts})"

    # -- JSON -------------------------------------------------------------

    def to_json(self):
        obj = {
            "cells": {str(k): self.n_cells[k] for k in range(self.dim + 1)},
            "boundary": {str(k): [[[i, s] for i, s in b]
                                  for b in self.boundary[k]]
                         for k in range(1, self.dim + 1)},
        }
        if self.coords is not None:
            obj["coords"] = self.coords.tolist()
        if self.edge_lengths is not None:
            obj["edge_lengths"] = self.edge_lengths.tolist()
        return obj

    @classmethod
    def from_json(cls, obj, name=None):
        if "cells" not in obj:
            raise ComplexError("mesh record missing 'cells'")
        counts = {int(k): int(v) for k, v in obj["cells"].items()}
        boundary = {int(k): v for k, v in obj.get("boundary", {}).items()}
        return cls(counts, boundary, coords=obj.get("coords"),
                   edge_lengths=obj.get("edge_lengths"), name=name)


def circle_complex(n, name=None):
    """Cycle with n vertices and n edges, edge i from vertex i to i+1."""
    if n < 1:
        raise ComplexError("a circle needs at least one edge")
    boundary = {1: [[(i, -1), ((i + 1) % n, 1)] for i in range(n)]}
    return CellComplex({0: n, 1: n}, boundary, name=name or f"circle{n}")


def path_complex(n_edges):
    """Path with n_edges edges on n_edges + 1 vertices."""
    boundary = {1: [[(i, -1), (i + 1, 1)] for i in range(n_edges)]}
    return CellComplex({0: n_edges + 1, 1: n_edges}, boundary)


def polygon_disk(n, name=None):
    """A single n-gon face glued onto the n-edge circle."""
    boundary = {
        1: [[(i, -1), ((i + 1) % n, 1)] for i in range(n)],
        2: [[(i, 1) for i in range(n)]],
    }
    return CellComplex({0: n, 1: n, 2: 1}, boundary, name=name or f"disk{n}")


def triangulated_grid(nx, ny):
    """Triangulated (nx x ny)-rectangle; vertices on the integer grid."""
    if nx < 1 or ny < 1:
        raise ComplexError("grid needs at least one cell per direction")
    nv = (nx + 1) * (ny + 1)

    def vid(i, j):
        return j * (nx + 1) + i

    edges = {}
    edge_bnd = []

    def eid(a, b):
        key = (min(a, b), max(a, b))
        if key not in edges:
            edges[key] = len(edge_bnd)
            edge_bnd.append([(key[0], -1), (key[1], 1)])
        return edges[key]

    def side(a, b):
        e = eid(a, b)
        lo, _ = min(a, b), max(a, b)
        return (e, 1 if a == lo else -1)

    faces = []
    for j in range(ny):
        for i in range(nx):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            faces.append([side(v00, v10), side(v10, v11), side(v11, v00)])
            faces.append([side(v00, v11), side(v11, v01), side(v01, v00)])
    coords = [[i, j] for j in range(ny + 1) for i in range(nx + 1)]
    return CellComplex({0: nv, 1: len(edge_bnd), 2: len(faces)},
                       {1: edge_bnd, 2: faces}, coords=coords,
                       name=f"grid{nx}x{ny}")
