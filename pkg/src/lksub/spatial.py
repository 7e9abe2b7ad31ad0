"""Chebyshev-Gauss-Lobatto spectral collocation on (-1, 1): nodes, first
derivative matrix, and the interior-restricted second-derivative operator
with homogeneous Dirichlet boundary conditions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .special_functions import DomainError


@dataclass(frozen=True)
class SpectralGrid:
    P: int
    nodes: np.ndarray

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


@dataclass(frozen=True)
class LaplacianOperator:
    grid: SpectralGrid
    matrix: np.ndarray


def cgl_grid(P: int) -> SpectralGrid:
    """Nodes x_i = cos(i*pi/P), i = 0..P, descending from 1 to -1."""
    if P < 2:
        raise DomainError(f"cgl_grid: P={P} must be >= 2")
    nodes = np.cos(np.pi * np.arange(P + 1) / P)
    nodes[0] = 1.0
    nodes[P] = -1.0
    if P % 2 == 0:
        nodes[P // 2] = 0.0
    return SpectralGrid(P=P, nodes=nodes)


def diff_matrix(grid: SpectralGrid) -> np.ndarray:
    """First-order collocation differentiation matrix, exact on polynomials
    of degree <= P; diagonal via the negative-sum trick."""
    P = grid.P
    x = grid.nodes
    c = np.ones(P + 1)
    c[0] = c[P] = 2.0
    c *= (-1.0) ** np.arange(P + 1)
    X = np.tile(x, (P + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(P + 1))
    D -= np.diag(D.sum(axis=1))
    return D


def laplacian_dirichlet(grid: SpectralGrid) -> LaplacianOperator:
    """Second-derivative matrix D@D restricted to the interior nodes,
    enforcing zero values at both endpoints."""
    D = diff_matrix(grid)
    D2 = D @ D
    return LaplacianOperator(grid=grid, matrix=D2[1:-1, 1:-1])
