"""Composite Gauss-Legendre panel quadrature helpers."""

from __future__ import annotations

import functools

import numpy as np
from numpy.polynomial.legendre import leggauss


@functools.lru_cache(maxsize=32)
def _rule(order: int):
    x, w = leggauss(order)
    return x, w


def panel_nodes(a: float, b: float, n_panels: int, order: int):
    """Nodes and weights for n_panels equal panels on [a, b]."""
    x, w = _rule(order)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return nodes, wts


def integrate(f, a: float, b: float, n_panels: int, order: int) -> float:
    nodes, wts = panel_nodes(a, b, n_panels, order)
    return float(np.sum(f(nodes) * wts))


def integrate_split(f, edges, panels_per_piece, order: int) -> float:
    """Integrate with panel boundaries forced onto the given edge list."""
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        total += integrate(f, a, b, max(1, panels_per_piece(a, b)), order)
    return total
