"""Glue between package objects and the oracles (complex embeddings of CM types)."""

from __future__ import annotations

import mpmath

import oracles


def cm_type_roots(surface, phi) -> tuple[list, list]:
    """Complex values phi(pi) for phi in the CM type, and all four conjugates of pi.

    Embeddings are iota o sigma for a fixed complex root iota(pi); sigma(pi) is a
    polynomial in pi, evaluated at that root.
    """
    coeffs = [int(c) for c in surface.field.m]
    rs = oracles.roots(coeffs)
    r0 = rs[0]

    def at(elem):
        return sum(mpmath.mpf(c.numerator) / c.denominator * r0 ** i for i, c in enumerate(elem.coords))

    images = [at(surface.group.elements[i].image) for i in sorted(phi.elements)]
    return images, rs
