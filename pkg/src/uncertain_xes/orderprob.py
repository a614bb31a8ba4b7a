"""Exact probability that independent point/uniform times fall in a given order.

For events 1..k with time measures mu_i the probability of the chain
X_1 <= X_2 <= ... <= X_k is built up as

    H_0(x) = 1,   H_i(x) = integral over y <= x of H_{i-1}(y) dmu_i(y)

and the answer is H_k(+inf). With uniform and point measures every H_i is a
right-continuous piecewise polynomial, so the recursion is exact up to float
rounding. Where a link must be strict (ties broken against that order) the
left limit H_{i-1}(y-) is used at atoms.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right

import numpy as np
from numpy.polynomial import polynomial as P


def _shift(coeffs, d):
    """Coefficients of q(u + d) given those of q(u)."""
    if d == 0.0 or len(coeffs) == 1:
        return np.asarray(coeffs, dtype=float)
    out = np.zeros(1)
    for c in reversed(coeffs):
        out = P.polyadd(P.polymul(out, [d, 1.0]), [c])
    return out


class Piecewise:
    """Right-continuous piecewise polynomial; each piece in local coordinates."""

    def __init__(self, left, starts=(), pieces=()):
        self.left = float(left)
        self.starts = list(starts)
        self.pieces = [np.asarray(p, dtype=float) for p in pieces]

    def _piece(self, j, x):
        return float(P.polyval(x - self.starts[j], self.pieces[j]))

    def __call__(self, x):
        j = bisect_right(self.starts, x) - 1
        return self.left if j < 0 else self._piece(j, x)

    def left_limit(self, x):
        j = bisect_left(self.starts, x) - 1
        return self.left if j < 0 else self._piece(j, x)

    def local_at(self, s):
        """Coefficients of the piece active on [s, next breakpoint), in coordinates u = x - s."""
        j = bisect_right(self.starts, s) - 1
        if j < 0:
            return np.array([self.left])
        return _shift(self.pieces[j], s - self.starts[j])

    @property
    def total(self):
        return self.pieces[-1][0] if self.pieces else self.left


def point_step(h: Piecewise, c: float, strict: bool) -> Piecewise:
    v = h.left_limit(c) if strict else h(c)
    return Piecewise(0.0, [c], [[v]])


def uniform_step(h: Piecewise, a: float, b: float) -> Piecewise:
    width = b - a
    cuts = [a] + [s for s in h.starts if a < s < b] + [b]
    starts, pieces = [], []
    acc = 0.0
    for s, t in zip(cuts, cuts[1:]):
        q = h.local_at(s)
        integ = P.polyint(q) / width
        integ[0] = acc
        starts.append(s)
        pieces.append(integ)
        acc = float(P.polyval(t - s, integ))
    starts.append(b)
    pieces.append([acc])
    return Piecewise(0.0, starts, pieces)


def chain_probability(measures, strict_links) -> float:
    """P(X_1 <=/< X_2 <=/< ... X_k).

    ``measures``: sequence of ``(lo, hi)`` with ``lo == hi`` for a point mass.
    ``strict_links[i]`` makes the link between items i and i+1 strict.
    """
    h = Piecewise(1.0)
    prev_strict = False
    for i, (lo, hi) in enumerate(measures):
        if lo == hi:
            h = point_step(h, lo, prev_strict)
        else:
            h = uniform_step(h, lo, hi)
        prev_strict = strict_links[i] if i < len(strict_links) else False
    return float(min(max(h.total, 0.0), 1.0))
