"""Exact circle packings above the real axis.

C(x, y) is the circle tangent to the axis at x/y with radius 1/(2 y^2);
two such circles touch iff |x v - y u| = 1.  C(1, 0) is the horizontal
line at height 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import PHI, SQRT2, SQRT3, QuadElem, demote, qdecimal, sign

__all__ = [
    "Circle",
    "Necklace",
    "NoTermination",
    "tangent",
    "mobius_apply",
    "SEEDS",
    "packing",
    "tangency_points",
    "cheb_poly",
    "cheb_eval",
    "cheb_chain",
    "totient",
    "totient_halved",
    "render_svg",
]


@dataclass(frozen=True)
class Circle:
    x: object
    y: object

    def __post_init__(self):
        if sign(self.y) < 0:
            raise ValueError("circle needs y >= 0")

    @property
    def is_line(self) -> bool:
        return self.y == 0

    @property
    def touch_point(self):
        """x/y, the tangency point with the axis (None for the line)."""
        if self.is_line:
            return None
        if isinstance(self.x, int) and isinstance(self.y, int):
            return Fraction(self.x, self.y)
        return demote(self.x / self.y)

    @property
    def radius(self):
        if self.is_line:
            return None
        if isinstance(self.y, int):
            return Fraction(1, 2 * self.y * self.y)
        return demote(1 / (2 * self.y * self.y))

    def __str__(self):
        return f"C({self.x}, {self.y})"


def tangent(c1: Circle, c2: Circle) -> bool:
    det = c1.x * c2.y - c1.y * c2.x
    return det == 1 or det == -1


def mobius_apply(m, c: Circle) -> Circle:
    """((a, b), (c, d)) with ad - bc = 1 sends C(x, y) to C(ax+by, cx+dy)."""
    (a, b), (cc, d) = m
    if a * d - b * cc != 1:
        raise ValueError("Moebius matrix must have determinant 1")
    return Circle(a * c.x + b * c.y, cc * c.x + d * c.y)


# -- packings -----------------------------------------------------------------

def _q(d, v):
    return QuadElem(d, v)


def _insert_a(a, b, c, d):
    return [(a + c, b + d)]


def _insert_b(a, b, c, d):
    r2 = SQRT2
    return [(a * r2 + c, b * r2 + d), (a + c * r2, b + d * r2)]


def _insert_c(a, b, c, d):
    r3 = SQRT3
    # left to right; each new circle touches its neighbours
    return [
        (a * r3 + c, b * r3 + d),
        (2 * a + c * r3, 2 * b + d * r3),
        (a * r3 + 2 * c, b * r3 + 2 * d),
        (a + c * r3, b + d * r3),
    ]


def _insert_d(a, b, c, d):
    f = PHI
    return [(a * f + c, b * f + d), (a * f + c * f, b * f + d * f), (a + c * f, b + d * f)]


_RULES = {"A": _insert_a, "B": _insert_b, "C": _insert_c, "D": _insert_d}


def _seed(tag):
    if tag == "A":
        return [Circle(0, 1), Circle(1, 1), Circle(1, 0)]
    d, pts = {
        "B": (2, [(0, 1), (1, SQRT2), (SQRT2, 1), (1, 0)]),
        "C": (3, [(0, 1), (1, SQRT3), (SQRT3, 2), (2, SQRT3), (SQRT3, 1), (1, 0)]),
        "D": (5, [(0, 1), (1, PHI), (PHI, PHI), (PHI, 1), (1, 0)]),
    }[tag]
    # keep every coordinate in the family's field
    lift = lambda v: v if isinstance(v, QuadElem) else _q(d, v)  # noqa: E731
    return [Circle(lift(x), lift(y)) for x, y in pts]


SEEDS = {tag: _seed(tag) for tag in "ABCD"}

# CLI names for the packings
PACKING_NAMES = {"ford": "A", "gm": "B", "hex": "C", "golden": "D"}


def _packing_tag(tag) -> str:
    t = PACKING_NAMES.get(str(tag).lower(), str(tag).upper())
    t = {"R": "A", "S": "B", "T": "C", "U": "D"}.get(t, t)
    if t not in _RULES:
        raise ValueError(f"unknown packing {tag!r}")
    return t


def packing(tag, depth: int) -> list[Circle]:
    """The family necklace after ``depth`` rounds of insertion between
    every adjacent pair."""
    t = _packing_tag(tag)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    rule = _RULES[t]
    chain = list(SEEDS[t])
    for _ in range(depth):
        out = [chain[0]]
        for left, right in zip(chain, chain[1:]):
            out.extend(Circle(x, y) for x, y in rule(left.x, left.y, right.x, right.y))
            out.append(right)
        chain = out
    return chain


def tangency_points(chain, lo=0, hi=1) -> list:
    """Axis touch points lying in [lo, hi], in chain order."""
    pts = []
    for c in chain:
        p = c.touch_point
        if p is not None and lo <= p <= hi:
            pts.append(p)
    return pts


# -- Chebyshev necklaces ------------------------------------------------------

def cheb_poly(n: int) -> list[int]:
    """Coefficients (constant first) of p_n(x) = U_n(x/2):
    p_0 = 1, p_1 = x, p_{n+1} = x p_n - p_{n-1}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    prev, cur = [0], [1]
    for _ in range(n):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    while len(cur) > 1 and cur[-1] == 0:
        cur.pop()
    return cur


def cheb_eval(n: int, alpha):
    # Horner on the integer coefficients
    v = 0
    for c in reversed(cheb_poly(n)):
        v = v * alpha + c
    return v


class NoTermination(Exception):
    def __init__(self, max_len):
        super().__init__(f"chain did not reach C(1, 0) within {max_len} circles")
        self.max_len = max_len


@dataclass(frozen=True)
class Necklace:
    alpha: object
    chain: tuple

    @property
    def length(self) -> int:
        return len(self.chain)


def cheb_chain(alpha, max_len: int = 50, tol=None) -> Necklace:
    """C(p_{n-1}(alpha), p_n(alpha)) for n = 0, 1, ... until y vanishes.

    Exact ring elements are tested for zero exactly; mpmath numbers are
    treated as zero below ``tol`` (default 10^(-dps/2)).
    """
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    numeric = isinstance(alpha, (mpmath.mpf, float))
    if numeric and tol is None:
        tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    prev, cur = alpha * 0, alpha * 0 + 1
    chain = []
    while len(chain) < max_len:
        if numeric:
            chain.append((prev, cur))
            if abs(cur) < tol:
                return Necklace(alpha, tuple(chain))
        else:
            if sign(cur) < 0:
                # went below the axis: alpha is not the largest root of any p_N
                raise NoTermination(max_len)
            chain.append(Circle(prev, cur))
            if cur == 0:
                return Necklace(alpha, tuple(chain))
        prev, cur = cur, alpha * cur - prev
    raise NoTermination(max_len)


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def totient_halved(n: int) -> int:
    """phi(2n+2)/2, the degree of the largest irreducible factor of U_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return totient(2 * n + 2) // 2


# -- SVG ----------------------------------------------------------------------

def _dec(x, digits=12) -> str:
    s = qdecimal(x, digits)
    # trim trailing zeros for compactness, keep deterministic
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(circles, viewport=(0, 1), scale: int = 500, out=None, digits: int = 12) -> str:
    """One <circle> per circle whose touch point lies in the viewport.

    Coordinates are in the mathematical frame (y up) scaled by ``scale``;
    the axis is drawn as a line, C(x, 0) as the horizontal line at height
    x^2.
    """
    circles = list(circles)
    if not circles:
        raise ValueError("nothing to render")
    x0, x1 = Fraction(viewport[0]), Fraction(viewport[1])
    width = (x1 - x0) * scale
    height = Fraction(scale, 1) if x1 - x0 <= 1 else width / 2
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_dec(width, 3)}" '
        f'height="{_dec(height, 3)}" viewBox="0 0 {_dec(width, 3)} {_dec(height, 3)}">',
        f'<line x1="0" y1="{_dec(height, 3)}" x2="{_dec(width, 3)}" y2="{_dec(height, 3)}" '
        'stroke="black" stroke-width="1"/>',
    ]
    for c in circles:
        if c.is_line:
            h = height - c.x * c.x * scale
            if sign(h) >= 0:
                lines.append(
                    f'<line x1="0" y1="{_dec(h, digits)}" x2="{_dec(width, 3)}" y2="{_dec(h, digits)}" '
                    'stroke="gray" stroke-width="0.5"/>'
                )
            continue
        p = c.touch_point
        if not (x0 <= p <= x1):
            continue
        r = c.radius
        cx = (p - x0) * scale
        cy = height - r * scale
        lines.append(
            f'<circle cx="{_dec(cx, digits)}" cy="{_dec(cy, digits)}" r="{_dec(r * scale, digits)}" '
            'fill="none" stroke="black" stroke-width="0.5"/>'
        )
    lines.append("</svg>")
    doc = "\n".join(lines) + "\n"
    if out is not None:
        if hasattr(out, "write"):
            out.write(doc)
        else:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(doc)
    return doc


def necklace_circles(alpha) -> list[Circle]:
    """The finite necklace for an exact alpha (1, sqrt2, phi, sqrt3)."""
    return [c for c in cheb_chain(alpha).chain]


def count_circles_in(chain, lo=0, hi=1) -> int:
    return len(tangency_points(chain, lo, hi))
