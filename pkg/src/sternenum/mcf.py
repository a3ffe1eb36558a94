"""Minus continued fractions (a1, a2, ..., am) = a1 - 1/(a2 - 1/(... - 1/am)).

Two encodings of the enumerations are provided: the valuation pattern
(terms 2 nu_N(j) + 1, alternately scaled) and the digit lists built by
l_{kn} = 1 + l_n, l_{kn+j} = 1 * l_{kn+j-1}.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .exact import PHI, SQRT2, SQRT3, demote
from .stern import valuation

__all__ = [
    "ZeroDenominator",
    "mcf_eval",
    "mcf_encode_valuation",
    "digit_list",
    "term_from_list",
    "alpha_for_base",
]

_SCALE = {"R": 1, "S": 2, "T": 3}
_VAL_BASE = {"R": 2, "S": 3, "T": 5}


class ZeroDenominator(ArithmeticError):
    def __init__(self, position: int):
        super().__init__(f"zero denominator at term {position}")
        self.position = position


def _eval_int(terms):
    # v = p/q; a - 1/v = (a p - q)/p.  Each step has determinant 1, so p/q
    # stays in lowest terms without gcd work.
    p, q = terms[-1], 1
    for i in range(len(terms) - 2, -1, -1):
        if p == 0:
            raise ZeroDenominator(i + 2)
        p, q = terms[i] * p - q, p
    return Fraction(p, q)


def mcf_eval(terms):
    """Fold right to left: v <- a_i - 1/v."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty minus continued fraction")
    if all(isinstance(t, int) for t in terms):
        return _eval_int(terms)
    terms = [Fraction(t) if isinstance(t, int) else t for t in terms]
    v = terms[-1]
    for i in range(len(terms) - 2, -1, -1):
        if v == 0:
            raise ZeroDenominator(i + 2)
        v = terms[i] - 1 / v
    return demote(v)


def mcf_encode_valuation(e, n: int) -> list[int]:
    """Terms for r_n, s_n or t_n from v_j = 2 nu_N(j) + 1, j = n..1.

    r_n = (v_n, v_{n-1}, ..., v_1).  For s and t the terms alternate
    c*v, v, c*v, ... (c = 2 or 3) starting at v_n, so the final term is
    c*v_1 when n is odd and v_1 when n is even.
    """
    tag = e if isinstance(e, str) else e.tag
    tag = tag.upper()
    if tag not in _SCALE:
        raise ValueError("valuation encoding exists for r, s, t only")
    if n < 1:
        raise ValueError("n must be >= 1")
    c, N = _SCALE[tag], _VAL_BASE[tag]
    vals = _odd_valuations(N, n)
    out = vals[n - 1 :: -1] if n < len(vals) else vals[::-1]
    if c != 1:
        out[0::2] = [c * v for v in out[0::2]]
    return out


_VAL_CACHE: dict = {}


def _odd_valuations(N: int, n: int) -> list[int]:
    """[2 nu_N(j) + 1 for j = 1..m] for some m >= n (cached per N)."""
    vals = _VAL_CACHE.get(N)
    if vals is None or len(vals) < n:
        m = max(n, 2 * len(vals) if vals else 1024)
        vals = [2 * valuation(N, j) + 1 for j in range(1, m + 1)]
        _VAL_CACHE[N] = vals
    return vals


def digit_list(k: int, n: int) -> list[int]:
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return []
    ones, rest = n % k, n - n % k
    if rest == 0:
        head = []
    else:
        head = digit_list(k, rest // k)
        assert head, "1 + [] cannot occur for n >= 1"
        head = [head[0] + 1] + head[1:]
    return [1] * ones + head


def alpha_for_base(k: int, dps: int = 40):
    """2 cos(pi/(k+1)): exact for k in 2..5, an mpmath float otherwise."""
    exact = {2: 1, 3: SQRT2, 4: PHI, 5: SQRT3}
    if k in exact:
        return exact[k]
    with mpmath.workdps(dps):
        return 2 * mpmath.cos(mpmath.pi / (k + 1))


def term_from_list(k: int, n: int, alpha=None, dps: int = 40):
    """alpha * (alpha*l_{n,0}, alpha*l_{n,1}, ...)."""
    if alpha is None:
        alpha = alpha_for_base(k, dps)
    ell = digit_list(k, n)
    if isinstance(alpha, mpmath.mpf):
        with mpmath.workdps(dps):
            return alpha * mcf_eval([alpha * w for w in ell])
    return demote(alpha * mcf_eval([alpha * w for w in ell]))
