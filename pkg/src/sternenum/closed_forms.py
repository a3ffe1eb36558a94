"""Closed formulas for the diatomic sequences.

* ``weighted_rep_sum``: x_{n+1} as a weighted count of representations
  n = sum e_j m^j with digits 0 <= e_j <= e_max (hyperbinary
  representations for family A).
* ``tuple_rep_sum``: the same count written as a sum over tuples
  (a, b, c, ...) with a + 2b + 3c + ... = n whose base-m expansions use only
  the digits 0/1 and never share a position.  Brute force; small n only.
* Binet-type sums for a (over Z[sigma]) and b (over Z[sqrt2][tau]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exact import CyclotomicSigma, QuadElem, TauElem
from .stern import get_family

__all__ = [
    "WeightedDigitScheme",
    "SCHEMES",
    "weighted_rep_sum",
    "tuple_rep_sum",
    "digit_disjoint",
    "binom_mod2",
    "digit_count",
    "binet_a",
    "binet_b",
    "binet_a_prefix",
    "binet_b_prefix",
    "fibonacci_diagonal",
    "NonRealResult",
    "NonPureResult",
]


class NonRealResult(ArithmeticError):
    pass


class NonPureResult(ArithmeticError):
    pass


@dataclass(frozen=True)
class WeightedDigitScheme:
    tag: str
    base: int
    weights: tuple

    @property
    def max_digit(self) -> int:
        return len(self.weights) - 1

    @property
    def zero(self):
        return self.weights[0] - self.weights[0]


SCHEMES = {tag: WeightedDigitScheme(tag, get_family(tag).base, get_family(tag).weights) for tag in "ABCD"}


def _scheme(s) -> WeightedDigitScheme:
    return s if isinstance(s, WeightedDigitScheme) else SCHEMES[s.upper()]


def weighted_rep_sum(scheme, n: int):
    """Sum over digit strings (e_0, e_1, ...) with sum e_j m^j = n of
    prod weights[e_j].

    The lowest digit is congruent to n mod m; since e_max < 2m it is one of
    two values, which leaves a residual that is floor(n/m^j) or one less.
    """
    s = _scheme(scheme)
    if n < 0:
        raise ValueError("n must be >= 0")
    m, w, emax = s.base, s.weights, s.max_digit
    assert emax < 2 * m, "carry bound 1 assumes max digit < 2*base"

    @lru_cache(maxsize=None)
    def f(N):
        if N == 0:
            return w[0] ** 0 if not isinstance(w[0], int) else 1
        total = s.zero
        e = N % m
        while e <= emax and e <= N:
            total = total + w[e] * f((N - e) // m)
            e += m
        return total

    return f(n)


def _zero_one_numbers(m: int, limit: int) -> list[int]:
    # numbers <= limit whose base-m digits are all 0 or 1
    out = [0]
    p = 1
    while p <= limit:
        out += [x + p for x in out if x + p <= limit]
        p *= m
    return sorted(out)


def digit_count(x: int, base: int, digit: int = 1) -> int:
    c = 0
    while x:
        x, r = divmod(x, base)
        c += r == digit
    return c


def digit_disjoint(xs, k: int) -> int:
    """1 if no base-k position is nonzero in two or more of xs, else 0."""
    xs = list(xs)
    if any(x < 0 for x in xs):
        raise ValueError("digits of negative numbers are undefined")
    while any(xs):
        busy = sum(1 for x in xs if x % k)
        if busy > 1:
            return 0
        xs = [x // k for x in xs]
    return 1


def tuple_rep_sum(scheme, n: int):
    """Brute-force sum over tuples (y_1, ..., y_E) with sum i*y_i = n.

    Every y_i has base-m digits in {0, 1}, the tuple is position-disjoint,
    and y_i contributes weights[i] for each of its nonzero digits.  For
    family A (m = 2) this is the familiar sum over a + 2b = n of <a, b>_2.
    """
    s = _scheme(scheme)
    m, w, E = s.base, s.weights, s.max_digit
    cands = _zero_one_numbers(m, n)
    total = s.zero

    def rec(i, remaining, chosen):
        nonlocal total
        if i > E:
            if remaining == 0 and digit_disjoint(chosen, m):
                term = 1
                for idx, y in enumerate(chosen, start=1):
                    ones = digit_count(y, m)
                    if ones:
                        term = term * w[idx] ** ones
                total = total + term
            return
        for y in cands:
            if i * y > remaining:
                break
            rec(i + 1, remaining - i * y, chosen + [y])

    rec(1, n, [])
    return total


def binom_mod2(a: int, b: int) -> int:
    """C(a+b, b) mod 2: odd exactly when a and b share no binary 1s."""
    if a < 0 or b < 0:
        raise ValueError("negative argument")
    return 0 if a & b else 1


def fibonacci_diagonal(n: int) -> int:
    """sum over a + 2b = n of C(a+b, b)."""
    return sum(math.comb(n - 2 * b + b, b) for b in range(n // 2 + 1))


def _digit_ones(N: int, base: int) -> np.ndarray:
    ks = np.arange(N + 1)
    out = np.zeros(N + 1, dtype=np.int64)
    while ks.any():
        out += (ks % base == 1)
        ks //= base
    return out


def _pair_counts(n: int, s: np.ndarray) -> np.ndarray:
    # histogram of (s(k), s(n-k)) for k = 0..n
    width = int(s.max()) + 1
    keys = s[: n + 1] * width + s[n::-1]
    return np.bincount(keys, minlength=width * width).reshape(width, width)


def _binet_sum(n, s, pw, pwbar, one):
    counts = _pair_counts(n, s)
    total = one * 0
    for i, j in zip(*np.nonzero(counts)):
        total = total + (pw[i] * pwbar[j]) * int(counts[i, j])
    return total


def _sigma_powers(L):
    sig, sbar = CyclotomicSigma.sigma(), CyclotomicSigma.sigma_bar()
    return [sig ** i for i in range(L)], [sbar ** i for i in range(L)]


def binet_a(n: int) -> int:
    """a_{n+1} = sum_k sigma^{s2(k)} sigmabar^{s2(n-k)} evaluated in Z[sigma]."""
    return binet_a_prefix(n)[n]


def binet_a_prefix(N: int) -> list[int]:
    s = _digit_ones(N, 2)
    pw, pwbar = _sigma_powers(int(s.max()) + 1)
    out = []
    for n in range(N + 1):
        v = _binet_sum(n, s, pw, pwbar, CyclotomicSigma(1))
        if v.q != 0:
            raise NonRealResult(f"n={n}: {v}")
        out.append(v.p)
    return out


def binet_b(n: int) -> QuadElem:
    """b_{n+1} = sum_k tau^{s3(k)} taubar^{s3(n-k)}, s3 = count of ternary 1s."""
    return binet_b_prefix(n)[n]


def binet_b_prefix(N: int) -> list[QuadElem]:
    s = _digit_ones(N, 3)
    L = int(s.max()) + 1
    t, tb = TauElem.tau(), TauElem.tau_bar()
    pw, pwbar = [t ** i for i in range(L)], [tb ** i for i in range(L)]
    out = []
    for n in range(N + 1):
        v = _binet_sum(n, s, pw, pwbar, TauElem(1))
        if not v.is_sqrt2_pure():
            raise NonPureResult(f"n={n}: {v}")
        out.append(v.to_quad())
    return out
