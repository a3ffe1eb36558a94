"""Stern-type diatomic sequences a, b, c, d and their diatomic arrays.

Each family obeys a digit recursion in its base k,

    x_{kn+j} = A_j * x_n + B_j * x_{n+1},   j = 0, ..., k-1,

with x_0 = 0, x_1 = 1, and independently a three-term recurrence

    x_{n+1} = alpha*x_n + x_{n-1} - 2*(x_{n-1} mod alpha*x_n).

Values are ints (family A) or :class:`~sternenum.exact.QuadElem`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .exact import PHI, SQRT2, SQRT3, QuadElem, qmod, sign

__all__ = [
    "SternFamily",
    "DiatomicRow",
    "FAMILIES",
    "get_family",
    "seq_term",
    "seq_pair",
    "seq_prefix",
    "three_term_next",
    "three_term_prefix",
    "digit_prefix",
    "diatomic_row",
    "row_max",
    "valuation",
]


@dataclass(frozen=True)
class SternFamily:
    tag: str
    base: int
    alpha: object
    alpha_sq: object
    # digit_rules[j] = (A_j, B_j)
    digit_rules: tuple
    # coefficients of the generating factor, indexed by digit value
    weights: tuple
    zero: object
    one: object
    _memo: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False, hash=False)

    @property
    def valuation_base(self) -> int:
        return self.base

    def combine(self, j: int, xn, xn1):
        a, b = self.digit_rules[j]
        return a * xn + b * xn1


def _q(d, x):
    return QuadElem(d, x)


def _make_families():
    fams = {}
    fams["A"] = SternFamily(
        tag="A", base=2, alpha=1, alpha_sq=1,
        digit_rules=((1, 0), (1, 1)),
        weights=(1, 1, 1),
        zero=0, one=1,
    )
    one2, zero2 = _q(2, 1), _q(2, 0)
    fams["B"] = SternFamily(
        tag="B", base=3, alpha=SQRT2, alpha_sq=2,
        digit_rules=((one2, zero2), (SQRT2, one2), (one2, SQRT2)),
        weights=(one2, SQRT2, one2, SQRT2, one2),
        zero=zero2, one=one2,
    )
    one3, zero3, two3 = _q(3, 1), _q(3, 0), _q(3, 2)
    fams["C"] = SternFamily(
        tag="C", base=5, alpha=SQRT3, alpha_sq=3,
        digit_rules=((one3, zero3), (SQRT3, one3), (two3, SQRT3), (SQRT3, two3), (one3, SQRT3)),
        weights=(one3, SQRT3, two3, SQRT3, one3, SQRT3, two3, SQRT3, one3),
        zero=zero3, one=one3,
    )
    one5, zero5 = _q(5, 1), _q(5, 0)
    fams["D"] = SternFamily(
        tag="D", base=4, alpha=PHI, alpha_sq=PHI * PHI,
        digit_rules=((one5, zero5), (PHI, one5), (PHI, PHI), (one5, PHI)),
        weights=(one5, PHI, PHI, one5, PHI, PHI, one5),
        zero=zero5, one=one5,
    )
    return fams


FAMILIES = _make_families()


def get_family(tag) -> SternFamily:
    if isinstance(tag, SternFamily):
        return tag
    try:
        return FAMILIES[tag.upper()]
    except KeyError:
        raise ValueError(f"unknown family {tag!r}; expected one of A, B, C, D") from None


def valuation(N: int, n: int) -> int:
    """Largest j with N**j dividing n."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if N < 2:
        raise ValueError("base must be >= 2")
    n = abs(n)
    j = 0
    while n % N == 0:
        n //= N
        j += 1
    return j


def seq_pair(family, n: int):
    """(x_n, x_{n+1}) by top-down digit recursion."""
    fam = get_family(family)
    if n < 0:
        raise ValueError("index must be >= 0")
    memo = fam._memo
    hit = memo.get(n)
    if hit is not None:
        return hit
    # walk the base-k digits from the top
    digits = []
    m = n
    while m > 0 and m not in memo:
        digits.append(m % fam.base)
        m //= fam.base
    if m == 0:
        xm, xm1 = fam.zero, fam.one
    else:
        xm, xm1 = memo[m]
    k = fam.base
    new = {}
    for j in reversed(digits):
        m = m * k + j
        lo = fam.combine(j, xm, xm1)
        hi = fam.combine(j + 1, xm, xm1) if j + 1 < k else xm1
        xm, xm1 = lo, hi
        new[m] = (xm, xm1)
    if len(memo) < 1 << 20:
        with fam._lock:
            memo.update(new)
    return xm, xm1


def seq_term(family, n: int):
    return seq_pair(family, n)[0]


def three_term_next(family, prev, cur):
    """x_{n+1} from (x_{n-1}, x_n)."""
    fam = get_family(family)
    if sign(cur) <= 0:
        raise ValueError("three-term recurrence needs x_n > 0")
    ac = fam.alpha * cur
    return ac + prev - 2 * qmod(prev, ac)


def three_term_prefix(family, N: int) -> list:
    fam = get_family(family)
    out = [fam.zero, fam.one]
    for _ in range(N - 1):
        out.append(three_term_next(fam, out[-2], out[-1]))
    return out[: N + 1]


def digit_prefix(family, N: int) -> list:
    """x_0..x_N bottom-up from the digit recursion."""
    fam = get_family(family)
    k = fam.base
    out = [fam.zero, fam.one]
    for i in range(2, N + 1):
        m, j = divmod(i, k)
        out.append(out[m] if j == 0 else fam.combine(j, out[m], out[m + 1]))
    return out[: N + 1]


def seq_prefix(family, N: int, method: str = "three_term") -> list:
    """x_0, ..., x_N.  ``method`` is 'three_term' or 'digits'."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if method == "three_term":
        return three_term_prefix(family, N)
    if method == "digits":
        return digit_prefix(family, N)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class DiatomicRow:
    """Row k of a diatomic array: x_n for base^k <= n <= base^(k+1).

    Row 0 of family A is (1, 1); row 1 of family B is
    (1, 2*sqrt2, 3, sqrt2, 3, 2*sqrt2, 1).
    """

    family: SternFamily
    k: int
    values: tuple


def diatomic_row(family, k: int) -> DiatomicRow:
    fam = get_family(family)
    if k < 0:
        raise ValueError("row index must be >= 0")
    lo, hi = fam.base ** k, fam.base ** (k + 1)
    vals = digit_prefix(fam, hi)[lo:]
    return DiatomicRow(fam, k, tuple(vals))


def row_max(family, k: int):
    """Largest x_n over base^k <= n < base^(k+1), by the real order."""
    fam = get_family(family)
    row = diatomic_row(fam, k).values[:-1]
    return max(row)
