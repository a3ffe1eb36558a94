"""Growth degrees, generating-function factors, primary roots and the
singular functions attached to the diatomic sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .exact import PHI, SQRT2, SQRT3, QuadElem, demote, floor, sign
from .stern import digit_prefix, get_family, seq_prefix, seq_term

__all__ = [
    "DegreeEstimate",
    "DEGREE_TARGETS",
    "DEGREE_TOLERANCE",
    "degree_constant",
    "degree_estimate",
    "row_maxima",
    "genfun_verify",
    "GenfunResult",
    "UNCORRECTED_B_FACTOR",
    "PRIMARY_ROOTS",
    "primary_roots_check",
    "continued_fraction",
    "question_mark",
    "box",
    "beta_expansion",
    "ExpansionFailed",
    "singular_roundtrip",
    "singular_experiment",
    "alternating_representable",
]


# ---------------------------------------------------------------------------
# degrees
# ---------------------------------------------------------------------------

def _lam_d():
    p2 = mpmath.phi ** 2
    return (p2 + mpmath.sqrt(4 + p2 ** 2)) / 2


DEGREE_TARGETS = {
    "A": 0.694241914,
    "B": 0.802260812,
    "C": 0.818271949,
    "D": 0.7818951685,
}

# the D constant is observed, not proved
CONJECTURAL_DEGREES = {"D"}

DEGREE_TOLERANCE = {"A": 0.01, "B": 0.02, "C": 0.02, "D": 0.02}

# generator g of Z[g] with g^2 = s + t*g, and its real value
_BASIS = {
    "A": None,
    "B": (2, 0, math.sqrt(2)),
    "C": (3, 0, math.sqrt(3)),
    "D": (1, 1, (1 + math.sqrt(5)) / 2),
}


def _coords(tag, v):
    """Integer coordinates (a, b) with v = a + b*g."""
    if tag == "A":
        return v, 0
    if tag == "D":
        a, b = v.phi_basis()
        return int(a), int(b)
    assert v.r == 1
    return v.p, v.q


def _mul_arr(tag, c, a, b):
    """(c0 + c1 g)(a + b g) on coefficient arrays."""
    c0, c1 = c
    if tag == "A":
        return c0 * a, 0 * a
    s, t, _ = _BASIS[tag]
    return c0 * a + c1 * b * s, c0 * b + c1 * a + c1 * b * t


def _row_stream(tag, k_max):
    """Yield (k, a, b) coefficient arrays of row k for k = 0..k_max;
    row k holds x_n for base^k <= n <= base^(k+1)."""
    fam = get_family(tag)
    m = fam.base
    first = digit_prefix(fam, m)[1:]
    a = np.array([_coords(tag, v)[0] for v in first], dtype=np.int64)
    b = np.array([_coords(tag, v)[1] for v in first], dtype=np.int64)
    rules = [(_coords(tag, A), _coords(tag, B)) for A, B in fam.digit_rules]
    for k in range(k_max + 1):
        yield k, a, b
        if k == k_max:
            return
        L = len(a) - 1
        na = np.empty(m * L + 1, dtype=np.int64)
        nb = np.empty(m * L + 1, dtype=np.int64)
        for j, (A, B) in enumerate(rules):
            pa, pb = _mul_arr(tag, A, a[:-1], b[:-1])
            qa, qb = _mul_arr(tag, B, a[1:], b[1:])
            na[j::m][:L] = pa + qa
            nb[j::m][:L] = pb + qb
        na[-1], nb[-1] = a[-1], b[-1]
        a, b = na, nb


def row_maxima(family, k_max: int) -> list[float]:
    """max x_n over base^k <= n < base^(k+1), for k = 0..k_max (floats)."""
    tag = get_family(family).tag
    g = _BASIS[tag][2] if _BASIS[tag] else 0.0
    out = []
    for _, a, b in _row_stream(tag, k_max):
        vals = a[:-1] + b[:-1] * g
        out.append(float(vals.max()))
    return out


@dataclass
class DegreeEstimate:
    family: str
    rows_used: tuple
    estimate: float
    target: float
    abs_error: float
    history: list = field(default_factory=list)
    conjectural: bool = False

    @property
    def passed(self) -> bool:
        return self.abs_error < DEGREE_TOLERANCE[self.family]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.rows_used[1],
            "estimate": self.estimate,
            "target": self.target,
            "error": self.abs_error,
            "pass": self.passed,
            "conjectural": self.conjectural,
        }


def degree_estimate(family, k_max: int) -> DegreeEstimate:
    """log(M_k / M_{k-1}) / log(base) at k = k_max, M_k the row maxima."""
    if k_max < 4:
        raise ValueError("k_max must be >= 4")
    fam = get_family(family)
    M = row_maxima(fam, k_max)
    logb = math.log(fam.base)
    hist = [math.log(M[k] / M[k - 1]) / logb for k in range(1, len(M))]
    est = hist[-1]
    target = DEGREE_TARGETS[fam.tag]
    return DegreeEstimate(
        fam.tag, (0, k_max), est, target, abs(est - target), hist, fam.tag in CONJECTURAL_DEGREES
    )


def degree_constant(family) -> float:
    """The limiting ratio lambda behind each degree, log_base(lambda)."""
    tag = get_family(family).tag
    with mpmath.workdps(30):
        lam = {
            "A": mpmath.phi,
            "B": 1 + mpmath.sqrt(2),
            "C": 2 + mpmath.sqrt(3),
            "D": _lam_d(),
        }[tag]
        return float(mpmath.log(lam) / mpmath.log(get_family(tag).base))


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------

# the B factor with "x^2 sqrt2 x^3" taken as a product instead of a sum
UNCORRECTED_B_FACTOR = (QuadElem(2, 1), SQRT2, 0, 0, QuadElem(2, 1), SQRT2)


@dataclass
class GenfunResult:
    family: str
    degree: int
    ok: bool
    first_failure: int | None = None
    expected: object = None
    got: object = None


def genfun_verify(family, N: int, factor=None) -> GenfunResult:
    """Check S(x) = P(x) S(x^m) through x^N, S(x) = sum x_{n+1} x^n.

    ``factor`` defaults to the family's polynomial P (coefficients constant
    first).  The series comes from the three-term recurrence.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    fam = get_family(family)
    w = tuple(fam.weights if factor is None else factor)
    m = fam.base
    S = seq_prefix(fam, N + 1)[1:]
    for n in range(N + 1):
        acc = 0
        for e in range(len(w)):
            if e > n:
                break
            if (n - e) % m == 0 and w[e] != 0:
                acc = acc + w[e] * S[(n - e) // m]
        if acc != S[n]:
            return GenfunResult(fam.tag, N, False, n, S[n], acc)
    return GenfunResult(fam.tag, N, True)


# exponent numerators n of e^{i pi n / M}, as (M, [n...])
PRIMARY_ROOTS = {
    "A": (6, (4, 8)),
    "B": (12, (5, 11, 13, 19)),
    "C": (30, (7, 17, 19, 29, 31, 41, 43, 53)),
    "D": (20, (6, 14, 16, 24, 26, 34)),
}


@dataclass
class PrimaryRootsReport:
    family: str
    max_abs: float
    values: list
    exponents_match: bool
    degree_matches: bool
    ok: bool


def _weight_mp(v):
    if isinstance(v, QuadElem):
        return (mpmath.mpf(v.p) + v.q * mpmath.sqrt(v.d)) / v.r
    return mpmath.mpf(v)


def closed_form_exponents(n: int) -> set:
    """{2j/n +- 1/(n+1) : j = 1..n-1} as fractions."""
    out = set()
    for j in range(1, n):
        for s in (1, -1):
            out.add(Fraction(2 * j, n) + s * Fraction(1, n + 1))
    return out


def primary_roots_check(family, tolerance=1e-20, dps: int = 30, factor=None) -> PrimaryRootsReport:
    fam = get_family(family)
    w = tuple(fam.weights if factor is None else factor)
    M, ns = PRIMARY_ROOTS[fam.tag]
    with mpmath.workdps(dps):
        coeffs = [_weight_mp(c) for c in w]
        values = []
        for n in ns:
            z = mpmath.expjpi(mpmath.mpf(n) / M)
            v = mpmath.polyval(coeffs[::-1], z)
            values.append(float(abs(v)))
    listed = {Fraction(n, M) for n in ns}
    exps = closed_form_exponents(fam.base)
    deg_ok = len(ns) == len(w) - 1
    mx = max(values)
    ok = mx < tolerance and listed == exps and deg_ok
    return PrimaryRootsReport(fam.tag, mx, values, listed == exps, deg_ok, ok)


# ---------------------------------------------------------------------------
# singular functions
# ---------------------------------------------------------------------------

def continued_fraction(x: Fraction) -> list[int]:
    """Regular continued fraction [c_0; c_1, ...] of a rational."""
    x = Fraction(x)
    out = []
    while True:
        c = math.floor(x)
        out.append(c)
        x -= c
        if x == 0:
            return out
        x = 1 / x


MAX_EXPONENT = 1 << 16


def _alternating(digits, m, max_exponent: int = MAX_EXPONENT) -> Fraction:
    digits = list(digits)
    if sum(digits) - 1 > max_exponent:
        # the exact value needs a denominator of m^(sum - 1)
        raise OverflowError(f"exponent {sum(digits) - 1} exceeds {max_exponent}")
    total = Fraction(0)
    run = 0
    for i, c in enumerate(digits, start=1):
        run += c
        total += Fraction((-1) ** (i + 1)) / Fraction(m) ** (run - 1)
    return total


def question_mark(x) -> Fraction:
    """Minkowski's ?(x) on [0, 1]: sum (-1)^(k+1) / 2^(c_1+...+c_k - 1).

    Raises OverflowError when c_1 + ... + c_k exceeds ``MAX_EXPONENT``.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("question_mark is defined on [0, 1]")
    if x == 0 or x == 1:
        return x
    cf = continued_fraction(x)
    return _alternating(cf[1:], 2)


def box(x) -> Fraction:
    """Conway's box function at a dyadic n/2^k: a_n / a_{2^k + n}."""
    x = Fraction(x)
    den = x.denominator
    if den & (den - 1):
        raise ValueError("box is evaluated at dyadic rationals only")
    k = den.bit_length() - 1
    n = x.numerator
    if not 0 <= n <= den:
        raise ValueError("box is defined on [0, 1]")
    return Fraction(seq_term("A", n), seq_term("A", den + n))


class ExpansionFailed(ArithmeticError):
    pass


_BETA = {"A": 1, "B": SQRT2, "C": SQRT3, "D": PHI}


def beta_expansion(y, beta, depth: int = 64) -> list[int]:
    """Integers c_i >= 1 with y = 1/(c_1 beta + 1/(c_2 beta + ...)), greedy."""
    digits = []
    if y == 0:
        return digits
    for _ in range(depth):
        t = 1 / y
        c = floor(t / beta)
        if c < 1:
            # the previous remainder exceeded 1/beta
            raise ExpansionFailed(f"partial quotient {c} < 1 at depth {len(digits) + 1}")
        digits.append(c)
        y = t - c * beta
        if y == 0:
            return digits
        if sign(y) < 0:
            raise ExpansionFailed("negative remainder")
    raise ExpansionFailed(f"no termination within depth {depth}")


def alternating_representable(x, m: int, limit: int = 10_000) -> bool:
    """Is x = sum_i (-1)^(i+1) m^(-e_i) for finitely many 0 <= e_1 < e_2 < ...?

    Such a sum lies in [m^-e_1 (1 - 1/m), m^-e_1], which pins e_1 down, and
    m^-e_1 - x must then be a sum of the same shape starting above e_1.
    """
    x = Fraction(x)
    if x == 0:
        return True
    e_min = 0
    for _ in range(limit):
        if x <= 0:
            return False
        e = e_min
        while Fraction(1, m ** (e + 1)) >= x:
            e += 1
        top = Fraction(1, m ** e)
        if x < top * (m - 1) / m:
            return False
        x = top - x
        if x == 0:
            return True
        e_min = e + 1
    raise ValueError("no decision within the iteration limit")


@dataclass
class RoundTrip:
    family: str
    k: int
    n: int
    value: object
    digits: list
    image: Fraction | None
    ok: bool
    error: str | None = None

    @property
    def target(self) -> Fraction:
        return Fraction(self.n, get_family(self.family).base ** self.k)

    @property
    def target_representable(self) -> bool:
        return alternating_representable(self.target, get_family(self.family).base)


def singular_roundtrip(family, k: int, n: int, depth: int = 64) -> RoundTrip:
    """Expand x_n / x_{m^k + n} as [0; c_1 beta, c_2 beta, ...] and check
    that sum (-1)^(i+1) / m^(c_1 + ... + c_i - 1) gives back n / m^k."""
    fam = get_family(family)
    m = fam.base
    if not 0 <= n <= m ** k:
        raise ValueError("need 0 <= n <= base^k")
    y = seq_term(fam, n) / seq_term(fam, m ** k + n) if fam.tag != "A" else Fraction(
        seq_term(fam, n), seq_term(fam, m ** k + n)
    )
    y = demote(y)
    target = Fraction(n, m ** k)
    try:
        digits = beta_expansion(y, _BETA[fam.tag], depth)
    except ExpansionFailed as exc:
        return RoundTrip(fam.tag, k, n, y, [], None, False, str(exc))
    img = _alternating(digits, m)
    return RoundTrip(fam.tag, k, n, y, digits, img, img == target)


@dataclass
class SingularReport:
    family: str
    k_max: int
    checked: int
    passed: int
    failures: list

    @property
    def pass_rate(self) -> float:
        return self.passed / self.checked if self.checked else 1.0

    @property
    def mismatches(self) -> list:
        """Failures where an expansion existed but mapped elsewhere."""
        return [f for f in self.failures if f.image is not None]

    @property
    def unexplained(self) -> list:
        """Failures whose target does have an alternating form."""
        return [f for f in self.failures if f.image is not None or f.target_representable]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k_max,
            "checked": self.checked,
            "passed": self.passed,
            "pass_rate": self.pass_rate,
            "mismatches": len(self.mismatches),
            "unexplained": len(self.unexplained),
            "failures": [f"n={f.n}/k={f.k}: {f.error or f.image}" for f in self.failures[:20]],
        }


def singular_experiment(family, k_max: int) -> SingularReport:
    """Round trips for every k <= k_max and 0 <= n <= base^k."""
    fam = get_family(family)
    checked = passed = 0
    failures = []
    for k in range(k_max + 1):
        for n in range(fam.base ** k + 1):
            rt = singular_roundtrip(fam, k, n)
            checked += 1
            if rt.ok:
                passed += 1
            else:
                failures.append(rt)
    return SingularReport(fam.tag, k_max, checked, passed, failures)
