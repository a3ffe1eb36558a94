"""The enumerations r, s, t (of the positive rationals) and u (of positive
elements of Q(phi)), built five independent ways:

* ratio of consecutive diatomic terms, ``alpha * x_{n+1} / x_n``
* the recurrence ``x_{n+1} = alpha^2 (2 floor(1/x_n) + 1 - 1/x_n)``
* the semi-recursive formula ``x_n = alpha^2 (2 nu_N(n) + 1 - 1/x_{n-1})``
* descent in the tree induced by a piecewise-Moebius contraction F
* a greedy algorithm appending the least new ``alpha^2 (m - 1/last)``

plus the inverse map value -> index obtained by climbing the tree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import PHI, QuadElem, demote, floor, sign
from .stern import SternFamily, get_family, seq_pair, valuation

__all__ = [
    "Enumeration",
    "Contraction",
    "IsRoot",
    "BoundExceeded",
    "NotPositive",
    "ENUMERATIONS",
    "get_enumeration",
    "build_contraction",
    "term_by_ratio",
    "term_by_recurrence",
    "term_by_semirecursive",
    "value_at_index",
    "index_of",
    "parent",
    "children",
    "greedy_prefix",
    "prefix",
    "METHODS",
    "phi_measure",
    "verify_bijection",
    "corollary_orbit_covers",
    "corollary_orbit_report",
    "OrbitReport",
    "u_conjecture_experiment",
    "reduced_rationals",
]


class IsRoot(Exception):
    """Raised by :func:`parent` on a fixed point of F."""

    def __init__(self, index: int):
        super().__init__(f"fixed point (root index {index})")
        self.index = index


class BoundExceeded(Exception):
    pass


class NotPositive(ValueError):
    pass


@dataclass(frozen=True)
class Enumeration:
    tag: str
    family: SternFamily
    alpha: object
    alpha_sq: object
    rational: bool

    @property
    def base(self) -> int:
        return self.family.base

    @property
    def roots(self) -> list:
        return build_contraction(self).roots

    def coerce(self, x):
        """Bring x into the enumeration's value type."""
        if self.rational:
            return demote(x) if isinstance(x, QuadElem) else Fraction(x)
        if isinstance(x, QuadElem):
            return x
        return QuadElem.from_rational(5, x)


def _make():
    out = {}
    for tag, fam, rational in (("R", "A", True), ("S", "B", True), ("T", "C", True), ("U", "D", False)):
        f = get_family(fam)
        out[tag] = Enumeration(tag, f, f.alpha, f.alpha_sq, rational)
    return out


ENUMERATIONS = _make()


def get_enumeration(tag) -> Enumeration:
    if isinstance(tag, Enumeration):
        return tag
    try:
        return ENUMERATIONS[tag.upper()]
    except KeyError:
        raise ValueError(f"unknown enumeration {tag!r}; expected one of R, S, T, U") from None


# ---------------------------------------------------------------------------
# contraction F and its tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Contraction:
    """Piecewise-Moebius parent map.

    ``breakpoints`` is 0 = a_0 < a_1 < ... < a_{k-1} = alpha^2.  On
    (a_{j-1}, a_j) the map is x -> a_j (x - a_{j-1}) / (a_j - x); above
    alpha^2 it is x -> x - alpha^2.  The nonzero breakpoints are the fixed
    set; ``roots`` lists them in index order (alpha^2 first).
    """

    enumeration: str
    breakpoints: tuple
    alpha_sq: object

    @property
    def k(self) -> int:
        return len(self.breakpoints)

    @property
    def fixed_set(self) -> tuple:
        return self.breakpoints[1:]

    @property
    def roots(self) -> list:
        return list(reversed(self.breakpoints[1:]))

    def root_index(self, x) -> int | None:
        bp = self.breakpoints
        for j in range(1, len(bp)):
            if bp[j] == x:
                return self.k - j
        return None

    def branch(self, digit: int):
        """(a_j, a_{j-1}) of the branch serving ``digit``, None for digit 0."""
        if digit == 0:
            return None
        j = self.k - digit
        return self.breakpoints[j], self.breakpoints[j - 1]

    def describe(self) -> list[str]:
        out = []
        for j in range(1, self.k):
            a, b = self.breakpoints[j], self.breakpoints[j - 1]
            out.append(f"{a}*(x-{b})/({a}-x)")
        out.append(f"x-{self.alpha_sq}")
        return out

    def __call__(self, x):
        return parent(self.enumeration, x)[0]


_CONTRACTIONS: dict = {}


def build_contraction(e) -> Contraction:
    """Breakpoints alpha * M^n(0) with M(x) = 1/(alpha - x), stopped at infinity."""
    e = get_enumeration(e)
    if e.tag in _CONTRACTIONS:
        return _CONTRACTIONS[e.tag]
    alpha = e.alpha
    x = 0
    pts = [e.coerce(0)]
    for _ in range(e.base + 1):
        den = alpha - x
        if den == 0:
            break
        x = 1 / den if not isinstance(den, int) else Fraction(1, den)
        pts.append(e.coerce(alpha * x))
    else:
        raise RuntimeError(f"breakpoint chain for {e.tag} did not terminate")
    if len(pts) != e.base or pts[-1] != e.alpha_sq:
        raise RuntimeError(f"unexpected breakpoints for {e.tag}: {pts}")
    c = Contraction(e.tag, tuple(pts), e.coerce(e.alpha_sq))
    _CONTRACTIONS[e.tag] = c
    return c


def parent(e, x):
    """(F(x), digit) where digit is the last base-k digit of x's index."""
    e = get_enumeration(e)
    c = build_contraction(e)
    x = e.coerce(x)
    if sign(x) <= 0:
        raise NotPositive(f"{x} is not positive")
    top = c.alpha_sq
    if x > top:
        return x - top, 0
    bp = c.breakpoints
    for j in range(1, c.k):
        if x < bp[j]:
            a, b = bp[j], bp[j - 1]
            return e.coerce(a * (x - b) / (a - x)), c.k - j
        if x == bp[j]:
            raise IsRoot(c.k - j)
    raise AssertionError("unreachable")


def _child(e: Enumeration, c: Contraction, x, digit: int):
    if digit == 0:
        return x + c.alpha_sq
    a, b = c.branch(digit)
    # inverse of y = a (x - b)/(a - x)
    return e.coerce(a * (x + b) / (a + x))


def children(e, x) -> list:
    e = get_enumeration(e)
    c = build_contraction(e)
    x = e.coerce(x)
    return [_child(e, c, x, j) for j in range(e.base)]


def value_at_index(e, n: int):
    e = get_enumeration(e)
    if n < 1:
        raise ValueError("index must be >= 1")
    c = build_contraction(e)
    k = e.base
    digits = []
    while n >= k:
        n, j = divmod(n, k)
        digits.append(j)
    x = c.roots[n - 1]
    for j in reversed(digits):
        x = _child(e, c, x, j)
    return x


def tree_prefix(e, N: int) -> list:
    """x_1..x_N by breadth-first tree construction."""
    e = get_enumeration(e)
    c = build_contraction(e)
    k = e.base
    out = [None] + list(c.roots[: N])
    for n in range(k, N + 1):
        m, j = divmod(n, k)
        out.append(_child(e, c, out[m], j))
    return out[1 : N + 1]


def index_of(e, x, max_steps: int | None = None) -> int:
    """The n with value_at_index(e, n) == x, found by climbing to a root.

    For r, s, t termination is guaranteed.  For u it is only conjectured,
    so the climb is cut off after ``max_steps`` (default 10_000).
    """
    e = get_enumeration(e)
    x = e.coerce(x)
    if sign(x) <= 0:
        raise NotPositive(f"{x} is not positive")
    if max_steps is None:
        max_steps = None if e.rational else 10_000
    digits = []
    steps = 0
    while True:
        try:
            x, d = parent(e, x)
        except IsRoot as root:
            n = root.index
            break
        digits.append(d)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise BoundExceeded(f"no root reached within {max_steps} steps")
    for d in reversed(digits):
        n = n * e.base + d
    return n


# ---------------------------------------------------------------------------
# the other constructions
# ---------------------------------------------------------------------------

def term_by_ratio(e, n: int):
    e = get_enumeration(e)
    if n < 1:
        raise ValueError("index must be >= 1")
    xn, xn1 = seq_pair(e.family, n)
    if e.tag == "R":
        return Fraction(xn1, xn)
    v = e.alpha * xn1 / xn
    if e.rational:
        v = demote(v)
        if not isinstance(v, Fraction):
            raise ArithmeticError(f"{e.tag}_{n} came out irrational: {v}")
    return v


def _first(e: Enumeration):
    return e.coerce(e.alpha_sq)


def _step(e: Enumeration, x):
    inv = 1 / x
    return e.coerce(e.alpha_sq * (2 * floor(inv) + 1 - inv))


def term_by_recurrence(e, n: int):
    e = get_enumeration(e)
    if n < 1:
        raise ValueError("index must be >= 1")
    x = _first(e)
    for _ in range(n - 1):
        x = _step(e, x)
    return x


def term_by_semirecursive(e, n: int):
    e = get_enumeration(e)
    if n < 1:
        raise ValueError("index must be >= 1")
    inv = 0  # 1/x_0 with x_0 = infinity
    x = None
    for i in range(1, n + 1):
        x = e.coerce(e.alpha_sq * (2 * valuation(e.base, i) + 1 - inv))
        inv = 1 / x
    return x


def greedy_prefix(e, N: int) -> list:
    """Append alpha^2 (m - 1/last) for the least positive integer m giving a
    positive value not already listed."""
    e = get_enumeration(e)
    if N < 1:
        raise ValueError("N must be >= 1")
    out = [_first(e)]
    seen = set(out)
    while len(out) < N:
        inv = 1 / out[-1]
        m = max(1, floor(inv))
        while True:
            v = e.coerce(e.alpha_sq * (m - inv))
            if sign(v) > 0 and v not in seen:
                break
            m += 1
        out.append(v)
        seen.add(v)
    return out


def _ratio_prefix(e, N):
    e = get_enumeration(e)
    from .stern import digit_prefix

    xs = digit_prefix(e.family, N + 1)
    if e.tag == "R":
        return [Fraction(xs[i + 1], xs[i]) for i in range(1, N + 1)]
    return [e.coerce(e.alpha * xs[i + 1] / xs[i]) for i in range(1, N + 1)]


def _rec_prefix(e, N):
    e = get_enumeration(e)
    out = [_first(e)]
    while len(out) < N:
        out.append(_step(e, out[-1]))
    return out


def _semi_prefix(e, N):
    e = get_enumeration(e)
    out = []
    inv = 0
    for i in range(1, N + 1):
        x = e.coerce(e.alpha_sq * (2 * valuation(e.base, i) + 1 - inv))
        out.append(x)
        inv = 1 / x
    return out


METHODS = {
    "ratio": _ratio_prefix,
    "rec": _rec_prefix,
    "semi": _semi_prefix,
    "tree": tree_prefix,
    "greedy": greedy_prefix,
}


def prefix(e, N: int, method: str = "ratio") -> list:
    """x_1..x_N by the named construction."""
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(METHODS)}") from None
    return fn(e, N)


# ---------------------------------------------------------------------------
# bijectivity checks
# ---------------------------------------------------------------------------

def phi_measure(x) -> int:
    """a + b for x = a/b in lowest terms."""
    f = Fraction(x)
    return f.numerator + f.denominator


def reduced_rationals(bound: int):
    """All reduced a/b > 0 with a + b <= bound, ordered by (a+b, a)."""
    for s in range(2, bound + 1):
        for a in range(1, s):
            b = s - a
            if math.gcd(a, b) == 1:
                yield Fraction(a, b)


@dataclass
class BijectionReport:
    enumeration: str
    bound: int
    checked: int
    max_index: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "enumeration": self.enumeration,
            "bound": self.bound,
            "checked": self.checked,
            "max_index": self.max_index,
            "failures": [str(f) for f in self.failures],
        }


def _index_chunk(args):
    tag, xs = args
    out = []
    for x in xs:
        try:
            out.append((x, index_of(tag, x), None))
        except Exception as exc:  # reported, not raised
            out.append((x, None, repr(exc)))
    return out


def verify_bijection(e, bound: int, jobs: int = 1) -> BijectionReport:
    e = get_enumeration(e)
    if not e.rational:
        raise ValueError("bijection check is only defined for r, s, t")
    if bound < 2:
        raise ValueError("bound must be >= 2")
    xs = list(reduced_rationals(bound))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        shards = [(e.tag, xs[i::jobs]) for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            rows = [r for part in pool.map(_index_chunk, shards) for r in part]
        order = {x: i for i, x in enumerate(xs)}
        rows.sort(key=lambda r: order[r[0]])
    else:
        rows = _index_chunk((e.tag, xs))
    failures = []
    seen = {}
    for x, n, err in rows:
        if err is not None:
            failures.append(f"{x}: {err}")
            continue
        if n in seen:
            failures.append(f"{x} and {seen[n]} share index {n}")
        seen[n] = x
        back = value_at_index(e, n)
        if back != x:
            failures.append(f"{x} -> {n} -> {back}")
    return BijectionReport(e.tag, bound, len(xs), max(seen, default=0), failures)


def corollary_orbit_covers(bound: int, max_steps: int = 10**6) -> tuple[bool, int]:
    """Iterate x -> 2 + 2/x - 4{1/x} from 2 until every reduced a/b with
    a + b <= bound has been visited.  Returns (covered, steps used)."""
    want = set(reduced_rationals(bound))
    x = Fraction(2)
    for step in range(1, max_steps + 1):
        want.discard(x)
        if not want:
            return True, step
        inv = 1 / x
        frac = inv - math.floor(inv)
        x = 2 + 2 * inv - 4 * frac
    return False, max_steps


def _orbit_step(x: Fraction) -> Fraction:
    inv = 1 / x
    return 2 + 2 * inv - 4 * (inv - math.floor(inv))


@dataclass
class OrbitReport:
    bound: int
    max_steps: int
    targets: int
    visited: int
    matches_s: bool
    required_steps: int
    compare_steps: int = 0

    @property
    def covered(self) -> bool:
        return self.visited == self.targets

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "max_steps": self.max_steps,
            "targets": self.targets,
            "visited": self.visited,
            "matches_s": self.matches_s,
            "required_steps": self.required_steps,
            "compare_steps": self.compare_steps,
            "covered": self.covered,
        }


def corollary_orbit_report(bound: int, max_steps: int = 10**6, compare_steps: int = 10**5) -> OrbitReport:
    """Run the orbit of 2 for ``max_steps`` steps.

    Alongside the direct visit count this records whether the orbit agrees
    with the ratio construction of s_1, s_2, ... over the first
    ``compare_steps`` steps, and the number of steps a direct
    visit of every target needs (the largest s-index among them).
    """
    want = set(reduced_rationals(bound))
    need = max(index_of("S", x) for x in want)
    x = Fraction(2)
    visited = set()
    same = True
    for n in range(1, max_steps + 1):
        if x in want:
            visited.add(x)
        # compare against the ratio construction, which shares no code with the map
        if n <= compare_steps:
            same = same and x == term_by_ratio("S", n)
        x = _orbit_step(x)
    return OrbitReport(bound, max_steps, len(want), len(visited), same, need, min(compare_steps, max_steps))


@dataclass
class ConjectureReport:
    bound: int
    max_steps: int
    total: int
    reached: int
    max_depth: int
    witnesses: list

    @property
    def fraction(self) -> float:
        return self.reached / self.total if self.total else 1.0

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "max_steps": self.max_steps,
            "total": self.total,
            "reached": self.reached,
            "fraction": self.fraction,
            "max_depth": self.max_depth,
            "witnesses": [str(w) for w in self.witnesses],
        }


def depth_to_root(x, max_steps: int) -> int | None:
    """Steps of F taking x into the fixed set of the u-tree, or None."""
    e = ENUMERATIONS["U"]
    for step in range(max_steps + 1):
        try:
            x, _ = parent(e, x)
        except IsRoot:
            return step
    return None


def u_conjecture_experiment(bound: int, max_steps: int | None = None) -> ConjectureReport:
    """Run F on every positive (p + q phi)/(r + s phi) with |p|,|q|,|r|,|s| <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if max_steps is None:
        max_steps = 10 * bound * bound
    rng = range(-bound, bound + 1)
    values = set()
    for r, s in itertools.product(rng, repeat=2):
        den = r + s * PHI
        if den == 0:
            continue
        inv = 1 / den
        for p, q in itertools.product(rng, repeat=2):
            x = (p + q * PHI) * inv
            if x.sign() > 0:
                values.add(x)
    reached = 0
    worst = 0
    witnesses = []
    for x in sorted(values, key=lambda v: (v.r, abs(v.p), abs(v.q), v.p, v.q)):
        depth = depth_to_root(x, max_steps)
        if depth is None:
            witnesses.append(x)
        else:
            reached += 1
            worst = max(worst, depth)
    return ConjectureReport(bound, max_steps, len(values), reached, worst, witnesses)
