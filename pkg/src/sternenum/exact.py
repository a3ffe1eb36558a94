"""Exact arithmetic: rationals, real quadratic fields Q(sqrt d), and two
auxiliary rings used by the Binet-type formulas.

Rationals are plain :class:`fractions.Fraction`.  Elements of Q(sqrt d) for
d in {2, 3, 5} are :class:`QuadElem` values ``(p + q*sqrt(d)) / r``.  Integers
and fractions mix freely with a ``QuadElem``; two elements of different
fields do not.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QuadElem",
    "CyclotomicSigma",
    "TauElem",
    "FieldMismatch",
    "SQRT2",
    "SQRT3",
    "SQRT5",
    "PHI",
    "qsign",
    "qfloor",
    "qmod",
    "qdecimal",
    "to_rational",
    "sign",
    "floor",
    "mod",
    "decimal",
    "to_json",
    "from_json",
    "format_rational",
    "format_phi",
    "format_surd",
    "format_value",
    "parse_value",
    "ParseError",
]

ALLOWED_D = (2, 3, 5)


class FieldMismatch(ValueError):
    """Arithmetic between elements of two different quadratic fields."""


def _sign_p_plus_q_sqrt_d(p: int, q: int, d: int) -> int:
    # sign of p + q*sqrt(d) by comparing p^2 against q^2 d
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    pp, qq = p * p, q * q * d
    if p > 0:
        return 1 if pp > qq else -1
    return 1 if qq > pp else -1


class QuadElem:
    """An element (p + q*sqrt(d)) / r of Q(sqrt d), kept normalized.

    Ordering follows the real embedding with sqrt(d) > 0.  Elements whose
    irrational part vanishes compare and hash equal to the matching
    :class:`~fractions.Fraction`.
    """

    __slots__ = ("d", "p", "q", "r")

    def __init__(self, d: int, p: int, q: int = 0, r: int = 1):
        if d not in ALLOWED_D:
            raise ValueError(f"unsupported discriminant {d}")
        if r == 0:
            raise ZeroDivisionError("QuadElem with zero denominator")
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.d = d
        self.p = p
        self.q = q
        self.r = r

    @classmethod
    def from_rational(cls, d: int, x) -> "QuadElem":
        x = Fraction(x)
        return cls(d, x.numerator, 0, x.denominator)

    @classmethod
    def from_phi_basis(cls, a, b) -> "QuadElem":
        """The element a + b*phi of Q(sqrt 5) for rationals a, b."""
        a, b = Fraction(a), Fraction(b)
        # a + b(1+sqrt5)/2 = (2a + b + b sqrt5)/2
        den = math.lcm(a.denominator, b.denominator) * 2
        p = (2 * a + b) * den / 2
        q = b * den / 2
        return cls(5, int(p), int(q), den)

    def phi_basis(self) -> tuple[Fraction, Fraction]:
        """Coordinates (a, b) with self = a + b*phi.  Only for d = 5."""
        if self.d != 5:
            raise ValueError("phi basis only exists in Q(sqrt 5)")
        b = Fraction(2 * self.q, self.r)
        a = Fraction(self.p - self.q, self.r)
        return a, b

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "QuadElem | None":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, int):
            return QuadElem(self.d, other)
        if isinstance(other, Rational):
            return QuadElem(self.d, other.numerator, 0, other.denominator)
        return None

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        r = self.r * o.r
        return QuadElem(self.d, self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, r)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.p, -self.q, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.d
        return QuadElem(
            d,
            self.p * o.p + d * self.q * o.q,
            self.p * o.q + self.q * o.p,
            self.r * o.r,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        # r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - d q^2)
        n = self.p * self.p - self.d * self.q * self.q
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElem(self.d, self.r * self.p, -self.r * self.q, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadElem(self.d, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.d, self.p, -self.q, self.r)

    def norm(self) -> Fraction:
        return Fraction(self.p * self.p - self.d * self.q * self.q, self.r * self.r)

    def trace(self) -> Fraction:
        return Fraction(2 * self.p, self.r)

    # -- order ----------------------------------------------------------
    def sign(self) -> int:
        return _sign_p_plus_q_sqrt_d(self.p, self.q, self.d)

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.p == other.p and self.q == other.q and self.r == other.r
        if isinstance(other, (int, Rational)):
            return self.q == 0 and Fraction(self.p, self.r) == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.d, self.p, self.q, self.r))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __floor__(self) -> int:
        return qfloor(self)

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def is_rational(self) -> bool:
        return self.q == 0

    def __repr__(self):
        return f"QuadElem(d={self.d}, p={self.p}, q={self.q}, r={self.r})"

    def __str__(self):
        if self.d == 5:
            return format_phi(self)
        return format_surd(self)


SQRT2 = QuadElem(2, 0, 1)
SQRT3 = QuadElem(3, 0, 1)
SQRT5 = QuadElem(5, 0, 1)
PHI = QuadElem(5, 1, 1, 2)


# ---------------------------------------------------------------------------
# sign / floor / mod / decimal, uniform over int, Fraction and QuadElem
# ---------------------------------------------------------------------------

def qsign(x: QuadElem) -> int:
    return x.sign()


def qfloor(x: QuadElem) -> int:
    """Exact floor of (p + q*sqrt d)/r.

    With m = isqrt(q^2 d) we have |q| sqrt d in (m, m+1) when q != 0, so the
    numerator lies strictly between two consecutive integers and integer
    floor division finishes the job.
    """
    p, q, r, d = x.p, x.q, x.r, x.d
    if q == 0:
        return p // r
    m = math.isqrt(q * q * d)
    if q > 0:
        return (p + m) // r
    return (p - m - 1) // r


def sign(x) -> int:
    if isinstance(x, QuadElem):
        return x.sign()
    return (x > 0) - (x < 0)


def floor(x) -> int:
    if isinstance(x, QuadElem):
        return qfloor(x)
    return math.floor(x)


def qmod(x, y):
    """x - y*floor(x/y) for y > 0; the result lies in [0, y)."""
    if sign(y) <= 0:
        raise ValueError("modulus must be positive")
    if isinstance(x, int) and isinstance(y, int):
        return x % y
    return x - y * floor(x / y)


mod = qmod


def qdecimal(x, digits: int) -> str:
    """Decimal string of x rounded (half up) to ``digits`` fractional digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scale = 10 ** digits
    n = floor(x * scale + Fraction(1, 2))
    neg = n < 0
    n = abs(n)
    whole, frac = divmod(n, scale)
    s = f"{whole}.{frac:0{digits}d}"
    return "-" + s if neg else s


decimal = qdecimal


def to_rational(x) -> Fraction:
    """Demote to Fraction; raises ValueError if x has an irrational part."""
    if isinstance(x, QuadElem):
        if x.q != 0:
            raise ValueError(f"{x!r} is not rational")
        return Fraction(x.p, x.r)
    return Fraction(x)


def demote(x):
    """Fraction when x happens to be rational, otherwise x unchanged."""
    if isinstance(x, QuadElem) and x.q == 0:
        return Fraction(x.p, x.r)
    return x


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_rational(x) -> str:
    """Always 'a/b', integers included ('2/1')."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def format_phi(x: QuadElem) -> str:
    """a+b*phi form with rational a, b, e.g. '1/2+phi', '3-phi', '2/5+1/5*phi'."""
    a, b = x.phi_basis()
    if b == 0:
        return _frac_str(a)
    if b == 1:
        bs = "phi"
    elif b == -1:
        bs = "-phi"
    else:
        bs = _frac_str(b) + "*phi"
    if a == 0:
        return bs
    return _frac_str(a) + ("" if bs.startswith("-") else "+") + bs


def format_surd(x: QuadElem) -> str:
    """(p+q*sqrtd)/r with zero parts and unit denominators dropped."""
    rad = f"sqrt{x.d}"
    if x.q == 0:
        body = str(x.p)
    else:
        qs = rad if x.q == 1 else ("-" + rad if x.q == -1 else f"{x.q}*{rad}")
        if x.p == 0:
            body = qs
        else:
            body = f"{x.p}{'' if qs.startswith('-') else '+'}{qs}"
    if x.r == 1:
        return body
    if x.p == 0 or x.q == 0:
        return f"{body}/{x.r}"
    return f"({body})/{x.r}"


class ParseError(ValueError):
    def __init__(self, token: str, text: str):
        super().__init__(f"cannot parse {token!r} in {text!r}")
        self.token = token


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?(?:sqrt2|sqrt3|sqrt5|phi))?(?:/(\d+))?")
_UNITS = {"sqrt2": 2, "sqrt3": 3, "sqrt5": 5, "phi": 5}


def _unit(name: str) -> "QuadElem":
    return {"sqrt2": SQRT2, "sqrt3": SQRT3, "sqrt5": SQRT5, "phi": PHI}[name]


def _parse_linear(body: str, text: str):
    pos, total, seen_d = 0, Fraction(0), None
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ParseError(body[pos:] or body, text)
        if pos > 0 and not m.group(1):
            raise ParseError(body[pos:], text)
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        if m.group(4) is not None:
            if not m.group(3) or int(m.group(4)) == 0:
                raise ParseError(m.group(0), text)
            coef = coef / int(m.group(4))
        if m.group(3):
            name = m.group(3).lstrip("*")
            d = _UNITS[name]
            if seen_d is not None and seen_d != d:
                raise ParseError(m.group(3), text)
            seen_d = d
            total = total + coef * _unit(name)
        else:
            total = total + coef
        pos = m.end()
    return total


def parse_value(text: str):
    """'p/q', '(p+q*sqrt2)/r', 'a+b*phi', '(a+b*phi)/c' and the like.

    Returns a Fraction when no surd occurs, otherwise a QuadElem.
    """
    src = text.replace(" ", "").replace("\u221a", "sqrt").replace("\u03c6", "phi")
    if not src:
        raise ParseError(text, text)
    m = re.fullmatch(r"\((.+)\)(?:/(\d+))?", src)
    if m:
        val = _parse_linear(m.group(1), text)
        if m.group(2) is not None:
            den = int(m.group(2))
            if den == 0:
                raise ParseError("/0", text)
            val = val / den
    else:
        if re.search(r"/0+(?!\d)", src):
            raise ParseError("/0", text)
        val = _parse_linear(src, text)
    return val if isinstance(val, QuadElem) else Fraction(val)


def format_value(x) -> str:
    """Plain-text token for any value the package produces."""
    if isinstance(x, QuadElem):
        return format_phi(x) if x.d == 5 else format_surd(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


def to_json(x):
    if isinstance(x, QuadElem):
        return {"d": x.d, "p": str(x.p), "q": str(x.q), "r": str(x.r)}
    f = Fraction(x)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def from_json(obj):
    if "d" in obj:
        return QuadElem(int(obj["d"]), int(obj["p"]), int(obj["q"]), int(obj["r"]))
    return Fraction(int(obj["num"]), int(obj["den"]))


# ---------------------------------------------------------------------------
# auxiliary rings for the Binet-type sums
# ---------------------------------------------------------------------------

class CyclotomicSigma:
    """p + q*sigma in Z[sigma], sigma a primitive sixth root of unity
    (sigma^2 = sigma - 1)."""

    __slots__ = ("p", "q")

    def __init__(self, p: int = 0, q: int = 0):
        self.p = p
        self.q = q

    @classmethod
    def sigma(cls):
        return cls(0, 1)

    @classmethod
    def sigma_bar(cls):
        return cls(1, -1)

    def __add__(self, o):
        if isinstance(o, int):
            o = CyclotomicSigma(o)
        return CyclotomicSigma(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicSigma(-self.p, -self.q)

    def __sub__(self, o):
        return self + (-o if isinstance(o, CyclotomicSigma) else CyclotomicSigma(-o))

    def __mul__(self, o):
        if isinstance(o, int):
            return CyclotomicSigma(self.p * o, self.q * o)
        # (a + b s)(c + d s) = ac - bd + (ad + bc + bd) s
        a, b, c, d = self.p, self.q, o.p, o.q
        return CyclotomicSigma(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CyclotomicSigma(1)
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self):
        # sigma -> 1 - sigma
        return CyclotomicSigma(self.p + self.q, -self.q)

    def __eq__(self, o):
        if isinstance(o, int):
            o = CyclotomicSigma(o)
        if not isinstance(o, CyclotomicSigma):
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"CyclotomicSigma({self.p}, {self.q})"


def _z2_mul(a, b):
    # (a0 + a1 r2)(b0 + b1 r2) over Z[sqrt 2]
    return (a[0] * b[0] + 2 * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _z2_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


class TauElem:
    """(u + v*sqrt2) + (w + z*sqrt2)*tau with tau^2 = sqrt2*tau + 1."""

    __slots__ = ("u", "v", "w", "z")

    def __init__(self, u: int = 0, v: int = 0, w: int = 0, z: int = 0):
        self.u, self.v, self.w, self.z = u, v, w, z

    @classmethod
    def tau(cls):
        return cls(0, 0, 1, 0)

    @classmethod
    def tau_bar(cls):
        # sqrt2 - tau
        return cls(0, 1, -1, 0)

    def __add__(self, o):
        if isinstance(o, int):
            o = TauElem(o)
        return TauElem(self.u + o.u, self.v + o.v, self.w + o.w, self.z + o.z)

    __radd__ = __add__

    def __neg__(self):
        return TauElem(-self.u, -self.v, -self.w, -self.z)

    def __sub__(self, o):
        return self + (-o if isinstance(o, TauElem) else TauElem(-o))

    def __mul__(self, o):
        if isinstance(o, int):
            return TauElem(self.u * o, self.v * o, self.w * o, self.z * o)
        A, B = (self.u, self.v), (self.w, self.z)
        C, D = (o.u, o.v), (o.w, o.z)
        BD = _z2_mul(B, D)
        const = _z2_add(_z2_mul(A, C), BD)
        # tau coefficient: AD + BC + sqrt2 * BD
        r2bd = (2 * BD[1], BD[0])
        lin = _z2_add(_z2_add(_z2_mul(A, D), _z2_mul(B, C)), r2bd)
        return TauElem(const[0], const[1], lin[0], lin[1])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = TauElem(1)
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self):
        # tau -> sqrt2 - tau
        w, z = self.w, self.z
        shift = (2 * z, w)  # (w + z r2) * r2
        return TauElem(self.u + shift[0], self.v + shift[1], -w, -z)

    def is_sqrt2_pure(self) -> bool:
        return self.w == 0 and self.z == 0

    def to_quad(self) -> QuadElem:
        if not self.is_sqrt2_pure():
            raise ValueError("element has a nonzero tau component")
        return QuadElem(2, self.u, self.v)

    def __eq__(self, o):
        if isinstance(o, int):
            o = TauElem(o)
        if not isinstance(o, TauElem):
            return NotImplemented
        return (self.u, self.v, self.w, self.z) == (o.u, o.v, o.w, o.z)

    def __hash__(self):
        return hash((self.u, self.v, self.w, self.z))

    def __repr__(self):
        return f"TauElem({self.u}, {self.v}, {self.w}, {self.z})"
