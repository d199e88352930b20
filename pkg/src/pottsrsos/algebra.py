"""Number systems for the two computation backends.

Exact quantities live in the quadratic ring of values a + b*sqrt(Q) with
rational a, b and a fixed non-negative integer radicand Q.  Partition
functions are Laurent polynomials in the temperature variable x over that
ring.  The floating backend mirrors the same operations with machine floats
under an explicit tolerance policy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BackendMismatch, ZeroEvaluation

__all__ = [
    "QuadValue",
    "LaurentPoly",
    "NumericPolicy",
    "approx_equal",
    "dual_transform",
    "eval_at",
    "q_power_half",
]


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


class QuadValue:
    """Element a + b*sqrt(q) of a real quadratic extension of the rationals.

    Perfect-square radicands collapse to plain rationals on construction
    (q = 1 covers p = 3); a value with b = 0 is stored with q = 0 so that
    rationals from different contexts mix freely.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q=0):
        a = _as_fraction(a)
        b = _as_fraction(b)
        if not isinstance(q, int) or q < 0:
            raise ValueError("radicand must be a non-negative integer")
        if b:
            r = math.isqrt(q)
            if r * r == q:
                a += b * r
                b = Fraction(0)
                q = 0
        else:
            b = Fraction(0)
            q = 0
        self.a = a
        self.b = b
        self.q = q

    # -- coercion ----------------------------------------------------------

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, QuadValue):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    def _common_q(self, other):
        if self.q and other.q and self.q != other.q:
            raise ValueError(f"incompatible radicands {self.q} and {other.q}")
        return self.q or other.q

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadValue(self.a + o.a, self.b + o.b, self._common_q(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadValue(-self.a, -self.b, self.q)

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
        q = self._common_q(o)
        return QuadValue(self.a * o.a + self.b * o.b * q,
                         self.a * o.b + self.b * o.a, q)

    __rmul__ = __mul__

    def inverse(self):
        den = self.a * self.a - self.b * self.b * self.q
        if den == 0:
            raise ZeroDivisionError("inverse of zero quadratic value")
        return QuadValue(self.a / den, -self.b / den, self.q)

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

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadValue(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates and conversions ------------------------------------------

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.q == o.q or not self.b)

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def __repr__(self):
        return f"QuadValue({self.a!r}, {self.b!r}, {self.q!r})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.q})"
        bpart = root if self.b == 1 else (f"-{root}" if self.b == -1 else f"{self.b}*{root}")
        if not self.a:
            return bpart
        sign = "+" if self.b > 0 else ""
        return f"{self.a}{sign}{bpart}"

    @classmethod
    def sqrt_of(cls, q):
        return cls(0, 1, q)


def q_power_half(q_int, m):
    """Q^(m/2) for integer Q >= 0 and integer m >= 0, as an exact QuadValue."""
    if m < 0:
        raise ValueError("negative half-power not supported")
    whole = q_int ** (m // 2)
    if m % 2 == 0:
        return QuadValue(whole)
    return QuadValue(0, whole, q_int)


class LaurentPoly:
    """Laurent polynomial in x; coefficients may be exact (QuadValue,
    Fraction, int) or float.  Zero coefficients are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    self._c[int(k)] = v

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def x_pow(cls, k, c=1):
        return cls({k: c})

    def coeffs(self):
        return dict(self._c)

    def coeff(self, k):
        return self._c.get(k, 0)

    def support(self):
        return sorted(self._c)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((k, str(v)) for k, v in self._c.items())))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            elif k in c:
                del c[k]
        out = LaurentPoly()
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly()
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            c = {}
            for k1, v1 in self._c.items():
                for k2, v2 in other._c.items():
                    k = k1 + k2
                    s = c.get(k, 0) + v1 * v2
                    if s:
                        c[k] = s
                    elif k in c:
                        del c[k]
            out = LaurentPoly()
            out._c = c
            return out
        if not other:
            return LaurentPoly.zero()
        out = LaurentPoly()
        out._c = {k: v * other for k, v in self._c.items()}
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power must be a non-negative integer")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self):
        return LaurentPoly({k - 1: k * v for k, v in self._c.items() if k})

    def dual_transform(self, e_total):
        """Map Z(x) -> x^E * Z(1/x): exponent k goes to E - k."""
        return LaurentPoly({e_total - k: v for k, v in self._c.items()})

    def eval_at(self, x0):
        if not self._c:
            return 0.0 if isinstance(x0, float) else QuadValue(0)
        if min(self._c) < 0 and not x0:
            raise ZeroEvaluation("negative exponent evaluated at x = 0")
        if isinstance(x0, float):
            total = 0.0
            for k, v in self._c.items():
                total += float(v) * x0 ** k
            return total
        total = None
        for k in sorted(self._c):
            term = self._c[k] * (x0 ** k if k else 1)
            total = term if total is None else total + term
        return total

    def map_coeffs(self, fn):
        return LaurentPoly({k: fn(v) for k, v in self._c.items()})

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            c = self._c[k]
            cs = f"{c:.12g}" if isinstance(c, float) else str(c)
            if k == 0:
                parts.append(f"({cs})")
            elif k == 1:
                parts.append(f"({cs})*x")
            else:
                parts.append(f"({cs})*x^{k}")
        return " + ".join(parts)


def eval_at(poly, x0):
    """Evaluate a Laurent polynomial; float x0 selects the float backend."""
    return poly.eval_at(x0)


def dual_transform(poly, e_total):
    """The map Z(x) -> x^E Z(1/x) realized on coefficients."""
    return poly.dual_transform(e_total)


@dataclass(frozen=True)
class NumericPolicy:
    """Backend selection plus float comparison tolerances."""

    backend: str = "exact"
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {self.backend!r}")

    @property
    def exact(self):
        return self.backend == "exact"

    def require_exact_radicand(self, q):
        if self.exact and (not isinstance(q, int) or isinstance(q, bool) or q < 0):
            raise BackendMismatch(
                f"exact backend needs an integer radicand, got {q!r}")


EXACT = NumericPolicy("exact")
FLOAT = NumericPolicy("float")


def approx_equal(u, v, policy=EXACT):
    """Equality under the policy: exact difference is zero, or floats agree
    within abs_tol + rel_tol * max(|u|, |v|)."""
    if isinstance(u, LaurentPoly) or isinstance(v, LaurentPoly):
        if not isinstance(u, LaurentPoly):
            u = LaurentPoly.const(u)
        if not isinstance(v, LaurentPoly):
            v = LaurentPoly.const(v)
        if policy.exact:
            return (u - v).is_zero()
        keys = set(u.coeffs()) | set(v.coeffs())
        return all(
            approx_equal(float(u.coeff(k) or 0.0), float(v.coeff(k) or 0.0), policy)
            for k in keys)
    if policy.exact:
        du = u if isinstance(u, QuadValue) else QuadValue._coerce(u)
        dv = v if isinstance(v, QuadValue) else QuadValue._coerce(v)
        if du is None or dv is None:
            return u == v
        return du == dv
    fu, fv = float(u), float(v)
    return abs(fu - fv) <= policy.abs_tol + policy.rel_tol * max(abs(fu), abs(fv))
