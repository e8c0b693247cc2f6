"""Hamilton quaternion arithmetic and the symplectic complex-pair form.

A quaternion ``q = w + x*i + y*j + z*k`` follows Hamilton's convention
(``i*j = k``, ``j*i = -k``, ``i**2 = j**2 = k**2 = -1``).  Every quaternion
splits uniquely as ``q = zc + j*wc`` with complex ``zc = w + i*x`` and
``wc = y - i*z``; this symplectic form is what lifts quaternionic matrices
to complex matrices of doubled size (see :mod:`quatpoly.companion`), and the
sign of ``wc`` is forced by ``j*i = -k``.

Values are immutable and every function here is pure, so they can be used
freely across threads.
"""

from __future__ import annotations

import math
import re
from collections import namedtuple
from typing import NamedTuple

__all__ = [
    "Quaternion",
    "ComplexPair",
    "ZERO",
    "ONE",
    "I",
    "J",
    "K",
    "exp",
    "symplectic_split",
    "symplectic_join",
    "similarity_rotation",
    "parse_quaternion",
    "format_quaternion",
    "ParseError",
]

#: tolerance on |norm(u) - 1| for operations requiring a unit quaternion
UNIT_TOL = 1e-9

#: below this imaginary magnitude, exp() switches to a series for sin|v|/|v|
_SINC_SERIES_CUTOFF = 1e-8


class ParseError(ValueError):
    """Malformed quaternion or polynomial text.

    ``position`` is the character offset where scanning failed.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Quaternion(namedtuple("Quaternion", "w x y z")):
    """Immutable Hamilton quaternion ``w + x*i + y*j + z*k``."""

    __slots__ = ()

    # keep numpy scalars from broadcasting over the tuple; defer to __rmul__
    __array_ufunc__ = None

    def __new__(cls, w=0.0, x=0.0, y=0.0, z=0.0):
        return super().__new__(cls, float(w), float(x), float(y), float(z))

    # -- basic structure ---------------------------------------------------

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def imag_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        """Squared norm w**2 + x**2 + y**2 + z**2."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        """Multiplicative inverse conj(q) / |q|**2.

        Raises ZeroDivisionError for the zero quaternion.
        """
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("non-invertible quaternion (zero input)")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    @classmethod
    def from_complex(cls, zc: complex) -> "Quaternion":
        """Embed a complex number in the span{1, i} subfield."""
        zc = complex(zc)
        return cls(zc.real, zc.imag, 0.0, 0.0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self):
        return self

    def __mul__(self, other):
        """Hamilton product (non-commutative); reals act as scalars."""
        if isinstance(other, Quaternion):
            aw, ax, ay, az = self
            bw, bx, by, bz = other
            return Quaternion(
                aw * bw - ax * bx - ay * by - az * bz,
                aw * bx + ax * bw + ay * bz - az * by,
                aw * by - ax * bz + ay * bw + az * bx,
                aw * bz + ax * by - ay * bx + az * bw,
            )
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # real scalars commute with everything
        if isinstance(other, (int, float)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        # only division by reals; quaternion "division" is ambiguous,
        # use a * b.inverse() or b.inverse() * a explicitly.
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def is_close(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def __str__(self) -> str:
        return format_quaternion(self)


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


class ComplexPair(NamedTuple):
    """Symplectic components of a quaternion: q = zc + j*wc."""

    zc: complex
    wc: complex


def symplectic_split(q: Quaternion) -> ComplexPair:
    """Split q into its symplectic complex pair (zc, wc).

    zc = w + i*x and wc = y - i*z, so that q = zc + j*wc under Hamilton's
    j*i = -k.
    """
    return ComplexPair(complex(q.w, q.x), complex(q.y, -q.z))


def symplectic_join(pair, wc: complex | None = None) -> Quaternion:
    """Inverse of :func:`symplectic_split`.

    Accepts either a ComplexPair / 2-tuple or two separate complex arguments.
    """
    if wc is None:
        zc, wc = pair
    else:
        zc = pair
    zc = complex(zc)
    wc = complex(wc)
    return Quaternion(zc.real, zc.imag, wc.real, -wc.imag)


def exp(q: Quaternion) -> Quaternion:
    """Quaternion exponential e^w * (cos|v| + (v/|v|) sin|v|).

    v is the imaginary part; continuous at v = 0, where a short series for
    sin|v|/|v| avoids cancellation.
    """
    ew = math.exp(q.w)
    v = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if v < _SINC_SERIES_CUTOFF:
        # sin(v)/v = 1 - v^2/6 + v^4/120 - ...
        sinc = 1.0 - v * v / 6.0
        cosv = 1.0 - v * v / 2.0
    else:
        sinc = math.sin(v) / v
        cosv = math.cos(v)
    s = ew * sinc
    return Quaternion(ew * cosv, s * q.x, s * q.y, s * q.z)


def similarity_rotation(u: Quaternion) -> tuple[float, tuple[float, float, float]]:
    """Rotation (angle, axis) carried by the similarity map p -> u p conj(u).

    For unit u = w + v with imaginary vector v, the map rotates imaginary
    vectors by angle = 2*atan2(|v|, w) about axis v/|v|.  In particular the
    imaginary vector of u*lambda*conj(u) (lambda complex, Im lambda >= 0) is
    Im[lambda]*(1, 0, 0) rotated this way.  For u = +-1 the map is the
    identity; (0.0, (1.0, 0.0, 0.0)) is returned by convention.
    """
    if abs(u.norm() - 1.0) > UNIT_TOL:
        raise ValueError("similarity_rotation requires a unit quaternion")
    v = math.sqrt(u.x * u.x + u.y * u.y + u.z * u.z)
    if v < 1e-15:
        return 0.0, (1.0, 0.0, 0.0)
    angle = 2.0 * math.atan2(v, u.w)
    return angle, (u.x / v, u.y / v, u.z / v)


# -- text format ------------------------------------------------------------
#
# Grammar: a signed sum of terms, each a real number, a basis letter i/j/k,
# or number*basis (the * is optional).  Terms may appear in any order but at
# most once per basis element; terms after the first need an explicit sign.
# Examples: "1-k", "-j", "0", "2.5+0.5i-1j+3k".

_TERM_RE = re.compile(
    r"""
    (?:
        (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
        \s*\*?\s*
        (?P<basis1>[ijk])?
      |
        (?P<basis2>[ijk])
    )
    """,
    re.VERBOSE,
)


def parse_quaternion(text: str) -> Quaternion:
    """Parse the ``a+bi+cj+dk`` text form (round-trips with format)."""
    components = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    seen: set[str] = set()
    pos = 0
    n = len(text)
    first = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        sign = 1.0
        if text[pos] in "+-":
            if text[pos] == "-":
                sign = -1.0
            pos += 1
            while pos < n and text[pos].isspace():
                pos += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", pos)
        m = _TERM_RE.match(text, pos)
        if m is None:
            raise ParseError("expected a number or basis element", pos)
        basis = m.group("basis1") or m.group("basis2") or ""
        value = float(m.group("num")) if m.group("num") is not None else 1.0
        if basis in seen:
            raise ParseError(f"duplicate '{basis or 'real'}' term", pos)
        seen.add(basis)
        components[basis] = sign * value
        pos = m.end()
        first = False
    if first:
        raise ParseError("empty quaternion literal", 0)
    return Quaternion(components[""], components["i"], components["j"], components["k"])


def _format_value(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def format_quaternion(q: Quaternion) -> str:
    """Render as ``a+bi+cj+dk``, omitting zero terms and unit coefficients."""
    out: list[str] = []
    for value, unit in ((q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")):
        if value == 0.0:
            continue
        mag = abs(value)
        body = unit if (unit and mag == 1.0) else _format_value(mag) + unit
        if not out:
            out.append(("-" if value < 0 else "") + body)
        else:
            out.append(("-" if value < 0 else "+") + body)
    return "".join(out) if out else "0"
