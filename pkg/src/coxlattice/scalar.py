"""Exact arithmetic in the real number fields Q(2cos(pi/m)).

Every finite irreducible real reflection group can be written over a
single field of this form, with ``m`` the largest label on its Coxeter
graph.  Elements are stored in the power basis ``1, t, t^2, ...`` of the
generator ``t = 2cos(pi/m)`` as integer numerators over one positive
common denominator, which keeps the hot paths (products inside Gaussian
elimination) in plain integer arithmetic.

Signs are decided exactly: the generator is enclosed in a rational
isolating interval of its minimal polynomial, the interval is bisected
until the enclosure of the element excludes zero, and the result is
cached on the element.

>>> K = number_field(5)
>>> t = K.theta
>>> t * t == t + 1
True
>>> 1 / t == t - 1
True
>>> (t - 1).sign(), (1 - t).sign()
(1, -1)
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import FieldMismatchError, VerificationError

__all__ = [
    "MAX_ORDER",
    "NumberField",
    "FieldElement",
    "number_field",
    "rational_field",
]

MAX_ORDER = 30
SIGN_MAX_BISECTIONS = 256

# Minimal polynomial of 2cos(pi/m) (integer coefficients, constant term
# first, monic) and an isolating interval for the root 2cos(pi/m), which
# is the largest real root.  Generated offline; the test suite re-checks
# irreducibility and root isolation independently.
_MIN_POLY_TABLE = {
    2: ((0, 1), "-1", "1"),
    3: ((-1, 1), "0", "2"),
    4: ((-2, 0, 1), "1393/985", "1970/1393"),
    5: ((-1, -1, 1), "2584/1597", "1597/987"),
    6: ((-3, 0, 1), "2340/1351", "1351/780"),
    7: ((1, -2, -1, 1), "1674/929", "2975/1651"),
    8: ((2, 0, -4, 0, 1), "2391/1294", "3010/1629"),
    9: ((-1, -3, 0, 1), "4768/2537", "857/456"),
    10: ((5, 0, -5, 0, 1), "2701/1420", "1710/899"),
    11: ((-1, 3, 3, -4, -1, 1), "3103/1617", "3861/2012"),
    12: ((1, 0, -4, 0, 1), "5301/2744", "1304/675"),
    13: ((-1, -3, 6, 4, -5, -1, 1), "9857/5076", "969/499"),
    14: ((-7, 0, 14, 0, -7, 0, 1), "2022/1037", "3383/1735"),
    15: ((1, -4, -4, 1, 1), "2999/1533", "1880/961"),
    16: ((2, 0, -16, 0, 20, 0, -8, 0, 1), "2399/1223", "2348/1197"),
    17: ((1, 4, -10, -10, 15, 6, -7, -1, 1), "3637/1850", "3002/1527"),
    18: ((-3, 0, 9, 0, -6, 0, 1), "2917/1481", "2204/1119"),
    19: ((-1, 5, 10, -20, -15, 21, 7, -8, -1, 1), "3833/1943", "4050/2053"),
    20: ((1, 0, -12, 0, 19, 0, -8, 0, 1), "1444/731", "5375/2721"),
    21: ((1, 8, 8, -6, -6, 1, 1), "4161/2104", "2656/1343"),
    22: ((-11, 0, 55, 0, -77, 0, 44, 0, -11, 0, 1), "5543/2800", "778/393"),
    23: ((1, -6, -15, 35, 35, -56, -28, 36, 9, -10, -1, 1), "2340/1181", "2021/1020"),
    24: ((1, 0, -16, 0, 20, 0, -8, 0, 1), "69649/35125", "1043/526"),
    25: ((-1, -5, 25, 5, -50, -1, 35, 0, -10, 0, 1), "2768/1395", "2139/1078"),
    26: ((13, 0, -91, 0, 182, 0, -156, 0, 65, 0, -13, 0, 1), "4493/2263", "3540/1783"),
    27: ((-1, 9, 0, -30, 0, 27, 0, -9, 0, 1), "2644/1331", "2791/1405"),
    28: ((1, 0, -24, 0, 86, 0, -104, 0, 53, 0, -12, 0, 1), "4267/2147", "3951/1988"),
    29: (
        (-1, -7, 28, 56, -126, -126, 210, 120, -165, -55, 66, 12, -13, -1, 1),
        "2883/1450",
        "1696/853",
    ),
    30: ((1, 0, -8, 0, 14, 0, -7, 0, 1), "2723/1369", "1997/1004"),
}

Scalar = Union["FieldElement", int, Fraction]


def _poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class NumberField:
    """The real field Q(t) with t = 2cos(pi/m).

    Use :func:`number_field` rather than the constructor; fields are
    cached so that identity comparison is cheap.
    """

    def __init__(self, m: int):
        if m not in _MIN_POLY_TABLE:
            raise ValueError(f"2cos(pi/{m}) is only tabulated for 2 <= m <= {MAX_ORDER}")
        poly, lo, hi = _MIN_POLY_TABLE[m]
        self.m = m
        self.min_poly: tuple[int, ...] = poly
        self.degree = len(poly) - 1
        self.isolating_interval = (Fraction(lo), Fraction(hi))
        d = self.degree
        # reduction[k] = t^k expressed in the power basis, for k < 2d - 1
        red = [tuple(int(i == k) for i in range(d)) for k in range(d)]
        for _ in range(d, 2 * d - 1):
            prev = red[-1]
            top = prev[-1]
            shifted = (0,) + prev[:-1]
            red.append(tuple(shifted[i] - top * poly[i] for i in range(d)))
        self._reduction = red
        self._levels: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        self._bounds: list[tuple[Fraction, Fraction]] = []
        self._bisections = 0
        self._inverses: dict = {}
        self.zero = FieldElement._raw(self, (0,) * d, 1)
        self.one = FieldElement._raw(self, (1,) + (0,) * (d - 1), 1)
        if d == 1:
            root = Fraction(-poly[0])
            self.theta = FieldElement._raw(self, (root.numerator,), root.denominator)
        else:
            self.theta = FieldElement._raw(self, (0, 1) + (0,) * (d - 2), 1)

    def __repr__(self) -> str:
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField(Q(2cos(pi/{self.m})))"

    def __reduce__(self):
        return (number_field, (self.m,))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    # -- construction -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Coerce an int, Fraction, string or element of this field."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            q = Fraction(value)
            return FieldElement._make(
                self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator
            )
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def element(self, coeffs: Iterable) -> "FieldElement":
        """Element with the given power-basis coefficients.

        More than ``degree`` coefficients are allowed and are reduced
        modulo the minimal polynomial.
        """
        qs = [Fraction(c) for c in coeffs] or [Fraction(0)]
        den = 1
        for q in qs:
            den = den * q.denominator // math.gcd(den, q.denominator)
        nums = [q.numerator * (den // q.denominator) for q in qs]
        return FieldElement._make(self, self._reduce(nums), den)

    def _reduce(self, nums: Sequence[int]) -> tuple[int, ...]:
        d = self.degree
        nums = list(nums)
        if len(nums) <= d:
            return tuple(nums) + (0,) * (d - len(nums))
        poly = self.min_poly
        for k in range(len(nums) - 1, d - 1, -1):
            top = nums[k]
            if top:
                for i in range(d):
                    nums[k - d + i] -= top * poly[i]
            nums[k] = 0
        return tuple(nums[:d])

    def parse(self, text: str) -> "FieldElement":
        """Inverse of :meth:`FieldElement.poly_string`."""
        s = text.replace(" ", "")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if not s or "".join(terms) != s:
            raise ValueError(f"cannot parse field element {text!r}")
        coeffs: dict[int, Fraction] = {}
        for term in terms:
            m = _TERM_RE.fullmatch(term)
            if m is None or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse field element {text!r}")
            sign, coef, var, power = m.groups()
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            k = (int(power) if power else 1) if var else 0
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        top = max(coeffs)
        return self.element([coeffs.get(k, 0) for k in range(top + 1)])

    # -- sign determination -------------------------------------------

    def _bisect(self, lo: Fraction, hi: Fraction, steps: int):
        f = self.min_poly
        s_lo = _poly_eval(f, lo) > 0
        for _ in range(steps):
            self._bisections += 1
            if self._bisections > SIGN_MAX_BISECTIONS:
                raise VerificationError(
                    f"sign bisection exceeded {SIGN_MAX_BISECTIONS} steps in {self!r}"
                )
            mid = (lo + hi) / 2
            v = _poly_eval(f, mid)
            if v == 0:
                raise VerificationError(f"minimal polynomial of {self!r} has a rational root")
            if (v > 0) == s_lo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    def _add_level(self, lo: Fraction, hi: Fraction) -> None:
        d = self.degree
        den = lo.denominator * hi.denominator // math.gcd(lo.denominator, hi.denominator)
        L = lo.numerator * (den // lo.denominator)
        H = hi.numerator * (den // hi.denominator)
        self._levels.append(
            (
                tuple(L**k * den ** (d - 1 - k) for k in range(d)),
                tuple(H**k * den ** (d - 1 - k) for k in range(d)),
            )
        )
        self._bounds.append((lo, hi))

    def _level(self, i: int):
        while len(self._levels) <= i:
            if not self._levels:
                lo, hi = self.isolating_interval
                steps = max(0, math.ceil(math.log2((hi - lo) * 2**64)))
                lo, hi = self._bisect(lo, hi, steps)
            else:
                lo, hi = self._bisect(*self._bounds[-1], 16)
            if lo <= 0:
                raise VerificationError(f"isolating interval of {self!r} is not positive")
            self._add_level(lo, hi)
        return self._levels[i]

    def _sign_of(self, num: Sequence[int]) -> int:
        i = 0
        while True:
            lows, highs = self._level(i)
            lower = upper = 0
            for c, a, b in zip(num, lows, highs):
                if c > 0:
                    lower += c * a
                    upper += c * b
                elif c < 0:
                    lower += c * b
                    upper += c * a
            if lower > 0:
                return 1
            if upper < 0:
                return -1
            i += 1

    def enclosure(self, x: "FieldElement", level: int = 0) -> tuple[Fraction, Fraction]:
        """Rational interval containing the real value of ``x``."""
        self._level(level)
        lo, hi = self._bounds[level]
        lower = upper = Fraction(0)
        for k, c in enumerate(x.num):
            a, b = lo**k, hi**k
            if c >= 0:
                lower += c * a
                upper += c * b
            else:
                lower += c * b
                upper += c * a
        return lower / x.den, upper / x.den


_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(?:\*?(t)(?:\^(\d+))?)?")


class FieldElement:
    """An exact element of a :class:`NumberField`.

    Stored as integer numerators ``num`` over a positive denominator
    ``den`` with ``gcd(den, *num) == 1``, so equality is coefficient-wise.
    Instances are immutable and hashable.
    """

    __slots__ = ("field", "num", "den", "_sign", "_hash")

    field: NumberField
    num: tuple[int, ...]
    den: int

    def __init__(self, field: NumberField, coeffs: Iterable):
        other = field.element(coeffs)
        for slot in ("field", "num", "den", "_sign", "_hash"):
            object.__setattr__(self, slot, getattr(other, slot))

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        obj._sign = None
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, field, num, den):
        if den < 0:
            num = tuple(-x for x in num)
            den = -den
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(x // g for x in num)
            den //= g
        return cls._raw(field, num, den)

    # -- views ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self.num[0], self.den)

    def sign(self) -> int:
        """Exact sign of the real value: -1, 0 or +1."""
        s = self._sign
        if s is None:
            if not any(self.num[1:]):
                c = self.num[0]
                s = (c > 0) - (c < 0)
            else:
                s = self.field._sign_of(self.num)
            self._sign = s
        return s

    def approx(self, level: int = 2) -> Fraction:
        lo, hi = self.field.enclosure(self, level) if self.field.degree > 1 else (
            Fraction(self.num[0], self.den),
            Fraction(self.num[0], self.den),
        )
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.approx())

    def poly_string(self) -> str:
        """Canonical text form, highest power first, e.g. ``1/2*t+1/2``."""
        parts = []
        for k in range(len(self.num) - 1, -1, -1):
            c = Fraction(self.num[k], self.den)
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                var = "t" if k == 1 else f"t^{k}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = "-" + var
                else:
                    term = f"{c}*{var}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts) or "0"

    def __str__(self) -> str:
        return self.poly_string()

    def __repr__(self) -> str:
        return f"FieldElement({self.poly_string()!r}, m={self.field.m})"

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if not any(self.num[1:]):
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash((self.num, self.den))
            self._hash = h
        return h

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field is self.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return not any(self.num[1:]) and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __neg__(self):
        return FieldElement._raw(self.field, tuple(-x for x in self.num), self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement._make(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        d1, d2 = self.den, o.den
        return FieldElement._make(
            self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, o.num)), d1 * d2
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement._make(self.field, tuple(a - b for a, b in zip(self.num, o.num)), self.den)
        d1, d2 = self.den, o.den
        return FieldElement._make(
            self.field, tuple(a * d2 - b * d1 for a, b in zip(self.num, o.num)), d1 * d2
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        field = self.field
        p, q = self.num, o.num
        d = field.degree
        if d == 1:
            return FieldElement._make(field, (p[0] * q[0],), self.den * o.den)
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        red = field._reduction
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(red[k]):
                    if r:
                        out[i] += c * r
        return FieldElement._make(field, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not any(self.num):
            raise ZeroDivisionError("division by zero in number field")
        field = self.field
        if field.degree == 1 or not any(self.num[1:]):
            c = self.num[0]
            return FieldElement._make(field, (self.den,) + (0,) * (field.degree - 1), c)
        key = (self.num, self.den)
        cached = field._inverses.get(key)
        if cached is not None:
            return cached
        # extended Euclid in Q[x] against the minimal polynomial
        r0 = [Fraction(c) for c in field.min_poly]
        r1 = _trim([Fraction(c) for c in self.num])
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant
        inv = field.element([c / r0[0] for c in s0]) * self.den
        if len(field._inverses) < 100_000:
            field._inverses[key] = inv
        return inv

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

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- ordering (real embedding) ------------------------------------

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _trim(a)
        if len(a) < len(b):
            break
    return _trim(q), _trim(a or [Fraction(0)])


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def number_field(m: int) -> NumberField:
    """The field Q(2cos(pi/m)); m = 2 and m = 3 both give Q."""
    return NumberField(m)


def rational_field() -> NumberField:
    return number_field(3)
