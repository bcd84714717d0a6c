"""Exact arithmetic in a number field Q(theta) given by a monic minimal polynomial.

Elements are stored as coordinate tuples in the power basis 1, theta, ...,
theta^(d-1) with ``gmpy2.mpq`` rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

from gmpy2 import mpq

from ..errors import ReducibleMinPoly

_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(x) -> mpq:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            if not q.strip():
                raise ValueError(f"malformed rational {x!r}")
            return mpq(int(p), int(q))
        return mpq(int(s))
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return mpq(x)


def rational_str(q: mpq) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_monic(coeffs: Sequence[mpq]) -> list[int]:
    """Rescale a monic rational polynomial to a monic integer one.

    Substituting x = y/D multiplies every root by D; reducibility is unchanged.
    """
    d = len(coeffs) - 1
    den = 1
    for c in coeffs:
        den = _lcm(den, int(mpq(c).denominator))
    out = []
    for i, c in enumerate(coeffs):
        v = mpq(c) * mpq(den) ** (d - i)
        assert v.denominator == 1
        out.append(int(v.numerator))
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    ds = set(small) | {n // k for k in small}
    return sorted(ds | {-k for k in ds})


def _eval_int(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _has_rational_root(icoeffs: Sequence[int]) -> bool:
    if icoeffs[0] == 0:
        return True
    return any(_eval_int(icoeffs, r) == 0 for r in _divisors(icoeffs[0]))


def _quartic_splits_into_quadratics(ic: Sequence[int]) -> bool:
    # x^4 + a x^3 + b x^2 + c x + e = (x^2 + p x + q)(x^2 + p' x + q') over Z (Gauss)
    e, c, b, a = ic[0], ic[1], ic[2], ic[3]
    for q in _divisors(e):
        q2 = e // q
        if q != q2:
            num, den = c - a * q, q2 - q
            if num % den:
                continue
            p = num // den
            p2 = a - p
            if q + q2 + p * p2 == b:
                return True
        else:
            if c != a * q:
                continue
            # p + p' = a, p p' = b - 2q
            disc = a * a - 4 * (b - 2 * q)
            if disc >= 0 and isqrt(disc) ** 2 == disc and (a + isqrt(disc)) % 2 == 0:
                return True
    return False


def is_irreducible(coeffs: Sequence) -> bool:
    """Irreducibility over Q of a monic polynomial of degree at most 4.

    ``coeffs`` run from the constant term upward.
    """
    coeffs = [to_rational(c) for c in coeffs]
    d = len(coeffs) - 1
    if d < 1 or coeffs[-1] != 1:
        raise ValueError("expected a monic polynomial of degree >= 1")
    if d == 1:
        return True
    if d > 4:
        raise ValueError("irreducibility is only decided for degree <= 4")
    ic = _integer_monic(coeffs)
    if _has_rational_root(ic):
        return False
    if d == 4 and _quartic_splits_into_quadratics(ic):
        return False
    return True


@lru_cache(maxsize=None)
def _field(min_poly: tuple) -> "NumberField":
    return NumberField._create(min_poly)


class NumberField:
    """The field Q[x]/(min_poly).

    Instances are interned, so two fields with the same minimal polynomial are
    the same object. Use :meth:`NumberField.of` (or the constructor) to build one.
    """

    __slots__ = ("min_poly", "degree", "_reduction", "zero", "one", "theta")

    def __new__(cls, min_poly: Iterable = (0, 1), assume_irreducible: bool = False):
        return cls.of(min_poly, assume_irreducible)

    @classmethod
    def of(cls, min_poly: Iterable = (0, 1), assume_irreducible: bool = False) -> "NumberField":
        coeffs = tuple(to_rational(c) for c in min_poly)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("min_poly must be monic of degree >= 1")
        d = len(coeffs) - 1
        if d > 4:
            if not assume_irreducible:
                raise ReducibleMinPoly(
                    f"cannot verify irreducibility in degree {d}; pass assume_irreducible=True"
                )
        elif not is_irreducible(coeffs):
            raise ReducibleMinPoly(f"min_poly {[rational_str(c) for c in coeffs]} is reducible over Q")
        return _field(coeffs)

    @classmethod
    def _create(cls, coeffs: tuple) -> "NumberField":
        self = object.__new__(cls)
        d = len(coeffs) - 1
        self.min_poly = coeffs
        self.degree = d
        # theta^k for k < 2d-1 expressed in the power basis
        red = []
        for k in range(2 * d - 1):
            if k < d:
                v = [_ZERO] * d
                v[k] = _ONE
            else:
                prev = red[k - 1]
                # theta * prev, then replace theta^d by -sum c_i theta^i
                shifted = [_ZERO] + list(prev[:-1])
                top = prev[-1]
                v = [shifted[i] - top * coeffs[i] for i in range(d)]
            red.append(tuple(v))
        self._reduction = tuple(red)
        self.zero = Scalar(self, (_ZERO,) * d)
        self.one = Scalar(self, (_ONE,) + (_ZERO,) * (d - 1))
        self.theta = Scalar(self, tuple(_ONE if i == 1 else _ZERO for i in range(d))) if d > 1 else None
        return self

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls.of((0, 1))

    # interned: identity is equality
    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(self.min_poly)

    def __reduce__(self):
        return (NumberField.of, (tuple(rational_str(c) for c in self.min_poly),))

    def __repr__(self):
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField({[rational_str(c) for c in self.min_poly]})"

    def __call__(self, value) -> "Scalar":
        """Coerce ``value`` (rational, coordinate list, or Scalar) into this field."""
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ValueError("scalar belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.degree:
                raise ValueError(f"expected at most {self.degree} coordinates, got {len(value)}")
            cs = [to_rational(v) for v in value]
            cs += [_ZERO] * (self.degree - len(cs))
            return Scalar(self, tuple(cs))
        q = to_rational(value)
        return Scalar(self, (q,) + (_ZERO,) * (self.degree - 1))

    def descriptor(self) -> tuple:
        return tuple(rational_str(c) for c in self.min_poly)


class Scalar:
    """An element of a :class:`NumberField`, immutable and hashable."""

    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("scalars from different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Scalar(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Scalar(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return Scalar(self.field, tuple(a * other for a in self.c))
        o = self._coerce(other)
        f = self.field
        d = f.degree
        if d == 1:
            return Scalar(f, (self.c[0] * o.c[0],))
        prod = [_ZERO] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            if prod[k]:
                red = f._reduction[k]
                for i in range(d):
                    out[i] += prod[k] * red[i]
        return Scalar(f, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        f = self.field
        d = f.degree
        if d == 1:
            return Scalar(f, (1 / self.c[0],))
        # column k of the multiplication-by-self matrix is self * theta^k
        cols = []
        basis_el = f.one
        for _ in range(d):
            cols.append((self * basis_el).c)
            basis_el = basis_el * f.theta
        # solve sum_k x_k cols[k] = e_0
        aug = [[cols[k][i] for k in range(d)] + [_ONE if i == 0 else _ZERO] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [v / pv for v in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    fac = aug[r][col]
                    aug[r] = [a - fac * b for a, b in zip(aug[r], aug[col])]
        return Scalar(f, tuple(aug[i][d] for i in range(d)))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, Fraction)) or type(other) is type(_ZERO):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.c[0].denominator == 1

    def rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def coords(self) -> tuple:
        return self.c

    def to_strings(self) -> list[str]:
        return [rational_str(a) for a in self.c]

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.field.degree == 1:
            return rational_str(self.c[0])
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            s = rational_str(a)
            if i == 0:
                parts.append(s)
            else:
                mon = "θ" if i == 1 else f"θ^{i}"
                parts.append(mon if a == 1 else ("-" + mon if a == -1 else f"{s}*{mon}"))
        return "+".join(parts).replace("+-", "-") if parts else "0"
