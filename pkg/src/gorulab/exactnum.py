"""Exact scalars: rationals, cyclotomic field elements, binomials and
dense polynomials over Q.

Rationals are :class:`fractions.Fraction`.  Polynomials are ascending
coefficient lists (index = degree) with no trailing zeros; the zero
polynomial is the empty list.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "CycloNumber"]


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# rationals and their JSON form
# ---------------------------------------------------------------------------

def Q(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, CycloNumber):
        v = x.rational_value()
        if v is None:
            raise ValueError(f"{x!r} is not rational")
        return v
    raise TypeError(f"cannot read {x!r} as a rational")


def fmt_q(x: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def q_content(values: Iterable[Fraction]) -> Fraction:
    """Positive gcd of a list of rationals (0 for an all-zero list)."""
    num = 0
    den = 1
    for v in values:
        v = Q(v)
        if v:
            num = math.gcd(num, v.numerator)
            den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den) if num else Fraction(0)


# ---------------------------------------------------------------------------
# binomials
# ---------------------------------------------------------------------------

def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(n)


def falling(x, k: int):
    """x (x-1) ... (x-k+1); works for Fraction or int x."""
    out = 1
    for j in range(k):
        out *= x - j
    return out


def rising(x, k: int):
    """x (x+1) ... (x+k-1)."""
    out = 1
    for j in range(k):
        out *= x + j
    return out


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the polynomial extension to negative n.

    Zero for k < 0, and for n >= 0 with k > n.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # C(n, k) = (-1)^k C(k - n - 1, k) for n < 0
    return (-1) ** k * math.comb(k - n - 1, k)


def gen_binomial(a: Fraction, k: int) -> Fraction:
    """C(a, k) for rational a."""
    if k < 0:
        return Fraction(0)
    return Fraction(falling(Q(a), k)) / math.factorial(k)


# ---------------------------------------------------------------------------
# polynomials over Q (ascending lists)
# ---------------------------------------------------------------------------

def poly_trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                      for i in range(n)])


def poly_sub(a: Sequence, b: Sequence) -> list:
    return poly_add(a, [-c for c in b])


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_scale(a: Sequence, c) -> list:
    return poly_trim([c * x for x in a])


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division over Q (or any field whose elements support ``/``)."""
    b = poly_trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = [Fraction(x) if isinstance(x, int) else x for x in poly_trim(a)]
    if len(r) < len(b):
        return [], r
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    lead = Fraction(b[-1]) if isinstance(b[-1], int) else b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - c * y
        r.pop()
        r = poly_trim(r)
    return poly_trim(q), r


def poly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    lead = Q(a[-1])
    return [Q(c) / lead for c in a]


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_compose_affine(p: Sequence, c0, c1) -> list:
    """p(c0 + c1*x)."""
    out: list = []
    for coef in reversed(p):
        out = poly_add(poly_mul(out, [c0, c1]) if out else [], [coef])
    return out


# ---------------------------------------------------------------------------
# number theory helpers
# ---------------------------------------------------------------------------

def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    out = n
    for p in _factor(n):
        out = out // p * (p - 1)
    return out


def mobius(n: int) -> int:
    f = _factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        q, r = poly_divmod(num, list(_cyclotomic(d)))
        assert not r
        num = q
    return tuple(int(c) for c in num)


def cyclotomic_polynomial(n: int) -> list[Fraction]:
    """Phi_n as an ascending coefficient list."""
    return [Fraction(c) for c in _cyclotomic(n)]


def _ramanujan_sum(n: int, j: int) -> int:
    # trace of zeta_n^j down to Q
    g = math.gcd(j, n)
    m = n // g
    return mobius(m) * totient(n) // totient(m)


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

def _reduce(coeffs: list, n: int) -> tuple[Fraction, ...]:
    phi = _cyclotomic(n)
    deg = len(phi) - 1
    c = [Q(x) for x in coeffs]
    # Phi_n is monic with integer coefficients: plain synthetic reduction
    for top in range(len(c) - 1, deg - 1, -1):
        lead = c[top]
        if lead:
            base = top - deg
            for i, p in enumerate(phi):
                c[base + i] -= lead * p
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


class CycloNumber:
    """Element of Q(zeta_N), stored reduced modulo Phi_N.

    Mixed-order arithmetic lifts both operands to Q(zeta_lcm).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.coeffs = _reduce(list(coeffs), order)

    # construction -----------------------------------------------------
    @classmethod
    def from_rational(cls, x, order: int = 1) -> "CycloNumber":
        return cls(order, [Q(x)])

    def lift(self, order: int) -> "CycloNumber":
        """View this element inside Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        c = [Fraction(0)] * (step * len(self.coeffs) or 1)
        for j, x in enumerate(self.coeffs):
            c[j * step] = x
        return CycloNumber(order, c)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational_value(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def key(self) -> tuple:
        return (self.order, self.coeffs)

    def trace(self) -> Fraction:
        """Field trace to Q."""
        return sum((c * _ramanujan_sum(self.order, j) for j, c in enumerate(self.coeffs)),
                   Fraction(0))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> tuple["CycloNumber", "CycloNumber"] | None:
        if isinstance(other, CycloNumber):
            if other.order == self.order:
                return self, other
            n = self.order * other.order // math.gcd(self.order, other.order)
            return self.lift(n), other.lift(n)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self, CycloNumber(self.order, [Fraction(other)])
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNumber(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloNumber(self.order, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        prod = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycloNumber(a.order, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZero("division by zero")
            return CycloNumber(self.order, [x / other for x in self.coeffs])
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * cyclo_inverse(other)

    def __rtruediv__(self, other):
        return cyclo_inverse(self) * other

    def __pow__(self, k: int):
        if k < 0:
            return cyclo_inverse(self) ** (-k)
        out = CycloNumber(self.order, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        # trace / degree is invariant under lifting, so equal values hash equal
        return hash(self.trace() / totient(self.order))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
                if mono and c == 1:
                    terms.append(mono)
                elif mono and c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(fmt_q(c) + (("*" + mono) if mono else ""))
        return f"Cyclo{self.order}({' + '.join(terms) or '0'})"


def cyclo_inverse(a: CycloNumber) -> CycloNumber:
    """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
    if a.is_zero():
        raise DivisionByZero("inverse of zero in a cyclotomic field")
    n = a.order
    # invariant: s_i * a == r_i (mod Phi_n)
    r0, r1 = cyclotomic_polynomial(n), poly_trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
    # r1 is a nonzero constant because Phi_n is irreducible
    c = r1[0]
    return CycloNumber(n, [x / c for x in s1])


def embed_root(n: int, k: int) -> CycloNumber:
    """zeta_n^k reduced modulo Phi_n."""
    if n < 1:
        raise ValueError("order must be positive")
    k %= n
    c = [Fraction(0)] * (k + 1)
    c[k] = Fraction(1)
    return CycloNumber(n, c)


def is_zero(x) -> bool:
    if isinstance(x, CycloNumber):
        return x.is_zero()
    return x == 0


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def rational_to_json(x) -> str:
    return fmt_q(x)


def rational_from_json(s) -> Fraction:
    return Q(s)


def cyclo_to_json(a: CycloNumber) -> dict:
    return {"order": a.order, "coeffs": [fmt_q(c) for c in a.coeffs]}


def cyclo_from_json(obj) -> CycloNumber:
    if isinstance(obj, dict):
        return CycloNumber(int(obj["order"]), [Q(c) for c in obj["coeffs"]])
    return CycloNumber.from_rational(Q(obj))
