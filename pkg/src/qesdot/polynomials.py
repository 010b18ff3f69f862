"""Dense univariate polynomials, Laguerre polynomials and Sturm root isolation.

Coefficients are stored in ascending order.  A polynomial whose coefficients
are all ``int``/``Fraction`` is *exact*; every other polynomial is treated as
double precision.  Root counting and isolation always run on the exact
rational image of the input (floats convert to rationals without rounding),
so counts are exact even for floating-point input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidParameterError, NumericFailure


def _is_exact(c) -> bool:
    return isinstance(c, Rational)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Poly:
    """Immutable dense polynomial ``sum(coeffs[k] * x**k)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self._c)

    @property
    def leading(self):
        return self._c[-1] if self._c else 0

    def __getitem__(self, k):
        return self._c[k] if 0 <= k < len(self._c) else 0

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"Poly({list(self._c)!r})"

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self), len(other))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self._c)
        if self.is_zero or other.is_zero:
            return Poly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            raise TypeError("use poly_divmod for polynomial division")
        if _is_exact(scalar) and self.is_exact:
            scalar = Fraction(scalar)
        return Poly(c / scalar for c in self._c)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self._c) if k > 0)

    def exact(self) -> "Poly":
        """Rational image; floats convert without rounding."""
        return Poly(Fraction(c) for c in self._c)

    def to_float(self) -> "Poly":
        return Poly(float(c) for c in self._c)

    def substitute(self, scale, power: int) -> "Poly":
        """Return ``q(r) = self(scale * r**power)``."""
        out = [0] * (power * self.degree + 1) if self._c else []
        factor = 1
        for k, c in enumerate(self._c):
            out[power * k] = c * factor
            factor = factor * scale
        return Poly(out)


def poly_eval(p: Poly, x):
    """Horner evaluation; exact when both ``p`` and ``x`` are rational."""
    return p(x)


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Long division ``num = den * quotient + remainder``."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero polynomial")
    exact = num.is_exact and den.is_exact
    rem = [Fraction(c) for c in num] if exact else [float(c) for c in num]
    lead = Fraction(den.leading) if exact else float(den.leading)
    dd = den.degree
    if num.degree < dd:
        return Poly(), num
    quot = [0] * (num.degree - dd + 1)
    for k in range(num.degree - dd, -1, -1):
        q = rem[k + dd] / lead
        quot[k] = q
        if q == 0:
            continue
        for i, c in enumerate(den):
            rem[k + i] -= q * c
        rem[k + dd] = 0 * q  # cancels by construction; avoid float residue
    return Poly(quot), Poly(rem[:dd])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over the rationals."""
    a, b = a.exact(), b.exact()
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero:
        return a
    return a / a.leading


def squarefree_part(p: Poly) -> Poly:
    """``p / gcd(p, p')`` over the rationals."""
    p = p.exact()
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return poly_divmod(p, g)[0]


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: factors ``(a_i, i)`` with ``p = lc * prod(a_i**i)``.

    Each ``a_i`` is square-free and pairwise coprime, so a root of ``a_i``
    has multiplicity exactly ``i`` in ``p``.
    """
    f = p.exact()
    if f.degree < 1:
        return []
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = poly_divmod(f, a0)[0]
    c = poly_divmod(fp, a0)[0]
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def laguerre(n: int, alpha: int) -> Poly:
    """Generalized Laguerre polynomial ``L_n^alpha(s)`` with exact coefficients.

    Built from ``(k+1) L_{k+1} = (2k+1+alpha-s) L_k - (k+alpha) L_{k-1}``.
    """
    if n < 0:
        raise InvalidParameterError("Laguerre degree must be non-negative")
    prev, cur = Poly(), Poly([1])
    for k in range(n):
        nxt = cur * Poly([2 * k + 1 + alpha, -1]) - prev * (k + alpha)
        prev, cur = cur, nxt / Fraction(k + 1)
    return cur


def _integer_coeffs(p: Poly) -> list[int]:
    """Positive multiple of ``p`` with coprime integer coefficients."""
    c = [Fraction(x) for x in p]
    den = 1
    for x in c:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return _primitive([int(x * den) for x in c])


def _primitive(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = math.gcd(g, x)
    return [x // g for x in c] if g > 1 else c


def _positive_prem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of ``a`` by ``b`` up to a positive factor, trailing zeros trimmed."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    mult, sgn = abs(lc), (1 if lc > 0 else -1)
    for k in range(len(a) - 1 - db, -1, -1):
        top = r[k + db]
        r = [x * mult for x in r]
        if top:
            for i, bi in enumerate(b):
                r[k + i] -= top * sgn * bi
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm sequence by integer pseudo-remainders.

    Every member is a positive multiple of the classical one, so sign
    variations are unchanged.  The last member is ``gcd(p, p')`` up to a
    constant; it has positive degree exactly when ``p`` has a repeated root.
    """
    if p.is_zero:
        raise InvalidParameterError("Sturm chain of the zero polynomial")
    a = _integer_coeffs(p)
    if len(a) == 1:
        return [Poly(a)]
    b = _primitive([i * x for i, x in enumerate(a)][1:])
    chain = [a, b]
    while True:
        r = _positive_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-x for x in r]))
    return [Poly(c) for c in chain]


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence of a square-free rational polynomial."""

    chain: tuple[Poly, ...]

    @classmethod
    def of(cls, p: Poly) -> "SturmChain":
        chain = _sturm_sequence(p)
        if chain[-1].degree > 0:
            raise InvalidParameterError("Sturm chain requires a square-free polynomial")
        return cls(tuple(chain))

    @staticmethod
    def _variations(signs) -> int:
        s = [x for x in signs if x != 0]
        return sum(1 for a, b in zip(s, s[1:]) if a != b)

    def variations_at(self, x) -> int:
        x = Fraction(x)
        return self._variations(_sign(q(x)) for q in self.chain)

    def variations_at_zero_plus(self) -> int:
        return self._variations(_sign(next(c for c in q if c != 0)) for q in self.chain)

    def variations_at_pos_inf(self) -> int:
        return self._variations(_sign(q.leading) for q in self.chain)

    def variations_at_neg_inf(self) -> int:
        return self._variations(_sign(q.leading) * (-1) ** q.degree for q in self.chain)

    def count(self, a, b) -> int:
        """Number of distinct roots in the half-open interval ``(a, b]``."""
        return self.variations_at(a) - self.variations_at(b)


def count_positive_roots(p: Poly) -> int:
    """Exact number of distinct real roots in ``(0, inf)``."""
    if p.is_zero:
        raise InvalidParameterError("zero polynomial has no finite root count")
    seq = _sturm_sequence(p)
    if seq[-1].degree > 0:
        seq = _sturm_sequence(poly_divmod(p.exact(), seq[-1])[0])
    if seq[0].degree < 1:
        return 0
    chain = SturmChain(tuple(seq))
    return chain.variations_at_zero_plus() - chain.variations_at_pos_inf()


def _root_bound(p: Poly) -> Fraction:
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def _isolate(q: Poly, chain: SturmChain) -> list[tuple[Fraction, Fraction]]:
    bound = _root_bound(q)
    stack = [(-bound, bound, chain.count(-bound, bound))]
    out = []
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        left = chain.count(a, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, n - left))
    return sorted(out)


def _polish(q: Poly, a: Fraction, b: Fraction, chain: SturmChain, tol: float,
            max_iter: int = 200) -> float:
    """Safeguarded Newton on the single root of ``q`` inside ``(a, b]``."""
    if q(b) == 0:
        return float(b)
    while q(a) == 0:
        mid = (a + b) / 2
        if chain.count(mid, b) == 1:
            a = mid
        else:
            b = mid
    dq = q.derivative()
    absq = Poly(abs(c) for c in q)
    lo, hi = float(a), float(b)
    s_lo = _sign(q(Fraction(lo)))
    if s_lo == 0:
        return lo
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = q(Fraction(x))
        if fx == 0:
            return x
        if abs(fx) <= tol * absq(Fraction(abs(x))):
            return x
        if _sign(fx) == s_lo:
            lo = x
        else:
            hi = x
        if math.nextafter(lo, hi) >= hi:
            return lo if abs(q(Fraction(lo))) < abs(q(Fraction(hi))) else hi
        d = dq(Fraction(x))
        step = float(fx / d) if d != 0 else math.inf
        nx = x - step
        if not lo < nx < hi:
            nx = 0.5 * (lo + hi)
        x = nx
    raise NumericFailure("root polishing did not converge", interval=(lo, hi))


def real_roots_with_multiplicity(p: Poly, tol: float = 1e-14) -> list[tuple[float, int]]:
    """All distinct real roots of ``p`` with their multiplicities, ascending."""
    if p.degree < 1:
        raise InvalidParameterError("need a polynomial of degree >= 1")
    out = []
    for factor, mult in squarefree_decomposition(p):
        chain = SturmChain.of(factor)
        for a, b in _isolate(factor, chain):
            out.append((_polish(factor, a, b, chain, tol), mult))
    return sorted(out)


def real_roots(p: Poly, tol: float = 1e-14) -> list[float]:
    """Distinct real roots, isolated by Sturm bisection and Newton-polished.

    Convergence means ``|p(x)| <= tol * sum(|a_k| |x|**k)`` or a bracket
    collapsed to adjacent doubles.
    """
    return [x for x, _ in real_roots_with_multiplicity(p, tol)]
