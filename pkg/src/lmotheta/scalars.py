"""Exact scalar arithmetic: rationals, Laurent polynomials in t = e^k, Taylor series in k.

Laurent polynomials store exponents of ``u = t^(1/2)`` so that the half-integer powers
coming from ``T^(1/2)`` and the integral powers of the hatted matrices live in one type.
Nothing in this module rounds; every coefficient is a :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

Rat = Fraction
RatMatrix = tuple  # tuple of row tuples of Fraction


class NotNormalized(ValueError):
    pass


class NoSolution(ValueError):
    pass


class Ambiguous(ValueError):
    pass


class Singular(ArithmeticError):
    pass


class Inconsistent(ArithmeticError):
    pass


def rat(x) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Finite sum of ``c * u^e`` with ``u = t^(1/2)``; immutable."""

    __slots__ = ("_c", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None, var: str = "t"):
        c = {}
        for e, v in (coeffs or {}).items():
            v = rat(v)
            if v:
                c[int(e)] = c.get(int(e), Fraction(0)) + v
        self._c = {e: v for e, v in c.items() if v}
        self.var = var
        self._hash = None

    @classmethod
    def from_t(cls, coeffs: Mapping[int, object], var: str = "t") -> "LaurentPoly":
        """Build from integral powers of t."""
        return cls({2 * e: v for e, v in coeffs.items()}, var)

    @classmethod
    def const(cls, c, var: str = "t") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def monomial_t(cls, e: int, c=1, var: str = "t") -> "LaurentPoly":
        return cls({2 * e: c}, var)

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        """True when only integer powers of t occur."""
        return all(e % 2 == 0 for e in self._c)

    def u_span(self) -> tuple[int, int]:
        if not self._c:
            return (0, 0)
        return (min(self._c), max(self._c))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.var)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()}, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            s = rat(other)
            return LaurentPoly({e: s * v for e, v in self._c.items()}, self.var)
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c, self.var)

    __rmul__ = __mul__

    def shift_t(self, e: int) -> "LaurentPoly":
        """Multiply by t^e."""
        return LaurentPoly({k + 2 * e: v for k, v in self._c.items()}, self.var)

    def invert_variable(self) -> "LaurentPoly":
        """The image under t -> t^-1."""
        return LaurentPoly({-e: v for e, v in self._c.items()}, self.var)

    def at_one(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == LaurentPoly.const(other)._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                mono = ""
            else:
                pw = Fraction(e, 2)
                if pw == 1:
                    mono = self.var
                elif pw.denominator == 1:
                    mono = f"{self.var}^{pw.numerator}"
                else:
                    mono = f"{self.var}^({pw})"
            mag = abs(v)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict[str, str]:
        return {str(e): rat_str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str], var: str = "t") -> "LaurentPoly":
        return cls({int(e): rat(v) for e, v in obj.items()}, var)


# ---------------------------------------------------------------------------
# Truncated Taylor series in one variable


class TaylorSeries:
    """Coefficients ``c_0 .. c_N`` of a power series in k, truncated at order N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[object], order: int | None = None):
        cs = tuple(rat(c) for c in coeffs)
        if order is not None:
            cs = (cs + (Fraction(0),) * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = cs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TaylorSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TaylorSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, m: int, order: int, c=1) -> "TaylorSeries":
        cs = [0] * (order + 1)
        if m <= order:
            cs[m] = c
        return cls(cs)

    def __getitem__(self, m: int) -> Fraction:
        return self.coeffs[m]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TaylorSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TaylorSeries(self.coeffs[: order + 1])

    def _common(self, other: "TaylorSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            return self + TaylorSeries((other,), self.order)
        n = self._common(other)
        return TaylorSeries(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TaylorSeries):
            s = rat(other)
            return TaylorSeries(s * c for c in self.coeffs)
        n = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for m in range(n + 1):
            acc = Fraction(0)
            for i in range(m + 1):
                if a[i] and b[m - i]:
                    acc += a[i] * b[m - i]
            out.append(acc)
        return TaylorSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TaylorSeries":
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = [1 / a[0]]
        for m in range(1, self.order + 1):
            acc = sum((a[i] * inv[m - i] for i in range(1, m + 1)), Fraction(0))
            inv.append(-acc / a[0])
        return TaylorSeries(inv)

    def __truediv__(self, other):
        if isinstance(other, TaylorSeries):
            return self * other.inverse()
        return self * (1 / rat(other))

    def exp(self) -> "TaylorSeries":
        """exp of a series without constant term, via e' = a' e."""
        a = self.coeffs
        if a[0]:
            raise ValueError("exp needs a series with zero constant term")
        e = [Fraction(1)]
        for m in range(1, self.order + 1):
            acc = sum((i * a[i] * e[m - i] for i in range(1, m + 1)), Fraction(0))
            e.append(acc / m)
        return TaylorSeries(e)

    def log(self) -> "TaylorSeries":
        """log of a series with constant term 1."""
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log needs a series with constant term 1")
        out = [Fraction(0)]
        for m in range(1, self.order + 1):
            acc = m * a[m] - sum((i * out[i] * a[m - i] for i in range(1, m)), Fraction(0))
            out.append(acc / m)
        return TaylorSeries(out)

    def negate_argument(self) -> "TaylorSeries":
        """The series of q(-k)."""
        return TaylorSeries(c if m % 2 == 0 else -c for m, c in enumerate(self.coeffs))

    def at_zero(self) -> Fraction:
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, TaylorSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TaylorSeries({[str(c) for c in self.coeffs]})"


def exp_series(scale, order: int) -> TaylorSeries:
    """Taylor coefficients of exp(scale * k)."""
    s = rat(scale)
    return TaylorSeries(s**m / factorial(m) for m in range(order + 1))


def laurent_to_taylor(p: LaurentPoly, order: int) -> TaylorSeries:
    """Expand p(e^k) to order N; u^e becomes exp(e k / 2)."""
    out = [Fraction(0)] * (order + 1)
    for e, c in p.items():
        half = Fraction(e, 2)
        pw = Fraction(1)
        for m in range(order + 1):
            out[m] += c * pw / factorial(m)
            pw *= half
    return TaylorSeries(out)


def a2_coefficient(p: LaurentPoly) -> Fraction:
    """Coefficient of k^2 in p(e^k) for a normalized Alexander polynomial."""
    if p.at_one() != 1:
        raise NotNormalized(f"expected p(1) = 1, got {p.at_one()}")
    return laurent_to_taylor(p, 2)[2]


# ---------------------------------------------------------------------------
# Exact linear algebra


def _to_rows(A) -> list[list[Fraction]]:
    return [[rat(x) for x in row] for row in A]


def solve_exact(A: Sequence[Sequence[object]], b: Sequence[object]) -> list[Fraction]:
    """Solve ``A x = b`` exactly; A may have more rows than columns if consistent.

    Pivots are the first nonzero entry in row order. Raises Inconsistent if no
    solution exists and Singular if the solution is not unique.
    """
    rows = _to_rows(A)
    rhs = [rat(x) for x in b]
    if len(rows) != len(rhs):
        raise ValueError("row count of A does not match length of b")
    ncols = len(rows[0]) if rows else 0
    aug = [r + [v] for r, v in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        raise Inconsistent("linear system has no solution")
    if len(pivots) < ncols:
        raise Singular("linear system does not determine a unique solution")
    return [aug[i][-1] for i in range(ncols)]


def det_exact(A: Sequence[Sequence[object]]) -> Fraction:
    """Bareiss fraction-free determinant (exact for rational entries as well)."""
    M = _to_rows(A)
    n = len(M)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_exact(A: Sequence[Sequence[object]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q; raises Singular."""
    M = _to_rows(A)
    n = len(M)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise Singular("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Monomial coefficients of the interpolating polynomial (Newton form, expanded)."""
    n = len(xs)
    dd = list(ys)
    coef = [dd[0]]
    for j in range(1, n):
        dd = [(dd[i + 1] - dd[i]) / (xs[i + j] - xs[i]) for i in range(n - j)]
        coef.append(dd[0])
    poly = [Fraction(0)] * n
    for j in range(n - 1, -1, -1):
        # poly = poly * (x - xs[j]) + coef[j]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[j] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[j]
    return poly


def _eval_poly_rows(P, shift, x):
    return [[sum((c * x ** (e - shift) for e, c in entry.items()), Fraction(0)) for entry in row] for row in P]


def _sample_points():
    yield Fraction(0)
    i = 1
    while True:
        yield Fraction(i)
        yield Fraction(-i)
        i += 1


def laurent_det(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant of a matrix of Laurent polynomials (evaluation + interpolation)."""
    n = len(M)
    if n == 0:
        return LaurentPoly.const(1)
    exps = [e for row in M for p in row for e in p.coeffs]
    lo = min(exps, default=0)
    hi = max(exps, default=0)
    deg = n * (hi - lo)
    xs, ys = [], []
    for x in _sample_points():
        xs.append(x)
        ys.append(det_exact(_eval_poly_rows(M, lo, x)))
        if len(xs) == deg + 1:
            break
    poly = _interpolate(xs, ys)
    return LaurentPoly({e + n * lo: c for e, c in enumerate(poly)}, M[0][0].var)


def laurent_adjugate(M: Sequence[Sequence[LaurentPoly]]) -> list[list[LaurentPoly]]:
    """Exact adjugate, sampled as det(M(x)) * M(x)^-1 at points where M(x) is invertible."""
    n = len(M)
    if n == 0:
        return []
    if n == 1:
        return [[LaurentPoly.const(1, M[0][0].var)]]
    exps = [e for row in M for p in row for e in p.coeffs]
    lo = min(exps, default=0)
    hi = max(exps, default=0)
    deg = (n - 1) * (hi - lo)
    xs, samples = [], []
    for x in _sample_points():
        vals = _eval_poly_rows(M, lo, x)
        d = det_exact(vals)
        if not d:
            continue
        inv = inverse_exact(vals)
        xs.append(x)
        samples.append([[d * v for v in row] for row in inv])
        if len(xs) == deg + 1:
            break
    var = M[0][0].var
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            poly = _interpolate(xs, [s[i][j] for s in samples])
            row.append(LaurentPoly({e + (n - 1) * lo: c for e, c in enumerate(poly)}, var))
        out.append(row)
    return out


def rational_reconstruct(
    s: TaylorSeries, denom: LaurentPoly, span, integral: bool = False
) -> LaurentPoly:
    """Find p supported on t-exponents in [-span, span] with p(e^k)/denom(e^k) = s to order N.

    Exponent steps are 1/2 by default and 1 with ``integral=True``. The system must be
    overdetermined by at least two equations (order >= 4*span + 2, or 2*span + 2 when
    integral); otherwise the span is reported as ambiguous for the given order.
    """
    d = Fraction(span)
    if d < 0 or (2 * d).denominator != 1:
        raise ValueError(f"span must be a nonnegative multiple of 1/2, got {span}")
    if denom.at_one() == 0:
        raise ValueError("denominator vanishes at t = 1")
    N = s.order
    step = 2 if integral else 1
    top = int(2 * d)
    if integral:
        top -= top % 2
    exps = list(range(-top, top + 1, step))
    if N + 1 < len(exps) + 2:
        raise Ambiguous(f"order {N} too low to pin {len(exps)} unknowns with a consistency margin")
    target = s * laurent_to_taylor(denom, N)
    cols = [laurent_to_taylor(LaurentPoly({e: 1}), N).coeffs for e in exps]
    A = [[col[m] for col in cols] for m in range(N + 1)]
    try:
        x = solve_exact(A, target.coeffs)
    except Inconsistent as exc:
        raise NoSolution(str(exc)) from None
    except Singular as exc:
        raise Ambiguous(str(exc)) from None
    return LaurentPoly(dict(zip(exps, x)), denom.var)
