"""Eventually-polynomial integer functions: exact fitting in the signed
binomial basis, postulation detection, and series numerators.

A fitted function H of degree D is stored as coefficients (a_0, ..., a_D)
with H(n) = sum_i (-1)^i a_i binom(n + D - i, D - i) for n >= postulation.
The zero function carries degree None (the "-infinity" marker).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .field import QQ
from .linalg import Matrix, solve


class FitError(ValueError):
    pass


def binom(n: int, k: int) -> int:
    """Series-expansion binomial: zero on negative arguments."""
    if k < 0 or n < 0:
        return 0
    return comb(n, k)


def binom_poly(t, k: int):
    """binom(t, k) as a polynomial: falling factorial over k!, any integer t."""
    num = 1
    for s in range(k):
        num = num * (t - s)
    return Fraction(num, _factorial(k))


def _factorial(k: int) -> int:
    out = 1
    for s in range(2, k + 1):
        out *= s
    return out


def _as_int(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class NumericalFunction:
    """Value table plus its terminal polynomial in the signed binomial basis."""

    __slots__ = ("values", "degree", "coefficients", "postulation", "window")

    def __init__(self, values, degree, coefficients, postulation, window):
        self.values = tuple(values)
        self.degree = degree  # None marks the zero function
        self.coefficients = tuple(coefficients)
        self.postulation = postulation
        self.window = window

    @property
    def is_zero(self) -> bool:
        return self.degree is None

    def poly_value(self, n: int):
        if self.degree is None:
            return 0
        D = self.degree
        s = Fraction(0)
        for i, a in enumerate(self.coefficients):
            s += (-1) ** i * a * binom_poly(n + D - i, D - i)
        return _as_int(s)

    def coefficients_at_degree(self, D: int):
        """Re-expand the fitted polynomial in the degree-D signed basis
        (leading entries zero when the true degree is smaller)."""
        if self.degree is not None and D < self.degree:
            raise FitError("cannot re-expand at a smaller degree")
        vals = [Fraction(self.poly_value(n)) for n in range(D + 1)]
        return _binomial_coefficients(vals, D)

    def __repr__(self):
        if self.is_zero:
            return "NumericalFunction(0)"
        return (f"NumericalFunction(deg={self.degree}, c={self.coefficients}, "
                f"postulation={self.postulation})")


def _binomial_coefficients(window_values, D: int):
    """Solve for (a_0..a_D) from the polynomial's values at 0..D."""
    rows = [[Fraction((-1) ** i * binom(t + D - i, D - i)) for i in range(D + 1)]
            for t in range(D + 1)]
    sol = solve(Matrix(QQ, rows), [Fraction(v) for v in window_values])
    if sol is None:
        raise FitError("binomial basis solve failed")
    return tuple(_as_int(a) for a in sol)


def _interpolate(points):
    """Newton interpolation through (n, H(n)) for consecutive n; returns a
    callable exact evaluator and the true degree of the interpolant."""
    n0 = points[0][0]
    ys = [Fraction(y) for _, y in points]
    # forward difference table at the base point
    diffs = [ys[0]]
    row = ys
    while len(row) > 1:
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        diffs.append(row[0])
    while len(diffs) > 1 and diffs[-1] == 0:
        diffs.pop()
    degree = len(diffs) - 1
    if len(diffs) == 1 and diffs[0] == 0:
        degree = None

    def evaluate(n: int):
        acc = Fraction(0)
        for k, d in enumerate(diffs):
            acc += d * binom_poly(n - n0, k)
        return acc

    return evaluate, degree


def fit_numerical(values, d_max: int, window: int | None = None) -> NumericalFunction:
    """Least-degree polynomial matching a terminal window of the value table.

    The window defaults to d_max + 2 exact matches; the postulation index is
    the least n0 from which the fit agrees with every tabulated value.
    Raises FitError("postulation not reached") when the tail never stabilizes.
    """
    values = list(values)
    window = window if window is not None else d_max + 2
    need = max(window, d_max + 2)
    if len(values) < need:
        raise FitError(f"need at least {need} values, got {len(values)}")
    N = len(values) - 1
    base = N - d_max
    evaluate, degree = _interpolate([(n, values[n]) for n in range(base, N + 1)])
    post = N + 1
    for n in range(N, -1, -1):
        if evaluate(n) == values[n]:
            post = n
        else:
            break
    if N - post + 1 < window:
        raise FitError("postulation not reached")
    if degree is None:
        return NumericalFunction(values, None, (), post, window)
    if degree > d_max:
        raise FitError("window interpolant exceeds the degree bound")
    coeffs = _binomial_coefficients([evaluate(t) for t in range(degree + 1)], degree)
    return NumericalFunction(values, degree, coeffs, post, window)


def fit_value_table(value_fn, d_max: int, window: int | None = None,
                    nmax_cap: int | None = None) -> NumericalFunction:
    """Fit n -> value_fn(n), extending the table until the tail stabilizes
    or the cap (default 4 d_max + 16) is reached."""
    window = window if window is not None else d_max + 2
    cap = nmax_cap if nmax_cap is not None else 4 * d_max + 16
    N = d_max + window + 1
    values = [value_fn(n) for n in range(N + 1)]
    while True:
        try:
            return fit_numerical(values, d_max, window)
        except FitError:
            if len(values) > cap:
                raise FitError("postulation not reached")
            start = len(values)
            values.extend(value_fn(n) for n in range(start, min(start + window, cap + 2)))


class SeriesNumerator:
    """f with sum_n H(n) t^n = f(t) / (1-t)^denom_exp, coefficients exact."""

    __slots__ = ("coeffs", "denom_exp")

    def __init__(self, coeffs, denom_exp: int):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.denom_exp = denom_exp

    def at_one(self):
        return sum(self.coeffs)

    def derivative_at_one(self):
        return sum(j * c for j, c in enumerate(self.coeffs))

    def expand(self, N: int):
        """Series coefficients H(0..N) obtained by multiplying out."""
        e = self.denom_exp
        out = []
        for n in range(N + 1):
            s = 0
            for j, c in enumerate(self.coeffs):
                if j > n:
                    break
                s += c * binom(n - j + e - 1, e - 1)
            out.append(s)
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"SeriesNumerator({list(self.coeffs)}, (1-t)^-{self.denom_exp})"


def numerator_from_values(values, denom_exp: int, postulation: int) -> SeriesNumerator:
    """Exact numerator of sum H(n) t^n over (1-t)^denom_exp.

    Needs the table to extend at least denom_exp past the postulation; the
    tail vanishing there is verified, not assumed.
    """
    e = denom_exp
    top = postulation + e - 1
    if len(values) <= top + 1:
        raise FitError("value table too short for the numerator")
    coeffs = []
    for j in range(top + 2):
        s = 0
        for k in range(min(j, e) + 1):
            s += (-1) ** k * binom(e, k) * values[j - k]
        coeffs.append(s)
    if coeffs[top + 1] != 0:
        raise FitError("numerator tail did not vanish at the declared postulation")
    return SeriesNumerator(coeffs[:top + 1], e)
