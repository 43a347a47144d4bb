"""Alexander polynomials from cokernel dimensions:
reduced = prod_k Delta_k^{l_k}, full = (t - 1)^{r-1} * reduced."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

# 2 cos(2 pi k / d) for the denominators where it is an integer
_TRACE = {1: 2, 2: -2, 3: -1, 4: 0, 6: 1}


@dataclass(frozen=True)
class QuadraticFactor:
    """Delta_k(t) = (t - e^{2 pi i k/d})(t - e^{-2 pi i k/d}).

    Stored with k <= d - k, since Delta_k = Delta_{d-k}.
    """

    k: int
    d: int

    def __post_init__(self):
        if self.d - self.k < self.k:
            object.__setattr__(self, "k", self.d - self.k)

    @property
    def order(self) -> int:
        """Denominator of k/d in lowest terms."""
        return Fraction(self.k, self.d).denominator

    @property
    def is_rational(self) -> bool:
        return self.order in _TRACE

    @property
    def coefficients(self) -> Optional[list]:
        """Ascending integer coefficients, or None when irrational."""
        if not self.is_rational:
            return None
        return [1, -_TRACE[self.order], 1]

    def __str__(self):
        c = self.coefficients
        if c is None:
            return f"Delta_{self.k}/{self.d}(t)"
        return format_polynomial(c)


def delta_factor(k: int, d: int) -> QuadraticFactor:
    if not (1 <= k < d):
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    return QuadraticFactor(k, d)


def poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_pow(a: list, n: int) -> list:
    out = [1]
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    """Human-readable form, highest degree first: ``t^2 - t + 1``."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mon) else ""
        body = body + ("*" if body and mon else "") + mon
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AlexanderPolynomial:
    d: int
    ells: tuple        # (l_1, ..., l_{d-1})
    r: int = 1

    def __post_init__(self):
        if len(self.ells) != self.d - 1:
            raise ValueError(f"need {self.d - 1} exponents, got {len(self.ells)}")
        if any(e < 0 for e in self.ells):
            raise ValueError("exponents must be nonnegative")
        if self.r < 1:
            raise ValueError("r must be at least 1")

    @property
    def degree(self) -> int:
        return 2 * sum(self.ells) + self.r - 1

    @property
    def reduced_degree(self) -> int:
        return 2 * sum(self.ells)

    def factor_list(self) -> list:
        """(factor, exponent) pairs of the reduced polynomial, one per k."""
        return [(delta_factor(k, self.d), e) for k, e in enumerate(self.ells, start=1) if e]

    def grouped_factors(self) -> list:
        """Irreducible-over-Q factors with exponents, in display order.

        Delta_k = Delta_{d-k}; (t + 1)^2 is written as a power of t + 1.
        """
        groups: dict = {}
        for k, e in enumerate(self.ells, start=1):
            if not e:
                continue
            f = delta_factor(k, self.d)
            if f.order == 2:
                key, mult = "t + 1", 2 * e
            else:
                key, mult = str(f), e
            groups[key] = groups.get(key, 0) + mult
        out = [("t - 1", self.r - 1)] if self.r > 1 else []
        order = {"t^2 - t + 1": 0, "t^2 + t + 1": 1, "t^2 + 1": 2, "t + 1": 3}
        out += sorted(groups.items(), key=lambda kv: (order.get(kv[0], 9), kv[0]))
        return out

    def is_rational(self) -> bool:
        return all(f.is_rational for f, _ in self.factor_list())

    def reduced_coefficients(self) -> list:
        """Ascending integer coefficients of the reduced polynomial."""
        out = [1]
        for f, e in self.factor_list():
            c = f.coefficients
            if c is None:
                raise ValueError(f"{f} has irrational coefficients; only the factor list is exact")
            out = poly_mul(out, poly_pow(c, e))
        return out

    def coefficients(self) -> list:
        return poly_mul(poly_pow([-1, 1], self.r - 1), self.reduced_coefficients())

    def reduced(self) -> "AlexanderPolynomial":
        return AlexanderPolynomial(self.d, self.ells, 1)

    def render(self) -> str:
        parts = []
        for name, e in self.grouped_factors():
            base = f"({name})" if " " in name else name
            parts.append(base if e == 1 else f"{base}^{e}")
        return " ".join(parts) if parts else "1"

    def __str__(self):
        return self.render()


def alexander_reduced(ells: Sequence[int], d: int = 6) -> AlexanderPolynomial:
    return AlexanderPolynomial(d, tuple(ells), 1)


def alexander_generic(reduced: AlexanderPolynomial, r: int) -> AlexanderPolynomial:
    return AlexanderPolynomial(reduced.d, reduced.ells, r)
