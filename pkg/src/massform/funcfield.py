"""The base global function field K with constant field F_q.

No curve model is stored.  Everything downstream needs only the count
generator P(T) (numerator of the zeta function), the constant field
size q, the genus, and the degree of the distinguished place at
infinity, so that quadruple IS the field here.  P is validated hard at
construction: degree 2g, constant term 1, the q-power coefficient
symmetry, and non-negative integral place counts up to a sanity bound.

Place counts come from P by Newton's identities on its inverse roots
followed by Mobius inversion; all of it runs in exact integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import PolyQ, RationalFunctionQ, ratfun
from .errors import InvalidFieldError
from .finitefield import factor_prime_power


def _mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


@dataclass(frozen=True)
class FunctionFieldData:
    """A global function field presented by its counting data.

    l_poly is P(T) with integer coefficients, lowest degree first;
    deg_inf is the degree of the chosen place at infinity.  sanity_bound
    controls how many place counts are certified non-negative at
    construction (the exact Weil root bound is irrational, so counting
    non-negativity is the acceptance proxy).
    """

    q: int
    genus: int
    l_poly: PolyQ
    deg_inf: int
    sanity_bound: int = field(default=8, compare=False)

    def __post_init__(self):
        problems = []
        try:
            factor_prime_power(self.q)
        except ValueError:
            problems.append(f"q={self.q} is not a prime power")
        if self.genus < 0:
            problems.append("genus must be >= 0")
        if self.deg_inf < 1:
            problems.append("deg_inf must be >= 1")
        if any(c.denominator != 1 for c in self.l_poly.coeffs):
            problems.append("count polynomial must have integer coefficients")
        if problems:
            raise InvalidFieldError("; ".join(problems))

        p = self.l_poly
        g = self.genus
        if p.degree != 2 * g:
            problems.append(
                f"count polynomial degree {p.degree} does not match genus {g}"
            )
        if p.coefficient(0) != 1:
            problems.append("count polynomial must have constant term 1")
        if not problems:
            qf = Fraction(self.q)
            for i in range(2 * g + 1):
                if p.coefficient(2 * g - i) != qf ** (g - i) * p.coefficient(i):
                    problems.append(
                        f"coefficient symmetry fails at index {i}"
                    )
                    break
        if problems:
            raise InvalidFieldError("; ".join(problems))

        upto = max(self.sanity_bound, self.deg_inf)
        try:
            counts = self._place_counts(upto)
        except InvalidFieldError as exc:
            raise InvalidFieldError(f"place counts invalid: {exc}") from None
        if counts[self.deg_inf - 1] < 1:
            raise InvalidFieldError(
                f"no place of degree {self.deg_inf} exists (b_{self.deg_inf} = 0)"
            )

    @staticmethod
    def rational(q: int, deg_inf: int = 1) -> "FunctionFieldData":
        """The rational function field over F_q (genus 0, P = 1)."""
        return FunctionFieldData(q=q, genus=0, l_poly=PolyQ.one(), deg_inf=deg_inf)

    # -- counting -----------------------------------------------------------

    def point_counts(self, upto: int) -> list[int]:
        """N_1 .. N_upto: degree-m rational point counts over F_{q^m}.

        Newton's recursion on P's coefficients gives the power sums s_m
        of the inverse roots; N_m = q^m + 1 - s_m.
        """
        a = [int(self.l_poly.coefficient(k)) for k in range(2 * self.genus + 1)]
        deg = 2 * self.genus
        s: list[int] = [0]  # s[0] unused
        for m in range(1, upto + 1):
            acc = m * a[m] if m <= deg else 0
            for k in range(1, min(m - 1, deg) + 1):
                acc += a[k] * s[m - k]
            s.append(-acc)
        return [self.q ** m + 1 - s[m] for m in range(1, upto + 1)]

    def _place_counts(self, upto: int) -> list[int]:
        """b_1 .. b_upto with validation (non-negative integers)."""
        n_counts = self.point_counts(upto)
        out = []
        for n in range(1, upto + 1):
            total = sum(
                _mobius(n // d) * n_counts[d - 1]
                for d in range(1, n + 1)
                if n % d == 0
            )
            if total % n != 0:
                raise InvalidFieldError(
                    f"degree-{n} place count is not integral"
                )
            b = total // n
            if b < 0:
                raise InvalidFieldError(f"degree-{n} place count is negative")
            out.append(b)
        return out


def zeta_K(data: FunctionFieldData) -> RationalFunctionQ:
    """The field zeta function in u = q**(-s): P(u)/((1-u)(1-qu))."""
    den = PolyQ.one_minus(1, 1) * PolyQ.one_minus(data.q, 1)
    return ratfun(data.l_poly, den)


def zeta_special_value(data: FunctionFieldData, i: int) -> Fraction:
    """zeta_K at s = -i, i.e. at u = q**i: P(q^i)/((1-q^i)(1-q^{i+1}))."""
    if i < 1:
        raise ValueError("special values are taken at i >= 1")
    qi = Fraction(data.q) ** i
    return data.l_poly.eval(qi) / ((1 - qi) * (1 - qi * data.q))


def class_number_A(data: FunctionFieldData) -> int:
    """Class number of the ring of functions regular away from infinity:
    deg_inf * P(1)."""
    p1 = data.l_poly.eval(1)
    if p1 <= 0 or p1.denominator != 1:
        raise InvalidFieldError(f"P(1) = {p1} is not a positive integer")
    return data.deg_inf * int(p1)


def places_of_degree(data: FunctionFieldData, n: int) -> int:
    """Number of places of K of degree exactly n."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return data._place_counts(n)[n - 1]


def zeta_A(data: FunctionFieldData) -> RationalFunctionQ:
    """Zeta with the infinity factor removed:
    (1 - u^{deg_inf}) * P(u) / ((1-u)(1-qu)); regular at u = 1."""
    num = PolyQ.one_minus(1, data.deg_inf) * data.l_poly
    den = PolyQ.one_minus(1, 1) * PolyQ.one_minus(data.q, 1)
    out = ratfun(num, den)
    assert out.is_regular_at(1)
    return out


# -- JSON shape -------------------------------------------------------------

def field_to_json_dict(data: FunctionFieldData) -> dict:
    return {
        "q": data.q,
        "genus": data.genus,
        "l_poly": [int(c) for c in data.l_poly.coeffs],
        "deg_inf": data.deg_inf,
    }


def field_from_json_dict(obj: dict) -> FunctionFieldData:
    try:
        q = int(obj["q"])
        genus = int(obj["genus"])
        l_poly = [int(c) for c in obj["l_poly"]]
        deg_inf = int(obj["deg_inf"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidFieldError(f"malformed field object: {exc}") from None
    return FunctionFieldData(
        q=q, genus=genus, l_poly=PolyQ(l_poly), deg_inf=deg_inf
    )
