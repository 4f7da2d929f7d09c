"""Mass computations from the factored formula.

The mass of a definite algebra with ramification data (r, S) over the
base field is

    (h(A)/(q-1)) * prod_{i=1..r-1} zeta_K(-i) * prod_{v in S} lambda_v,

with lambda_v the local correction at each ramified place.  This module
never touches the maximal-order zeta function: the order-zeta module
recomputes the same number along a completely different path and the
test suite pins the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import rational_to_str
from .csa import (
    RamificationData,
    ensure_valid,
    is_definite,
    is_drinfeld_type,
    lambda_v,
)
from .errors import DefiniteError, NoSuchPlaceError, NotDefiniteError
from .funcfield import (
    FunctionFieldData,
    class_number_A,
    places_of_degree,
    zeta_special_value,
)


@dataclass(frozen=True)
class MassReport:
    """Mass together with every factor it was assembled from."""

    mass: Fraction
    class_number_factor: Fraction             # h(A)/(q-1)
    zeta_factors: tuple[Fraction, ...]        # zeta_K(-1) ... zeta_K(-(r-1))
    lambda_factors: tuple[tuple[str, int], ...]   # (place token, lambda_v)
    definite: bool
    drinfeld_type: bool

    def recomposed(self) -> Fraction:
        out = self.class_number_factor
        for z in self.zeta_factors:
            out *= z
        for _, lam in self.lambda_factors:
            out *= lam
        return out


def mass(data: RamificationData) -> MassReport:
    """Exact mass of valid definite ramification data."""
    ensure_valid(data)
    if not is_definite(data):
        raise NotDefiniteError(
            "mass is defined only for definite data (division algebra at infinity)"
        )
    field = data.field
    h_factor = Fraction(class_number_A(field), field.q - 1)
    zetas = tuple(
        zeta_special_value(field, i) for i in range(1, data.rank)
    )
    lambdas = tuple(
        (p.shorthand_token(), lambda_v(p, data.rank, field.q))
        for p in data.places
    )
    total = h_factor
    for z in zetas:
        total *= z
    for _, lam in lambdas:
        total *= lam
    assert total > 0
    return MassReport(
        mass=total,
        class_number_factor=h_factor,
        zeta_factors=zetas,
        lambda_factors=lambdas,
        definite=True,
        drinfeld_type=is_drinfeld_type(data),
    )


def drinfeld_mass(field: FunctionFieldData, r: int, p_degree: int) -> Fraction:
    """Mass in the two-place normal form: infinity gets invariant -1/r
    and a single finite place of the given degree gets 1/r.

    Computed as (h(A)/(q-1)) * prod_{i=1..r-1} zeta_K(-i) *
    (1 - N(inf)^i) * (1 - N(p)^i); the two extra factors strip the
    Euler factors at the two ramified places from each special value.
    Only the degree of the finite place enters.
    """
    if r < 2:
        raise ValueError("rank must be >= 2")
    if p_degree < 1 or places_of_degree(field, p_degree) == 0:
        raise NoSuchPlaceError(
            f"field has no place of degree {p_degree}"
        )
    n_inf = field.q ** field.deg_inf
    n_p = field.q ** p_degree
    total = Fraction(class_number_A(field), field.q - 1)
    for i in range(1, r):
        total *= zeta_special_value(field, i)
        total *= (1 - n_inf ** i) * (1 - n_p ** i)
    return total


def indefinite_class_number(data: RamificationData) -> int:
    """Class number when the algebra is indefinite: equals h(A)."""
    ensure_valid(data)
    if is_definite(data):
        raise DefiniteError(
            "definite data: the class number needs ideal enumeration, "
            "which is out of scope; only the mass is computed"
        )
    return class_number_A(data.field)


def mass_report_to_json_dict(report: MassReport) -> dict:
    return {
        "mass": rational_to_str(report.mass),
        "class_number_factor": rational_to_str(report.class_number_factor),
        "zeta_factors": [rational_to_str(z) for z in report.zeta_factors],
        "lambda_factors": [
            {"place": token, "lambda": str(lam)}
            for token, lam in report.lambda_factors
        ],
        "definite": report.definite,
        "drinfeld_type": report.drinfeld_type,
    }
