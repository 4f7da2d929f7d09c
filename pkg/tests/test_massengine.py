"""Mass formula engine: factored mass, two-place normal form, class numbers."""

from fractions import Fraction

import pytest

from massform.csa import RamificationData, RamifiedPlace, parse_shorthand
from massform.errors import (
    DefiniteError,
    InvalidRamificationError,
    NoSuchPlaceError,
    NotDefiniteError,
)
from massform.funcfield import FunctionFieldData
from massform.massengine import (
    drinfeld_mass,
    indefinite_class_number,
    mass,
    mass_report_to_json_dict,
)
from massform.algebra import PolyQ

K2 = FunctionFieldData.rational(2)
K2_G1 = FunctionFieldData(q=2, genus=1, l_poly=PolyQ((1, 1, 2)), deg_inf=1)


def test_mass_frozen_rank_two():
    report = mass(parse_shorthand("inf:1/2,1:1/2", K2, rank=2))
    assert report.mass == Fraction(1, 3)
    assert report.class_number_factor == 1
    assert report.zeta_factors == (Fraction(1, 3),)
    assert report.lambda_factors == (("inf:1/2", 1), ("1:1/2", 1))
    assert report.definite and report.drinfeld_type


def test_mass_frozen_rank_three():
    report = mass(parse_shorthand("inf:-1/3,1:1/3", K2, rank=3))
    assert report.mass == Fraction(1, 7)
    assert report.zeta_factors == (Fraction(1, 3), Fraction(1, 21))
    assert report.lambda_factors == (("inf:-1/3", 3), ("1:1/3", 3))


def test_mass_frozen_genus_one():
    report = mass(parse_shorthand("inf:1/2,1:1/2", K2_G1, rank=2))
    assert report.mass == Fraction(44, 3)
    assert report.class_number_factor == 4
    assert report.zeta_factors == (Fraction(11, 3),)


def test_mass_rank_one_degenerate():
    report = mass(RamificationData(field=K2_G1, rank=1, places=()))
    assert report.mass == 4               # h(A)/(q-1) alone
    assert report.zeta_factors == ()
    assert report.lambda_factors == ()


def test_mass_rejects_indefinite_and_invalid():
    indefinite = parse_shorthand("1:1/2,1:-1/2", K2, rank=2)
    with pytest.raises(NotDefiniteError):
        mass(indefinite)
    with pytest.raises(InvalidRamificationError):
        mass(parse_shorthand("inf:1/2", K2, rank=2))


def test_mass_report_recomposition():
    for text, rank, field in [
        ("inf:1/2,1:1/2", 2, K2),
        ("inf:-1/3,1:1/3", 3, K2),
        ("inf:1/4,2:1/4,1:1/2", 4, K2),
        ("inf:1/2,1:1/2", 2, K2_G1),
    ]:
        report = mass(parse_shorthand(text, field, rank))
        assert report.recomposed() == report.mass
        assert report.mass > 0


def test_drinfeld_mass_frozen_examples():
    assert drinfeld_mass(K2, 2, 1) == Fraction(1, 3)
    assert drinfeld_mass(K2, 2, 2) == 1
    assert drinfeld_mass(K2, 2, 3) == Fraction(7, 3)
    assert drinfeld_mass(FunctionFieldData.rational(3), 2, 1) == Fraction(1, 8)


def test_drinfeld_mass_equals_factored_mass():
    for q in [2, 3, 4]:
        field = FunctionFieldData.rational(q)
        for r in [2, 3, 4]:
            for deg_p in [1, 2, 3]:
                data = RamificationData(
                    field=field,
                    rank=r,
                    places=(
                        RamifiedPlace(1, -1, r, is_infinity=True),
                        RamifiedPlace(deg_p, 1, r),
                    ),
                )
                assert mass(data).mass == drinfeld_mass(field, r, deg_p), (q, r, deg_p)


def test_drinfeld_mass_missing_place():
    with pytest.raises(NoSuchPlaceError):
        drinfeld_mass(K2_G1, 2, 3)        # genus-1 field: no degree-3 places
    with pytest.raises(ValueError):
        drinfeld_mass(K2, 1, 1)


def test_indefinite_class_number():
    indefinite = parse_shorthand("1:1/2,1:-1/2", K2, rank=2)
    assert indefinite_class_number(indefinite) == 1
    genus1 = parse_shorthand("1:1/2,1:-1/2", K2_G1, rank=2)
    assert indefinite_class_number(genus1) == 4
    with pytest.raises(DefiniteError):
        indefinite_class_number(parse_shorthand("inf:1/2,1:1/2", K2, rank=2))


def test_indefinite_class_number_with_split_infinity_rank_four():
    data = parse_shorthand("inf:1/2,1:1/4,1:1/4", K2, rank=4)
    assert indefinite_class_number(data) == 1


def test_mass_report_json_shape():
    report = mass(parse_shorthand("inf:-1/3,1:1/3", K2, rank=3))
    obj = mass_report_to_json_dict(report)
    assert obj["mass"] == "1/7"
    assert obj["zeta_factors"] == ["1/3", "1/21"]
    assert obj["lambda_factors"][0] == {"place": "inf:-1/3", "lambda": "3"}
    assert obj["definite"] is True and obj["drinfeld_type"] is True
