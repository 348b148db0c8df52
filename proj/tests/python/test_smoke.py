import pytest

import toptw

TINY = """TINY

VEHICLE
NUMBER     CAPACITY
  25         200

CUSTOMER
CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME

    0      40         50          0          0       1236          0
    1      45         68         10        912        967         90
    2      45         70         30        825        870         90
    3      42         66         10         65        146         90
    4      42         68         10        727        782         90
    5      42         65         10         15         67         90
    6      40         69         20        621        702         90
"""


@pytest.fixture
def instance():
    return toptw.parse_solomon(TINY)


def test_parse(instance):
    assert instance.name == "TINY"
    assert instance.customer_count == 6
    assert len(instance) == 7
    assert instance.node(0).prize == 0
    assert instance.node(0).window_close == instance.horizon
    assert toptw.parse_solomon(TINY, 3).customer_count == 3


def test_parse_errors():
    with pytest.raises(toptw.ParseError, match="VEHICLE"):
        toptw.parse_solomon("NAME\nCUSTOMER\n")
    with pytest.raises(toptw.BoundsError):
        toptw.parse_solomon(TINY, 7)
    with pytest.raises(ValueError):
        toptw.parse_solomon(TINY, 0)


def test_round_trip(instance):
    assert toptw.parse_solomon(toptw.write_solomon(instance)) == instance


def test_solve_matches_oracle(instance):
    params = toptw.AcsParams()
    params.m = 2
    params.time_limit = 10.0
    params.max_generations = 50
    result = toptw.solve(instance, params)
    exact = toptw.brute_force(instance, 2)
    assert result.report.prize == exact.optimal_prize
    assert result.routes.total_prize == result.report.prize
    assert len(result.routes.routes) == 2


def test_solution_validates(instance):
    params = toptw.AcsParams()
    params.m = 2
    params.max_generations = 10
    result = toptw.solve(instance, params)
    text = toptw.write_solution(instance, result.routes)
    check = toptw.validate_solution(instance, text, 2)
    assert check.ok, check.message
    assert check.prize == result.report.prize
    bad = toptw.validate_solution(instance, "5\n5\n")
    assert not bad
    assert "disjointness" in bad.message


def test_seed_determinism(instance):
    params = toptw.AcsParams()
    params.m = 1
    params.seed = 42
    params.max_generations = 5
    a = toptw.solve(instance, params)
    b = toptw.solve(instance, params)
    assert a.tour == b.tour
    assert a.report.prize == b.report.prize


def test_bad_parameters(instance):
    params = toptw.AcsParams()
    params.time_limit = 0
    with pytest.raises(toptw.ConfigError):
        toptw.solve(instance, params)
    with pytest.raises(toptw.ConfigError):
        toptw.brute_force(instance, 0)
