import pytest

from adestringy.catalog import (
    Diagnostic,
    Divisor,
    ResolutionError,
    SingularitySpec,
    StratifiedResolution,
    Stratum,
    build_resolution,
    discrepancy_of,
    line_blowup_bases,
    resolution_from_json,
    validate_resolution,
)
from adestringy.exactalg import ZERO, W
from adestringy.quadrics import a, b, c

from conftest import GRID


# -- specs -----------------------------------------------------------------

@pytest.mark.parametrize("family, n, m", [("A", 0, 4), ("D", 3, 4), ("E6", 7, 4), ("A", 2, 2), ("F", 4, 4)])
def test_invalid_specs(family, n, m):
    with pytest.raises(ValueError):
        SingularitySpec(family, n, m)


def test_spec_tokens():
    assert SingularitySpec.parse("D:4:m=4") == SingularitySpec("D", 4, 4)
    assert SingularitySpec.parse("E7:m=5") == SingularitySpec("E7", 7, 5)
    assert SingularitySpec("A", 3, 6).token() == "A:3:m=6"
    with pytest.raises(ValueError):
        SingularitySpec.parse("D4 m=4")


def test_k_and_dim():
    assert SingularitySpec("A", 5, 4).k == 3
    assert SingularitySpec("A", 6, 4).k == 3
    assert SingularitySpec("D", 9, 4).k == 4
    assert SingularitySpec.of("E8", m=6).k is None
    assert SingularitySpec("A", 1, 5).dim == 4


# -- discrepancies ---------------------------------------------------------

@pytest.mark.parametrize("m", range(3, 11))
@pytest.mark.parametrize("k", range(2, 7))
def test_d_even_discrepancies(k, m):
    spec = SingularitySpec("D", 2 * k, m)
    for i in range(1, k):
        assert discrepancy_of(spec, f"E{i}") == 2 * i * (m - 3)
    for i in range(k - 1):
        assert discrepancy_of(spec, f"G{i + 1}") == (2 * i + 3) * (m - 3)


@pytest.mark.parametrize("n", range(2, 21, 2))
def test_a_even_last_divisor_at_m4(n):
    spec = SingularitySpec("A", n, 4)
    assert discrepancy_of(spec, f"D{spec.k + 1}") == n + 2


@pytest.mark.parametrize("m", range(3, 11))
def test_e8_f2(m):
    assert discrepancy_of(SingularitySpec.of("E8", m=m), "F_2") == 8 * (m - 3)


def test_unknown_label():
    with pytest.raises(KeyError):
        discrepancy_of(SingularitySpec("A", 3, 5), "E1")


def _expected_divisors(spec):
    fixed = {"E6": 5, "E7": 10, "E8": 12}
    if spec.family in fixed:
        return fixed[spec.family]
    k = spec.k
    return k + (spec.n % 2 == 0) if spec.family == "A" else 3 * k - 1


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_resolution_invariants(spec):
    res = build_resolution(spec)
    assert len(res.divisors) == _expected_divisors(spec)
    assert validate_resolution(res, max_codim=3) == []
    M = spec.m - 3
    last = f"D{spec.k + 1}" if spec.family == "A" and spec.n % 2 == 0 else None
    for dv in res.divisors:
        assert dv.discrepancy >= 0
        assert dv.discrepancy == discrepancy_of(spec, dv.label)
        if M:
            assert dv.discrepancy % M == (1 % M if dv.label == last else 0), dv
    if spec.m == 3:
        bases = {res.by_label(x).id for x in line_blowup_bases(spec)}
        for s in res.strata:
            if bases & set(s.divisor_ids):
                assert s.hodge == ZERO, res.labels(s)


def test_e8_counts():
    res = build_resolution(SingularitySpec.of("E8", m=6))
    assert len(res.divisors) == 12
    assert len(res.strata) == 47
    sizes = [len(s.divisor_ids) for s in res.strata]
    assert (sizes.count(1), sizes.count(2), sizes.count(3)) == (12, 23, 12)


# -- known stratum entries -------------------------------------------------

def test_a1_single_stratum():
    res = build_resolution(SingularitySpec("A", 1, 5))
    assert [dv.discrepancy for dv in res.divisors] == [2]
    assert [(res.labels(s), s.hodge) for s in res.strata] == [(("D1",), c(5))]


@pytest.mark.parametrize("m", range(5, 11))
@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_d_even_first_divisor(n, m):
    res = build_resolution(SingularitySpec("D", n, m))
    assert res.stratum("D1").hodge == a(m - 2) - (W + 1)


@pytest.mark.parametrize("m", range(5, 11))
def test_e6_triple_point(m):
    res = build_resolution(SingularitySpec.of("E6", m=m))
    assert res.stratum("D1", "D4", "D5").hodge == c(m - 2)


@pytest.mark.parametrize("m", range(5, 11))
@pytest.mark.parametrize("k", range(3, 8))
def test_a_odd_middle_divisors(k, m):
    res = build_resolution(SingularitySpec("A", 2 * k - 1, m))
    for i in range(2, k):
        assert res.stratum(f"D{i}").hodge == b(m - 1) - c(m - 1) - 1


# -- validation and ingestion ----------------------------------------------

def _codes(diags):
    return {d.code for d in diags}


def test_dangling_and_duplicate_strata():
    res = StratifiedResolution(
        (Divisor(0, "D1", 1),),
        (Stratum((0,), W), Stratum((0,), W + 1), Stratum((0, 3), W)),
    )
    diags = validate_resolution(res)
    assert {"duplicate-stratum", "dangling-id"} <= _codes(diags)
    assert all(isinstance(d, Diagnostic) and d.path.startswith("/strata/") for d in diags)


def test_codim_bound():
    dvs = tuple(Divisor(i, f"D{i + 1}", 0) for i in range(4))
    res = StratifiedResolution(dvs, (Stratum((0, 1, 2, 3), W),))
    assert _codes(validate_resolution(res, max_codim=3)) == {"codim"}


@pytest.mark.parametrize("spec", [SingularitySpec("A", 1, 5), SingularitySpec("D", 7, 6),
                                  SingularitySpec.of("E7", m=4)], ids=str)
def test_json_round_trip(spec):
    res = build_resolution(spec)
    again = resolution_from_json(res.to_json())
    assert again == res


def test_ingest_rejects_negative_discrepancy():
    data = {"divisors": [{"label": "D1", "discrepancy": -1}],
            "strata": [{"divisors": ["D1"], "hodge": ["1"]}]}
    with pytest.raises(ResolutionError) as info:
        resolution_from_json(data)
    assert [(d.code, d.path) for d in info.value.diagnostics] == [("bad-discrepancy", "/divisors/0/discrepancy")]


def test_ingest_rejects_duplicate_stratum():
    data = {"divisors": [{"label": "D1", "discrepancy": 2}],
            "strata": [{"divisors": ["D1"], "hodge": ["1"]}, {"divisors": ["D1"], "hodge": ["0", "1"]}]}
    with pytest.raises(ResolutionError) as info:
        resolution_from_json(data)
    assert [(d.code, d.path) for d in info.value.diagnostics] == [("duplicate-stratum", "/strata/1")]


@pytest.mark.parametrize("data, path", [
    ([], ""),
    ({"divisors": {}, "strata": []}, "/divisors"),
    ({"divisors": [], "strata": [], "extra": 1}, "/extra"),
    ({"divisors": [{"label": "", "discrepancy": 0}], "strata": []}, "/divisors/0/label"),
    ({"divisors": [{"label": "D1", "discrepancy": 0}], "strata": [{"divisors": ["X"], "hodge": ["1"]}]},
     "/strata/0/divisors/0"),
    ({"divisors": [{"label": "D1", "discrepancy": 0}], "strata": [{"divisors": ["D1"], "hodge": "1"}]},
     "/strata/0/hodge"),
])
def test_ingest_schema_paths(data, path):
    with pytest.raises(ResolutionError) as info:
        resolution_from_json(data)
    assert path in [d.path for d in info.value.diagnostics]
