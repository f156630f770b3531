import time

import pytest

from powergraphs.catalog import (
    CatalogEntry,
    build_catalog,
    enumerate_specs,
    find_powergraph_twins,
    non_isomorphism_certificate,
    normalize_spec,
    run_theorem_suite,
    specs_of_order,
)
from powergraphs.errors import GroupOrderError
from powergraphs.groups import parse_group_spec


def _names(specs):
    return [str(s) for s in specs]


@pytest.fixture(scope="module")
def catalog_27():
    return build_catalog(27)


# ---------- enumeration ----------

def test_enumeration_up_to_four():
    assert _names(enumerate_specs(4)) == ["C1", "C2", "C3", "C4", "C2xC2"]
    assert _names(enumerate_specs(1)) == ["C1"]


def test_enumeration_up_to_eight():
    names = _names(enumerate_specs(8))
    assert len(names) == 13
    for expected in ["C6", "C8", "D8", "Q8", "C2xC4", "C2xC2xC2"]:
        assert expected in names
    assert "C2xC3" not in names


def test_specs_of_order_16():
    assert _names(specs_of_order(16)) == [
        "C16", "D16", "Q16",
        "C2xC8", "C2xD8", "C2xQ8", "C4xC4",
        "C2xC2xC4",
        "C2xC2xC2xC2",
    ]


def test_specs_of_order_27():
    assert _names(specs_of_order(27)) == ["C27", "H3", "C3xC9", "C3xC3xC3"]


def test_specs_of_mixed_order():
    assert _names(specs_of_order(24)) == [
        "C24", "C2xC12", "C3xD8", "C3xQ8", "C2xC2xC6",
    ]
    assert _names(specs_of_order(7)) == ["C7"]
    with pytest.raises(ValueError):
        specs_of_order(0)


@pytest.mark.parametrize("text, expected", [
    ("C6xC2", "C2xC6"),
    ("C2xC3", "C6"),
    ("D4", "C2xC2"),
    ("C2xC3xC2", "C2xC6"),
    ("H3xC2xD8", "C2xD8xH3"),
    ("Q8xC1", "Q8"),
    ("C1", "C1"),
    ("C4xC6xC9", "C6xC36"),
])
def test_normal_form(text, expected):
    assert str(normalize_spec(parse_group_spec(text))) == expected


def test_enumerated_specs_are_normal():
    for spec in enumerate_specs(32):
        assert normalize_spec(spec) == spec


def test_enumeration_is_deterministic():
    assert enumerate_specs(32) == enumerate_specs(32)


# ---------- entries ----------

def test_entry_fields():
    entry = CatalogEntry.build(parse_group_spec("Q8"))
    assert entry.name == "Q8"
    assert entry.order == 8
    assert entry.is_p_group and not entry.is_cyclic
    assert entry.power_graph.edge_count() == 16
    assert entry.directed.arc_count() == 19
    assert entry.order_census == (1, 2, 4, 4, 4, 4, 4, 4)
    assert entry.is_consistent()


def test_entry_flags():
    assert CatalogEntry.build(parse_group_spec("C1")).is_cyclic
    assert not CatalogEntry.build(parse_group_spec("C1")).is_p_group
    assert not CatalogEntry.build(parse_group_spec("C2xC6")).is_p_group


def test_catalog_entries_rebuild(catalog_27):
    assert [e.name for e in catalog_27] == _names(enumerate_specs(27))
    assert all(e.is_consistent() for e in catalog_27)


def test_catalog_bounds():
    with pytest.raises(GroupOrderError):
        build_catalog(10, limit=8)
    with pytest.raises(ValueError):
        build_catalog(0)


# ---------- sweeps ----------

def test_suite_up_to_eight():
    catalog = build_catalog(8)
    report = run_theorem_suite(catalog)
    assert len(catalog) == 13
    assert report.pairs_tested == 78
    assert report.ok
    assert report.pg_isomorphic_pairs == []
    assert report.twins == []


def test_heisenberg_twin(catalog_27):
    report = run_theorem_suite(catalog_27)
    assert report.ok
    assert len(report.twins) == 1
    twin = report.twins[0]
    assert set(twin.pair) == {"H3", "C3xC3xC3"}
    assert twin.certificate == "only C3xC3xC3 is abelian"
    assert report.uncertified == []
    assert [set(p) for p in find_powergraph_twins(catalog_27)] == [{"H3", "C3xC3xC3"}]


def test_certificates():
    q8 = CatalogEntry.build(parse_group_spec("Q8"))
    d8 = CatalogEntry.build(parse_group_spec("D8"))
    assert non_isomorphism_certificate(q8, d8) == "element-order multisets differ"
    assert non_isomorphism_certificate(q8, q8) is None


def test_small_catalogs():
    single = build_catalog(1)
    assert run_theorem_suite(single).pairs_tested == 0
    assert find_powergraph_twins(build_catalog(2)) == []


def test_sweep_up_to_32():
    started = time.perf_counter()
    report = run_theorem_suite(build_catalog(32))
    assert report.violations == []
    assert {frozenset(t.pair) for t in report.twins} == {frozenset({"H3", "C3xC3xC3"})}
    assert report.elapsed < 60
    assert time.perf_counter() - started < 60
