import numpy as np
import pytest

from powergraphs.errors import (
    AssociativityError,
    CayleyTableError,
    EntryRangeError,
    GroupOrderError,
    IdentityLawError,
    MissingInverseError,
    NonSquareTableError,
    SpecRangeError,
    SpecSyntaxError,
)
from powergraphs.groups import (
    Cyclic,
    Dihedral,
    GroupSpec,
    Heisenberg,
    Quaternion,
    cyclic_subgroup,
    direct_product,
    element_order,
    from_cayley_table,
    is_nilpotent,
    parse_group_spec,
    realize,
    validate,
)
from tests.helpers import find_element_of_order, s3_group


CATALOG_SAMPLE = ["C1", "C6", "C12", "C2xC2", "C2xC4", "Q8", "D8", "D16", "Q16", "H3", "C3xC3xC3",
                  "Q8xC3", "D8xC2", "C2xC2xC6", "H5"]


def _group(text):
    return realize(parse_group_spec(text))


# ---------- parsing ----------

def test_parse_single_atom():
    assert parse_group_spec("C12") == GroupSpec((Cyclic(12),))


def test_parse_product():
    spec = parse_group_spec("C2xC2xC3")
    assert spec.terms == (Cyclic(2), Cyclic(2), Cyclic(3))
    assert spec.order == 12
    assert str(spec) == "C2xC2xC3"


def test_parse_is_case_insensitive_on_letters():
    assert parse_group_spec("q8Xc3") == GroupSpec((Quaternion(8), Cyclic(3)))


@pytest.mark.parametrize("text", ["Q6", "Q4", "H2", "H9", "D3", "D2", "C0"])
def test_parse_range_errors_name_the_atom(text):
    with pytest.raises(SpecRangeError) as err:
        parse_group_spec(text)
    assert err.value.atom == text


@pytest.mark.parametrize("text, position", [("", 0), ("C12y", 3), ("C2xx", 3), ("Z4", 0), ("C2x", 3)])
def test_parse_syntax_errors_report_position(text, position):
    with pytest.raises(SpecSyntaxError) as err:
        parse_group_spec(text)
    assert err.value.position == position


def test_atom_orders():
    assert Heisenberg(5).order == 125
    assert Dihedral(16).order == 16
    assert Dihedral(4).is_abelian
    assert not Quaternion(8).is_abelian


# ---------- realize ----------

def test_realize_cyclic_table():
    G = _group("C6")
    i = np.arange(6)
    assert np.array_equal(G.table, (i[:, None] + i[None, :]) % 6)


def test_quaternion_has_one_involution():
    G = _group("Q8")
    assert G.order_census() == [1, 2, 4, 4, 4, 4, 4, 4]


def test_heisenberg_has_exponent_p():
    G = _group("H3")
    assert G.order == 27
    assert G.order_census() == [1] + [3] * 26
    assert not G.is_abelian


def test_dihedral_census():
    assert _group("D8").order_census() == [1, 2, 2, 2, 2, 2, 4, 4]


@pytest.mark.parametrize("text", CATALOG_SAMPLE)
def test_catalog_groups_validate(text):
    G = _group(text)
    validate(G)
    assert G.order == parse_group_spec(text).order


@pytest.mark.parametrize("text", CATALOG_SAMPLE)
def test_lagrange_and_cyclic_subgroup_sizes(text):
    G = _group(text)
    for x in range(G.order):
        o = element_order(G, x)
        assert G.order % o == 0
        assert len(cyclic_subgroup(G, x)) == o


@pytest.mark.parametrize("text", CATALOG_SAMPLE)
def test_catalog_groups_are_nilpotent(text):
    assert is_nilpotent(_group(text))


def test_power_and_inverse():
    G = _group("Q8xC3")
    for x in range(G.order):
        assert G.mul(G.inverse(x), x) == 0
        assert G.power(x, element_order(G, x)) == 0
        assert G.power(x, 5) == G.mul(G.power(x, 2), G.power(x, 3))


# ---------- Cayley tables ----------

def test_trivial_table():
    G = from_cayley_table(1, [[0]])
    assert G.order == 1
    assert element_order(G, 0) == 1


def test_s3_is_a_group_but_not_nilpotent():
    G = s3_group()
    assert G.order == 6
    assert not G.is_abelian
    assert not is_nilpotent(G)


def test_identity_law_violation():
    with pytest.raises(IdentityLawError):
        from_cayley_table(3, [[0, 2, 1], [1, 2, 0], [2, 0, 1]])


def test_non_square_table():
    with pytest.raises(NonSquareTableError):
        from_cayley_table(2, [[0, 1], [1]])


def test_entry_out_of_range():
    with pytest.raises(EntryRangeError):
        from_cayley_table(2, [[0, 1], [1, 5]])


def test_missing_inverse():
    with pytest.raises(MissingInverseError) as err:
        from_cayley_table(3, [[0, 1, 2], [1, 1, 1], [2, 1, 2]])
    assert err.value.element == 1


def test_associativity_violation_has_witness():
    table = [[0, 1, 2], [1, 0, 1], [2, 2, 0]]
    with pytest.raises(AssociativityError) as err:
        from_cayley_table(3, table)
    a, b, c = err.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_trust_skips_associativity():
    G = from_cayley_table(3, [[0, 1, 2], [1, 0, 1], [2, 2, 0]], trust=True)
    assert G.order == 3


def test_trusted_table_whose_powers_never_reach_the_identity():
    # 1*1 = 1, so 1, 1, 1, ... never returns to 0
    G = from_cayley_table(3, [[0, 1, 2], [1, 1, 0], [2, 0, 2]], trust=True)
    with pytest.raises(CayleyTableError, match="element 1"):
        G.orders
    with pytest.raises(CayleyTableError):
        from_cayley_table(3, [[0, 1, 2], [1, 1, 0], [2, 0, 2]])


def test_table_over_the_bound():
    n = 6
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    with pytest.raises(GroupOrderError):
        from_cayley_table(n, table, max_order=4)


# ---------- element arithmetic ----------

def test_element_orders():
    assert element_order(_group("C6"), 2) == 3
    Q8 = _group("Q8")
    assert element_order(Q8, find_element_of_order(Q8, 2)) == 2
    assert element_order(_group("D8"), 0) == 1


def test_cyclic_subgroups():
    C6 = _group("C6")
    assert cyclic_subgroup(C6, 2) == frozenset({0, 2, 4})
    assert cyclic_subgroup(C6, 1) == frozenset(range(6))
    H3 = _group("H3")
    assert all(len(cyclic_subgroup(H3, x)) == 3 for x in range(1, 27))


def test_nilpotency_examples():
    assert is_nilpotent(_group("C6"))
    assert is_nilpotent(_group("D8"))


# ---------- direct products ----------

def test_trivial_factor_keeps_the_table():
    G = _group("Q8")
    P = direct_product(_group("C1"), G)
    assert np.array_equal(P.table, G.table)


def test_klein_group():
    G = direct_product(_group("C2"), _group("C2"))
    assert G.order_census() == [1, 2, 2, 2]


def test_c2_times_c4_census():
    G = direct_product(_group("C2"), _group("C4"))
    assert G.is_abelian
    assert G.order_census() == [1, 2, 2, 2, 4, 4, 4, 4]


def test_direct_product_is_associative_on_censuses():
    A, B, C = _group("C2"), _group("Q8"), _group("C3")
    left = direct_product(direct_product(A, B), C)
    right = direct_product(A, direct_product(B, C))
    assert left.order_census() == right.order_census()


def test_direct_product_overflow_guard():
    with pytest.raises(GroupOrderError):
        direct_product(_group("C64"), _group("C64"), max_order=100)


def test_realize_labels_products():
    G = _group("C2xC3")
    assert G.name == "C2xC3"
    assert G.label(0) == "(0,0)"
    assert len(set(G.labels)) == 6
