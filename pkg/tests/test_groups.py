import numpy as np
import pytest

from commtrees import (
    GroupTable,
    Perm,
    center,
    centralizer,
    generate_group,
    is_ac_group,
    is_isomorphic_small,
    is_ti_subgroup,
    make_family,
    make_subgroup,
    profile,
    quotient,
    subgroup_closure,
    subgroup_table,
    sylow_subgroups,
)
from commtrees.errors import (
    BadParams,
    CarrierMismatch,
    InvalidGenerator,
    NotNormal,
    OrderCapExceeded,
    PDoesNotDivideOrder,
    TargetTooLarge,
)
from conftest import build


# ---------------------------------------------------------------- tables


def test_generate_group_s3_from_transpositions():
    G = generate_group([Perm((1, 0, 2)), Perm((0, 2, 1))], name="S3gen")
    assert G.order == 6
    assert G.name == "S3gen"
    assert G.labels[0] == Perm.identity(3)
    assert sorted(int(o) for o in G.element_orders()) == [1, 2, 2, 2, 3, 3]


def test_generate_group_numbering_reproducible():
    gens = [Perm((1, 2, 3, 0))]
    a = generate_group(gens)
    b = generate_group(gens)
    assert np.array_equal(a.table, b.table)
    assert a.labels == b.labels


def test_generate_group_errors():
    with pytest.raises(InvalidGenerator):
        generate_group([])
    with pytest.raises(InvalidGenerator):
        generate_group([7])
    with pytest.raises(CarrierMismatch):
        from commtrees import Mat, build_field

        generate_group([Perm((1, 0)), Mat.identity(build_field(2), 2)])
    with pytest.raises(OrderCapExceeded):
        generate_group([Perm(tuple(range(1, 12)) + (0,))], order_cap=8)


def test_table_validation_rejects_bad_identity():
    with pytest.raises(ValueError):
        GroupTable(np.array([[1, 0], [0, 1]]))


def test_table_validation_rejects_non_latin():
    with pytest.raises(ValueError):
        GroupTable(np.array([[0, 1], [1, 1]]))


def test_table_validation_rejects_non_associative():
    # a latin square with identity that fails associativity: order-5 loop
    tab = np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    with pytest.raises(ValueError, match="associative"):
        GroupTable(tab)


def test_labels_length_checked():
    with pytest.raises(ValueError):
        GroupTable(np.array([[0, 1], [1, 0]]), labels=("e",))


# ---------------------------------------------------------------- structure


def test_commute_matrix_and_center():
    S3 = build("S3")
    C = S3.commute_matrix()
    assert bool(C[0].all())
    assert (C == C.T).all()
    assert S3.center_indices() == (0,)
    assert not S3.is_abelian()
    assert build("Z6").is_abelian()


def test_center_sizes():
    assert len(build("Q8").center_indices()) == 2
    assert len(build("D12").center_indices()) == 2
    assert len(build("Heis3").center_indices()) == 3
    assert len(build("A5").center_indices()) == 1


def test_element_orders_cyclic():
    Z12 = build("Z12")
    orders = Z12.element_orders()
    assert orders[0] == 1
    for i in range(1, 12):
        assert orders[i] == 12 // np.gcd(i, 12)


def test_conjugacy_classes():
    S3 = build("S3")
    sizes = sorted(len(c) for c in S3.conjugacy_classes())
    assert sizes == [1, 2, 3]
    assert len(build("A5").conjugacy_classes()) == 5
    Z6 = build("Z6")
    assert all(len(c) == 1 for c in Z6.conjugacy_classes())
    # classes partition the group
    all_elems = sorted(x for c in S3.conjugacy_classes() for x in c)
    assert all_elems == list(range(6))


def test_centralizer_subgroups():
    S3 = build("S3")
    t = next(i for i, o in enumerate(S3.element_orders()) if o == 2)
    H = centralizer(S3, t)
    assert H.order == 2
    assert H.abelian
    Q8 = build("Q8")
    x = next(i for i, o in enumerate(Q8.element_orders()) if o == 4)
    assert centralizer(Q8, x).order == 4
    with pytest.raises(ValueError):
        centralizer(S3, 17)


def test_centralizer_indices_contains_element_and_center():
    G = build("D12")
    for x in range(G.order):
        cent = G.centralizer_indices(x)
        assert x in cent
        assert 0 in cent


# ---------------------------------------------------------------- subgroups


def test_make_subgroup_flags():
    A4 = build("A4")
    orders = A4.element_orders()
    v4 = [0] + [i for i in range(12) if orders[i] == 2]
    H = make_subgroup(A4, v4)
    assert H.order == 4
    assert H.abelian
    assert H.normal
    S3 = build("S3")
    t = next(i for i, o in enumerate(S3.element_orders()) if o == 2)
    K = make_subgroup(S3, [0, t])
    assert K.abelian
    assert not K.normal
    assert K.to_json() == {
        "elements": [0, t],
        "order": 2,
        "abelian": True,
        "normal": False,
    }


def test_make_subgroup_errors():
    S3 = build("S3")
    with pytest.raises(ValueError):
        make_subgroup(S3, [1, 2])
    with pytest.raises(ValueError):
        make_subgroup(S3, [0, 99])
    t1, t2 = [i for i, o in enumerate(S3.element_orders()) if o == 2][:2]
    with pytest.raises(ValueError):
        make_subgroup(S3, [0, t1, t2])


def test_subgroup_closure():
    S3 = build("S3")
    t1, t2 = [i for i, o in enumerate(S3.element_orders()) if o == 2][:2]
    assert subgroup_closure(S3, [t1]).order == 2
    assert subgroup_closure(S3, [t1, t2]).order == 6
    assert subgroup_closure(S3, []).order == 1


def test_subgroup_table_reindexes():
    A4 = build("A4")
    orders = A4.element_orders()
    v4 = [0] + [i for i in range(12) if orders[i] == 2]
    H = make_subgroup(A4, v4)
    T = subgroup_table(A4, H)
    assert T.order == 4
    assert is_isomorphic_small(T, "Z2xZ2")
    assert T.labels == tuple(sorted(v4))


def test_quotient_q8_center_is_klein():
    Q8 = build("Q8")
    Q = quotient(Q8, center(Q8))
    assert Q.order == 4
    assert is_isomorphic_small(Q, "Z2xZ2")
    assert Q.labels[0] == 0


def test_quotient_d12_center_is_s3():
    D12 = build("D12")
    Q = quotient(D12, center(D12))
    assert is_isomorphic_small(Q, "S3")


def test_quotient_requires_normal():
    S3 = build("S3")
    t = next(i for i, o in enumerate(S3.element_orders()) if o == 2)
    with pytest.raises(NotNormal):
        quotient(S3, [0, t])


def test_quotient_accepts_raw_element_list():
    Z12 = build("Z12")
    Q = quotient(Z12, [0, 6])
    assert Q.order == 6
    assert is_isomorphic_small(Q, "Z6")


# ---------------------------------------------------------------- predicates


def test_is_ac_group():
    for label in ("S3", "Q8", "D8", "D10", "D12", "A4", "A5", "Heis3", "GL2_3"):
        assert is_ac_group(build(label)), label
    assert not is_ac_group(build("S4"))
    assert is_ac_group(build("Z6"))


def test_ti_subgroups():
    A5 = build("A5")
    P5 = sylow_subgroups(A5, 5)[0]
    assert is_ti_subgroup(A5, P5)
    S4 = build("S4")
    P2 = sylow_subgroups(S4, 2)[0]
    assert not is_ti_subgroup(S4, P2)
    D10 = build("D10")
    K = sylow_subgroups(D10, 5)[0]
    assert is_ti_subgroup(D10, K)


def test_sylow_subgroups_counts():
    S4 = build("S4")
    assert len(sylow_subgroups(S4, 2)) == 3
    assert len(sylow_subgroups(S4, 3)) == 4
    A5 = build("A5")
    assert len(sylow_subgroups(A5, 5)) == 6
    A4 = build("A4")
    twos = sylow_subgroups(A4, 2)
    assert len(twos) == 1
    assert twos[0].normal
    for H in sylow_subgroups(S4, 2):
        assert H.order == 8


def test_sylow_errors():
    S4 = build("S4")
    with pytest.raises(BadParams):
        sylow_subgroups(S4, 4)
    with pytest.raises(PDoesNotDivideOrder):
        sylow_subgroups(S4, 5)


# ---------------------------------------------------------------- profiles


def test_profile_s3():
    p = profile(build("S3"))
    assert p.order == 6
    assert p.center_size == 1
    assert p.class_count == 3
    assert p.class_sizes == (1, 2, 3)
    assert p.element_order_spectrum == (1, 2, 3)
    assert p.max_spectrum == (2, 3)
    assert p.centralizer_count == 5
    assert p.is_ac


def test_profile_to_json_keys():
    data = profile(build("Q8")).to_json()
    assert data["order"] == 8
    assert data["center_size"] == 2
    assert data["class_count"] == 5
    assert data["class_sizes"] == [1, 2]
    assert data["is_ac"] is True


def test_profile_class_sizes_deduplicated():
    # distinct class sizes only, sorted ascending
    p = profile(build("A5"))
    assert p.class_sizes == (1, 12, 15, 20)
    assert p.class_count == 5


# ---------------------------------------------------------------- isomorphism


def test_is_isomorphic_small_positive():
    assert is_isomorphic_small(build("S3"), "S3")
    assert is_isomorphic_small(make_family("cyclic", n=6), "Z6")
    assert is_isomorphic_small(make_family("cyclic", n=1), "trivial")
    assert is_isomorphic_small(make_family("cyclic", n=4), "Z4")


def test_is_isomorphic_small_negative():
    assert not is_isomorphic_small(make_family("cyclic", n=6), "S3")
    assert not is_isomorphic_small(make_family("cyclic", n=9), "Z3xZ3")


def test_is_isomorphic_small_errors():
    with pytest.raises(BadParams):
        is_isomorphic_small(build("S3"), "Z17")
    with pytest.raises(TargetTooLarge):
        is_isomorphic_small(build("D10"), "S3")
