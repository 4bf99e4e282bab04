import numpy as np
import pytest

from commtrees import (
    Complete,
    Disjoint,
    Join,
    clique_model,
    commuting_graph,
    default_bit_bound,
    factor_int,
    factored_value,
    from_adjacency,
    is_ac_group,
    kappa_ac,
    kappa_auto,
    kappa_from_spectrum,
    kappa_matrix_tree,
    kappa_modular,
    merge_factored_powers,
    realize,
    spectrum,
)
from commtrees.errors import ExactCapExceeded, NotACGroup
from conftest import CATALOG, build

from commtrees import make_family


# ---------------------------------------------------------------- factoring


def test_factor_int():
    assert factor_int(1) == ()
    assert factor_int(12) == ((2, 2), (3, 1))
    assert factor_int(97) == ((97, 1),)
    with pytest.raises(ValueError):
        factor_int(0)


def test_merge_factored_powers():
    assert merge_factored_powers([(6, 2)]) == ((2, 2), (3, 2))
    assert merge_factored_powers([(4, 1), (2, 1)]) == ((2, 3),)
    assert merge_factored_powers([(5, 0)]) == ()
    assert merge_factored_powers([(1, 7)]) == ()


def test_factored_value_round_trip():
    for x in (1, 2, 12, 2048, 1327104, 360):
        assert factored_value(factor_int(x)) == x


# ---------------------------------------------------------------- matrix


def test_matrix_tree_complete_graphs():
    for n in range(1, 10):
        g = from_adjacency(realize(Complete(n)))
        assert kappa_matrix_tree(g).value == (n ** (n - 2) if n >= 2 else 1)


def test_matrix_tree_small_shapes():
    path = np.zeros((4, 4), dtype=bool)
    for i in range(3):
        path[i, i + 1] = path[i + 1, i] = True
    assert kappa_matrix_tree(from_adjacency(path)).value == 1

    cycle = np.zeros((5, 5), dtype=bool)
    for i in range(5):
        cycle[i, (i + 1) % 5] = cycle[(i + 1) % 5, i] = True
    assert kappa_matrix_tree(from_adjacency(cycle)).value == 5

    bipartite = realize(Join(Disjoint((Complete(1), Complete(1))), Disjoint((Complete(1),) * 3)))
    assert kappa_matrix_tree(from_adjacency(bipartite)).value == 12


def test_matrix_tree_disconnected_is_zero():
    g = from_adjacency(realize(Disjoint((Complete(2), Complete(2)))))
    res = kappa_matrix_tree(g)
    assert res.value == 0
    assert res.method == "matrix_tree"


def test_matrix_tree_vertex_cap():
    n = 1001
    mat = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        mat[i, i + 1] = mat[i + 1, i] = True
    with pytest.raises(ExactCapExceeded):
        kappa_matrix_tree(from_adjacency(mat))


def test_matrix_tree_result_fields():
    res = kappa_matrix_tree(commuting_graph(build("S3")))
    assert res.value == 3
    assert res.method == "matrix_tree"
    assert res.factors is None
    data = res.to_json()
    assert data["value"] == "3"
    assert data["engines_agreed"] is True
    assert data["notes"] == []


# ---------------------------------------------------------------- modular


def test_modular_matches_matrix_on_groups():
    for label in ("S3", "D8", "Q8", "A4", "D12", "F20", "GL2_3"):
        g = commuting_graph(build(label))
        assert kappa_modular(g).value == kappa_matrix_tree(g).value, label


def test_modular_prime_count_independence():
    g = commuting_graph(build("D14"))
    base = kappa_modular(g)
    widened = kappa_modular(g, bit_bound=default_bit_bound(g) + 200)
    assert base.value == widened.value
    n_base = int(base.notes[0].split("=")[1])
    n_wide = int(widened.notes[0].split("=")[1])
    assert n_wide > n_base


def test_modular_disconnected():
    g = from_adjacency(realize(Disjoint((Complete(3), Complete(3)))))
    res = kappa_modular(g)
    assert res.value == 0
    assert "disconnected" in res.notes


def test_modular_trivial_graph():
    assert kappa_modular(from_adjacency(np.zeros((1, 1), dtype=bool))).value == 1


def test_modular_bit_bound_beyond_pool():
    g = commuting_graph(build("S3"))
    with pytest.raises(ExactCapExceeded):
        kappa_modular(g, bit_bound=13000)


def test_default_bit_bound_covers_actual_value():
    for label in ("S3", "D12", "GL2_3"):
        g = commuting_graph(build(label))
        value = kappa_matrix_tree(g).value
        assert value.bit_length() < default_bit_bound(g)


# ---------------------------------------------------------------- structural


TABLE_GOLDENS = [
    ("S3", 3),
    ("D10", 125),
    ("D14", 7 ** 5),
    ("D8", 2048),
    ("D12", 2 ** 14 * 3 ** 4),
    ("Q8", 2 ** 11),
    ("Q16", 2 ** 31),
    ("SD16", 2 ** 31),
    ("Heis3", 3 ** 49),
    ("M27", 3 ** 49),
]


def test_ac_structure_goldens():
    for label, expected in TABLE_GOLDENS:
        res = kappa_ac(build(label))
        assert res.value == expected, label
        assert res.method == "ac_structure"
        assert factored_value(res.factors) == expected


def test_ac_structure_abelian_degenerates_to_complete_graph():
    assert kappa_ac(build("Z6")).value == 6 ** 4
    assert kappa_ac(make_family("cyclic", n=1)).value == 1
    assert kappa_ac(make_family("cyclic", n=2)).value == 1


def test_ac_structure_rejects_non_ac():
    with pytest.raises(NotACGroup):
        kappa_ac(build("S4"))


def test_spectrum_route_matches_ac():
    for label, expected in TABLE_GOLDENS:
        G = build(label)
        value = kappa_from_spectrum(spectrum(clique_model(G)))
        assert value == expected, label


# ---------------------------------------------------------------- dispatch


def test_auto_abelian():
    res = kappa_auto(build("Z6"))
    assert res.value == 6 ** 4
    assert res.method == "spectrum"


def test_auto_small_ac_cross_checks():
    res = kappa_auto(build("Q8"))
    assert res.value == 2048
    assert res.method == "ac_structure"
    assert res.engines_agreed
    assert "cross-check=matrix_tree" in res.notes


def test_auto_non_ac_uses_determinant():
    res = kappa_auto(build("S4"))
    assert res.method == "matrix_tree"
    assert res.value == kappa_matrix_tree(commuting_graph(build("S4"))).value


def test_all_engines_agree_on_catalog_up_to_200(catalog):
    for label, G in catalog:
        if G.order > 200:
            continue
        graph = commuting_graph(G)
        reference = kappa_matrix_tree(graph).value
        assert kappa_modular(graph).value == reference, label
        if is_ac_group(G):
            assert kappa_ac(G).value == reference, label
            assert kappa_from_spectrum(spectrum(clique_model(G))) == reference, label
        assert kappa_auto(G).value == reference, label
