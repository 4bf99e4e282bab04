"""End-to-end acceptance checks.

Each test covers one numbered criterion, prints a single pass or fail line,
and enforces its runtime budget.  All value comparisons are exact integer
equality.
"""

import json
import time

import property_suites as suites
from commtrees import (
    Complete,
    Disjoint,
    Empty,
    Join,
    classify_2_abelian,
    classify_3_abelian,
    closed_form,
    find_partition,
    frobenius_empty_complement,
    kappa_ac,
    kappa_from_spectrum,
    kappa_matrix_tree,
    kappa_modular,
    lower_bound_blocks,
    make_family,
    spectrum,
    verify_partition,
)
from commtrees.cli import main as cli_main
from commtrees.commgraph import centralizer_decomposition, clique_model, commuting_graph
from conftest import SMALL_NONABELIAN, build


def _criterion(number, budget_s, body):
    start = time.perf_counter()
    try:
        body()
        elapsed = time.perf_counter() - start
        assert elapsed < budget_s, f"took {elapsed:.1f}s, budget {budget_s}s"
    except BaseException:
        print(f"criterion {number}: FAIL", flush=True)
        raise
    print(f"criterion {number}: PASS ({elapsed:.2f}s < {budget_s}s)", flush=True)


def test_criterion_1_smallest_simple_case():
    def body():
        S3 = build("S3")
        assert kappa_matrix_tree(commuting_graph(S3)).value == 3

        expr = Join(Complete(1), Disjoint((Complete(2), Empty(3))))
        s = spectrum(expr)
        assert s.pairs == ((6, 1), (3, 1), (1, 3), (0, 1))
        assert kappa_from_spectrum(s) == 3
        assert kappa_from_spectrum(spectrum(clique_model(S3))) == 3

        detected = frobenius_empty_complement(S3)
        assert detected is not None
        H, kappa = detected
        assert H.order == 3
        assert kappa == 3

    _criterion(1, 1.0, body)


def test_criterion_2_alternating_on_five_points():
    def body():
        A5 = build("A5")
        golden = 2 ** 20 * 3 ** 10 * 5 ** 18
        decomp = centralizer_decomposition(A5)
        assert decomp == [(4, 6), (3, 5), (2, 10)]
        assert kappa_ac(A5).value == golden
        assert kappa_matrix_tree(commuting_graph(A5)).value == golden

    _criterion(2, 5.0, body)


TABLE_ROWS = [
    ("dihedral", {"k": 5}, "dihedral_odd", {"k": 5}, 125),
    ("dihedral", {"k": 7}, "dihedral_odd", {"k": 7}, 7 ** 5),
    ("dihedral", {"k": 4}, "dihedral_even", {"k": 4}, 2048),
    ("dihedral", {"k": 6}, "dihedral_even", {"k": 6}, 2 ** 14 * 3 ** 4),
    ("generalized_quaternion", {"k": 2}, "quaternion", {"k": 2}, 2 ** 11),
    ("generalized_quaternion", {"k": 4}, "quaternion", {"k": 4}, 2 ** 19 * 4 ** 6),
    ("semidihedral", {"k": 4}, "semidihedral", {"k": 4}, 2 ** 31),
    ("heisenberg", {"p": 3}, "extraspecial", {"p": 3}, 3 ** 49),
    ("modular_p3", {"p": 3}, "extraspecial", {"p": 3}, 3 ** 49),
]


def test_criterion_3_special_family_table():
    def body():
        assert 2 ** 19 * 4 ** 6 == 2 ** 31
        for family, params, fid, fparams, expected in TABLE_ROWS:
            G = make_family(family, **params)
            value, _ = closed_form(fid, fparams)
            assert value == expected, G.name
            assert kappa_matrix_tree(commuting_graph(G)).value == expected, G.name
            assert kappa_ac(G).value == expected, G.name

    _criterion(3, 30.0, body)


def test_criterion_4_general_linear_groups():
    def body():
        GL23 = build("GL2_3")
        golden = 2 ** 85 * 3 ** 13
        assert kappa_matrix_tree(commuting_graph(GL23)).value == golden
        assert kappa_ac(GL23).value == golden

        GL24 = make_family("GL2", q=4)
        assert GL24.order == 180
        by_ac = kappa_ac(GL24).value
        assert by_ac == kappa_matrix_tree(commuting_graph(GL24)).value
        assert by_ac == 2 ** 84 * 3 ** 230 * 5 ** 68

    _criterion(4, 30.0, body)


def test_criterion_5_projective_char2_groups():
    def body():
        L28 = make_family("L2", k=3)
        graph = commuting_graph(L28)
        assert graph.n == 504
        value, _ = closed_form("L2_char2", {"k": 3})
        assert value == 2 ** 162 * 3 ** 392 * 7 ** 180
        assert kappa_modular(graph).value == value

        L216 = make_family("L2", k=4)
        q = 16
        shape = sorted(
            [(q - 1, q + 1), (q - 2, q * (q + 1) // 2), (q, (q - 1) * q // 2)],
            key=lambda kv: -kv[0],
        )
        assert centralizer_decomposition(L216) == shape
        assert kappa_ac(L216).value == closed_form("L2_char2", {"k": 4})[0]

    _criterion(5, 300.0, body)


def test_criterion_6_partition_suite():
    def body():
        for label, family, params in SMALL_NONABELIAN:
            G = make_family(family, **params)
            cert = find_partition(G, mode="exact")
            minimum = None if cert is None else cert.n
            if cert is not None:
                ok, report = verify_partition(G, cert)
                assert ok, (label, report)
            two, _ = classify_2_abelian(G)
            three = classify_3_abelian(G)
            assert two == (minimum == 2), label
            assert (three is not None and not two) == (minimum == 3), label

        A5 = build("A5")
        cert = find_partition(A5, mode="heuristic")
        assert cert is not None
        assert cert.n == 20
        ok, report = verify_partition(A5, cert)
        assert ok, report

        assert lower_bound_blocks(A5) == 11
        assert lower_bound_blocks(make_family("L2", k=3)) == 55
        assert lower_bound_blocks(build("GL2_3")) == 5

    _criterion(6, 120.0, body)


def test_criterion_7_property_suites():
    def body():
        assert suites.run_join_shift_divisibility() >= 1000
        assert suites.run_central_divisibility() >= 1000
        assert suites.run_kappa_lower_bound() >= 1000
        assert suites.run_spectrum_vs_matrix_tree() >= 1000
        assert suites.run_abelian_core() >= 1000
        assert suites.run_partition_counting_bounds() >= 1000

    _criterion(7, 600.0, body)


def test_criterion_8_discrepancy_ledger(capsys):
    def body():
        code = cli_main(["verify"])
        out = capsys.readouterr().out
        assert code == 0
        rows = json.loads(out)
        mismatches = [r for r in rows if r["verdict"] == "mismatch"]
        assert len(mismatches) == 2
        assert all(r["expected"] for r in mismatches)
        keys = {(r["formula"], tuple(sorted(r["params"].items()))) for r in mismatches}
        assert keys == {("three_abelian_c", (("m", 2),)), ("semidihedral_t", (("k", 4),))}
        for r in mismatches:
            printed = int(r["closed_form"]["value"])
            computed = [int(o["value"]) for o in r["oracles"]]
            assert computed and all(c != printed for c in computed)
        for r in rows:
            if not r["expected"]:
                assert r["verdict"] == "match", r["formula"]

    _criterion(8, 60.0, body)
