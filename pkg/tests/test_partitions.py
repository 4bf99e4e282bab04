import json

import pytest

from commtrees import (
    PartitionCertificate,
    abelian_subgroups,
    classify_2_abelian,
    classify_3_abelian,
    coset_partition,
    find_partition,
    frobenius_empty_complement,
    kappa_auto,
    lower_bound_blocks,
    make_family,
    make_subgroup,
    verify_partition,
)
from commtrees.errors import (
    AbelianInput,
    CenterTooSmall,
    ExactCapExceeded,
    IndexTooSmall,
)
from conftest import SMALL_NONABELIAN, build


# ---------------------------------------------------------------- certificates


def test_certificate_json_round_trip():
    cert = PartitionCertificate((0, 1), ((2, 3), (4, 5)), 2, True)
    data = json.loads(json.dumps(cert.to_json()))
    assert PartitionCertificate.from_json(data) == cert


def test_certificate_from_json_malformed():
    with pytest.raises(ValueError):
        PartitionCertificate.from_json([1, 2])
    with pytest.raises(ValueError):
        PartitionCertificate.from_json({"A": [0], "blocks": []})
    with pytest.raises(ValueError):
        PartitionCertificate.from_json({"A": [0], "blocks": [["x"]], "n": 1})


def test_certificate_verified_defaults_false():
    cert = PartitionCertificate.from_json({"A": [0], "blocks": [[1, 2], [3, 4]], "n": 2})
    assert not cert.verified


# ---------------------------------------------------------------- verification


def q8_good_cert():
    Q8 = build("Q8")
    cert = find_partition(Q8, mode="exact")
    assert cert is not None
    return Q8, cert


def test_verify_partition_accepts_good_certificate():
    Q8, cert = q8_good_cert()
    ok, report = verify_partition(Q8, cert)
    assert ok
    assert report is None


def test_verify_partition_out_of_range_is_malformed():
    Q8 = build("Q8")
    bad = PartitionCertificate((0, 99), ((1, 2), (3, 4)), 2, False)
    with pytest.raises(ValueError):
        verify_partition(Q8, bad)


def test_verify_partition_overlap():
    Q8, cert = q8_good_cert()
    first = cert.blocks[0]
    tampered = PartitionCertificate(cert.A + (first[0],), cert.blocks, cert.n, False)
    ok, report = verify_partition(Q8, tampered)
    assert not ok
    assert report.startswith("overlap")


def test_verify_partition_non_cover():
    Q8, cert = q8_good_cert()
    shorted = PartitionCertificate(cert.A[:-1], cert.blocks, cert.n, False)
    ok, report = verify_partition(Q8, shorted)
    assert not ok
    assert report.startswith("non-cover")


def test_verify_partition_a_not_subgroup():
    S3 = build("S3")
    orders = S3.element_orders()
    t1, t2 = [i for i, o in enumerate(orders) if o == 2][:2]
    rest = tuple(sorted(set(range(6)) - {0, t1, t2}))
    bad = PartitionCertificate((0, t1, t2), (rest,), 1, False)
    ok, report = verify_partition(S3, bad)
    assert not ok
    assert report.startswith("A-not-abelian-subgroup")


def test_verify_partition_block_not_commuting():
    D12 = build("D12")
    cert = find_partition(D12, mode="exact")
    orders = D12.element_orders()
    refl = [i for i, o in enumerate(orders) if o == 2 and i not in cert.A]
    # two noncommuting involutions in one block
    a = next(x for x in refl if any(not D12.commute_matrix()[x, y] for y in refl))
    b = next(y for y in refl if not D12.commute_matrix()[a, y])
    others = tuple(sorted(set(range(12)) - set(cert.A) - {a, b}))
    bad = PartitionCertificate(cert.A, ((a, b), others), 2, False)
    ok, report = verify_partition(D12, bad)
    assert not ok
    assert report.startswith("block-not-commuting")


def test_verify_partition_block_too_small():
    Q8, cert = q8_good_cert()
    block = cert.blocks[0]
    split = (block[:1], block[1:]) + cert.blocks[1:]
    bad = PartitionCertificate(cert.A, split, len(split), False)
    ok, report = verify_partition(Q8, bad)
    assert not ok
    assert report.startswith("block-too-small")


def test_verify_partition_n_too_small():
    Z12 = build("Z12")
    evens = tuple(i for i in range(12) if Z12.element_orders()[i] in (1, 2, 3, 6))
    odds = tuple(sorted(set(range(12)) - set(evens)))
    one_block = PartitionCertificate(evens, (odds,), 1, False)
    ok, report = verify_partition(Z12, one_block)
    assert not ok
    assert report.startswith("n-too-small")


def test_verify_partition_n_field_must_match():
    Q8, cert = q8_good_cert()
    wrong_n = PartitionCertificate(cert.A, cert.blocks, cert.n + 1, False)
    ok, report = verify_partition(Q8, wrong_n)
    assert not ok
    assert report.startswith("n-too-small")


# ---------------------------------------------------------------- coset route


def test_coset_partition_q8():
    cert = coset_partition(build("Q8"))
    assert cert.verified
    assert cert.n == 3
    assert cert.A == (0, 1) or len(cert.A) == 2
    assert all(len(b) == 2 for b in cert.blocks)


def test_coset_partition_d12():
    cert = coset_partition(build("D12"))
    assert cert.n == 5
    assert all(len(b) == 2 for b in cert.blocks)


def test_coset_partition_center_too_small():
    with pytest.raises(CenterTooSmall):
        coset_partition(build("S3"))


def test_coset_partition_index_too_small():
    with pytest.raises(IndexTooSmall):
        coset_partition(make_family("cyclic", n=4))


# ---------------------------------------------------------------- search


EXACT_MINIMA = [
    ("S3", None),
    ("D10", None),
    ("D14", None),
    ("Q8", 2),
    ("D8", 2),
    ("D12", 3),
    ("Q12", 3),
    ("A4", 4),
    ("D16", 4),
    ("SD16", 4),
    ("Q16", 4),
]


def test_exact_minima():
    for label, expected in EXACT_MINIMA:
        cert = find_partition(build(label), mode="exact")
        if expected is None:
            assert cert is None, label
        else:
            assert cert is not None, label
            assert cert.n == expected, label
            assert cert.verified


def test_exact_f20_minimum_is_5():
    cert = find_partition(build("F20"), mode="exact")
    assert cert is not None
    assert cert.n == 5


def test_exact_respects_n_max():
    Q16 = build("Q16")
    assert find_partition(Q16, mode="exact", n_max=3) is None
    assert find_partition(Q16, mode="exact", n_max=4).n == 4


def test_exact_cap():
    with pytest.raises(ExactCapExceeded):
        find_partition(build("A5"), mode="exact")


def test_find_partition_mode_validation():
    with pytest.raises(ValueError):
        find_partition(build("Q8"), mode="bogus")


def test_heuristic_a5_twenty_blocks():
    cert = find_partition(build("A5"), mode="heuristic")
    assert cert is not None
    assert cert.verified
    assert cert.n == 20
    assert len(cert.A) == 5


def test_heuristic_n_max_filters():
    assert find_partition(build("A5"), mode="heuristic", n_max=10) is None
    assert find_partition(build("A5"), mode="heuristic", n_max=20) is not None


def test_heuristic_small_groups_verified():
    for label in ("Q8", "D8", "D12", "Q16", "SD16", "A4"):
        cert = find_partition(build(label), mode="heuristic")
        assert cert is not None, label
        assert cert.verified, label


def test_abelian_subgroups_s3():
    subs = abelian_subgroups(build("S3"))
    assert len(subs) == 5
    assert (0,) in subs
    assert subs == sorted(subs)
    assert all(make_subgroup(build("S3"), s).abelian for s in subs)


def test_abelian_subgroups_q8():
    subs = abelian_subgroups(build("Q8"))
    # trivial, center, and the three cyclic order-4 subgroups
    assert len(subs) == 5
    assert sorted(len(s) for s in subs) == [1, 2, 4, 4, 4]


# ---------------------------------------------------------------- bounds


def test_lower_bound_blocks():
    assert lower_bound_blocks(build("A5")) == 11
    assert lower_bound_blocks(build("GL2_3")) == 5
    assert lower_bound_blocks(build("Q8")) == 0
    assert lower_bound_blocks(build("S3")) == 1


def test_exact_minima_respect_lower_bound():
    for label, expected in EXACT_MINIMA:
        if expected is not None:
            assert expected >= lower_bound_blocks(build(label)), label


# ---------------------------------------------------------------- classifiers


def test_classify_2_positive():
    for label in ("Q8", "D8"):
        flag, witness = classify_2_abelian(build(label))
        assert flag, label
        assert witness is not None
        assert witness.abelian


def test_classify_2_negative():
    for label in ("S3", "D12", "Q12", "A4", "D16", "SD16", "Q16", "D10"):
        flag, witness = classify_2_abelian(build(label))
        assert not flag, label
        assert witness is None


def test_classify_2_q24_regression():
    # has the right Sylow orders but the factors do not commute elementwise
    flag, _ = classify_2_abelian(make_family("quaternion", k=6))
    assert not flag


def test_classify_2_d8_times_z3():
    G = make_family(
        "direct_product",
        factors=[["dihedral", {"k": 4}], ["cyclic", {"n": 3}]],
    )
    flag, witness = classify_2_abelian(G)
    assert flag
    assert witness.abelian


def test_classify_3_tags():
    assert classify_3_abelian(build("D12")) == "c"
    assert classify_3_abelian(build("Q12")) == "c"
    assert classify_3_abelian(build("D8")) == "a"
    assert classify_3_abelian(build("Q8")) == "a"
    assert classify_3_abelian(build("Heis3")) == "b"
    assert classify_3_abelian(build("D16")) is None
    assert classify_3_abelian(build("S3")) is None


def test_classifiers_reject_abelian():
    with pytest.raises(AbelianInput):
        classify_2_abelian(build("Z12"))
    with pytest.raises(AbelianInput):
        classify_3_abelian(build("Z6"))


def test_classifier_agrees_with_exact_minimum():
    for label, expected in EXACT_MINIMA:
        G = build(label)
        two, _ = classify_2_abelian(G)
        assert two == (expected == 2), label
        three = classify_3_abelian(G)
        if expected == 3:
            assert three is not None, label
        if three is not None and not two:
            assert expected == 3, label


# ---------------------------------------------------------------- Frobenius


def test_frobenius_detector_dihedral_odd():
    H, kappa = frobenius_empty_complement(build("D10"))
    assert H.order == 5
    assert kappa == 125
    H, kappa = frobenius_empty_complement(build("D14"))
    assert H.order == 7
    assert kappa == 7 ** 5
    H, kappa = frobenius_empty_complement(build("S3"))
    assert H.order == 3
    assert kappa == 3


def test_frobenius_detector_rejects_others():
    for label in ("Q8", "D8", "D12", "A5", "A4"):
        assert frobenius_empty_complement(build(label)) is None
    assert frobenius_empty_complement(build("Z6")) is None


def test_frobenius_kappa_matches_engines():
    for label in ("S3", "D10", "D14"):
        G = build(label)
        _, kappa = frobenius_empty_complement(G)
        assert kappa == kappa_auto(G).value
