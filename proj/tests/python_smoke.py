"""Smoke checks for the python bindings."""

import math

import matchable

Z6_UNMATCHED = {
    "group": {"free_rank": 0, "torsion": [6]},
    "A": [[0], [2], [4], [5]],
    "B": [[1], [2], [3], [4]],
}
Z6_MATCHED = {
    "group": {"free_rank": 0, "torsion": [6]},
    "A": [[0], [2], [4], [5]],
    "B": [[1], [2], [3], [5]],
}
GF16_UNMATCHED = {
    "field": {"p": 2, "n": 4},
    "A": [[1, 0, 0, 0], [0, 1, 0, 1]],
    "B": [[1, 0, 0, 1], [0, 1, 0, 0]],
}
GF32_MATCHED = {
    "field": {"p": 2, "n": 5},
    "A": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]],
    "B": [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0]],
}


def main():
    bad = matchable.group_check(Z6_UNMATCHED)
    assert bad["exists"] is False, bad
    assert bad["violator"]["S"] == [[0], [2], [4]], bad

    good = matchable.group_check(Z6_MATCHED)
    assert good["exists"] is True, good
    a_set = {tuple(row) for row in Z6_MATCHED["A"]}
    for a, image in zip(Z6_MATCHED["A"], good["matching"]):
        assert ((a[0] + image[0]) % 6,) not in a_set, (a, image)

    for strategy in ("exhaustive", "reduced"):
        assert matchable.group_check(Z6_UNMATCHED, strategy=strategy)["holds"] is False
        assert matchable.group_check(Z6_MATCHED, strategy=strategy)["holds"] is True

    assert matchable.group_count(Z6_MATCHED) == 2

    wide = {
        "group": {"free_rank": 0, "torsion": [100]},
        "A": [[i] for i in range(8)],
        "B": [[50 + i] for i in range(8)],
    }
    assert matchable.group_count(wide) == math.factorial(8)

    cert = matchable.group_certify(Z6_UNMATCHED)
    assert matchable.group_verify_certificate(Z6_UNMATCHED, cert)
    broken = dict(cert)
    broken["instance_hash"] = "0"
    assert not matchable.group_verify_certificate(Z6_UNMATCHED, broken)

    try:
        matchable.group_certify(Z6_MATCHED)
        raise AssertionError("certify accepted a matchable instance")
    except matchable.PreconditionFailure:
        pass

    try:
        matchable.group_count(Z6_MATCHED, max_size=3)
        raise AssertionError("size bound was not enforced")
    except matchable.SizeBound:
        pass

    try:
        matchable.group_check({"group": {"free_rank": 0}, "A": [], "B": []})
        raise AssertionError("malformed instance was accepted")
    except matchable.SpecMismatch:
        pass

    z4 = matchable.group_property(0, [4])
    assert z4["has_property"] is False and "counterexample" in z4, z4
    assert matchable.group_check(z4["counterexample"])["exists"] is False
    assert matchable.group_property(1, [])["has_property"] is True

    for strategy in ("exhaustive", "subfield", "frame"):
        verdict = matchable.field_check(GF16_UNMATCHED, strategy=strategy)
        assert verdict["matched"] is False, (strategy, verdict)
        assert "violation" in verdict, (strategy, verdict)

    built = matchable.field_construct(GF32_MATCHED)
    assert built["matched"] is True and len(built["b_basis"]) == 2, built

    assert matchable.field_property(2, n=4)["has_property"] is False
    assert matchable.field_property(2, n=5)["has_property"] is True
    assert matchable.field_property(2, n=1)["vacuous"] is True

    sweep = matchable.group_sweep(seed=5, instances=20)
    assert sweep["ok"] is True, sweep
    field_sweep = matchable.field_sweep(seed=2, instances=5, n=4)
    assert field_sweep["ok"] is True, field_sweep

    print("python_smoke: all checks passed")


if __name__ == "__main__":
    main()
