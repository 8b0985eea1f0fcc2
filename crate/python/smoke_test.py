"""Smoke test for the compiled `syzygy` extension module.

Build and run from the repository root:

    cargo build --release -p syzygy-py
    cp target/release/libsyzygy.so python/syzygy.so
    python3 python/smoke_test.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import syzygy  # noqa: E402


def main():
    assert syzygy.rank([[1, 2, 3], [2, 4, 6]], prime=7) == 1
    assert syzygy.rank([[0, 1], [1, 0]]) == 2

    cubic = syzygy.Variety.rnc(3)
    table = cubic.betti()
    assert table.row(1) == [0, 3, 2, 0], table.row(1)
    assert table[1, 1] == 3
    assert syzygy.koszul_dim(cubic, 1, 1) == 3
    assert [cubic.hilbert(q) for q in range(4)] == [1, 4, 7, 10]
    try:
        table[9, 9]
    except KeyError:
        pass
    else:
        raise AssertionError("missing entry should raise KeyError")

    k3 = syzygy.Variety.k3("ci23_P4", seed=42)
    t = k3.betti(max_p=3, max_q=2)
    assert t[2, 1] == 0 and t[1, 1] == 1
    assert json.loads(t.to_json())["seed"] == 42
    assert syzygy.BettiTable.from_json(t.to_json()).entries() == t.entries()

    section = syzygy.Variety.k3_section("ci23_P4", seed=42)
    assert section.genus == 4 and section.clifford_index == 1
    assert all(row[3] for row in section.green_check())

    quintic = syzygy.Variety.canonical(6, seed=1)
    q = quintic.betti(max_p=4, max_q=1)
    assert q[3, 1] != 0 and q[4, 1] == 0
    same = syzygy.Variety.from_json(quintic.to_json())
    assert same.to_json() == quintic.to_json()

    assert syzygy.bott(2, 4, [1, 1]) == (0, 6)
    assert syzygy.bott(2, 4, [-1, -3]) == (2, 1)
    assert syzygy.bott(2, 4, [0, 0]) == (0, 1)
    sweep = syzygy.verify_appendix(3)
    assert any(r[:5] == (3, 4, 3, 3, 1) for r in sweep)
    assert all(syzygy.dimension_identity(k) for k in (1, 10, 60))

    assert syzygy.generic_gonality(7) == 5
    assert syzygy.lm_chi(2) == {"k": 2, "c1_sq": 6, "c2": 3, "chi": 4}
    assert (8, 5) in syzygy.corollary2_range(20)
    assert syzygy.green_prediction(4, 1) == [(0, "zero"), (1, "nonzero"), (2, "zero")]
    assert syzygy.brill_noether_number(5, 1, 3) == -1

    try:
        cubic.betti(entry_budget=1)
    except syzygy.ResourceLimitError:
        pass
    else:
        raise AssertionError("budget should be enforced")
    try:
        syzygy.bott(2, 4, [0, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("increasing weight should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
