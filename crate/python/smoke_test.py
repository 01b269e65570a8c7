"""Smoke test for the Python bindings.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

import json

import inertia_lab as il


def main():
    assert il.j_invariant([1, 1, 1, -1, 0]) == "-117649/89"
    assert il.j_invariant([0, -1, 1, -10, -20]) == "-122023936/161051"

    lift = il.canonical_lift([0, -1, 1, -10, -20], 3)
    assert lift["j_lift"] == 1 and lift["j_bar"] == 1
    assert il.gross_diagonalizable([1, 1, 1, -1, 0], 3)
    assert not il.gross_diagonalizable([0, -1, 1, -10, -20], 3)

    yes = il.realize_abelian(7, [6, 7], [6])
    no = il.realize_abelian(5, [8], [8])
    assert yes["realizable"] and yes["witness"]["primes"], yes
    assert not no["realizable"] and no["witness"] is None, no

    cands = il.gl2_candidates(3)
    assert cands and {c["kind"] for c in cands} >= {"split", "nonsplit", "wild"}

    cert = il.construct_curve(17, "ordinary", diagonal=False)
    assert cert["p"] == 17 and cert["kind"] == {"kind": "ordinary", "diagonal": False}

    report = il.verify_example_6_2()
    assert report["group_order"] == 128 and report["inertia_order"] == 16

    code, out = il.cli(["--format", "json", "gl2-candidates", "--p", "3"])
    assert code == 0 and json.loads(out)
    code, _ = il.cli(["gl2-candidates", "--p", "15"])
    assert code == 2

    try:
        il.j_invariant([0, 0, 0, 0, 0])
    except ValueError:
        pass
    else:
        raise AssertionError("singular curve accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
