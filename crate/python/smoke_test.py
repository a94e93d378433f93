"""Smoke test for the nilcube_py extension. Build and install it first:

    cd crates/py && maturin build --release -o dist && pip install dist/*.whl
"""

import json

import nilcube_py as nc


def main():
    assert nc.dim_component(3, [3, 3]) == 1
    assert nc.dim_component(2, [1] * 6) == 30

    es = nc.EchelonSystem(0, [2, 1])
    assert es.quotient_dim == 2
    assert es.minimal_basis() == [[1, 1, 2], [1, 2, 1]]

    g = nc.Element(2, [([2, 1, 1], 1)])
    assert es.membership(nc.Element(0, [([2, 1, 1], 1), ([1, 2, 1], 1), ([1, 1, 2], 1)]))
    assert g.highest_term() == ([2, 1, 1], "1")

    x = nc.Element(0, [([1], 1)])
    y = nc.Element(0, [([2], "1/2")])
    assert (x * y).terms() == [([1, 2], "1/2")]

    words, source = nc.paper_table(3, [3, 3])
    assert words == [[1, 1, 2, 2, 1, 2]] and source == "char-3"
    assert len(nc.B1d(2, 6)) == 30

    c, witness, method = nc.nilpotency_degree(2, 4)
    assert (c, witness, method) == (7, [1, 1, 2, 3, 4, 1], "gauss")
    assert nc.C_formula(3, 4) == 13

    assert nc.certify(2, 6) == (True, "phi_adj")
    total, by_degree = nc.generator_counts(0, 2)
    assert total == 11 and max(by_degree) == 6

    code, out = nc.run_cli(["dim", "-p", "3", "-m", "3,3"])
    assert code == 0 and json.loads(out)["dim"] == 1

    print("nilcube_py smoke test passed")


if __name__ == "__main__":
    main()
