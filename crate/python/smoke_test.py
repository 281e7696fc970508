"""Smoke test for the lieposet extension module.

Build and install with ``pip install --no-build-isolation ./crates/python``
then run ``python python/smoke_test.py``.
"""

from fractions import Fraction

import lieposet


def type_c_example():
    return lieposet.Poset(
        "C",
        [-3, -2, -1, 1, 2, 3],
        [(-1, 2), (-1, 3), (-2, 1), (-2, 3), (-3, 1), (-3, 2)],
    )


def main():
    tree = lieposet.Poset("A", [1, 2, 3, 4], [(1, 2), (2, 3), (2, 4)])
    g = lieposet.LieAlgebra(tree, "gl")
    assert g.dim == 9
    assert g.sparsity_pattern() == ["****", "0***", "00*0", "000*"]
    assert g.check_jacobi()

    p = type_c_example()
    c = lieposet.LieAlgebra(p)
    assert c.dim == 6 and c.is_two_step()
    cert = lieposet.index(c, seed=7)
    assert cert["index"] == 0 and cert["certified_frobenius"]

    f = lieposet.frobenius_functional(c, seed=7)
    assert f is not None
    assert all(isinstance(x, Fraction) for x in f)
    assert lieposet.principal_element(c, f)[:3] == [Fraction(-1, 2)] * 3
    s = lieposet.spectrum(c, f)
    assert s["binary"] and s["char_poly"] == "x^6 - 3x^5 + 3x^4 - x^3"

    norm = lieposet.normalize_to_phi(c, seed=7)
    assert norm["n"] == 3 and norm["verified"]

    assert lieposet.cohomology_dim(c, 2)["cohomology"] == 0
    assert lieposet.simplicial_cohomology_dim(p, 1) == 1
    eq1 = lieposet.verify_eq1(p)
    assert (eq1["lhs"], eq1["rhs"], eq1["matched"]) == (0, 3, False)

    phi = lieposet.LieAlgebra.phi(2)
    sp = lieposet.spectrum(phi, [0, 0, 1, 1])
    assert sp["principal_element"] == [1, 1, 0, 0]
    assert lieposet.cohomology_dim(phi, 2)["cohomology"] == 0

    chain = lieposet.LieAlgebra(lieposet.Poset.chain(2), "gl")
    assert lieposet.index(chain, seed=1)["index"] == 1
    assert lieposet.verify_eq1(lieposet.Poset.chain(3))["lhs"] == 3

    counts = [len(lieposet.enumerate_height_one(n)) for n in range(2, 6)]
    assert counts == [1, 2, 4, 10], counts

    assert lieposet.verify("figures", 1)["passed"]

    try:
        lieposet.Poset("A", [1, 2], [(1, 2), (2, 1)])
    except ValueError as e:
        assert "cycle" in str(e)
    else:
        raise AssertionError("cycle accepted")

    print("lieposet smoke test passed")


if __name__ == "__main__":
    main()
