"""Smoke test for the orbitkit Python extension.

Build and run from the workspace root:

    cargo build -p orbitkit-py --features extension-module
    cp target/debug/liborbitkit_py.so crates/py/python/orbitkit.so
    python3 crates/py/python/smoke_test.py
"""

import orbitkit


def main():
    assert "adding-machine" in orbitkit.corpus_names()

    am = orbitkit.Automaton.corpus("adding-machine")
    assert am.act("q", "000") == "100"
    assert am.act("q,q,q", "000") == "110"
    assert am.act_up("q", "|1") == "ε|0"
    assert sorted(am.orbit("00")) == ["00", "01", "10", "11"]
    assert am.orbit_up("|0", nodes=200) is None
    assert am.torsion("q", budget=8) is None
    props = am.classify()
    assert props["invertible"] and not props["reversible"]

    g = orbitkit.Automaton.corpus("grigorchuk")
    assert g.torsion("b", budget=8) == (1, 3)

    text = "automaton flip\nalphabet 0 1\nstates f\ntrans f 0 1 f\ntrans f 1 0 f\n"
    flip = orbitkit.Automaton.parse(text)
    assert flip.classify()["bi_reversible"]
    assert flip.states() == ["f"]
    assert flip.alphabet() == ["0", "1"]
    assert flip.dual().states() == ["0", "1"]
    assert flip.inverse().act("f^-1", "01") == "10"

    ideal = orbitkit.Automaton.corpus("right-ideal")
    assert ideal.act("p", "b") is None

    try:
        orbitkit.Automaton.parse("automaton broken\nstates q\n")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
