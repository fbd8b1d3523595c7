"""Smoke test for the nhramsey_py extension module."""

import json

import nhramsey_py as nr


def main():
    r = nr.ramsey("K3")
    assert r["value"] == 6 and r["exact"], r
    assert nr.avoids(r["witness"], "K3") == (True, True)

    r = nr.ramsey("K3", "K2")
    assert r["value"] == 3, r

    col = nr.lower_bound("C4", 2)
    assert nr.avoids(col, "C4", 2) == (True, True)

    assert nr.hk_parameters(4) == (16, 4, 7)
    assert nr.avoids(nr.prop1(4, 1), "Hk4") == (True, True)

    assert nr.toy_absorber(2) == (True, 22)

    ledger = nr.params(2, 10)
    assert ledger["gamma"] == "1/64", ledger

    code, out = nr.run_cli(["ramsey", "--pattern", "P3"])
    assert code == 0
    assert json.loads(out)["verdicts"]["value"] == 3

    try:
        nr.ramsey("Q5")
    except nr.NhramseyError as e:
        assert "Q5" in str(e)
    else:
        raise AssertionError("bad pattern accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
