import io
import json

import pytest

from elemcalc import (
    DescriptorMismatch,
    IdealPresentation,
    LinLetter,
    LocRing,
    MuLetter,
    PolyRing,
    RhoLetter,
    SympLetter,
    Word,
    ZmodRing,
    certify,
    from_rows,
    standard_symplectic_form,
    word,
)
from elemcalc import cli, jsonio
import elemcalc.rewrite as rewrite_module
from elemcalc.matrices import ColumnVector

Z27 = ZmodRing(27)
RXY = PolyRing(Z27, ("X", "Y"))
I3 = IdealPresentation(Z27, (Z27.el(3),))


def roundtrip_ring(ring):
    data = jsonio.ring_to_json(ring)
    back = jsonio.ring_from_json(data)
    assert back == ring
    assert jsonio.dumps(jsonio.ring_to_json(back)) == jsonio.dumps(data)


def test_ring_codec():
    roundtrip_ring(Z27)
    roundtrip_ring(RXY)
    roundtrip_ring(LocRing(PolyRing(ZmodRing(25), ("T",)),
                           PolyRing(ZmodRing(25), ("T",)).var("T")))
    with pytest.raises(DescriptorMismatch):
        jsonio.ring_from_json({"kind": "field", "p": 5})
    with pytest.raises(DescriptorMismatch):
        jsonio.ring_from_json({"kind": "zmod"})


def test_element_codec():
    x = RXY.el(5) + RXY.var("X") * RXY.var("X") * RXY.el(2) \
        + RXY.var("Y") * RXY.el(7)
    data = jsonio.element_to_json(x)
    assert jsonio.element_from_json(RXY, data) == x
    assert jsonio.element_to_json(Z27.el(13)) == 13
    L = LocRing(Z27, Z27.el(2))
    y = L.el(5)
    back = jsonio.element_from_json(L, jsonio.element_to_json(y))
    assert back == y
    with pytest.raises(DescriptorMismatch):
        jsonio.element_from_json(Z27, "five")
    with pytest.raises(DescriptorMismatch):
        jsonio.element_from_json(RXY, [[{"Z": 1}, 3]])
    with pytest.raises(DescriptorMismatch):
        jsonio.element_from_json(RXY, [[{"X": -1}, 3]])


def test_ideal_and_certificate_codec():
    data = jsonio.ideal_to_json(I3)
    assert data == [3]
    assert jsonio.ideal_from_json(Z27, data) == I3
    assert jsonio.ideal_from_json(Z27, {"generators": [3]}) == I3
    with pytest.raises(DescriptorMismatch):
        jsonio.ideal_from_json(Z27, [])
    cert = certify(I3, [Z27.el(2)])
    cd = jsonio.certified_to_json(cert)
    back = jsonio.certified_from_json(I3, cd)
    assert back.value == cert.value
    with pytest.raises(DescriptorMismatch):
        jsonio.certified_from_json(I3, [1, 2])


def test_vector_matrix_codec():
    v = ColumnVector(Z27, [Z27.el(3), Z27.el(0), Z27.el(7)])
    assert jsonio.vector_from_json(Z27, jsonio.vector_to_json(v)) == v
    m = standard_symplectic_form(Z27, 2)
    data = jsonio.matrix_to_json(m)
    assert jsonio.matrix_from_json(Z27, data) == m
    with pytest.raises(DescriptorMismatch):
        jsonio.matrix_from_json(Z27, [[1, 2], [3]])


def test_word_codec_round_trip():
    c = certify(I3, [Z27.el(2)])
    w = word(Z27, 4,
             (SympLetter(4, 2, 1, c.value, cert=c), True),
             SympLetter(4, 1, 3, Z27.el(5)))
    data = jsonio.word_to_json(w)
    back = jsonio.word_from_json(Z27, 4, data, ideal=I3)
    assert jsonio.dumps(jsonio.word_to_json(back)) == jsonio.dumps(data)
    assert back.letters[0][1] is True
    assert back.letters[0][0].cert is not None
    with pytest.raises(DescriptorMismatch):
        jsonio.word_from_json(Z27, 4, data)  # cert but no ideal
    bad = json.loads(json.dumps(data))
    bad[0]["param"] = 7
    with pytest.raises(DescriptorMismatch):
        jsonio.word_from_json(Z27, 4, bad, ideal=I3)


def test_transvection_letter_codec():
    c1 = certify(I3, [Z27.el(1)])
    c0 = certify(I3, [Z27.el(0)])
    q = ColumnVector(Z27, [Z27.el(3), Z27.el(0)])
    phi = standard_symplectic_form(Z27, 1)
    rho = RhoLetter(q, Z27.el(3), phi, certs=(c1, (c1, c0)))
    mu = MuLetter(q, Z27.el(0), phi)
    w = Word(Z27, 4, ((rho, False), (mu, True)))
    data = jsonio.word_to_json(w)
    back = jsonio.word_from_json(Z27, 4, data, ideal=I3)
    assert jsonio.dumps(jsonio.word_to_json(back)) == jsonio.dumps(data)
    assert back.letters[0][0].certs is not None
    assert back.letters[1][0].certs is None
    bad = json.loads(json.dumps(data))
    bad[0]["cert"]["scalar"] = [2]
    with pytest.raises(DescriptorMismatch):
        jsonio.word_from_json(Z27, 4, bad, ideal=I3)


def test_dumps_is_canonical():
    text = jsonio.dumps({"b": 1, "a": [2, 3]})
    assert text == '{"a":[2,3],"b":1}\n'
    with pytest.raises(DescriptorMismatch):
        jsonio.loads("{not json")


def decompose_request():
    return {
        "ring": {"kind": "zmod", "m": 27},
        "ideal": [3],
        "n": 3,
        "g": [{"gen": "se", "i": 1, "j": 3, "param": 4, "inv": False},
              {"gen": "se", "i": 2, "j": 1, "param": 7, "inv": True}],
        "i": 1, "j": 2,
        "a": [1], "b": [2],
    }


def rewrite_request():
    three = [[{}, 3]]
    three_x = [[{"X": 1}, 3]]
    return {
        "ring": {"kind": "poly", "base": {"kind": "zmod", "m": 27},
                 "vars": ["X", "Y"]},
        "ideal": [three, three_x],
        "mode": "linear",
        "n": 3,
        "eps": [{"gen": "E", "i": 2, "j": 1, "param": three,
                 "inv": False, "cert": [[[{}, 1]], []]}],
        "i": 1, "j": 3,
        "aPoly": [[[{}, 2]], []],
    }


def test_cli_verify(capsys):
    rc = cli.main(["verify", "--suite", "relations",
                   "--trials", "3", "--seed", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "relations" in out and "ok" in out


def test_cli_verify_json_deterministic(capsys):
    rc = cli.main(["verify", "--suite", "short-root",
                   "--trials", "4", "--seed", "9", "--json"])
    first = capsys.readouterr().out
    assert rc == 0
    rc = cli.main(["verify", "--suite", "short-root",
                   "--trials", "4", "--seed", "9", "--json"])
    second = capsys.readouterr().out
    assert rc == 0
    assert first == second
    payload = json.loads(first)
    assert payload["suite"] == "short-root"
    assert payload["trials"] == 4
    assert payload["failures"] == []
    assert "elapsed" not in payload


def test_cli_verify_unknown_suite(capsys):
    rc = cli.main(["verify", "--suite", "no-such-suite"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "error:" in err


def test_cli_decompose_files(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps(decompose_request()))
    out1 = tmp_path / "out1.json"
    out2 = tmp_path / "out2.json"
    assert cli.main(["decompose", "--in", str(req), "--out", str(out1)]) == 0
    assert cli.main(["decompose", "--in", str(req), "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["verified"] is True
    assert payload["output"]
    assert all(item["cert"] is not None for item in payload["output"])
    assert payload["lemma_trace"]


def test_cli_decompose_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin",
                        io.StringIO(json.dumps(decompose_request())))
    rc = cli.main(["decompose"])
    out = capsys.readouterr().out
    assert rc == 0
    assert json.loads(out)["verified"] is True


def test_cli_ring_override(tmp_path, capsys):
    data = decompose_request()
    del data["ring"]
    req = tmp_path / "req.json"
    req.write_text(json.dumps(data))
    rc = cli.main(["decompose", "--in", str(req),
                   "--ring", '{"kind":"zmod","m":27}'])
    out = capsys.readouterr().out
    assert rc == 0
    assert json.loads(out)["verified"] is True


def test_cli_malformed_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("{broken"))
    rc = cli.main(["decompose"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "error:" in err


def test_cli_rewrite(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps(rewrite_request()))
    rc = cli.main(["rewrite", "--in", str(req)])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["output"] and payload["case_trace"]


def test_cli_rewrite_corrupted_table(tmp_path, capsys, monkeypatch):
    orig = rewrite_module.REWRITE_CASES[("linear", "overlap")]

    def sabotaged(system, g_rec, t_rec, grid):
        records = list(orig(system, g_rec, t_rec, grid))
        for k, (i, j, poly) in enumerate(records):
            if not poly.value().is_zero():
                records[k] = (i, j, poly.neg())
                break
        return records

    monkeypatch.setitem(rewrite_module.REWRITE_CASES,
                        ("linear", "overlap"), sabotaged)
    req = tmp_path / "req.json"
    req.write_text(json.dumps(rewrite_request()))
    rc = cli.main(["rewrite", "--in", str(req)])
    out = capsys.readouterr().out
    assert rc == 1
    payload = json.loads(out)
    assert payload["verified"] is False
    assert "error" in payload


def test_cli_pfaffian(monkeypatch, capsys):
    request = {"ring": {"kind": "zmod", "m": 27},
               "matrix": [[0, 1, 0, 0], [-1, 0, 0, 0],
                          [0, 0, 0, 1], [0, 0, -1, 0]]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    rc = cli.main(["pfaffian"])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload == {"pfaffian": 1, "size": 4, "verified": True}
    request["matrix"] = [[0, 1], [1, 0]]
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    rc = cli.main(["pfaffian"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_cli_standardize(monkeypatch, capsys):
    request = {"ring": {"kind": "zmod", "m": 27},
               "ideal": [3],
               "form": [[0, 1, 0, 0], [-1, 0, 0, 0],
                        [0, 0, 0, 1], [0, 0, -1, 0]]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    rc = cli.main(["standardize"])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["relative"] is True
    assert payload["eps_word"] == []


def test_cli_expand_round_trip(monkeypatch, capsys):
    phi = jsonio.matrix_to_json(standard_symplectic_form(Z27, 1))
    request = {"ring": {"kind": "zmod", "m": 27},
               "direction": "expand",
               "word": [{"gen": "rho", "q": [3, 6], "alpha": 9,
                         "form": phi, "inv": False}]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    rc = cli.main(["expand"])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["size"] == 4
    assert all(item["gen"] == "se" for item in payload["output"])
    grouped_req = {"ring": {"kind": "zmod", "m": 27},
                   "direction": "group", "size": 4,
                   "word": payload["output"]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(grouped_req)))
    rc = cli.main(["expand"])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    kinds = [item["gen"] for item in payload["output"]]
    assert kinds == ["rho"]


def test_cli_expand_empty_word_is_identity(monkeypatch, capsys):
    request = {"ring": {"kind": "zmod", "m": 27},
               "direction": "group", "size": 4, "word": []}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    rc = cli.main(["expand"])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["output"] == []


def test_cli_no_command(capsys):
    rc = cli.main([])
    assert rc == 2


def test_result_serializers_have_expected_keys():
    from elemcalc import decompose_conjugate
    c = certify(I3, [Z27.el(1)])
    g = Word(Z27, 6, ())
    res = decompose_conjugate(g, 1, 2, c, c)
    payload = jsonio.decomposition_to_json(res)
    assert set(payload) == {"verified", "output", "target", "achieved",
                            "lemma_trace"}
    text1 = jsonio.dumps(payload)
    text2 = jsonio.dumps(jsonio.decomposition_to_json(
        decompose_conjugate(g, 1, 2, c, c)))
    assert text1 == text2
