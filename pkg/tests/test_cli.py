import json
from fractions import Fraction

import pytest

from compvanish.catalog import MINIMAL
from compvanish.certify import load_certificates, verify, write_certificate
from compvanish.cli import main
from compvanish.graph import encode_graph6
from compvanish.structure import CertificateStore

from conftest import cycle, minimal, path

G1 = dict(MINIMAL)["G1"]
H2 = "G~U`}W"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", G1, encode_graph6(path(4)))
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["verdict"] for r in recs] == ["CV", "NotCV"]
    assert recs[0]["robust_alpha"] is True and recs[1]["robust_alpha"] is None


def test_classify_file_and_bad_line(capsys, tmp_path):
    f = tmp_path / "in.g6"
    f.write_text(f"{G1}\n!!bad\n")
    code, out, _ = run(capsys, "classify", "--file", str(f))
    assert code == 2
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["verdict"] == "CV" and "error" in recs[1]


def test_classify_db(capsys, tmp_path):
    db = tmp_path / "db.g6"
    db.write_text("@\n")
    # a small leaf missing from the database is taken as not CV
    code, out, _ = run(capsys, "classify", "--db", str(db), G1)
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "NotCV" and "minimal" in rec["reason"][0]


def test_certify_and_verify(capsys, tmp_path):
    target = tmp_path / "c.json"
    code, out, _ = run(capsys, "certify", G1, "--out", str(target))
    assert code == 0 and target.exists()
    (cert,) = load_certificates(target.read_text())
    assert verify(cert)
    code, out, _ = run(capsys, "verify", G1, str(target))
    assert code == 0 and out.startswith("Valid")
    # the same file does not certify a different graph
    code, out, _ = run(capsys, "verify", dict(MINIMAL)["G2"], str(target))
    assert code == 1 and "Invalid" in out


def test_certify_directory_default_name(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("COMPVANISH_OUT", str(tmp_path))
    code, _, _ = run(capsys, "certify", encode_graph6(cycle(4)), "--methods", "twin")
    assert code == 0
    assert len(list(tmp_path.glob("cert_n4_*.json"))) == 1


def test_certify_failure(capsys, tmp_path):
    code, out, err = run(capsys, "certify", encode_graph6(path(4)), "--attempts", "10",
                         "--out", str(tmp_path))
    assert code == 1
    assert "twin" in out + err and "random" in out + err
    assert not list(tmp_path.iterdir())


def test_verify_detects_tampering(capsys, tmp_path):
    cert = CertificateStore.default().lookup(minimal("G1"))
    f = tmp_path / "c.json"
    write_certificate(f, cert)
    data = json.loads(f.read_text())
    record = data[0] if isinstance(data, list) else data
    record["A"][0][0] = str(Fraction(record["A"][0][0]) + 1)
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", G1, str(f))
    assert code == 1 and "Invalid" in out


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", G1, str(tmp_path / "none.json"))
    assert code == 2 and err


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "5", "--filter", "cc")
    assert code == 0 and len(out.split()) == 5
    assert out.split() == sorted(out.split())
    code, _, err = run(capsys, "generate", "9")
    assert code == 2 and err


def test_census_small(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--max-n", "5", "--out", str(tmp_path))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n\tdiag") and lines[-1].split("\t")[-1] == "5"
    assert (tmp_path / "census.tsv").read_text().strip() == out.strip()
    ledger = (tmp_path / "ledger.jsonl").read_text().splitlines()
    assert len(ledger) == 1 + 1 + 5


def test_census_file(capsys, tmp_path):
    f = tmp_path / "in.g6"
    f.write_text(f"{G1}\n{H2}\n")
    code, out, _ = run(capsys, "census", "--file", str(f))
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
    assert [r[-1] for r in rows] == ["0"] * 6 + ["1", "1"]
    assert rows[7][3] == "1" and rows[6][6] == "1"


@pytest.mark.parametrize("argv", [
    ["census", "--max-n", "9"],
    ["census", "--limits", "1,2"],
    ["groebner", H2, "--limits", "x,y,z"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_groebner(capsys):
    code, out, _ = run(capsys, "groebner", H2, "--limits", "5000,8,20")
    assert code == 0 and "Refuted" in out
    code, out, _ = run(capsys, "groebner", "A_", "--tree-side", "G")
    assert code == 1 and "Inconclusive" in out


def test_groebner_diag_refuted(capsys):
    code, out, _ = run(capsys, "groebner", encode_graph6(path(4)))
    assert code == 1 and "diagonal" in out


def test_no_command(capsys):
    code, _, err = run(capsys)
    assert code == 2 and "required" in err
