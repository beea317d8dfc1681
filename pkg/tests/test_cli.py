import io
import threading

import pytest

from partlat import auth
from partlat.cli import main
from partlat.combinatorics import m_of_n, render_tables
from partlat.partition import tuple_from_text


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_tables_matches_renderer():
    code, text = run(["tables", "--max-n", "12", "--no-extra"])
    assert code == 0 and text == render_tables(12, extra=())


def test_tables_csv_exact_for_2020():
    code, text = run(["tables", "--max-n", "12", "--format", "csv"])
    assert code == 0
    last = text.strip().splitlines()[-1]
    assert last.startswith("2020,") and "e" not in last
    n, maxs, m, mhat = last.split(",")
    assert int(m) == m_of_n(2020)


def test_gen4_certificate_valid():
    code, text = run(["gen4", "--n", "7", "--verify", "certificate", "-q"])
    assert code == 0 and text.strip().endswith("RESULT VALID")


def test_gen4_theorem2_emits_order():
    code, text = run(["gen4", "--n", "8", "--theorem", "2", "--verify", "certificate", "--emit", "-q"])
    assert code == 0
    assert "ORDER 3 0 <=" in text and "RESULT VALID" in text


def test_gen4_small_n_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen4", "--n", "4"], out=io.StringIO())
    assert exc.value.code == 2


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"], out=io.StringIO())
    assert exc.value.code == 2


def test_zadori_closure():
    code, text = run(["zadori", "--n", "6", "--verify", "closure"])
    assert code == 0 and "closure_size 203 PASS" in text


def test_closure_from_file(tmp_path):
    gens = tmp_path / "g.txt"
    gens.write_text("# two atoms per coordinate\n1,2|3;1|2|3\n1|2,3;1|2|3\n1|2|3;1,2|3\n1|2|3;1|2,3\n")
    code, text = run(["closure", "--shape", "P3^2", "--gens", str(gens), "--full"])
    assert code == 1 and "closure_size 16" in text and "GENERATING no" in text


def test_distance_and_term():
    assert run(["distance", "1,2|3|4", "1|2|3,4"]) == (0, "2\n")
    code, text = run(["term", "stats", "(* x1 (+ x2 x1))"])
    assert "operations 2" in text and "occurrences 3" in text
    code, text = run(["term", "eval", "(+ x1 x2)", "1,2|3", "1|2,3"])
    assert text.strip() == "1,2,3"
    a = run(["--seed", "4", "term", "random", "--steps", "30"])
    b = run(["term", "random", "--steps", "30", "--seed", "4"])
    assert a == b


def test_sample_csv():
    code, text = run(["sample", "--n", "4", "--size", "6", "--samples", "50", "--csv"])
    assert code == 0 and text.splitlines()[0].startswith("n,")


def test_keygen_commit_verify(tmp_path):
    key = tmp_path / "k.txt"
    rec = tmp_path / "r.txt"
    assert run(["auth", "keygen", "--shape", "P7^3", "--check", "--out", str(key)])[0] == 0
    assert auth.read_secret(key).shape.t == 3
    assert run(["auth", "commit", "--secret", str(key), "--steps", "50", "--out", str(rec)])[0] == 0
    assert run(["auth", "verify", "--secret", str(key), "--record", str(rec)]) == (0, "RESULT VALID\n")
    lines = rec.read_text().splitlines()
    # replace one response tuple with the bottom of the shape
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("RESPONSE"))
    parts = lines[idx].split()
    parts[2] = ";".join(["1|2|3|4|5|6|7"] * 3) if parts[2] != ";".join(["1|2|3|4|5|6|7"] * 3) \
        else ";".join(["1,2,3,4,5,6,7"] * 3)
    lines[idx] = " ".join(parts)
    rec.write_text("\n".join(lines) + "\n")
    assert run(["auth", "verify", "--secret", str(key), "--record", str(rec)]) == (1, "RESULT INVALID\n")


def test_serve_and_prove_over_tcp(tmp_path):
    key = tmp_path / "k.txt"
    run(["auth", "keygen", "--shape", "P5^1", "--out", str(key)])
    secret = auth.read_secret(key)
    server = auth.make_server(secret, "127.0.0.1", 0, steps=100)
    th = threading.Thread(target=server.handle_request)
    th.start()
    try:
        port = server.server_address[1]
        code, text = run(["auth", "prove", "--secret", str(key), "--connect", f"127.0.0.1:{port}"])
    finally:
        th.join(10)
        server.server_close()
    assert code == 0 and text == "RESULT OK\n"


def test_missing_file_is_error(tmp_path, capsys):
    code, _ = run(["auth", "verify", "--secret", str(tmp_path / "none"), "--record", "x"])
    assert code == 2
