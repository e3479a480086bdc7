import json

import pytest

from penthex.cli import bench_table, main
from penthex.serialize import patch_from_record


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_text(capsys):
    assert run(capsys, "decide", "2,2,2,2,2,2") == (0, "yes\n", "")
    assert run(capsys, "decide", "2222222")[1] == "no\n"


def test_decide_conjecture(capsys):
    code, _, err = run(capsys, "decide", "2323232323")
    assert code == 1 and "Unsupported" in err
    assert run(capsys, "decide", "--conjecture", "2323232323")[1] == "yes (conditional)\n"


def test_decide_record(capsys):
    code, out, _ = run(capsys, "decide", "--format", "record", "322232222")
    rec = json.loads(out)
    assert code == 0 and rec["answer"] == "yes" and rec["f5"] == 1 and rec["n"] == 9
    assert rec["witness"] is None


def test_witness_record(capsys):
    _, out, _ = run(capsys, "witness", "--format", "record", "322232222")
    rec = json.loads(out)
    (w,) = rec["witness"]
    p = patch_from_record(w)
    assert "".join(map(str, p.code)) == "322232222"
    assert rec["trace"]


def test_witness_text(capsys):
    _, out, _ = run(capsys, "witness", "22222")
    assert out.splitlines()[0] == "yes"
    assert "boundary 22222" in out


def test_witness_drawing(capsys, tmp_path):
    target = tmp_path / "w.svg"
    assert run(capsys, "witness", "--format", "drawing", "--out", str(target), "22222")[0] == 0
    assert target.read_text().startswith("<svg")
    target = tmp_path / "w.dot"
    run(capsys, "witness", "--format", "drawing", "--out", str(target), "22222")
    assert target.read_text().startswith("graph")


def test_count(capsys):
    assert run(capsys, "count", "--cap", "10", "223223223223")[1] == "2\n"
    _, out, _ = run(capsys, "count", "--cap", "1", "--format", "record", "223223223223")
    rec = json.loads(out)
    assert rec["count"] == 1 and rec["saturated"]


def test_oracle(capsys):
    assert run(capsys, "oracle", "22222")[1] == "1 solution\n"
    assert run(capsys, "oracle", "223223223223")[1] == "2 solutions\n"


@pytest.mark.parametrize("argv", [
    ["decide", "2x2"],
    ["decide", "22222,222222"],
    ["count", "--cap", "0", "22222"],
    ["decide", "--d", "0", "22222"],
    ["oracle", "2323232323"],
])
def test_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error")


def test_bench(capsys):
    rows = bench_table([6, 7])
    assert all(r["agree"] == r["codes"] for r in rows)
    code, out, _ = run(capsys, "bench", "--sizes", "5-6")
    assert code == 0 and out.splitlines()[0].split()[:2] == ["n", "f5"]
    assert run(capsys, "bench", "--sizes", "a-b")[0] == 1
