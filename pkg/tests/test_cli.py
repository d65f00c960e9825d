import json
import subprocess
import sys

import pytest

from mobius import io
from mobius.cli import main, parse_args
from mobius.errors import FunctorialityError, ParseError
from mobius.modules import random_module
from mobius.generators import diamond

DIAMOND = {"elements": ["0", "x", "y", "1"], "relations": [["0", "x"], ["0", "y"], ["x", "1"], ["y", "1"]]}
CHAIN = {"elements": ["a", "b"], "relations": [["a", "b"]]}


def module(top_scale=1, bad_shape=False):
    return {
        "field": {"kind": "rationals"},
        "dims": {"0": 1, "x": 1, "y": 1, "1": 1},
        "maps": {
            "0<x": [[1, 0]] if bad_shape else [[1]],
            "0<y": [[1]],
            "x<1": [[1]],
            "y<1": [[top_scale]],
        },
    }


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_args():
    args = parse_args(["cohomology", "m.json", "--at", "a"])
    assert args.command == "cohomology" and args.at == "a"
    assert parse_args(["invert", "p.json", "f.json", "--lower"]).lower
    with pytest.raises(SystemExit) as exc:
        parse_args(["cohomology", "m.json", "--at", "a", "--spread", "a,b"])
    assert exc.value.code == 2


def test_module_loading(files):
    M = io.module_from_json(module())
    assert M.dims == {"0": 1, "x": 1, "y": 1, "1": 1}
    with pytest.raises(ParseError, match="0<x"):
        io.module_from_json(module(bad_shape=True))
    with pytest.raises(FunctorialityError, match="'0'.*'1'"):
        io.module_from_json(module(top_scale=2))


def test_module_round_trip():
    M = random_module(diamond(), seed=11)
    assert io.module_from_json(json.loads(json.dumps(io.module_to_json(M)))) == M


def test_mobius_and_invert(files, capsys):
    p = files("p.json", DIAMOND)
    code, out, _ = run(["mobius", p, "--format", "json"], capsys)
    assert code == 0
    mu = {(r["a"], r["b"]): r["mu"] for r in json.loads(out)["mu"]}
    assert mu["0", "1"] == 1
    f = files("f.json", {"values": {"0": 1, "x": 1, "y": 1, "1": 1}})
    code, out, _ = run(["invert", p, f, "--format", "json"], capsys)
    assert json.loads(out)["values"] == {"0": 0, "x": 0, "y": 0, "1": 1}
    code, out, _ = run(["invert", p, f, "--lower", "--format", "json"], capsys)
    assert json.loads(out)["values"] == {"0": 1, "x": 0, "y": 0, "1": 0}


def test_cohomology_formats_agree(files, capsys):
    m = files("m.json", module())
    _, table, _ = run(["cohomology", m, "--spread", "x,1"], capsys)
    _, js, _ = run(["cohomology", m, "--spread", "x,1", "--format", "json"], capsys)
    (res,) = json.loads(js)["results"]
    assert res == {"target": "x,1", "betti": [1, 0], "euler": 1}
    assert table.splitlines()[1].split() == ["x,1", "1", "0", "1"]


@pytest.mark.parametrize(
    "argv_tail, code",
    [
        (["euler-check", "{m}"], 0),
        (["resolution-check", "{m}"], 0),
        (["cohomology", "{bad}"], 3),
        (["cohomology", "{m}", "--spread", "0,1"], 3),
        (["cohomology", "{m}", "--at", "nope"], 3),
        (["cohomology", "{missing}"], 3),
        (["galois-check", "{c}", "{c}", "--f", "{swap}", "--g", "{swap}"], 3),
        (["galois-check", "{c}", "{c}", "--f", "{id}", "--g", "{id}", "--rota"], 0),
        (["galois-check", "{c}", "{c}", "--f", "{top}", "--g", "{top}"], 1),
        (["enumerate-galois", "{c}", "{p}"], 0),
        (["selftest", "--trials", "0"], 0),
    ],
)
def test_exit_codes(files, capsys, tmp_path, argv_tail, code):
    paths = {
        "m": files("m.json", module()),
        "bad": files("bad.json", module(top_scale=2)),
        "missing": str(tmp_path / "nothing.json"),
        "c": files("c.json", CHAIN),
        "p": files("p.json", DIAMOND),
        "id": files("id.json", {"values": {"a": "a", "b": "b"}}),
        "swap": files("swap.json", {"values": {"a": "b", "b": "a"}}),
        "top": files("top.json", {"values": {"a": "b", "b": "b"}}),
    }
    argv = [t.format(**paths) for t in argv_tail]
    assert run(argv, capsys)[0] == code


def test_usage_errors(files, capsys):
    c, i = files("c.json", CHAIN), files("id.json", {"values": {"a": "a", "b": "b"}})
    with pytest.raises(SystemExit) as exc:
        main(["galois-check", c, c, "--f", i, "--g", i, "--at", "a"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_galois_subchecks(files, capsys):
    c, i = files("c.json", CHAIN), files("id.json", {"values": {"a": "a", "b": "b"}})
    n = files("n.json", {"values": {"a": 3, "b": -2}})
    m = files("m.json", {"dims": {"a": 2, "b": 1}, "maps": {"a<b": [[1, 1]]}})
    for extra in (["--rota-inversion", n], ["--rota-ext", m, "--at", "a"], ["--adjunctions", m, m]):
        code, out, _ = run(["galois-check", c, c, "--f", i, "--g", i, "--format", "json", *extra], capsys)
        assert code == 0 and json.loads(out)["status"] == "pass"


def test_selftest_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("MOBIUS_SEED", "9")
    code, out, _ = run(["selftest", "--trials", "1", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["title"] == "selftest seed=9 trials=1"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mobius", "selftest", "--trials", "2", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
