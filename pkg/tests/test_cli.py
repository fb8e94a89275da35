import json
import subprocess
import sys

from qdslab import cli, groups, qds as Q

FANO = {"group": {"type": "cyclic_product", "moduli": [7]}, "qds": [0, 1, 3], "meta": {"name": "fano"}}


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(args, capsys, env=None):
    code = cli.run(args, env=env or {})
    out = capsys.readouterr()
    return code, out.out, out.err


def report(out):
    return json.loads(out)


def make(tmp_path, capsys, name, *args):
    out = str(tmp_path / name)
    code, _, err = run(["make", *args, "--out", out], capsys)
    assert code == 0, err
    return out


def test_check_fano(tmp_path, capsys):
    f = write(tmp_path, "fano.json", FANO)
    code, out, _ = run(["check", f, "--qds", "--perfect"], capsys)
    r = report(out)
    assert code == 0 and r["results"] == {"qds": True, "perfect": True}
    assert set(r) == {"command", "input_digest", "results", "version", "wall_time"}


def test_check_star_false(tmp_path, capsys):
    f = make(tmp_path, capsys, "c3.json", "--canonical", "3,3,3")
    code, out, _ = run(["check", f, "--star"], capsys)
    assert code == 1 and report(out)["results"]["star"] is False


def test_malformed(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(["check", str(p)], capsys)[0] == 2
    bad = dict(FANO, extra=1)
    assert run(["check", write(tmp_path, "x.json", bad)], capsys)[0] == 2
    bad = {"group": {"type": "cyclic_product", "moduli": [7], "x": 1}, "qds": [0]}
    assert run(["check", write(tmp_path, "y.json", bad)], capsys)[0] == 2
    bad = {"group": {"type": "cyclic_product", "moduli": [7]}, "qds": [0, 9]}
    assert run(["check", write(tmp_path, "z.json", bad)], capsys)[0] == 2
    assert run(["check", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["nosuchverb"], capsys)[0] == 2


def test_export(tmp_path, capsys):
    p = make(tmp_path, capsys, "pappus.json", "--canonical", "3,3")
    code, out, _ = run(["export", p, "--format", "matrix"], capsys)
    rows = out.splitlines()
    assert code == 0 and len(rows) == 9 and all(r.count("1") == 3 for r in rows)
    f = write(tmp_path, "fano.json", FANO)
    code, out, _ = run(["export", f, "--format", "levi-dot"], capsys)
    verts = {t.rstrip(";") for t in out.split() if t.rstrip(";")[:1] in "pL" and t.rstrip(";")[1:].isdigit()}
    assert len(verts) == 14
    assert run(["export", f, "--format", "png"], capsys)[0] == 2


def test_export_is_byte_identical(tmp_path, capsys):
    f = write(tmp_path, "fano.json", FANO)
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    run(["export", f, "--out", a], capsys)
    run(["export", f, "--out", b], capsys)
    assert open(a, "rb").read() == open(b, "rb").read()


def test_props(tmp_path, capsys):
    c3 = make(tmp_path, capsys, "c3.json", "--canonical", "3,3,3")
    code, out, _ = run(["props", c3, "--veblen", "--desargues"], capsys)
    r = report(out)["results"]
    assert r["veblen"]["holds"] is False and r["veblen"]["counterexample"]
    assert r["desargues"]["holds"] is True
    assert code == 1
    c4 = make(tmp_path, capsys, "c4.json", "--canonical", "4,4")
    code, out, _ = run(["props", c4, "--veblen", "--desargues", "--pappus"], capsys)
    r = report(out)["results"]
    assert r["veblen"]["holds"] and r["desargues"]["holds"] and r["pappus"]["embeds"] is False
    f = write(tmp_path, "fano.json", FANO)
    code, out, _ = run(["props", f, "--dual"], capsys)
    r = report(out)["results"]["dual"]
    assert code == 0 and r["self_dual"] and r["selfconjugate_points"] == [0, 4, 5]


def test_aut(tmp_path, capsys):
    c3 = write(tmp_path, "c3.json", {"group": {"type": "cyclic_product", "moduli": [3]}, "qds": [0, 1]})
    mf = make(tmp_path, capsys, "mf.json", "--sum", c3, write(tmp_path, "fano.json", FANO))
    code, out, _ = run(["aut", mf, "--expected", "21"], capsys)
    r = report(out)["results"]
    assert code == 0 and r["order"] == 21 and r["matches_expected"]
    assert run(["aut", mf, "--expected", "22"], capsys)[0] == 1
    f2 = make(tmp_path, capsys, "f2.json", "--power", str(tmp_path / "fano.json"), "2")
    code, out, _ = run(["aut", f2, "--expected", "98", "--order-only", "--stabilizer", "0,0"], capsys)
    r = report(out)["results"]
    assert code == 0 and r["stabilizer"]["order"] == 2 and "generators" not in r


def test_iso(tmp_path, capsys):
    a = make(tmp_path, capsys, "p.json", "--canonical", "3,3")
    m1 = write(tmp_path, "n1.json", {"group": {"type": "cyclic_product", "moduli": [13]}, "qds": [0, 1, 3, 9]})
    m2 = write(tmp_path, "n2.json", {"group": {"type": "cyclic_product", "moduli": [13]}, "qds": [0, 2, 8, 12]})
    s1 = make(tmp_path, capsys, "m1.json", "--sum", a, m1)
    s2 = make(tmp_path, capsys, "m2.json", "--sum", a, m2)
    code, out, _ = run(["iso", s1, s2], capsys)
    assert code == 1 and report(out)["results"] == {"isomorphic": False}
    code, out, _ = run(["iso", m1, m2], capsys)
    assert code == 0 and report(out)["results"]["isomorphic"]


def test_make_singer(tmp_path, capsys):
    code, out, _ = run(["make", "--singer", "3"], capsys)
    docs = json.loads(out)
    assert code == 0 and len(docs) == 4
    assert docs[0]["qds"] == [0, 1, 3, 9]
    for d in docs:
        desc = cli.parse_description(d)
        assert Q.is_perfect_difference_set(desc.group, desc.qds)


def test_make_roundtrip(tmp_path, capsys):
    p = make(tmp_path, capsys, "pappus.json", "--canonical", "3,3")
    desc, _ = cli.load_description(p)
    assert desc.qds == Q.canonical_set([3, 3])
    f = write(tmp_path, "fano.json", FANO)
    p2 = make(tmp_path, capsys, "f2.json", "--power", f, "2")
    desc, _ = cli.load_description(p2)
    F = Q.make_qds(groups.cyclic(7), [0, 1, 3])
    assert desc.qds == Q.qds_power(F, 2)
    # canonical re-serialization is stable
    assert cli.dump_json(cli.description_doc(desc.group, desc.qds)) == open(p2).read()


def test_reports_stable(tmp_path, capsys):
    f = write(tmp_path, "fano.json", FANO)
    r1 = report(run(["aut", f], capsys)[1])
    r2 = report(run(["aut", f], capsys)[1])
    r1.pop("wall_time"), r2.pop("wall_time")
    assert r1 == r2


def test_neighborhood_component_part(tmp_path, capsys):
    c3 = write(tmp_path, "c3.json", {"group": {"type": "cyclic_product", "moduli": [3]}, "qds": [0, 1]})
    mf = make(tmp_path, capsys, "mf.json", "--sum", c3, write(tmp_path, "fano.json", FANO))
    code, out, _ = run(["neighborhood", mf, "0,0"], capsys)
    r = report(out)["results"]
    assert code == 0 and r["center"] == [0, 0] and [0, 0] in r["points"]
    code, out, _ = run(["component", mf, "0,0"], capsys)
    assert report(out)["results"]["size"] == 21
    code, out, _ = run(["part", mf, "--J", "1", "--c", "2"], capsys)
    r = report(out)["results"]
    assert code == 0 and len(r["points"]) == 7 and r["target"]["qds"] == [0, 1, 3]
    assert run(["part", mf, "--J", "1", "--c", "7"], capsys)[0] == 2
    c6 = write(tmp_path, "c6.json", {"group": {"type": "cyclic_product", "moduli": [6]}, "qds": [0, 2]})
    r = report(run(["component", c6, "1"], capsys)[1])["results"]
    assert r["size"] == 3 and r["components"] == 2


def test_caps(tmp_path, capsys):
    c3 = make(tmp_path, capsys, "c3.json", "--canonical", "3,3,3")
    assert run(["aut", c3], capsys, env={"QDSLAB_MAX_STEPS": "2"})[0] == 3
    # the flag wins over the environment
    assert run(["aut", c3, "--max-steps", "100000"], capsys, env={"QDSLAB_MAX_STEPS": "2"})[0] == 0
    assert run(["aut", c3], capsys, env={"QDSLAB_MAX_STEPS": "many"})[0] == 2


def test_cayley_description(tmp_path, capsys):
    from conftest import S3_TABLE
    f = write(tmp_path, "s3.json", {"group": {"type": "cayley", "table": S3_TABLE}, "qds": [0, 1]})
    code, out, _ = run(["build", f], capsys)
    r = report(out)["results"]
    assert code == 0 and r["points"] == 6 and r["components"] == 2
    code, out, _ = run(["props", f, "--dual"], capsys)
    assert report(out)["results"]["dual"]["method"] == "search"


def test_console_entry_point(tmp_path):
    f = write(tmp_path, "fano.json", FANO)
    res = subprocess.run([sys.executable, "-m", "qdslab.cli", "check", f, "--perfect"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["results"]["perfect"]
