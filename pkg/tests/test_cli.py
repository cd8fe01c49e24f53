import json
import shutil
import subprocess
import sys

import pytest

from binghouse.cli import EXIT_DATA, EXIT_FAIL, EXIT_OK, main
from binghouse.complex import SimplicialMap
from binghouse.constructions.builders import DATA_DIR
from corpus import boundary_of_simplex, circle, rp2, simplex


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_help_lists_every_subcommand():
    out = subprocess.run([sys.executable, "-m", "binghouse", "--help"], capture_output=True, text=True).stdout
    for cmd in ("build", "verify", "homology", "pi1", "collapse", "immerse", "export"):
        assert cmd in out


def test_homology(tmp_path, capsys):
    f = write(tmp_path, "rp2.json", rp2().to_json())
    code, out = run(capsys, "homology", f)
    assert code == EXIT_OK
    assert json.loads(out)["torsion"] == [[], [2], []]
    code, out = run(capsys, "homology", f, "--z2")
    assert json.loads(out)["betti"] == [1, 1, 1]


def test_invalid_complex_is_refused(tmp_path):
    f = write(tmp_path, "bad.json", {"vertices": [{"id": 0}, {"id": 1}], "top_simplices": [[0, 0, 1]]})
    with pytest.raises(SystemExit):
        main(["homology", f])


def test_pi1(tmp_path, capsys):
    f = write(tmp_path, "s2.json", boundary_of_simplex(3).to_json())
    code, out = run(capsys, "pi1", f)
    assert json.loads(out)["certified_trivial"] is True
    f = write(tmp_path, "c.json", circle(5).to_json())
    code, out = run(capsys, "pi1", f)
    assert json.loads(out)["generators"] and not json.loads(out)["certified_trivial"]


def test_collapse_greedy_and_exhaustive(tmp_path, capsys):
    f = write(tmp_path, "d.json", simplex(2).to_json())
    code, out = run(capsys, "collapse", f)
    data = json.loads(out)
    assert data["free_faces"] == 3 and data["residue_f_vector"] == [1]
    code, out = run(capsys, "collapse", f, "--exhaustive")
    assert json.loads(out)["collapsible"] == "yes"


def test_immerse(tmp_path, capsys):
    cover = SimplicialMap(circle(6), circle(3), {v: v % 3 for v in range(6)})
    f = write(tmp_path, "f.json", cover.to_json())
    code, out = run(capsys, "immerse", f, "--weights", "m")
    data = json.loads(out)
    assert code == EXIT_OK and data["immersion"] is True
    assert data["multiplicity_histogram"] == {"2": 3}


def test_immerse_degenerate_exit_code(tmp_path, capsys):
    g = SimplicialMap(simplex(1), simplex(0), {0: 0, 1: 0})
    f = write(tmp_path, "g.json", g.to_json())
    assert main(["immerse", f]) == EXIT_FAIL


def test_export_off(tmp_path, capsys):
    data = simplex(2).to_json()
    for v, c in zip(data["vertices"], [(0, 0, 0), (1, 0, 0), (0, 1, 0)]):
        v["coords"] = list(c)
    f = write(tmp_path, "t.json", data)
    code, out = run(capsys, "export", f, "--off")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "OFF" and lines[1].split()[:2] == ["3", "1"]


def test_export_without_coords_fails(tmp_path, capsys):
    f = write(tmp_path, "t.json", simplex(2).to_json())
    assert main(["export", f, "--off"]) == EXIT_FAIL


def test_build_house2d(tmp_path, capsys):
    code, _ = run(capsys, "build", "house2d", "--out", str(tmp_path))
    assert code == EXIT_OK
    for name in ("X.json", "sphere.json", "f.json"):
        assert (tmp_path / name).exists()
    code, out = run(capsys, "homology", str(tmp_path / "X.json"))
    assert json.loads(out)["betti"] == [1, 0, 0]


def test_verify_house2d_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "house2d", "--report", str(a)]) == EXIT_OK
    assert main(["verify", "house2d", "--report", str(b), "--jobs", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert all(c["verdict"] == "pass" for c in report["checks"])


def test_verify_timings_are_opt_in(tmp_path, capsys):
    a = tmp_path / "a.json"
    main(["verify", "house2d", "--only", "house2d.X", "--timings", "--report", str(a)])
    checks = json.loads(a.read_text())["checks"]
    assert checks and all("timing_s" in c for c in checks)
    main(["verify", "house2d", "--only", "house2d.X", "--report", str(a)])
    assert not any("timing_s" in c for c in json.loads(a.read_text())["checks"])


def test_tampered_data_exit_code(tmp_path, capsys):
    d = tmp_path / "data"
    shutil.copytree(DATA_DIR, d)
    with open(d / "house2d.json", "a") as fh:
        fh.write(" ")
    assert main(["--data-dir", str(d), "verify", "house2d"]) == EXIT_DATA
    assert main(["--data-dir", str(d), "build", "house2d", "--out", str(tmp_path / "o")]) == EXIT_DATA


def test_missing_file_exit_code(tmp_path):
    assert main(["homology", str(tmp_path / "none.json")]) == EXIT_DATA
