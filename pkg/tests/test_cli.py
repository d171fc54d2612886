import pytest

from posetrep.cli import main
from posetrep.fileio import format_poset, load_poset, load_sspace, save_sspace
from posetrep.linalg import QQ, Subspace
from posetrep.sspace import SSpace


EX510_TEXT = """elements: a b c d e f g p
relations: p<a p<b p<c e<p e<d g<e g<f
"""


@pytest.fixture
def ex510_file(tmp_path):
    path = tmp_path / "ex510.poset"
    path.write_text(EX510_TEXT)
    return str(path)


@pytest.fixture
def three_file(tmp_path):
    path = tmp_path / "three.poset"
    path.write_text("elements: x y z\nrelations:\n")
    return str(path)


def test_check_ok(ex510_file, capsys):
    assert main(["check", ex510_file]) == 0
    assert "width" in capsys.readouterr().out


def test_check_cycle(tmp_path, capsys):
    bad = tmp_path / "cyc.poset"
    bad.write_text("elements: a b\nrelations: a<b b<a\n")
    assert main(["check", str(bad)]) == 1
    assert "CycleDetected" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["derive"])
    assert exc.value.code == 2


def test_dot(ex510_file, capsys):
    assert main(["dot", ex510_file]) == 0
    out = capsys.readouterr().out
    assert out.count("->") == 7
    assert '"p" -> "a";' in out


def test_derive_example(ex510_file, tmp_path, capsys):
    emitted = str(tmp_path / "derived.poset")
    assert main(["derive", ex510_file, "--point", "p", "--mode", "filter",
                 "--emit", emitted]) == 0
    out = capsys.readouterr().out
    assert "d^f" in out
    assert "d^f<d" in out and "d^f<f" in out
    derived = load_poset(emitted)
    assert set(derived.elements) == {"a", "b", "c", "d", "f", "d^f"}
    # round trip: emitted file re-parses to an equal poset
    assert format_poset(derived) == out


def test_derive_unknown_point(ex510_file, capsys):
    assert main(["derive", ex510_file, "--point", "zz", "--mode", "filter"]) == 1
    assert "UnknownLabel" in capsys.readouterr().err


def test_derive_not_applicable(tmp_path, capsys):
    path = tmp_path / "four.poset"
    path.write_text("elements: x y z w\nrelations:\n")
    assert main(["derive", str(path), "--point", "x", "--mode", "filter"]) == 1
    assert "NotApplicable" in capsys.readouterr().err


def test_diff_writes_files(three_file, tmp_path, capsys):
    p = load_poset(three_file)
    v = SSpace(p, QQ, 2, {
        "x": Subspace.from_rows(QQ, 2, [[1, 0]]),
        "y": Subspace.from_rows(QQ, 2, [[0, 1]]),
        "z": Subspace.from_rows(QQ, 2, [[1, 1]]),
    })
    vpath = tmp_path / "v.ssp"
    save_sspace(v, str(vpath), three_file)
    out = str(tmp_path / "dv.ssp")
    assert main(["diff", str(vpath), "--point", "x", "--mode", "filter",
                 "--out", out]) == 0
    image = load_sspace(out)
    assert image.dim == 1
    assert image.sub("y^z").is_zero()


def test_hom(three_file, tmp_path, capsys):
    p = load_poset(three_file)
    u = SSpace(p, QQ, 1, {s: Subspace.full(QQ, 1) for s in p.elements})
    save_sspace(u, str(tmp_path / "u.ssp"), three_file)
    assert main(["hom", str(tmp_path / "u.ssp"), str(tmp_path / "u.ssp")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("dim 1")
    assert "basis 0: 1" in out


def test_apply_dual_and_res(three_file, tmp_path, capsys):
    p = load_poset(three_file)
    v = SSpace(p, QQ, 2, {"x": Subspace.from_rows(QQ, 2, [[1, 0]])})
    vpath = str(tmp_path / "v.ssp")
    save_sspace(v, vpath, three_file)
    out = str(tmp_path / "res.ssp")
    assert main(["apply", vpath, "--functor", "res", "--elements", "x,y",
                 "--out", out]) == 0
    assert set(load_sspace(out).poset.elements) == {"x", "y"}
    assert main(["apply", vpath, "--functor", "dual"]) == 0
    assert "field: Q" in capsys.readouterr().out
    assert main(["apply", vpath, "--functor", "Ep", "--point", "x",
                 "--out", str(tmp_path / "ep.ssp")]) == 0
    assert load_sspace(str(tmp_path / "ep.ssp")).dim == 1
    assert main(["apply", vpath, "--functor", "E^p", "--point", "x",
                 "--out", str(tmp_path / "eup.ssp")]) == 0
    assert load_sspace(str(tmp_path / "eup.ssp")).dim == 1


def test_apply_missing_flag(three_file, tmp_path, capsys):
    p = load_poset(three_file)
    v = SSpace(p, QQ, 1, {})
    vpath = str(tmp_path / "v.ssp")
    save_sspace(v, vpath, three_file)
    assert main(["apply", vpath, "--functor", "res"]) == 1
    assert "res needs --elements" in capsys.readouterr().err


def test_nu_plain_and_trace(three_file, capsys):
    assert main(["nu", three_file]) == 0
    assert capsys.readouterr().out.strip() == "nu=9"
    assert main(["nu", three_file, "--trace"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[-1] == "nu=9"
    assert "point=x mode=filter a-count=3" in lines[0]


def test_nu_all_paths(tmp_path, capsys):
    path = tmp_path / "p112.poset"
    path.write_text("elements: x y u w\nrelations: u<w\n")
    assert main(["nu", str(path), "--strategy", "all-paths"]) == 0
    assert capsys.readouterr().out.strip() == "nu=15"


def test_oracle_table(three_file, capsys):
    assert main(["oracle", three_file, "--field", "2", "--maxdim", "2"]) == 0
    out = capsys.readouterr().out
    assert "dim | #classes | #indecomposable" in out
    lines = [l for l in out.strip().split("\n")[1:]]
    assert lines[0].split("|")[2].strip() == "8"
    assert lines[1].split("|")[2].strip() == "1"


def test_oracle_cross_check_and_reps(three_file, tmp_path, capsys):
    assert main(["oracle", three_file, "--cross-check"]) == 0
    assert "nu=9" in capsys.readouterr().out
    reps = str(tmp_path / "reps")
    assert main(["oracle", three_file, "--reps", reps]) == 0
    out = capsys.readouterr().out
    assert "wrote 9 representatives" in out
    assert load_sspace(f"{reps}/indec000.ssp").dim == 1


def test_oracle_guardrail(tmp_path, capsys):
    path = tmp_path / "big.poset"
    path.write_text("elements: a b c d e f g\nrelations:\n")
    assert main(["oracle", str(path)]) == 1
    assert "GuardrailExceeded" in capsys.readouterr().err


def test_verify_smoke(capsys):
    assert main(["verify", "--cases", "4",
                 "--only", "diff-direct-vs-composite,nu-path-independence"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert "diff-direct-vs-composite" in out


def test_determinism(ex510_file, capsys):
    main(["derive", ex510_file, "--point", "p", "--mode", "filter"])
    first = capsys.readouterr().out
    main(["derive", ex510_file, "--point", "p", "--mode", "filter"])
    assert capsys.readouterr().out == first
    main(["nu", ex510_file, "--trace"])
    t1 = capsys.readouterr().out
    main(["nu", ex510_file, "--trace"])
    assert capsys.readouterr().out == t1
