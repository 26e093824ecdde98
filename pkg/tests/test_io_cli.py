from fractions import Fraction

import pytest

from latfree.cli import main
from latfree.fileio import ParseError, format_hrep, format_vrep, parse_polyhedron
from latfree.polyhedra import Polyhedron

F = Fraction


def triangle():
    return Polyhedron.from_generators(2, [(F(1, 2), 0), (F(1, 2), 1), (F(3, 2), F(1, 2))])


def split01():
    return Polyhedron.from_inequalities(2, [((1, 0), 1), ((-1, 0), 0)])


# -- file format ---------------------------------------------------------------

def test_hrep_roundtrip():
    P = triangle()
    text = format_hrep(P)
    assert parse_polyhedron(text) == P
    assert format_hrep(parse_polyhedron(text)) == text  # print∘parse fixed point


def test_vrep_roundtrip():
    for P in (triangle(), split01()):
        text = format_vrep(P)
        assert parse_polyhedron(text) == P


def test_empty_file_roundtrip():
    e = Polyhedron.empty(3)
    text = format_hrep(e)
    assert text == "EMPTY 3\n"
    assert parse_polyhedron(text) == e


def test_comments_and_blank_lines_ignored():
    text = "# a polyhedron\n\nH 1 2\n# upper bound\n1 1\n0 -1\n"
    P = parse_polyhedron(text)
    assert set(P.vertices) == {(0,), (1,)}


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_polyhedron("H 2 1\n1 1\n")  # wrong token count
    with pytest.raises(ParseError, match="bad rational"):
        parse_polyhedron("H 1 1\nx 1\n")
    with pytest.raises(ParseError, match="expected 2 constraint rows"):
        parse_polyhedron("H 1 2\n1 1\n")
    with pytest.raises(ParseError, match="unknown header"):
        parse_polyhedron("Q 1 1\n1 1\n")
    with pytest.raises(ParseError, match="empty file"):
        parse_polyhedron("# nothing\n")


def test_parse_rejects_zero_denominator():
    with pytest.raises(ParseError, match="bad rational"):
        parse_polyhedron("H 1 1\n1/0 1\n")


# -- CLI -------------------------------------------------------------------------

def _write(path, poly):
    path.write_text(format_hrep(poly), encoding="utf-8")


def test_cmd_width(tmp_path, capsys):
    f = tmp_path / "split.h"
    _write(f, split01())
    assert main(["width", str(f)]) == 0
    assert capsys.readouterr().out.strip() == "1"

    h = tmp_path / "half.h"
    _write(h, Polyhedron.from_inequalities(2, [((1, 0), 0)]))
    assert main(["width", str(h)]) == 0
    assert capsys.readouterr().out.strip() == "inf"

    slab = tmp_path / "slab.h"
    _write(slab, Polyhedron.from_inequalities(2, [((1, 0), F(1, 2)), ((-1, 0), 0)]))
    assert main(["width", str(slab)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cmd_width_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.h"
    bad.write_text("H 2 1\nnope nope nope\n", encoding="utf-8")
    assert main(["width", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_cmd_remove_triangle(tmp_path, capsys):
    p, l, out = tmp_path / "p.h", tmp_path / "l.h", tmp_path / "r.h"
    _write(p, triangle())
    _write(l, split01())
    assert main(["remove", str(p), str(l), str(out)]) == 0
    R = parse_polyhedron(out.read_text(encoding="utf-8"))
    assert R == Polyhedron.from_generators(
        2, [(1, F(1, 4)), (1, F(3, 4)), (F(3, 2), F(1, 2))])
    assert len(R.constraints) == 3


def test_cmd_remove_disjoint_byte_identical(tmp_path):
    p, l, out = tmp_path / "p.h", tmp_path / "l.h", tmp_path / "r.h"
    _write(p, triangle())
    far = Polyhedron.from_inequalities(2, [((1, 0), 11), ((-1, 0), -10)])
    _write(l, far)
    assert main(["remove", str(p), str(l), str(out)]) == 0
    assert out.read_text(encoding="utf-8") == p.read_text(encoding="utf-8")


def test_cmd_remove_swallowed_empty(tmp_path):
    p, l, out = tmp_path / "p.h", tmp_path / "l.h", tmp_path / "r.h"
    _write(p, triangle())
    _write(l, Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)]))
    assert main(["remove", str(p), str(l), str(out)]) == 0
    assert out.read_text(encoding="utf-8") == "EMPTY 2\n"


def test_cmd_remove_dimension_mismatch(tmp_path, capsys):
    p, l, out = tmp_path / "p.h", tmp_path / "l.h", tmp_path / "r.h"
    _write(p, triangle())
    _write(l, Polyhedron.from_inequalities(1, [((1,), 1), ((-1,), 0)]))
    assert main(["remove", str(p), str(l), str(out)]) == 2


def test_cmd_closure_box_identity(tmp_path, capsys):
    p, out = tmp_path / "p.h", tmp_path / "c.h"
    box = Polyhedron.from_inequalities(
        2, [((1, 0), 3), ((-1, 0), 0), ((0, 1), 3), ((0, -1), 0)])
    _write(p, box)
    assert main(["closure", str(p), str(out),
                 "--splits-max-norm", "1", "--offsets=-1..4"]) == 0
    assert parse_polyhedron(out.read_text(encoding="utf-8")) == box
    assert capsys.readouterr().out == ""  # no cuts


def test_cmd_closure_triangle_empty(tmp_path, capsys):
    p, out = tmp_path / "p.h", tmp_path / "c.h"
    _write(p, triangle())
    assert main(["closure", str(p), str(out),
                 "--splits-max-norm", "1", "--offsets=-2..3"]) == 0
    assert out.read_text(encoding="utf-8") == "EMPTY 2\n"
    report = capsys.readouterr().out
    assert "cut" in report and "# body" in report


def test_cmd_closure_empty_family_echoes_input(tmp_path, capsys):
    p, out = tmp_path / "p.h", tmp_path / "c.h"
    _write(p, triangle())
    assert main(["closure", str(p), str(out)]) == 0
    assert out.read_text(encoding="utf-8") == p.read_text(encoding="utf-8")


def test_cmd_closure_deterministic(tmp_path, capsys):
    p, out1, out2 = tmp_path / "p.h", tmp_path / "c1.h", tmp_path / "c2.h"
    _write(p, triangle())
    main(["closure", str(p), str(out1), "--splits-max-norm", "1", "--offsets=-2..3"])
    rep1 = capsys.readouterr().out
    main(["closure", str(p), str(out2), "--splits-max-norm", "1", "--offsets=-2..3"])
    rep2 = capsys.readouterr().out
    assert out1.read_text(encoding="utf-8") == out2.read_text(encoding="utf-8")
    assert rep1 == rep2


def test_cmd_filter(tmp_path, capsys):
    p = tmp_path / "p.h"
    _write(p, triangle())
    s = tmp_path / "s.h"
    _write(s, split01())
    w = tmp_path / "w.h"
    _write(w, Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)]))

    assert main(["filter", str(p), "--family", str(s)]) == 0
    assert capsys.readouterr().out.strip() == "0"

    assert main(["filter", str(p), "--family", str(s), "--family", str(w)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cmd_filter_then_closure_unchanged(tmp_path, capsys):
    # closure over the retained subfamily matches the unfiltered closure
    from latfree.families import split_specs

    p = tmp_path / "p.h"
    _write(p, triangle())
    fam_files = []
    for i, spec in enumerate(split_specs(2, 1, range(-1, 3))):
        f = tmp_path / f"fam{i}.h"
        _write(f, spec.body())
        fam_files.append(str(f))
    fam_args = []
    for f in fam_files:
        fam_args += ["--family", f]

    assert main(["filter", str(p)] + fam_args) == 0
    kept = [int(tok) for tok in capsys.readouterr().out.split()]
    assert kept and len(kept) < len(fam_files)

    full, sub = tmp_path / "full.h", tmp_path / "sub.h"
    assert main(["closure", str(p), str(full)] + fam_args) == 0
    capsys.readouterr()
    kept_args = []
    for i in kept:
        kept_args += ["--family", fam_files[i]]
    assert main(["closure", str(p), str(sub)] + kept_args) == 0
    capsys.readouterr()
    assert full.read_text(encoding="utf-8") == sub.read_text(encoding="utf-8")


def test_cmd_check_outputs(tmp_path, capsys):
    from latfree.families import cross_polytope

    c2 = tmp_path / "c2.h"
    _write(c2, cross_polytope(2))
    assert main(["check", str(c2)]) == 0
    assert capsys.readouterr().out.strip() == "lattice-free: yes, maximal: yes, width: 2"

    sq = tmp_path / "sq.h"
    _write(sq, Polyhedron.from_inequalities(
        2, [((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)]))
    assert main(["check", str(sq)]) == 0
    out = capsys.readouterr().out
    assert "maximal: no" in out

    s = tmp_path / "s.h"
    _write(s, split01())
    assert main(["check", str(s)]) == 0
    out = capsys.readouterr().out
    assert "maximal: yes" in out and "width: 1" in out


def test_cmd_example(tmp_path, capsys):
    out = tmp_path / "l6.h"
    assert main(["example", "--dim", "3", "--k", "6", "-o", str(out)]) == 0
    report = capsys.readouterr().out
    assert "# volume:" in report and "# lattice points (4):" in report
    body = parse_polyhedron(out.read_text(encoding="utf-8"))
    assert body.volume() == F(8, 9)

    assert main(["example", "--dim", "3", "--k", "5"]) == 2


def test_cmd_enum_circ(tmp_path, capsys):
    p = tmp_path / "tri.h"
    _write(p, Polyhedron.from_generators(2, [(0, 0), (2, 0), (0, 2)]))
    assert main(["enum-circ", str(p), "--m", "2", "--classes"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("count ")
    assert "# body 0" in out and "class 0:" in out


def test_cli_usage_error_exit_code(capsys):
    assert main(["closure"]) == 1
    assert main(["nonsense"]) == 1
    assert main(["filter", "x.h"]) == 1
