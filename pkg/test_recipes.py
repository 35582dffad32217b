import pytest

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.fileio import format_matrices, write_gens
from saxl_graphs.fixtures import fixture, fixture_path, list_fixtures, load_gens
from saxl_graphs.perm import Permutation
from saxl_graphs.recipes import Compound, Diagonal, Named, build, parse


def test_parse_named():
    recipe = parse("psl2:7:pl")
    assert recipe == Named("psl2", ["7", "pl"])
    assert str(recipe) == "psl2:7:pl"
    assert parse("  SYM:5 ").family == "sym"


def test_parse_compound():
    recipe = parse("coset(gens:m12.gens; gens:l211-in-m12.gens)")
    assert isinstance(recipe, Compound) and recipe.operator == "coset"
    assert [str(o) for o in recipe.operands] == ["gens:m12.gens", "gens:l211-in-m12.gens"]
    assert str(parse("wr(sym:3;cyc:2)")) == "wr(sym:3; cyc:2)"
    assert str(parse("orbit(sym:5; 0,1)")) == "orbit(sym:5; 0,1)"
    assert str(parse("pairs(pairs(sym:5))")) == "pairs(pairs(sym:5))"


def test_parse_diagonal():
    recipe = parse("diag:T=A5:k=2:top=sym:2:outer=1")
    assert isinstance(recipe, Diagonal)
    assert (recipe.simple, recipe.k, recipe.outer) == ("A5", 2, True)
    assert recipe.top == Named("sym", ["2"])
    assert str(recipe) == "diag:T=A5:k=2:top=sym:2:outer=1"
    assert not parse("diag:T=A5:k=3").outer


@pytest.mark.parametrize(
    "text, position",
    [
        ("foo:3", 0),
        ("sym", 3),
        ("sym:", 4),
        ("pairs(sym:4", 11),
        ("wr(sym:3, cyc:2)", 15),
        ("coset(sym:4; bogus:1)", 13),
        ("diag:T=A5", 5),
        ("diag:T=A5:k=two", 5),
        ("diag:T=A5:k=2:size=3", 5),
        ("(sym:3)", 0),
    ],
)
def test_parse_errors_carry_the_column(text, position):
    with pytest.raises(sx_e.RecipeParseError) as info:
        parse(text)
    assert info.value.position == position
    assert f"column {position}" in str(info.value)


def test_build_named():
    assert build("sym:5").order() == 120
    assert build("dih:5").order() == 10
    assert build("pgl2:7:pl").degree == 8
    assert build("pgl2:7").order() == 336
    assert build("glvec:2:3").degree == 7
    assert build("affine:4:2:sl").order() == 960
    group = build("alt:6")
    assert group.name == "alt:6"


def test_build_compound():
    assert build("pairs(sym:5)").degree == 10
    assert build("orbit(alt:5; 0 1)").degree == 10
    assert build("wr(sym:3; cyc:2)").order() == 72
    coset = build("coset(sym:4; alt:4)")
    assert coset.degree == 2 and coset.order() == 2


def test_build_diagonal_and_holomorph():
    group = build("diag:T=A5:k=2")
    assert group.degree == 60 and group.order() == 3600
    group = build("diag:T=a5:k=2:top=sym:2:outer=1")
    assert group.order() == 3600 * 4
    hol = build("hol:A5")
    assert hol.degree == 60 and hol.order() == 60 * 120


def test_build_affine_from_matrix_file(tmp_path):
    path = tmp_path / "singer.txt"
    path.write_text(format_matrices([[[0, 1], [1, 1]]]), encoding="utf-8")
    group = build(f"affine:2:2:{path}")
    assert group.degree == 4 and group.order() == 12


def test_build_errors():
    with pytest.raises(sx_e.RecipeParseError):
        build("sym:x")
    with pytest.raises(sx_e.RecipeParseError):
        build("glvec:2")
    with pytest.raises(sx_e.UnsupportedVariant):
        build("psl2:7:ag")
    with pytest.raises(sx_e.MissingAutomorphismData):
        build("diag:T=M24:k=2")
    with pytest.raises(sx_e.NotSimple):
        build("diag:T=C5:k=2")
    with pytest.raises(sx_e.FixtureNotFound):
        build("fixture:nope")
    with pytest.raises(sx_e.NotASubgroup):
        build("coset(alt:4; sym:4)")


def test_bundled_generator_files():
    m11 = build("gens:m11.gens")
    assert m11.degree == 11 and m11.order() == 7920
    assert m11.is_primitive()[0]
    m12 = load_gens("m12")
    assert m12.degree == 12 and m12.order() == 95040
    l211 = fixture("l211-in-m12")
    assert l211.order() == 660 and l211.is_transitive()
    assert l211.is_subgroup_of(m12)


def test_fixture_path(tmp_path):
    assert fixture_path("m11").endswith("m11.gens")
    cfg.FIXTURE_PATH = str(tmp_path)
    with pytest.raises(sx_e.FixtureNotFound):
        fixture_path("m11")
    write_gens(str(tmp_path / "own.gens"), [Permutation.from_cycles(3, [(0, 1, 2)])], comment="C3\non three points")
    assert (tmp_path / "own.gens").read_text(encoding="utf-8").startswith("# C3\n# on three points\n3\n")
    assert load_gens("own").order() == 3


def test_list_fixtures():
    names = [name for name, _, _ in list_fixtures()]
    assert {"m11", "m12", "l3-4-on-56", "m12-on-144"} <= set(names)
    kinds = dict((name, kind) for name, kind, _ in list_fixtures())
    assert kinds["m11"] == "gens" and kinds["pgl2-7-on-14"] == "constructed"


def test_constructed_fixtures():
    fano = fixture("pgl2-7-on-14")
    assert fano.degree == 14 and fano.order() == 336
    assert fano.is_transitive() and not fano.is_primitive()[0]
    l2 = fixture("l2-11-on-11")
    assert l2.degree == 11 and l2.order() == 660
    sublines = fixture("psigmal2-9-sublines")
    assert sublines.degree == 15 and sublines.order() == 720


@pytest.mark.slow
def test_large_fixtures():
    m12 = fixture("m12-on-144")
    assert m12.degree == 144 and m12.order() == 95040
    l34 = fixture("l3-4-on-56")
    assert l34.degree == 56 and l34.order() == 20160
