import pytest

from cohomology_engine.errors import ParseError
from cohomology_engine.utils.parser import parse_expression, parse_presentation
from cohomology_engine.utils.parser.parse_expression import BinOp, Generator, Neg, Number, render


def test_presentation_forms():
    p = parse_presentation("Z[x]/(x^2)")
    assert (p.modulus, p.generators, p.degrees) == (0, ("x",), (None,))
    assert p.relations == ((((2,), 1),),)

    p = parse_presentation("Z/2Z[x,y]/(x^3, y^2, xy + x^2)")
    assert p.modulus == 2
    assert p.relations == (
        (((3, 0), 1),),
        (((0, 2), 1),),
        (((1, 1), 1), ((2, 0), 1)),
    )

    p = parse_presentation("Z[x,y]/(2y, x^2, y^2, xy); deg x=1, deg y=2")
    assert p.degrees == (1, 2)
    assert p.relations[0] == (((0, 1), 2),)

    p = parse_presentation("Z/2[x]")
    assert p.relations == () and p.modulus == 2

    p = parse_presentation("Z")
    assert p.generators == () and p.relations == ()


def test_presentation_collects_like_terms():
    p = parse_presentation("Z[x]/(-x^2 + 3*x*x)")
    assert p.relations == ((((2,), 2),),)
    p = parse_presentation("Z[x]/(x - x)")
    assert p.relations == ((),)


@pytest.mark.parametrize("text", [
    "Q[x]",
    "Z/1[x]",
    "Z[x,x]",
    "Z[x]/(y)",
    "Z[x]/(x^2",
    "Z[x]/(x^2); deg x=0",
    "Z[x]/(x^2); deg y=1",
    "Z[x]/(x^2) junk",
])
def test_presentation_errors(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_presentation_error_position():
    with pytest.raises(ParseError) as e:
        parse_presentation("Z[x]/(x^2 + y)")
    assert e.value.position == 12


def test_expression_tree():
    assert parse_expression("g1(1) * g2(1)") == BinOp("*", Generator(1, 1, 0), Generator(2, 1, 8))
    assert parse_expression("g") == Generator(None, None, 0)
    assert parse_expression("-g") == Neg(Generator(None, None, 1))
    assert parse_expression("2 * g") == BinOp("*", Number(2), Generator(None, None, 4))
    tree = parse_expression("(g1(1) + g1(1)) * g2(1)")
    assert isinstance(tree, BinOp) and tree.op == "*"
    assert isinstance(tree.left, BinOp) and tree.left.op == "+"


def test_render():
    assert render(parse_expression("g1(1) * -g2(1)")) == "(g1(1) * -g2(1))"
    assert render(parse_expression("g + g - g")) == "((g + g) - g)"


@pytest.mark.parametrize("text,position", [
    ("", 0),
    ("g0", 0),
    ("g &", 2),
    ("(g", 2),
    ("g(1 + 1)", 1),
    ("g +", 3),
])
def test_expression_errors(text, position):
    with pytest.raises(ParseError) as e:
        parse_expression(text)
    assert e.value.position == position
