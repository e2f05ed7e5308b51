import pytest
from hypothesis import given, strategies as st

from goodvar.chern import cp_chern, milnor_number, product, scale, to_table
from goodvar.cli import main
from goodvar.errors import DimensionMismatch
from goodvar.expr import (
    Atom,
    BinOp,
    Num,
    ParseError,
    Pow,
    evaluate,
    evaluate_text,
    parse_class_expr,
    parse_product_text,
    pretty,
)
from cli_golden import DATA, GOLDEN, corpus, run

CORPUS = [
    "CP(1)",
    "H(2,2)",
    "Sigma(3)",
    "BlCP(2,3)",
    "BlSub(5,3)",
    "2*CP(2) - CP(1)^2",
    "0 - CP(2)",
    "CP(1)^2",
    "CP(1)^2^2",
    "(CP(1) + Sigma(2))^3",
    "CP(1)*CP(1)*CP(1)",
    "CP(1)*(CP(1)*CP(1))",
    "CP(3) - (CP(3) - BlCP(3,1))",
    "CP(3) - CP(3) - BlCP(3,1)",
    "(CP(2) - CP(1)*CP(1))*CP(1)",
    "3*H(2,3) + 2*CP(4)",
    "  CP( 2 )+CP(1)  *  CP(1) ",
    "1",
    "0",
    "(2)",
    "((CP(2)))",
    "2*3*CP(1)",
    "H(4,5) - H(3,6) + H(2,7)",
    "CP(8) - 3*BlCP(8,2)",
    "Sigma(0) + Sigma(1) + Sigma(5)",
    "(Sigma(2) - CP(1))^2",
    "CP(1)^3 - CP(1)*CP(2)",
    "(CP(1) - Sigma(2))*(CP(2) + H(1,2))",
    "BlCP(3,4) * CP(1) + CP(4)",
    "2*(CP(2) + BlCP(2,1))",
    "5*(0 - CP(1))",
    "CP(2)^2 - H(2,3)",
]


def test_parse_examples():
    tree = parse_class_expr("2*CP(2) - CP(1)^2")
    assert tree == BinOp("-", BinOp("*", Num(2), Atom("CP", (2,))), Pow(Atom("CP", (1,)), 2))
    assert parse_class_expr("H(2,2)") == Atom("H", (2, 2))
    with pytest.raises(DimensionMismatch):
        evaluate_text("CP(2) + CP(1)")


@pytest.mark.parametrize("text", CORPUS)
def test_pretty_round_trip(text):
    tree = parse_class_expr(text)
    assert parse_class_expr(pretty(tree)) == tree


def test_corpus_size():
    assert len(CORPUS) >= 30


_atoms = st.one_of(
    st.builds(lambda n: Atom("CP", (n,)), st.integers(1, 4)),
    st.builds(lambda g: Atom("Sigma", (g,)), st.integers(0, 5)),
    st.builds(Num, st.integers(0, 9)),
)
_trees = st.recursive(
    _atoms,
    lambda sub: st.one_of(
        st.builds(BinOp, st.sampled_from(["+", "-", "*"]), sub, sub),
        st.builds(Pow, sub, st.integers(1, 3)),
    ),
    max_leaves=8,
)


@given(_trees)
def test_pretty_round_trip_random(tree):
    assert parse_class_expr(pretty(tree)) == tree


@pytest.mark.parametrize(
    "text,line,col",
    [("CP(2", 1, 5), ("CP(2) +", 1, 8), ("Foo(1)", 1, 1), ("CP(1)^0", 1, 7), ("CP(1)\n  + $", 2, 5), ("H(2)", 1, 4)],
)
def test_parse_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_class_expr(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_evaluation():
    assert evaluate_text("0 - CP(2)") == scale(-1, cp_chern(2))
    assert evaluate_text("CP(1)^2") == product(cp_chern(1), cp_chern(1))
    assert dict(to_table(evaluate_text("2*CP(2) - CP(1)^2")).values) == {(2,): 2, (1, 1): 10}
    assert milnor_number(evaluate_text("H(4,5)")) == -126
    assert evaluate(parse_class_expr("3")).mcoords == {(): 3}


def test_product_text():
    assert parse_product_text("CP(1) * Sigma(3)") == [("CP", (1,)), ("Sigma", (3,))]
    assert parse_product_text("CP(1)^2") == [("CP", (1,)), ("CP", (1,))]
    with pytest.raises(ParseError):
        parse_product_text("CP(1) + CP(1)")


def test_cli_examples(capsys):
    assert main(["milnor", "CP(4)"]) == 0
    assert capsys.readouterr().out == "5\n"
    assert main(["milnor", "H(4,5)"]) == 0
    assert capsys.readouterr().out == "-126\n"
    assert main(["realize", "0 - CP(2)"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("verified: yes\n") and out.count(" x ") == 3


def test_cli_exit_codes(capsys):
    assert main(["chern", "CP(2"]) == 2
    assert capsys.readouterr().err.startswith("ParseError:")
    assert main(["chern", "CP(2) + CP(1)"]) == 1
    assert capsys.readouterr().err.startswith("DimensionMismatch:")
    assert main(["eta", "0"]) == 2
    assert main(["bogus"]) == 2
    assert main(["toric", "chern", "--fan", "/nonexistent.json"]) == 2


def test_cli_writes_files(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["realize", "0 - CP(2)", "-o", str(out)]) == 0
    cls = tmp_path / "c.txt"
    assert main(["chern", "0 - CP(2)"]) == 0
    cls.write_text(capsys.readouterr().out)
    assert main(["verify", "--realization", str(out), "--class", str(cls)]) == 0
    assert capsys.readouterr().out.endswith("verified: yes\n")
    fan = tmp_path / "fan.json"
    assert main(["toric", "blowup", "--fan", str(DATA / "cp2_fan.json"), "--cone", "1", "-o", str(fan)]) == 0
    assert main(["toric", "validate", "--fan", str(fan)]) == 0
    assert main(["toric", "chern", "--fan", str(fan)]) == 0
    assert capsys.readouterr().out.endswith("dim: 2\nbasis: c\n2: 4\n1,1: 8\n")


@pytest.mark.parametrize("name,args", corpus(), ids=[n for n, _ in corpus()])
def test_golden(name, args):
    first = run(args)
    assert first == run(args)
    assert first == (GOLDEN / f"{name}.txt").read_text()
