import pytest
from hypothesis import given
from hypothesis import strategies as st

from flawdetect.errors import LexError, ModelError, ParseError
from flawdetect.frontend import model_from_source, parse_sources, tokenize
from flawdetect.frontend import syntax as ast
from flawdetect.frontend.lexer import EOF, IDENT, INTEGER, KEYWORD, PUNCT
from flawdetect.model import validate

from conftest import F1_SOURCE, PLANTED


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text)]


def test_tokenize_empty():
    assert kinds("") == [(EOF, "")]


def test_tokenize_class():
    assert kinds("class A {}") == [
        (KEYWORD, "class"), (IDENT, "A"), (PUNCT, "{"), (PUNCT, "}"), (EOF, ""),
    ]


def test_tokenize_illegal_character():
    with pytest.raises(LexError) as exc:
        tokenize("x@y")
    assert (exc.value.line, exc.value.column) == (1, 2)


def test_tokenize_longest_match_and_comments():
    toks = tokenize("a == b = 10 // trailing\nwhile")
    assert [(t.kind, t.text) for t in toks] == [
        (IDENT, "a"), (PUNCT, "=="), (IDENT, "b"), (PUNCT, "="), (INTEGER, "10"),
        (KEYWORD, "while"), (EOF, ""),
    ]
    assert (toks[5].line, toks[5].column) == (2, 1)


def test_tokenize_positions():
    toks = tokenize("class\n  Foo")
    assert (toks[1].line, toks[1].column) == (2, 3)


def test_parse_f1_counts_classes():
    program = parse_sources([("f1.moo", F1_SOURCE)])
    assert len(program.classes) == F1_SOURCE.count("class ")
    assert len(program.classes) == 4


def test_parse_self_extension_is_syntactically_legal():
    program = parse_sources([("a.moo", "class A extends A {}")])
    assert program.classes[0].superclass == "A"


def test_self_extension_rejected_by_model():
    with pytest.raises(ModelError, match="inheritance cycle"):
        model_from_source("class A extends A {}")


def test_parse_error_expected_identifier():
    with pytest.raises(ParseError, match="expected identifier") as exc:
        parse_sources([("a.moo", "class A { private var }")])
    assert exc.value.line == 1


def test_parse_error_missing_visibility():
    with pytest.raises(ParseError, match="expected 'public' or 'private'"):
        parse_sources([("a.moo", "class A { var }")])


def test_parse_statement_forms():
    src = """
    class A {
      private var x: int;
      public def m(p: int, q: A) {
        var t: int = 3;
        for (t = 0; t < 3; t = t) { this.x = t; }
        while (p > 0) { p = 0; }
        if (q.x == 1) { return; } else { q.m(1, p); }
        return this.x;
      }
    }
    """
    program = parse_sources([("a.moo", src)])
    body = program.classes[0].methods[0].body
    assert [type(s).__name__ for s in body] == ["VarDecl", "For", "While", "If", "Return"]
    call = body[3].orelse[0].expr
    assert isinstance(call, ast.Call) and call.name == "m" and len(call.args) == 2
    assert body[0].pos == ("a.moo", 5, 9)


def test_parse_rejects_bad_lvalue():
    with pytest.raises(ParseError, match="invalid assignment target"):
        parse_sources([("a.moo", "class A { public def m() { a.b().c = 1; } }")])


def test_parse_is_deterministic():
    a = parse_sources([("p.moo", (PLANTED / "corpus.moo").read_text())])
    b = parse_sources([("p.moo", (PLANTED / "corpus.moo").read_text())])
    assert a == b


def test_duplicate_paths_rejected():
    with pytest.raises(ValueError):
        parse_sources([("a", ""), ("a", "")])


# -- model building ----------------------------------------------------------

def test_build_f1_entities(f1):
    assert sorted(f1.classes) == ["class:A", "class:B", "class:C", "class:D"]
    assert {m.name for m in f1.methods.values()} == {"getX", "m1", "m2", "m3", "getZ"}
    assert validate(f1) == []


def test_build_f1_relations(f1):
    assert f1.methods["method:A.getX"].accessor_of == "attr:A.x"
    assert f1.methods["method:D.getZ"].accessor_of == "attr:D.z"
    assert f1.methods["method:A.m1"].accessor_of is None
    assert f1.methods["method:A.m2"].accesses == {"attr:A.x", "attr:A.y"}
    assert f1.methods["method:B.m3"].calls == {"method:D.getZ"}
    assert f1.classes["class:B"].superclass == "class:A"


def test_getter_alone_is_accessor():
    model = model_from_source("class A { private var x: int; public def g() { return this.x; } }")
    assert model.methods["method:A.g"].accessor_of == "attr:A.x"


def test_setter_is_accessor():
    model = model_from_source("class A { private var x: int; public def s(v: int) { this.x = v; } }")
    assert model.methods["method:A.s"].accessor_of == "attr:A.x"


@pytest.mark.parametrize("body", [
    "return this.x; return this.x;",
    "this.x = 1;",
    "if (this.x > 0) { return this.x; }",
])
def test_non_accessors(body):
    model = model_from_source(f"class A {{ private var x: int; public def m(v: int) {{ {body} }} }}")
    assert model.methods["method:A.m"].accessor_of is None


def test_inherited_field_getter_is_not_accessor():
    src = "class A { private var x: int; } class B extends A { public def g() { return this.x; } }"
    model = model_from_source(src)
    assert model.methods["method:B.g"].accessor_of is None
    assert model.methods["method:B.g"].accesses == {"attr:A.x"}


def test_undeclared_parameter_type_becomes_external():
    model = model_from_source("class A { public def m(q: Q) { q.run(); q.f = 1; } }")
    q = model.classes["class:Q"]
    assert q.is_external and q.methods == () and q.attributes == ()
    m = model.methods["method:A.m"]
    assert m.calls == {"method:Q.run"} and m.accesses == {"attr:Q.f"}
    assert validate(model) == []


def test_primitive_types_are_not_classes(f1):
    assert "class:int" not in f1.classes


def test_cyclomatic_counts_decisions():
    src = """class A { private var x: int;
      public def m() { while (this.x > 0) { if (this.x > 1) { this.x = 0; } } }
      public def e() { } }"""
    model = model_from_source(src)
    assert model.methods["method:A.m"].cyclomatic == 3
    assert model.methods["method:A.m"].statement_count == 3
    assert model.methods["method:A.e"].cyclomatic == 1
    assert model.methods["method:A.e"].statement_count == 0


def test_call_resolves_through_ancestors():
    src = """class A { public def base() { } }
    class B extends A { public def m(b: B) { b.base(); this.base(); base(); } }"""
    model = model_from_source(src)
    assert model.methods["method:B.m"].calls == {"method:A.base"}


def test_call_on_external_ancestor_is_opaque():
    model = model_from_source("class B extends Lib { public def m() { this.helper(); } }")
    assert model.methods["method:B.m"].calls == {"method:Lib.helper"}


def test_locals_and_fields_resolve():
    src = """class P { public var q: int; }
    class A { private var p: P;
      public def m() { var loc: P = this.p; loc.q = 1; p.q = 2; } }"""
    model = model_from_source(src)
    assert model.methods["method:A.m"].accesses == {"attr:A.p", "attr:P.q"}


@pytest.mark.parametrize("src, message", [
    ("class A {} class A {}", "duplicate class"),
    ("class A { private var x: int; public def x() { } }", "duplicate member"),
    ("class A { public def m() { this.nope = 1; } }", "assignment to undeclared field"),
    ("class A { public def m() { nope = 1; } }", "assignment to undeclared field"),
    ("class A { public def m() { this.gone(); } }", "unknown method"),
    ("class A extends int { }", "cannot extend"),
])
def test_build_errors(src, message):
    with pytest.raises(ModelError, match=message):
        model_from_source(src)


def test_planted_corpus_builds(planted):
    assert len(planted.internal_classes()) == 10
    assert validate(planted) == []


idents = st.sampled_from(["a", "b", "Foo", "x1"])


@given(st.lists(st.tuples(idents, st.sampled_from(["int", "Foo", "Bar"]), st.booleans()), max_size=5, unique_by=lambda t: t[0]))
def test_built_models_validate(fields):
    decls = " ".join(f"{'public' if pub else 'private'} var {n}: {t};" for n, t, pub in fields)
    getters = " ".join(f"public def get_{n}() {{ return this.{n}; }}" for n, _, _ in fields)
    model = model_from_source(f"class Foo {{ {decls} {getters} }}")
    assert validate(model) == []
    for n, _, _ in fields:
        assert model.methods[f"method:Foo.get_{n}"].accessor_of == f"attr:Foo.{n}"
