import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from rzlogic import BOTTOM_NAME, ParseError
from rzlogic.cli import bundled
from rzlogic.fca import FormalContext
from rzlogic.formats import (emit_classical_program, emit_csv_context, emit_cxt, emit_domain,
                             emit_program, parse_classical_program, parse_clause,
                             parse_context_file, parse_csv_context, parse_cxt,
                             parse_domain_file, parse_program_file, parse_theory)
from rzlogic.generate import random_classical_program, random_context, random_domain, random_program

seeds = st.integers(min_value=0, max_value=2**32)
CXT_FIXTURES = sorted((FIXTURES / "cxt").glob("*.cxt"))


def read(path: Path) -> str:
    with open(path, newline="") as fh:
        return fh.read()


class TestDomainFiles:
    def test_diamond(self):
        d = parse_domain_file("elements: a b t\nle: a t\nle: b t\n", auto_bottom=True)
        assert len(d) == 4 and d.name(d.bottom) == BOTTOM_NAME

    def test_missing_bottom(self):
        with pytest.raises(ParseError, match="least element"):
            parse_domain_file("elements: a b\n")

    def test_comments_and_alias(self):
        d = parse_domain_file("# header\nelements: z a  # two\nle: z a\nalias: top a\n")
        assert d.index("top") == d.index("a")

    def test_unknown_element_position(self):
        with pytest.raises(ParseError) as exc:
            parse_domain_file("elements: a b\nle: a  zz\n")
        assert (exc.value.line, exc.value.column) == (2, 8)

    def test_bad_directive(self):
        with pytest.raises(ParseError) as exc:
            parse_domain_file("elements: a\nless: a a\n")
        assert exc.value.line == 2

    def test_declared_bottom_must_be_least(self):
        with pytest.raises(ParseError):
            parse_domain_file("elements: a b\nle: a b\nbottom: b\n")

    def test_bundled_menu_domain(self, restaurant):
        d, _ = restaurant
        assert parse_domain_file(bundled("restaurant.poset").read_text()) == d

    @given(seeds)
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        d = random_domain(rng, rng.randint(1, 8))
        assert parse_domain_file(emit_domain(d)) == d


class TestDomainPrograms:
    def test_wishes_structure(self, restaurant, wishes):
        d, emb = restaurant
        bot = frozenset({d.bottom})
        assert len(wishes) == 3
        r1, r2, r3 = wishes.rules
        assert (r1.head, r1.pos_body, r1.neg_body) == ({emb.of("d")}, bot, frozenset())
        assert (r2.head, r2.pos_body, r2.neg_body) == \
            ({emb.of("2"), emb.of("3"), emb.of("4")}, bot, frozenset())
        assert (r3.head, r3.pos_body, r3.neg_body) == ({emb.of("rw")}, bot, {emb.of("ww")})

    def test_fact_sugar(self, diamond):
        p = parse_program_file("{a, b}.", diamond)
        assert p.rules[0].pos_body == {diamond.bottom}

    def test_unknown_element(self, diamond):
        with pytest.raises(ParseError) as exc:
            parse_program_file("{a} <- {_bot_}.\n{q} <- {a}.", diamond)
        assert (exc.value.line, exc.value.column) == (2, 2)

    def test_missing_dot(self, diamond):
        with pytest.raises(ParseError):
            parse_program_file("{a} <- {_bot_}", diamond)

    def test_clause_and_theory(self, diamond):
        i = diamond.index
        assert parse_clause("{a, t}", diamond) == {i("a"), i("t")}
        assert parse_clause("{}", diamond) == frozenset()
        assert parse_theory("{a}\n{b, t}\n", diamond) == [{i("a")}, {i("b"), i("t")}]
        with pytest.raises(ParseError):
            parse_clause("{a} {b}", diamond)

    @given(seeds)
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        d = random_domain(rng, rng.randint(1, 8))
        p = random_program(rng, d, negation=True)
        assert parse_program_file(emit_program(p), d) == p


class TestClassicalPrograms:
    def test_grammar(self):
        p = parse_classical_program("""
            % comment
            p, -q :- r, not s.
            a | b.
            :- p, q.
        """)
        assert [str(r) for r in p.rules] == ["p, -q :- r, not s.", "a, b.", ":- p, q."]
        assert p.variables == ("p", "q", "r", "s", "a", "b")

    def test_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_classical_program("p.\nq :- ,")
        assert exc.value.line == 2

    @given(seeds)
    def test_round_trip(self, seed):
        p = random_classical_program(random.Random(seed))
        assert parse_classical_program(emit_classical_program(p)).rules == p.rules


class TestCxt:
    def test_fixture_count(self):
        assert len(CXT_FIXTURES) == 20

    @pytest.mark.parametrize("path", CXT_FIXTURES, ids=lambda p: p.stem)
    def test_round_trip(self, path):
        ctx = parse_cxt(read(path))
        assert parse_cxt(emit_cxt(ctx)) == ctx
        assert emit_cxt(parse_cxt(emit_cxt(ctx))) == emit_cxt(ctx)

    def test_menu(self, restaurant_ctx):
        assert restaurant_ctx.incident("7", "e")
        assert not restaurant_ctx.incident("1", "e")

    def test_canonical_layout(self):
        ctx = FormalContext.from_matrix(["g"], ["a", "b"], [[True, False]])
        assert emit_cxt(ctx) == "B\n\n1\n2\n\ng\na\nb\nX.\n"

    def test_short_row(self):
        with pytest.raises(ParseError) as exc:
            parse_cxt("B\n\n2\n2\n\ng\nh\na\nb\nX.\nX\n")
        assert exc.value.line == 11
        assert "row 2" in str(exc.value)

    def test_bad_character(self):
        with pytest.raises(ParseError) as exc:
            parse_cxt("B\n\n1\n2\n\ng\na\nb\nXo\n")
        assert (exc.value.line, exc.value.column) == (9, 2)

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_cxt("C\n1\n1\ng\nm\nX\n")

    def test_truncated(self):
        with pytest.raises(ParseError, match="end of file"):
            parse_cxt("B\n\n2\n1\n\ng\nh\nm\nX\n")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_cxt("B\n\n1\n1\n\ng\nm\nX\nextra\n")


class TestCsv:
    def test_bundled_matches_cxt(self, restaurant_ctx):
        assert parse_csv_context(bundled("restaurant.csv").read_text()) == restaurant_ctx

    def test_bad_cell(self):
        with pytest.raises(ParseError) as exc:
            parse_csv_context(",a,b\ng,1,x\n")
        assert (exc.value.line, exc.value.column) == (2, 3)

    def test_dispatch(self, restaurant_ctx):
        text = emit_csv_context(restaurant_ctx)
        assert parse_context_file(text, "csv") == restaurant_ctx
        with pytest.raises(ValueError):
            parse_context_file(text, "xml")

    @given(seeds)
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        ctx = random_context(rng, rng.randint(1, 8), rng.randint(1, 8))
        assert parse_csv_context(emit_csv_context(ctx)) == ctx
