import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from fuzzyaso import FuzzyInterpretation, Program, parse_program, render_program
from fuzzyaso.errors import CorrespondenceFailure, ReservedPrefixCollision, SizeExplosion
from fuzzyaso.kernel import Atom, Pos, Literal, combination_literals, eval_annotation
from fuzzyaso.preferences import Sat, holds_combination
from fuzzyaso.randomgen import RandomProgramConfig
from fuzzyaso.solver import enumerate_answer_sets
from fuzzyaso import translator
from fuzzyaso.translator import to_dnf, translate, verify_translation

from helpers import CORPUS_NAMES, label_ground_rules, load, load_ground
from strategies import combinations, programs


def combo(text):
    return parse_program(f"#prefer {text}.").pref[0].combos[0]


def clause_strings(dnf):
    return [[str(e.literal) if isinstance(e, Pos) else f"not {e.literal}" for e in c] for c in dnf.clauses]


class TestDnf:
    def test_distribution(self):
        assert clause_strings(to_dnf(combo("(a:1 || b:1) && c:1"))) == [["a:1", "c:1"], ["b:1", "c:1"]]

    def test_literal(self):
        assert clause_strings(to_dnf(combo("a:0.3"))) == [["a:0.3"]]

    def test_naf_conjunction(self):
        dnf = to_dnf(combo("not a:0.5 && b:1"))
        assert clause_strings(dnf) == [["not a:0.5", "b:1"]]
        for a, b in itertools.product([0, 1], repeat=2):
            i = FuzzyInterpretation({Literal(Atom("a")): Fraction(a), Literal(Atom("b")): Fraction(b)})
            assert dnf.holds(i) == holds_combination(i, combo("not a:0.5 && b:1"))

    def test_left_to_right_order(self):
        dnf = to_dnf(combo("(a:1 || b:1) && (c:1 || d:1)"))
        assert clause_strings(dnf) == [["a:1", "c:1"], ["a:1", "d:1"], ["b:1", "c:1"], ["b:1", "d:1"]]

    def test_size_cap(self):
        text = " && ".join(f"(x{k}:1 || y{k}:1)" for k in range(13))
        with pytest.raises(SizeExplosion):
            to_dnf(combo(text))
        assert len(to_dnf(combo(text), limit=2**13).clauses) == 2**13


def critical_points(c):
    """Per literal, one grade from each region the annotations in ``c`` cut [0,1] into."""
    cuts = {}
    for al in combination_literals(c):
        cuts.setdefault(al.literal, {Fraction(0), Fraction(1)}).add(eval_annotation(al.annotation))
    points = {}
    for lit, gs in cuts.items():
        gs = sorted(gs)
        mids = [(a + b) / 2 for a, b in zip(gs, gs[1:])]
        points[lit] = sorted(set(gs) | set(mids))
    return points


def assert_equivalent(c):
    points = critical_points(c)
    lits = sorted(points, key=str)
    assert len(lits) <= 10
    dnf = to_dnf(c)
    for values in itertools.product(*(points[l] for l in lits)):
        pairs = {}
        for l, g in zip(lits, values):
            if g and l.complement() not in pairs:
                pairs[l] = g
        i = FuzzyInterpretation(pairs)
        assert dnf.holds(i) == holds_combination(i, c)


def test_dnf_equivalence_ten_literals():
    c = combo("(a0:1 || not a1:1) && (a2:1 || (a3:1 && not a4:1)) && (a5:1 || a6:1 || a7:1) && not a8:1 && a9:1")
    assert len({al.literal for al in combination_literals(c)}) == 10
    assert_equivalent(c)


@settings(max_examples=150)
@given(combinations(RandomProgramConfig(atoms=10, grades=(Fraction(1),)), depth=3))
def test_dnf_equivalence_boolean(c):
    assert_equivalent(c)


@settings(max_examples=150)
@given(combinations(RandomProgramConfig(atoms=3, classical_negation=True, zero_annotations=True), depth=3))
def test_dnf_equivalence_graded(c):
    assert_equivalent(c)


class TestTranslate:
    def test_rule_counts(self):
        p = parse_program("a:1 v b:1. c:1. #prefer a:1 > b:1 <- c:1.")
        out = translate(p)
        assert len(out.program.gen) == len(p.gen) + 5
        assert out.program.pref == ()
        assert set(out.rule_index) == {("p1", "body"), ("p1", 1), ("p1", 2), ("p1", "irr")}

    def test_empty_body_fact(self):
        out = translate(parse_program("a:1. #prefer a:1."))
        body = [r for r in out.program.gen if r.id == "p1__body"]
        assert render_program(Program(tuple(body))) == "@p1__body aux_body__p1:1.\n"

    def test_general_program_kept(self):
        p = load_ground("scheduling")
        assert translate(p).program.gen[: len(p.gen)] == p.gen

    def test_scheduling_sat_rule(self):
        ground = load_ground("scheduling")
        rid = label_ground_rules(ground.pref)["r6"].id
        out = translate(ground)
        (rule,) = [r for r in out.program.gen if r.id == f"{rid}__sat1_1"]
        assert rule.head[0].literal == out.rule_index[(rid, 1)]
        assert {str(al) for al in rule.pos_body} == {"at(s1,c2):0.9", f"aux_body__{rid}:1"}

    def test_reserved_prefix(self):
        with pytest.raises(ReservedPrefixCollision):
            translate(parse_program("aux_x:1. #prefer aux_x:1."))

    def test_requires_ground(self):
        with pytest.raises(ValueError):
            translate(load("scheduling"))

    def test_rendered_translation_reparses(self):
        out = translate(load_ground("scheduling"))
        assert parse_program(render_program(out.program)) == out.program


class TestVerify:
    def test_scheduling(self):
        report = verify_translation(load_ground("scheduling"))
        assert report.bijective and len(report.answer_sets) == 4
        assert len(report.entries) == 40 and report.all_matched

    def test_no_preferences(self):
        report = verify_translation(parse_program("a:1 v b:1."))
        assert report.entries == [] and report.all_matched

    def test_intro(self):
        report = verify_translation(load_ground("intro"))
        assert [e.outcome for e in report.entries] == [Sat(1), Sat(2)]
        assert report.all_matched

    @pytest.mark.parametrize("name", CORPUS_NAMES)
    def test_corpus(self, name):
        assert verify_translation(load_ground(name)).all_matched

    def test_brute_engine(self):
        assert verify_translation(load_ground("constraints"), engine="brute").all_matched

    def test_correspondence_failure(self, monkeypatch):
        real = translator.translate

        def broken(program, dnf_limit=translator.DNF_LIMIT):
            out = real(program, dnf_limit)
            extra = parse_program("@extra aux_x:1 v aux_y:1.").gen
            return translator.TranslationOutput(Program(out.program.gen + extra), out.rule_index)

        monkeypatch.setattr(translator, "translate", broken)
        with pytest.raises(CorrespondenceFailure):
            verify_translation(load_ground("intro"))


WIDE = RandomProgramConfig(classical_negation=True, zero_annotations=True, max_pref_rules=3)


@settings(max_examples=300)
@given(programs(WIDE))
def test_translation_correspondence(p):
    report = verify_translation(p)
    assert report.bijective and report.all_matched
    assert len(report.entries) == len(report.answer_sets) * len(p.pref)


@settings(max_examples=150)
@given(programs(WIDE))
def test_exactly_one_family(p):
    out = translate(p)
    for a in enumerate_answer_sets(out.program).answer_sets:
        for r in p.pref:
            sats = [i for i in range(1, len(r.combos) + 1) if a.grade(out.rule_index[(r.id, i)])]
            irr = bool(a.grade(out.rule_index[(r.id, "irr")]))
            assert irr != bool(sats)
