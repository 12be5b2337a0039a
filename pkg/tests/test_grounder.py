import pytest
from hypothesis import given, settings

from fuzzyaso import parse_program, render_program
from fuzzyaso.errors import GroundingExplosion
from fuzzyaso.grounder import GroundingConfig, grade_vocabulary, ground_program, herbrand_universe
from fuzzyaso.solver import enumerate_answer_sets

from helpers import SCHEDULING_RULES, corpus_path, label_ground_rules, load, load_ground, scheduling_rule, rule_shape
from strategies import nonground_programs


def names(terms):
    return {str(t) for t in terms}


class TestHerbrandUniverse:
    def test_scheduling_constants(self):
        assert names(herbrand_universe(load("scheduling"))) == {"i1", "i2", "c1", "c2", "r1", "s1", "s2"}

    def test_injected_constant(self):
        assert names(herbrand_universe(parse_program("a:1."))) == {"u0"}

    def test_depth_one_closure(self):
        p = parse_program("p(a):1. p(b):1. q(f(X)):1 <- p(X):1.")
        assert names(herbrand_universe(p, depth=1)) == {"a", "b", "f(a)", "f(b)"}
        assert names(herbrand_universe(p, depth=0)) == {"a", "b"}


def test_vocabulary_includes_one():
    vocab = grade_vocabulary(load("intro"))
    assert {str(g) for g in vocab["teaches"]} == {"3/10", "1/2", "1"}


def test_ten_relevant_preference_rules():
    ground = load_ground("scheduling")
    assert len(ground.pref) == 10
    labelled = label_ground_rules(ground.pref)
    assert set(labelled) == set(SCHEDULING_RULES)
    assert len({r.id for r in labelled.values()}) == 10


def test_generator_instances():
    text = render_program(load_ground("scheduling"))
    assert "in(r1,c1):0.8 <- teaches(i1,c1):0.9, course(c1):1." in text
    assert "at(s1,c2):0.9 v at(s2,c2):0.2 <- teaches(i2,c2):0.7, course(c2):1." in text
    # relevance: i1 never teaches c1 at grade 0.4
    assert "teaches(i1,c1):0.4" not in text


def test_head_only_annotation_variable_in_preference():
    source = corpus_path("scheduling").read_text()
    gen_only = "\n".join(l for l in source.splitlines() if not l.startswith("#prefer"))
    p = parse_program(gen_only + "\n#prefer in(r1,C):V <- teaches(I,C):V'.")
    shapes = {rule_shape(r) for r in ground_program(p).pref}
    assert shapes == {rule_shape(scheduling_rule(k)) for k in ("r7", "r8", "r9", "r10")}


def test_ground_program_unchanged():
    ground = load_ground("scheduling")
    assert ground_program(ground) is ground


def test_ids_extend_parent():
    ground = load_ground("scheduling")
    assert {r.id for r in ground.pref} >= {"p1", "p2", "p3_1", "p3_2"}
    assert all(r.is_ground() for r in ground.rules())


def test_shared_annotation_variable_is_consistent():
    p = parse_program("d(a):0.5. d(b):1. p(X):V <- d(X):V, d(X):V.")
    text = render_program(ground_program(p))
    assert "p(a):0.5 <- d(a):0.5, d(a):0.5." in text
    assert "p(a):1" not in text


def test_grounding_cap():
    with pytest.raises(GroundingExplosion):
        ground_program(load("scheduling"), GroundingConfig(max_instances=5))


@pytest.mark.parametrize("name", ["intro", "intro_neutral", "constraints"])
def test_naive_grounding_agrees_on_corpus(name):
    p = load(name)
    assert enumerate_answer_sets(ground_program(p)).answer_sets == enumerate_answer_sets(
        ground_program(p, relevant=False)
    ).answer_sets


def test_naive_grounding_of_scheduling_hits_the_cap():
    # four annotation variables over every grade in the vocabulary
    with pytest.raises(GroundingExplosion):
        ground_program(load("scheduling"), GroundingConfig(max_instances=20_000), relevant=False)


@settings(max_examples=150)
@given(nonground_programs())
def test_pruning_is_sound(p):
    pruned = enumerate_answer_sets(ground_program(p)).answer_sets
    full = enumerate_answer_sets(ground_program(p, relevant=False)).answer_sets
    assert pruned == full


@settings(max_examples=50)
@given(nonground_programs())
def test_grounding_is_idempotent(p):
    once = ground_program(p)
    assert ground_program(once) == once
