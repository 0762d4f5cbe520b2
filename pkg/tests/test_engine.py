import pytest

from czmorph.alphabet import parse_alphabet, tokenize
from czmorph.automata import compile_rule, dfa_equivalent, detect_conflicts
from czmorph.engine import RuleSet, surface_of
from czmorph.errors import PairStringError
from czmorph.rules import parse_rules

# Every non-identity pair a test leaves unconstrained is free to apply
# anywhere, so each group declares only the pairs its rules govern.
ALPHA_AB = parse_alphabet("""
Alphabet
  a:b  ^N1:0
Sets
  Stop = k t p ;
""")

ALPHA_DEL = parse_alphabet("""
Alphabet
  a:b  e:0
""")

ALPHA_INS = parse_alphabet("""
Alphabet
  0:e  ^E2:0
""")

ALPHA_CONF = parse_alphabet("""
Alphabet
  a:b  a:0
""")


def rs(alpha, text):
    return RuleSet.from_text(alpha, text)


def surfaces(ruleset, text):
    return ruleset.generate_from_text(text)


class TestOperators:
    def test_restriction_only_permits(self):
        r = rs(ALPHA_AB, '"r" a:b => k _ ;')
        # a:b allowed after k, but not forced
        assert surfaces(r, "ka") == {"ka", "kb"}
        # elsewhere a:b is banned
        assert surfaces(r, "ta") == {"ta"}

    def test_coercion_forces(self):
        r = rs(ALPHA_AB, '"r" a:b <= k _ ;')
        # after k the lexical a may not surface as anything else
        assert surfaces(r, "ka") == {"kb"}
        # elsewhere unrestricted
        assert surfaces(r, "ta") == {"ta", "tb"}

    def test_both_directions(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        assert surfaces(r, "ka") == {"kb"}
        assert surfaces(r, "ta") == {"ta"}

    def test_exclusion_forbids(self):
        r = rs(ALPHA_AB, '"r" a:b /<= k _ ;')
        assert surfaces(r, "ka") == {"ka"}
        assert surfaces(r, "ta") == {"ta", "tb"}

    def test_multiple_contexts_are_alternatives(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ; t _ ;')
        assert surfaces(r, "ka") == {"kb"}
        assert surfaces(r, "ta") == {"tb"}
        assert surfaces(r, "pa") == {"pa"}


class TestContexts:
    def test_boundary_left(self):
        r = rs(ALPHA_AB, '"r" a:b <=> # _ ;')
        assert surfaces(r, "a") == {"b"}
        assert surfaces(r, "ta") == {"ta"}

    def test_boundary_right(self):
        r = rs(ALPHA_AB, '"r" a:b <=> _ # ;')
        assert surfaces(r, "a") == {"b"}
        assert surfaces(r, "at") == {"at"}

    def test_surface_side_context(self):
        # coercion keyed to the surface of a neighbor
        r = rs(ALPHA_DEL, '"d" e:0 <=> k _ ; "r" a:b <=> :0 _ ;')
        # e deletes after k, and that zero surface then forces a:b
        assert surfaces(r, "kea") == {"kb"}

    def test_lexical_side_context(self):
        r = rs(ALPHA_DEL, '"d" e:0 <=> k _ ; "r" a:b <=> e: _ ;')
        assert surfaces(r, "kea") == {"kb"}

    def test_set_atom_context(self):
        r = rs(ALPHA_AB, '"r" a:b <=> Stop _ ;')
        assert surfaces(r, "ka") == {"kb"}
        assert surfaces(r, "pa") == {"pb"}
        assert surfaces(r, "sa") == {"sa"}

    def test_optional_and_star(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k ( t ) _ ;')
        assert surfaces(r, "ka") == {"kb"}
        assert surfaces(r, "kta") == {"ktb"}
        assert surfaces(r, "ktta") == {"ktta"}
        r2 = rs(ALPHA_AB, '"r" a:b <=> k t* _ ;')
        assert surfaces(r2, "ktta") == {"kttb"}

    def test_deleted_material_intervenes(self):
        # a marker between trigger and target is visible to the automaton
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        assert surfaces(r, "k^N1a") == {"ka"}
        bridged = rs(ALPHA_AB, '"r" a:b <=> k [ :0 ]* _ ;')
        assert surfaces(bridged, "k^N1a") == {"kb"}


class TestInsertion:
    def test_insertion_rule(self):
        r = rs(ALPHA_INS, '"epen" 0:e <=> ^E2: k _ t ;')
        assert surfaces(r, "^E2kt") == {"ket"}
        # no marker, no insertion
        assert surfaces(r, "kt") == {"kt"}

    def test_insertion_not_doubled(self):
        # at most one inserted pair per gap is representable
        r = rs(ALPHA_INS, '"epen" 0:e => _ ;')
        out = r.generate_pairs(tokenize(ALPHA_INS, "k"))
        lengths = sorted(len(p) for p in out)
        assert lengths == [1, 2, 2, 3]


class TestGenerate:
    def test_generate_pairs_and_surface_of(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        outs = r.generate_pairs(["k", "a"])
        assert outs == [(("k", "k"), ("a", "b"))]
        assert surface_of((("k", "k"), ("a", "b"))) == "kb"

    def test_unknown_symbol_raises(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        with pytest.raises(PairStringError):
            r.generate_pairs(["k", "^E1"])

    def test_accepts_infeasible_pair_raises(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        with pytest.raises(PairStringError):
            r.accepts([("b", "a")])

    def test_empty_input(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        assert r.accepts([]) is True
        assert surfaces(r, "") == {""}


class TestTrace:
    def test_trace_rejection(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        entries = r.trace(["k", "a"], "ka")
        assert len(entries) == 1
        assert not entries[0].accepted
        assert entries[0].fail_rule == "r"
        assert entries[0].fail_pos == 2

    def test_trace_accept(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        entries = r.trace(["k", "a"], "kb")
        assert [e.accepted for e in entries] == [True]
        assert entries[0].pair_text() == "k:k a:b"

    def test_trace_without_surface_lists_accepted(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        got = {e.surface for e in r.trace(["k", "a"])}
        assert got == {"kb"}
        assert all(e.accepted for e in r.trace(["k", "a"]))

    def test_trace_text_matches_trace(self):
        r = rs(ALPHA_AB, '"r" a:b <=> k _ ;')
        by_text = r.trace_text("ka", "kb")
        assert len(by_text) == 1 and by_text[0].accepted

    def test_earliest_rejection_wins(self):
        r = rs(ALPHA_DEL, '"one" a:b <=> # _ ; "two" e:0 <=> k _ ;')
        # the candidate violates "one" at position 1 and "two" at 3
        fail = r.trace_pairs([("a", "a"), ("k", "k"), ("e", "e")])
        assert fail == ("one", 1)

    def test_end_of_word_failure_charged_at_final_position(self):
        r = rs(ALPHA_AB, '"r" a:b <=> _ k ;')
        # a:b with no k after it fails only once input ends
        fail = r.trace_pairs([("k", "k"), ("a", "b")])
        assert fail == ("r", 2)


class TestCompiledArtifacts:
    def test_dfa_equivalence_reflexive(self):
        rules = parse_rules('"r" a:b <=> k ( t ) _ ;', ALPHA_AB)
        a1 = compile_rule(rules[0], ALPHA_AB)
        a2 = compile_rule(rules[0], ALPHA_AB)
        assert dfa_equivalent(a1, a2, ALPHA_AB)

    def test_dfa_inequivalence(self):
        r1 = parse_rules('"r" a:b <=> k _ ;', ALPHA_AB)[0]
        r2 = parse_rules('"r" a:b <=> t _ ;', ALPHA_AB)[0]
        assert not dfa_equivalent(
            compile_rule(r1, ALPHA_AB), compile_rule(r2, ALPHA_AB), ALPHA_AB
        )

    def test_vacuous_context_warns(self):
        # t:0 is not a feasible pair, so the context can never match
        r = rs(ALPHA_AB, '"w" a:b <=> t:0 _ ;')
        assert any("can never match" in w for w in r.warnings)

    def test_trailing_optional_right_context_is_vacuous_extension(self):
        # a right context matches on any prefix, so ( t ) adds nothing
        plain = parse_rules('"r" a:b <=> k _ e ;', ALPHA_AB)[0]
        opt = parse_rules('"r" a:b <=> k _ e ( t ) ;', ALPHA_AB)[0]
        assert dfa_equivalent(
            compile_rule(plain, ALPHA_AB), compile_rule(opt, ALPHA_AB), ALPHA_AB
        )


class TestConflicts:
    def test_conflicting_coercions_detected(self):
        rules = parse_rules(
            '"lo" a:b <= k _ ; "hi" a:0 <= k _ ;', ALPHA_CONF
        )
        found = detect_conflicts(rules, ALPHA_CONF)
        assert len(found) == 1
        c = found[0]
        assert {c.rule_a, c.rule_b} == {"lo", "hi"}
        assert c.lexical == "a"
        assert "_" in c.witness()

    def test_disjoint_contexts_do_not_conflict(self):
        rules = parse_rules(
            '"lo" a:b <= k _ ; "hi" a:0 <= t _ ;', ALPHA_CONF
        )
        assert detect_conflicts(rules, ALPHA_CONF) == []

    def test_ruleset_conflicts_method(self):
        r = rs(ALPHA_CONF, '"lo" a:b <= k _ ; "hi" a:0 <= k _ ;')
        assert len(r.conflicts()) == 1
