import pytest

from czmorph.analyzer import (
    Analysis,
    FormIndex,
    build_index,
    coverage,
    text_hash,
    tokenize_words,
)
from czmorph.errors import AnalyzerError
from czmorph.lexicon import parse_lexicon


class TestAnalyze:
    def test_dative_locative_homography(self, czech_index):
        got = czech_index.analyze("matce")
        assert [(a.lemma, a.paradigm, a.tag) for a in got] == [
            ("matka", "fem-a-anim", "DatSg"),
            ("matka", "fem-a-anim", "LocSg"),
        ]

    def test_derived_feminine_genitive_plural(self, czech_index):
        got = czech_index.analyze("úřednic")
        assert [(a.lemma, a.tag) for a in got] == [("úředník", "Fem.GenPl")]

    def test_cross_lemma_homograph(self, czech_index):
        got = {(a.lemma, a.tag) for a in czech_index.analyze("žena")}
        assert ("žena", "NomSg") in got
        assert ("hnát", "Trans") in got

    def test_unknown_form_gives_no_analyses(self, czech_index):
        assert czech_index.analyze("qqq") == []

    def test_analyze_folds_case_and_normalization(self, czech_index):
        assert czech_index.analyze("Matce") == czech_index.analyze("matce")
        decomposed = "koně"  # koně with a combining caron
        assert czech_index.analyze(decomposed) == czech_index.analyze("koně")

    def test_exception_forms_flagged(self, czech_index):
        # ruce is the listed plural exception and the regular DatSg/LocSg
        got = {(a.tag, a.via_exception) for a in czech_index.analyze("ruce")}
        assert ("NomPl", True) in got
        assert ("AccPl", True) in got
        assert ("DatSg", False) in got
        assert ("LocSg", False) in got


class TestGenerate:
    def test_golden_generations(self, czech_index):
        assert czech_index.generate("korek", "InstrSg") == ["korkem"]
        assert czech_index.generate("doktorka", "PossAdj.GenPl") == [
            "doktorčiných"
        ]
        assert czech_index.generate("chodba", "GenPl") == ["chodeb"]

    def test_unknown_lemma(self, czech_index):
        with pytest.raises(AnalyzerError, match="unknown lemma"):
            czech_index.generate("nosuch", "NomSg")

    def test_unknown_tag(self, czech_index):
        with pytest.raises(AnalyzerError, match="no form tagged"):
            czech_index.generate("korek", "NoSuchTag")

    def test_exception_surfaces_generated(self, czech_index):
        assert czech_index.generate("ruka", "NomPl") == ["ruce"]
        assert czech_index.generate("velký", "Cmp") == ["větší"]


class TestRoundTrip:
    def test_full_lexicon_round_trip(self, czech_index, czech_lexicon,
                                     czech_rules):
        missed = []
        for entry, form in czech_lexicon.expand_all():
            if form.exception is not None:
                surfaces = [form.exception]
            else:
                surfaces = sorted(czech_rules.generate_from_text(form.lexical))
            for surface in surfaces:
                got = czech_index.analyze(surface)
                if not any(
                    a.lemma == entry.lemma
                    and a.paradigm == entry.paradigm
                    and a.tag == form.tag
                    for a in got
                ):
                    missed.append((entry.lemma, form.tag, surface))
        assert not missed, missed[:10]

    def test_soundness_every_analysis_regenerates(self, czech_index):
        for form in czech_index.forms:
            for a in czech_index.analyze(form):
                assert form in czech_index.generate(a.lemma, a.tag)


class TestIndexPersistence:
    def test_save_load_round_trip(self, czech_index, tmp_path):
        path = tmp_path / "czech.idx"
        czech_index.save(path)
        loaded = FormIndex.load(path)
        assert len(loaded) == len(czech_index)
        assert loaded.rules_hash == czech_index.rules_hash
        assert loaded.lexicon_hash == czech_index.lexicon_hash
        assert loaded.analyze("matce") == czech_index.analyze("matce")
        assert loaded.forms == czech_index.forms

    def test_hashes_recorded(self, czech_index):
        from czmorph.czech import builtin_lexicon_text, builtin_rules_text

        assert czech_index.rules_hash == text_hash(builtin_rules_text())
        assert czech_index.lexicon_hash == text_hash(builtin_lexicon_text())
        assert czech_index.rules_hash != czech_index.lexicon_hash

    def test_load_rejects_junk(self, tmp_path):
        path = tmp_path / "bad.idx"
        path.write_text("not an index\n", encoding="utf-8")
        with pytest.raises(AnalyzerError):
            FormIndex.load(path)

    def test_empty_lexicon_builds_empty_index(self, czech_rules):
        empty = parse_lexicon("")
        idx = build_index(czech_rules, empty)
        assert len(idx) == 0
        assert idx.analyze("matce") == []


class TestAnalysisOrdering:
    def test_rows_sorted_and_deduped(self):
        rows = [
            ("b", "l2", "p", "T", False),
            ("a", "l1", "p", "T", False),
            ("a", "l1", "p", "T", False),
        ]
        idx = FormIndex(rows)
        assert len(idx) == 2
        assert idx.forms == ("a", "b")

    def test_analysis_dataclass(self):
        a = Analysis("lemma", "par", "Tag")
        assert not a.via_exception
        assert a == Analysis("lemma", "par", "Tag", False)


def test_text_hash_stability():
    assert text_hash("abc") == text_hash("abc")
    assert text_hash("abc") != text_hash("abd")
    assert len(text_hash("")) == 64


def test_tokenize_words():
    got = tokenize_words("Matce, vedl 12 šlo-li qq_x!")
    assert got == ["matce", "vedl", "šlo", "li", "qq", "x"]
    assert tokenize_words("") == []


class TestCoverage:
    def test_exact_ratio(self, czech_index):
        words = ["matce", "matce", "korkem", "qzk", "qzk", "qzk"]
        rec = coverage(czech_index, words)
        assert rec["tokens"] == 6
        assert rec["analyzed"] == 3
        assert rec["ratio"] == 0.5
        assert rec["types"] == 3
        assert rec["types_analyzed"] == 2
        assert rec["type_ratio"] == pytest.approx(2 / 3)
        assert rec["empty"] is False
        assert rec["top_unknown"] == [("qzk", 3)]

    def test_empty_corpus(self, czech_index):
        rec = coverage(czech_index, [])
        assert rec["empty"] is True
        assert rec["tokens"] == 0
        assert rec["ratio"] == 0.0

    def test_top_unknown_ordering(self, czech_index):
        words = ["qb", "qa", "qa", "qc", "qc"]
        rec = coverage(czech_index, words)
        assert rec["top_unknown"] == [("qa", 2), ("qc", 2), ("qb", 1)]

    def test_top_unknown_caps_at_ten(self, czech_index):
        words = [f"q{i}" for i in range(15)]
        rec = coverage(czech_index, words)
        assert len(rec["top_unknown"]) == 10
