"""The compiled kernel and the pure Python fallback must be interchangeable."""

import os
import random
import subprocess
import sys

import pytest

import oracle
import oracle_harness as harness

import czmorph._kernel_py as pure_kernel
import czmorph.kernel as kernel


def test_backend_reports_selection():
    if os.environ.get("CZMORPH_PURE") == "1":
        assert kernel.BACKEND == "pure"
    else:
        try:
            import czmorph._speedups  # noqa: F401
        except ImportError:
            assert kernel.BACKEND == "pure"
        else:
            assert kernel.BACKEND == "compiled"


def test_env_var_selects_pure_fallback():
    env = dict(os.environ)
    env["CZMORPH_PURE"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", "import czmorph; print(czmorph.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_cli_works_on_pure_backend():
    env = dict(os.environ)
    env["CZMORPH_PURE"] = "1"
    out = subprocess.run(
        [sys.executable, "-m", "czmorph.cli", "generate", "korek", "InstrSg"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout == "korkem\n"


def test_pure_kernel_matches_active_on_lexicon(czech_rules, czech_lexicon,
                                               monkeypatch):
    sample = [
        form.lexical for _, form in czech_lexicon.expand_all()
    ][::7]  # every seventh form keeps this quick
    active = [sorted(czech_rules.generate_from_text(s)) for s in sample]
    monkeypatch.setattr(kernel, "accepts", pure_kernel.accepts)
    monkeypatch.setattr(kernel, "search", pure_kernel.search)
    swapped = [sorted(czech_rules.generate_from_text(s)) for s in sample]
    assert active == swapped


def test_pure_kernel_matches_active_on_random_programs(monkeypatch):
    rng = random.Random(7)
    for _ in range(30):
        alpha, _, ruleset, text, chosen = harness.random_instance(rng)
        syms = harness.random_input(rng, alpha, chosen, cap=200)
        cands = list(oracle.all_pair_strings(alpha, syms))
        active = [ruleset.accepts(c) for c in cands]
        gen_active = ruleset.generate_surfaces(syms)
        monkeypatch.setattr(kernel, "accepts", pure_kernel.accepts)
        monkeypatch.setattr(kernel, "search", pure_kernel.search)
        assert [ruleset.accepts(c) for c in cands] == active, text
        assert ruleset.generate_surfaces(syms) == gen_active, text
        monkeypatch.undo()


def test_kernel_primitives_agree_directly(czech_rules):
    if kernel.accepts is pure_kernel.accepts:
        pytest.skip("compiled kernel not active")
    packed = czech_rules.packed
    index = czech_rules.alphabet.pair_index
    ids = [index[p] for p in (
        ("m", "m"), ("a", "a"), ("t", "t"), ("^E2", "0"), ("k", "č"),
        ("a", "0"), ("^2P1", "0"), ("ě", "e"),
    )]
    assert kernel.accepts(packed, ids) == pure_kernel.accepts(packed, ids)
    pos_cands = [[index[("m", "m")]], [index[("a", "a")], index[("a", "0")]]]
    gap_cands = [[index[("0", "e")]]] * 3
    assert kernel.search(packed, pos_cands, gap_cands) == pure_kernel.search(
        packed, pos_cands, gap_cands
    )
