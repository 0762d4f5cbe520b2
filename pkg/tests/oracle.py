"""Independent brute-force oracle for two-level rule semantics.

This module deliberately avoids the package's automata machinery.  It defines
rule satisfaction by direct position quantification with a naive recursive
regex matcher, and generation by enumerating every feasible pair string.
The engine must agree with it; tests freeze values computed here.

Conventions shared with the engine (and asserted by tests):

* a pair string is framed as ["#"] + pairs + ["#"];
* an occurrence's right context starts after the occurrence;
* for an insertion rule (lexical zero center), the coercion direction checks
  every gap i in 1..n+1: if the element at i is not the center, the rule is
  violated when some context's left matches before i and its right matches
  starting AT i (over the string without any insertion at that gap);
* at most one inserted pair per gap.
"""

from itertools import product

from czmorph.alphabet import BOUNDARY, ZERO
from czmorph.rules import Alt, Boundary, Opt, Pair, Seq, SetAtom, Star


def atom_matches(atom, elem, a):
    """Does a single framed element (pair tuple or '#') match an atom?"""
    if isinstance(atom, Boundary):
        return elem == BOUNDARY
    if elem == BOUNDARY:
        return False
    lex, surf = elem
    if isinstance(atom, Pair):
        if atom.lex is not None and atom.lex != lex:
            return False
        if atom.surf is not None and atom.surf != surf:
            return False
        return True
    if isinstance(atom, SetAtom):
        members = a.sets[atom.name]
        if atom.side == "lex":
            return lex in members
        if atom.side == "surf":
            return surf in members
        return lex == surf and lex in members
    raise TypeError(f"not an atom: {atom!r}")


def match_ends(ast, framed, i, a, memo=None):
    """All end positions j such that ast matches framed[i:j]."""
    if memo is None:
        memo = {}
    key = (id(ast), i)
    if key in memo:
        return memo[key]
    memo[key] = set()  # cycle guard for Star over nullable items
    if isinstance(ast, Seq):
        ends = {i}
        for item in ast.items:
            nxt = set()
            for j in ends:
                nxt |= match_ends(item, framed, j, a, memo)
            ends = nxt
            if not ends:
                break
    elif isinstance(ast, Alt):
        ends = set()
        for item in ast.items:
            ends |= match_ends(item, framed, i, a, memo)
    elif isinstance(ast, Opt):
        ends = {i} | match_ends(ast.item, framed, i, a, memo)
    elif isinstance(ast, Star):
        ends = {i}
        frontier = {i}
        while frontier:
            step = set()
            for j in frontier:
                step |= match_ends(ast.item, framed, j, a, memo)
            frontier = step - ends
            ends |= step
    else:
        ends = (
            {i + 1} if i < len(framed) and atom_matches(ast, framed[i], a) else set()
        )
    memo[key] = ends
    return ends


def left_matches(left_ast, framed, i, a):
    """Does the left context match some suffix of framed[0:i]?"""
    for start in range(i + 1):
        if i in match_ends(left_ast, framed, start, a):
            return True
    return False


def right_matches(right_ast, framed, i, a):
    """Does the right context match some prefix of framed[i:]?"""
    return bool(match_ends(right_ast, framed, i, a))


def context_fits(rule, framed, i, a):
    """Is some context of the rule satisfied around an occurrence at i?"""
    for left, right in rule.contexts:
        if left_matches(left, framed, i, a) and right_matches(right, framed, i + 1, a):
            return True
    return False


def rule_satisfied(rule, framed, a):
    center = rule.center
    op = rule.operator

    if op in ("<=>", "=>"):
        for i in range(1, len(framed) - 1):
            if framed[i] == center and not context_fits(rule, framed, i, a):
                return False

    if op in ("<=>", "<="):
        if center[0] == ZERO:
            for i in range(1, len(framed)):
                if framed[i] == center:
                    continue
                for left, right in rule.contexts:
                    if left_matches(left, framed, i, a) and right_matches(
                        right, framed, i, a
                    ):
                        return False
        else:
            for i in range(1, len(framed) - 1):
                elem = framed[i]
                if elem == BOUNDARY or elem[0] != center[0] or elem[1] == center[1]:
                    continue
                if context_fits(rule, framed, i, a):
                    return False

    if op == "/<=":
        for i in range(1, len(framed) - 1):
            if framed[i] == center and context_fits(rule, framed, i, a):
                return False

    return True


def oracle_accepts(rules, pairs, a):
    framed = [BOUNDARY] + list(pairs) + [BOUNDARY]
    return all(rule_satisfied(r, framed, a) for r in rules)


def all_pair_strings(a, lexsyms):
    """Every pair string over the lexical input, with at most one inserted
    zero-lexical pair per gap.  Deterministic order."""
    per_pos = []
    for s in lexsyms:
        surfs = a.surfaces_for(s)
        if not surfs:
            return
        per_pos.append(tuple((s, t) for t in surfs))
    gap_opts = (None,) + a.insertion_pairs()
    n = len(lexsyms)
    for gaps in product(gap_opts, repeat=n + 1):
        for body in product(*per_pos):
            out = []
            for i in range(n):
                if gaps[i] is not None:
                    out.append(gaps[i])
                out.append(body[i])
            if gaps[n] is not None:
                out.append(gaps[n])
            yield tuple(out)


def oracle_generate(a, rules, lexsyms):
    """Brute-force reference for generate_surface."""
    found = set()
    for cand in all_pair_strings(a, lexsyms):
        if oracle_accepts(rules, cand, a):
            found.add("".join(surf for _, surf in cand if surf != ZERO))
    return found
