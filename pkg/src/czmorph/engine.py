"""Compiled rule sets: acceptance, generation, tracing, conflict checks."""

from array import array

from . import kernel
from .alphabet import ZERO, tokenize
from .automata import compile_rule, detect_conflicts
from .errors import PairStringError
from .rules import parse_rules


class PackedRules:
    """All rule automata flattened into shared integer tables.

    Layout per rule r (offsets in trans_off / live_off):
      transition:  trans[trans_off[r] + state * n_classes[r] + cls]
      class map:   pair2class[r * n_pairs + pair_id]
      liveness:    live[live_off[r] + state], same offsets for final_ok
    """

    __slots__ = (
        "n_rules",
        "n_pairs",
        "n_classes",
        "start",
        "trans",
        "trans_off",
        "pair2class",
        "live",
        "live_off",
        "final_ok",
    )

    def __init__(self, autos, n_pairs):
        self.n_rules = len(autos)
        self.n_pairs = n_pairs
        self.n_classes = array("i", [au.n_classes for au in autos])
        self.start = array("i", [au.start for au in autos])
        trans = array("i")
        trans_off = array("i")
        p2c = array("i")
        live = bytearray()
        live_off = array("i")
        final_ok = bytearray()
        for au in autos:
            trans_off.append(len(trans))
            trans.extend(au.trans)
            p2c.extend(au.pair2class)
            live_off.append(len(live))
            live.extend(au.live)
            final_ok.extend(au.final_ok)
        self.trans = trans
        self.trans_off = trans_off
        self.pair2class = p2c
        self.live = live
        self.live_off = live_off
        self.final_ok = final_ok


class TraceEntry:
    """One surface candidate's fate under every rule."""

    def __init__(self, pairs, surface, accepted, fail_rule, fail_pos):
        self.pairs = tuple(pairs)
        self.surface = surface
        self.accepted = accepted
        self.fail_rule = fail_rule
        self.fail_pos = fail_pos

    def pair_text(self):
        return " ".join(f"{l}:{s}" for l, s in self.pairs)

    def __repr__(self):
        if self.accepted:
            return f"<TraceEntry ok {self.surface!r}>"
        return (
            f"<TraceEntry {self.surface!r} fails {self.fail_rule!r} "
            f"at {self.fail_pos}>"
        )


def surface_of(pairs):
    return "".join(surf for _, surf in pairs if surf != ZERO)


class RuleSet:
    """A compiled two-level rule program over one alphabet."""

    def __init__(self, alphabet, rules):
        self.alphabet = alphabet
        self.rules = tuple(rules)
        self.automata = tuple(compile_rule(r, alphabet) for r in rules)
        self.warnings = tuple(
            w for au in self.automata for w in au.warnings
        )
        self.packed = PackedRules(self.automata, len(alphabet.pairs))
        self._insertion_ids = [
            alphabet.pair_index[p] for p in alphabet.insertion_pairs()
        ]
        by_lex = {}
        for i, (lex, _) in enumerate(alphabet.pairs):
            by_lex.setdefault(lex, []).append(i)
        self._ids_by_lex = by_lex

    @classmethod
    def from_text(cls, alphabet, rules_text):
        return cls(alphabet, parse_rules(rules_text, alphabet))

    def _pair_ids(self, pairs):
        ids = []
        index = self.alphabet.pair_index
        for lex, surf in pairs:
            pid = index.get((lex, surf))
            if pid is None:
                raise PairStringError(f"infeasible pair {lex}:{surf}")
            ids.append(pid)
        return ids

    def accepts(self, pairs):
        """True when every rule accepts the given (lexical, surface) pairs."""
        return kernel.accepts(self.packed, self._pair_ids(pairs))

    def generate_pairs(self, lexical_symbols):
        """All accepted pair strings realizing a lexical symbol sequence."""
        pos_cands = []
        for sym in lexical_symbols:
            cands = self._ids_by_lex.get(sym)
            if not cands:
                raise PairStringError(f"no feasible pair for {sym!r}")
            pos_cands.append(cands)
        gap_cands = [self._insertion_ids] * (len(pos_cands) + 1)
        pairs = self.alphabet.pairs
        found = kernel.search(self.packed, pos_cands, gap_cands)
        return [tuple(pairs[pid] for pid in seq) for seq in found]

    def generate_surfaces(self, lexical_symbols):
        """The set of surface strings realizing a lexical symbol sequence."""
        return {surface_of(p) for p in self.generate_pairs(lexical_symbols)}

    def generate_from_text(self, lexical_text):
        return self.generate_surfaces(tokenize(self.alphabet, lexical_text))

    def alignments(self, lexical_symbols, surface):
        """Pair strings over the alphabet (rules not applied) whose lexical
        side spells the symbols and whose surface side spells the string."""
        a = self.alphabet
        n = len(lexical_symbols)
        m = len(surface)
        out = []

        def insertions(j):
            cands = []
            if j < m:
                for pid in self._insertion_ids:
                    if a.pairs[pid][1] == surface[j]:
                        cands.append(a.pairs[pid])
            return cands

        def walk(i, j, acc, may_insert):
            if may_insert:
                for p in insertions(j):
                    walk(i, j + 1, acc + (p,), False)
            if i == n:
                if j == m:
                    out.append(acc)
                return
            sym = lexical_symbols[i]
            for pid in self._ids_by_lex.get(sym, ()):
                _, surf = a.pairs[pid]
                if surf == ZERO:
                    walk(i + 1, j, acc + (a.pairs[pid],), True)
                elif j < m and surf == surface[j]:
                    walk(i + 1, j + 1, acc + (a.pairs[pid],), True)

        walk(0, 0, (), True)
        return out

    def trace_pairs(self, pairs):
        """Earliest rejection of one pair string: (rule name, position) with
        positions 1-based, or None when every rule accepts.  A rule that is
        still live after the last pair but fails the end-of-word check is
        charged at the final position."""
        ids = self._pair_ids(pairs)
        n = len(ids)
        best = None
        for au in self.automata:
            q = au.start
            pos = None
            for i, pid in enumerate(ids):
                q = au.step(q, pid)
                if not au.live[q]:
                    pos = i + 1
                    break
            if pos is None and not au.final_ok[q]:
                pos = n
            if pos is not None and (best is None or pos < best[1]):
                best = (au.rule.name, pos)
        return best

    def trace(self, lexical_symbols, surface=None):
        """Diagnose candidates for a lexical string.

        With a surface given, every alignment of that surface is traced,
        accepted or not.  Without one, the accepted candidates are reported
        (tracing every conceivable candidate would enumerate the whole
        feasible-pair product).
        """
        entries = []
        if surface is None:
            for pairs in self.generate_pairs(lexical_symbols):
                entries.append(
                    TraceEntry(pairs, surface_of(pairs), True, None, None)
                )
            return entries
        for pairs in self.alignments(lexical_symbols, surface):
            fail = self.trace_pairs(pairs)
            if fail is None:
                entries.append(TraceEntry(pairs, surface, True, None, None))
            else:
                entries.append(
                    TraceEntry(pairs, surface, False, fail[0], fail[1])
                )
        return entries

    def trace_text(self, lexical_text, surface_text=None):
        symbols = tokenize(self.alphabet, lexical_text)
        surface = None
        if surface_text is not None:
            surface = "".join(tokenize(self.alphabet, surface_text))
        return self.trace(symbols, surface)

    def conflicts(self):
        return detect_conflicts(self.rules, self.alphabet)
