"""Compilation of two-level rules into deterministic automata over pairs.

Each rule becomes one DFA over the alphabet's feasible pairs plus the word
boundary.  A pair string is evaluated framed as # ... #; the automaton state
tracks, per context, an NFA for "some suffix of the input read so far matches
the left context", plus pending right-context obligations:

* restriction (=> and <=>): every occurrence of the center pair opens an
  obligation group - one alternative per context whose left side matched -
  and the group must be discharged by some alternative's right context
  matching; an undischarged group at the end of input rejects.
* coercion (<= and <=>): an occurrence of the center's lexical symbol with a
  different surface opens a watcher per matched context; a watcher whose
  right context completes rejects.  For an insertion center (lexical zero)
  the watcher is opened at every gap not filled by the center and its right
  context starts at the gap itself.
* exclusion (/<=): occurrences of the center pair open watchers, as above.

Transitions are indexed by pair equivalence classes (pairs the rule's atoms
cannot tell apart), which keeps automata small however large the alphabet is.
"""

from collections import deque

from .alphabet import BOUNDARY, ZERO
from .errors import PairStringError
from .rules import Alt, Boundary, Opt, Pair, Seq, SetAtom, Star


def _atom_pair_ids(atom, a):
    """The set of feasible-pair indices an atom matches (None for boundary)."""
    if isinstance(atom, Boundary):
        return None
    out = set()
    if isinstance(atom, Pair):
        for i, (lex, surf) in enumerate(a.pairs):
            if (atom.lex is None or atom.lex == lex) and (
                atom.surf is None or atom.surf == surf
            ):
                out.add(i)
    elif isinstance(atom, SetAtom):
        members = a.sets[atom.name]
        for i, (lex, surf) in enumerate(a.pairs):
            if atom.side == "lex":
                if lex in members:
                    out.add(i)
            elif atom.side == "surf":
                if surf in members:
                    out.add(i)
            elif lex == surf and lex in members:
                out.add(i)
    else:
        raise TypeError(f"not an atom: {atom!r}")
    return out


class _Nfa:
    """Thompson construction over atom ids; epsilon edges kept separate."""

    def __init__(self):
        self.eps = []
        self.steps = []  # per state: list of (atom_id, target)

    def new_state(self):
        self.eps.append(set())
        self.steps.append([])
        return len(self.eps) - 1

    def add_eps(self, s, t):
        self.eps[s].add(t)

    def add_step(self, s, atom_id, t):
        self.steps[s].append((atom_id, t))

    def closure(self, states):
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for t in self.eps[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def _build_nfa(ast, atom_ids):
    """Compile a context AST; returns (nfa, start, accept)."""
    nfa = _Nfa()

    def build(node):
        if isinstance(node, Seq):
            s = nfa.new_state()
            cur = s
            for item in node.items:
                i_s, i_e = build(item)
                nfa.add_eps(cur, i_s)
                cur = i_e
            e = nfa.new_state()
            nfa.add_eps(cur, e)
            return s, e
        if isinstance(node, Alt):
            s = nfa.new_state()
            e = nfa.new_state()
            for item in node.items:
                i_s, i_e = build(item)
                nfa.add_eps(s, i_s)
                nfa.add_eps(i_e, e)
            return s, e
        if isinstance(node, Opt):
            s = nfa.new_state()
            e = nfa.new_state()
            i_s, i_e = build(node.item)
            nfa.add_eps(s, i_s)
            nfa.add_eps(i_e, e)
            nfa.add_eps(s, e)
            return s, e
        if isinstance(node, Star):
            s = nfa.new_state()
            e = nfa.new_state()
            i_s, i_e = build(node.item)
            nfa.add_eps(s, i_s)
            nfa.add_eps(i_e, i_s)
            nfa.add_eps(s, e)
            nfa.add_eps(i_e, e)
            return s, e
        s = nfa.new_state()
        e = nfa.new_state()
        nfa.add_step(s, atom_ids[node], e)
        return s, e

    start, accept = build(ast)
    return nfa, start, accept


def _nfa_nonempty(nfa, start, accept, atom_live):
    """Reachability start -> accept using only atoms that match something."""
    seen = {start}
    stack = [start]
    while stack:
        q = stack.pop()
        if q == accept:
            return True
        for t in nfa.eps[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
        for atom_id, t in nfa.steps[q]:
            if atom_live[atom_id] and t not in seen:
                seen.add(t)
                stack.append(t)
    return False


class _ContextMachine:
    """One compiled context: the left NFA (run as a suffix matcher) and the
    right NFA (run forward as obligation/watcher)."""

    def __init__(self, left_ast, right_ast, atom_ids):
        self.lnfa, self.lstart, self.laccept = _build_nfa(left_ast, atom_ids)
        self.rnfa, self.rstart, self.raccept = _build_nfa(right_ast, atom_ids)
        self.lstart_closure = self.lnfa.closure({self.lstart})
        self.rstart_closure = self.rnfa.closure({self.rstart})

    def left_advance(self, states, cls, atom_classes):
        moved = set()
        for q in states:
            for atom_id, t in self.lnfa.steps[q]:
                if cls in atom_classes[atom_id]:
                    moved.add(t)
        return self.lnfa.closure(moved) | self.lstart_closure

    def right_advance(self, states, cls, atom_classes):
        moved = set()
        for q in states:
            for atom_id, t in self.rnfa.steps[q]:
                if cls in atom_classes[atom_id]:
                    moved.add(t)
        return self.rnfa.closure(moved) if moved else frozenset()

    def left_matched(self, states):
        return self.laccept in states

    def right_matched(self, states):
        return self.raccept in states


class RuleAutomaton:
    """Deterministic automaton for one rule, total via a sink state.

    State 0 is the rejecting sink.  ``start`` is the state after the initial
    word boundary; ``final_ok[q]`` says whether ending the word in q (i.e.
    feeding the final boundary) satisfies the rule; ``live[q]`` says whether
    any continuation can still be accepted.
    """

    def __init__(self, rule, n_states, n_classes, bound_class, pair2class,
                 trans, start, final_ok, live, warnings):
        self.rule = rule
        self.name = rule.name
        self.n_states = n_states
        self.n_classes = n_classes
        self.bound_class = bound_class
        self.pair2class = pair2class
        self.trans = trans
        self.start = start
        self.final_ok = final_ok
        self.live = live
        self.warnings = tuple(warnings)

    def step(self, state, pair_id):
        return self.trans[state * self.n_classes + self.pair2class[pair_id]]

    def accepts_pair_ids(self, pair_ids):
        q = self.start
        trans = self.trans
        n = self.n_classes
        p2c = self.pair2class
        for pid in pair_ids:
            q = trans[q * n + p2c[pid]]
        return bool(self.final_ok[q])

    def __repr__(self):
        return f"<RuleAutomaton {self.rule.name!r} states={self.n_states}>"


class _StateKey:
    __slots__ = ("pre", "alive", "trackers", "obligations", "watchers", "_hash")

    def __init__(self, pre, alive, trackers, obligations, watchers):
        self.pre = pre
        self.alive = alive
        self.trackers = trackers
        self.obligations = obligations
        self.watchers = watchers
        self._hash = hash((pre, alive, trackers, obligations, watchers))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            self.pre == other.pre
            and self.alive == other.alive
            and self.trackers == other.trackers
            and self.obligations == other.obligations
            and self.watchers == other.watchers
        )


_DEAD = _StateKey(False, False, (), frozenset(), frozenset())


def compile_rule(rule, a):
    """Compile one parsed rule against an alphabet."""
    op = rule.operator
    center = rule.center
    center_id = a.pair_index[center]
    insertion_center = center[0] == ZERO

    # Collect distinct atoms across all contexts.
    atom_ids = {}
    atoms = []

    def collect(node):
        if isinstance(node, (Seq, Alt)):
            for item in node.items:
                collect(item)
        elif isinstance(node, (Opt, Star)):
            collect(node.item)
        else:
            if node not in atom_ids:
                atom_ids[node] = len(atoms)
                atoms.append(node)

    for left, right in rule.contexts:
        collect(left)
        collect(right)

    atom_pairs = [_atom_pair_ids(atom, a) for atom in atoms]

    # Pair equivalence classes: pairs indistinguishable to every atom, with
    # the center pair and the center's lexical symbol kept distinguishable.
    n_pairs = len(a.pairs)
    sig_to_class = {}
    pair2class = [0] * n_pairs
    class_members = []
    for pid in range(n_pairs):
        sig = tuple(
            pid in ap for ap in atom_pairs if ap is not None
        ) + (pid == center_id, a.pairs[pid][0] == center[0])
        cls = sig_to_class.get(sig)
        if cls is None:
            cls = len(sig_to_class)
            sig_to_class[sig] = cls
            class_members.append([])
        pair2class[pid] = cls
        class_members[cls].append(pid)
    bound_class = len(sig_to_class)
    n_classes = bound_class + 1

    # For each atom, the set of classes it matches.
    atom_classes = []
    for ap in atom_pairs:
        if ap is None:
            atom_classes.append({bound_class})
        else:
            atom_classes.append({pair2class[pid] for pid in ap})

    center_class = pair2class[center_id]
    lexical_classes = {
        pair2class[pid]
        for pid in range(n_pairs)
        if a.pairs[pid][0] == center[0] and pid != center_id
    }

    machines = [_ContextMachine(l, r, atom_ids) for l, r in rule.contexts]

    warnings = []
    atom_live = [ap is None or bool(ap) for ap in atom_pairs]
    vacuous = []
    for k, m in enumerate(machines):
        ok_l = _nfa_nonempty(m.lnfa, m.lstart, m.laccept, atom_live)
        ok_r = _nfa_nonempty(m.rnfa, m.rstart, m.raccept, atom_live)
        vacuous.append(not (ok_l and ok_r))
        if vacuous[-1]:
            warnings.append(
                f"rule {rule.name!r}: context {k + 1} can never match"
            )
    if all(vacuous) and op in ("<=>", "=>"):
        warnings.append(
            f"rule {rule.name!r}: no context can match; "
            f"center {center[0]}:{center[1]} is never allowed"
        )

    restriction = op in ("<=>", "=>")
    coercion = op in ("<=>", "<=")
    exclusion = op == "/<="

    def advance(state, cls):
        if not state.alive:
            return _DEAD
        is_bound = cls == bound_class
        left_ok = [m.left_matched(t) for m, t in zip(machines, state.trackers)]

        violated = False
        new_groups = []
        new_watchers = []

        if not is_bound and cls == center_class:
            matched = [k for k, ok in enumerate(left_ok) if ok]
            if restriction:
                if not matched:
                    violated = True
                else:
                    alts = [(k, machines[k].rstart_closure) for k in matched]
                    if not any(
                        machines[k].right_matched(s) for k, s in alts
                    ):
                        new_groups.append(frozenset(alts))
            if exclusion:
                for k in matched:
                    s = machines[k].rstart_closure
                    if machines[k].right_matched(s):
                        violated = True
                    else:
                        new_watchers.append((k, s))

        if (
            coercion
            and not insertion_center
            and not is_bound
            and cls in lexical_classes
        ):
            for k, ok in enumerate(left_ok):
                if not ok:
                    continue
                s = machines[k].rstart_closure
                if machines[k].right_matched(s):
                    violated = True
                else:
                    new_watchers.append((k, s))

        if (
            coercion
            and insertion_center
            and cls != center_class
            and not (is_bound and state.pre)
        ):
            # A gap the center did not fill: the right context starts here,
            # so the watcher consumes the current symbol immediately.
            for k, ok in enumerate(left_ok):
                if not ok:
                    continue
                m = machines[k]
                if m.right_matched(m.rstart_closure):
                    violated = True
                    continue
                adv = m.right_advance(m.rstart_closure, cls, atom_classes)
                if m.right_matched(adv):
                    violated = True
                elif adv:
                    new_watchers.append((k, adv))

        # Advance everything that was already pending.
        trackers = tuple(
            m.left_advance(t, cls, atom_classes)
            for m, t in zip(machines, state.trackers)
        )
        groups = set()
        for group in state.obligations:
            advanced = []
            discharged = False
            for k, s in group:
                s2 = machines[k].right_advance(s, cls, atom_classes)
                if machines[k].right_matched(s2):
                    discharged = True
                    break
                if s2:
                    advanced.append((k, s2))
            if discharged:
                continue
            if not advanced:
                violated = True
                continue
            groups.add(frozenset(advanced))
        watchers = set()
        for k, s in state.watchers:
            s2 = machines[k].right_advance(s, cls, atom_classes)
            if machines[k].right_matched(s2):
                violated = True
            elif s2:
                watchers.add((k, s2))

        if violated:
            return _DEAD
        groups.update(new_groups)
        watchers.update(new_watchers)
        return _StateKey(
            False, True, trackers, frozenset(groups), frozenset(watchers)
        )

    initial = _StateKey(
        True,
        True,
        tuple(m.lstart_closure for m in machines),
        frozenset(),
        frozenset(),
    )

    # Subset-style construction: explore every class from every state.
    index = {_DEAD: 0, initial: 1}
    order = [_DEAD, initial]
    trans = [0] * n_classes  # the sink loops to itself
    queue = deque([initial])
    while queue:
        state = queue.popleft()
        base = index[state] * n_classes
        if len(trans) < base + n_classes:
            trans.extend([0] * (base + n_classes - len(trans)))
        for cls in range(n_classes):
            nxt = advance(state, cls)
            j = index.get(nxt)
            if j is None:
                j = len(order)
                index[nxt] = j
                order.append(nxt)
                queue.append(nxt)
            trans[base + cls] = j
    n_states = len(order)
    if len(trans) < n_states * n_classes:
        trans.extend([0] * (n_states * n_classes - len(trans)))

    final_ok = bytearray(n_states)
    for q, state in enumerate(order):
        after = trans[q * n_classes + bound_class]
        end_state = order[after]
        final_ok[q] = 1 if end_state.alive and not end_state.obligations else 0

    live = bytearray(final_ok)
    pair_classes = list(range(bound_class))
    changed = True
    while changed:
        changed = False
        for q in range(n_states):
            if live[q]:
                continue
            base = q * n_classes
            for cls in pair_classes:
                if live[trans[base + cls]]:
                    live[q] = 1
                    changed = True
                    break

    start = trans[1 * n_classes + bound_class]
    return RuleAutomaton(
        rule,
        n_states,
        n_classes,
        bound_class,
        pair2class,
        trans,
        start,
        final_ok,
        live,
        warnings,
    )


def dfa_equivalent(auto1, auto2, a):
    """Language equivalence of two compiled rules over one alphabet."""
    n_pairs = len(a.pairs)
    seen = {(auto1.start, auto2.start)}
    queue = deque(seen)
    while queue:
        q1, q2 = queue.popleft()
        if bool(auto1.final_ok[q1]) != bool(auto2.final_ok[q2]):
            return False
        for pid in range(n_pairs):
            t = (auto1.step(q1, pid), auto2.step(q2, pid))
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return True


class Conflict:
    """Two rules that coerce different surfaces in intersecting contexts."""

    def __init__(self, rule_a, rule_b, lexical, witness_before, witness_after):
        self.rule_a = rule_a
        self.rule_b = rule_b
        self.lexical = lexical
        self.witness_before = tuple(witness_before)
        self.witness_after = tuple(witness_after)

    def witness(self):
        def fmt(pairs):
            return " ".join(f"{l}:{s}" for l, s in pairs)

        before = fmt(self.witness_before)
        after = fmt(self.witness_after)
        middle = "_" if self.lexical == ZERO else f"{self.lexical} _"
        return " ".join(x for x in (before, middle, after) if x)

    def __repr__(self):
        return (
            f"<Conflict {self.rule_a!r} vs {self.rule_b!r} on "
            f"{self.lexical!r}: {self.witness()}>"
        )


def _conflict_witness(r1, r2, a):
    """Shortest pair string where both rules' coercions trigger at one spot.

    Returns (before, after) pair tuples, or None.  The search walks symbol by
    symbol, tracking left matchers for both rules; at the shared center it
    forks to tracking both rules' right contexts, which must both complete.
    """
    insertion = r1.center[0] == ZERO
    atom_ids = {}
    atoms = []

    def collect(node):
        if isinstance(node, (Seq, Alt)):
            for item in node.items:
                collect(item)
        elif isinstance(node, (Opt, Star)):
            collect(node.item)
        elif node not in atom_ids:
            atom_ids[node] = len(atoms)
            atoms.append(node)

    for rule in (r1, r2):
        for left, right in rule.contexts:
            collect(left)
            collect(right)

    atom_pairs = [_atom_pair_ids(atom, a) for atom in atoms]
    n_pairs = len(a.pairs)
    # Treat the raw pair id as the class; the boundary gets id n_pairs.
    atom_classes = []
    for ap in atom_pairs:
        atom_classes.append({n_pairs} if ap is None else set(ap))

    mach1 = [_ContextMachine(l, r, atom_ids) for l, r in r1.contexts]
    mach2 = [_ContextMachine(l, r, atom_ids) for l, r in r2.contexts]

    def fork(t1, t2):
        """Right-context groups at the center, or None if a side has no
        matched left context."""
        k1 = [k for k, m in enumerate(mach1) if m.left_matched(t1[k])]
        k2 = [k for k, m in enumerate(mach2) if m.left_matched(t2[k])]
        if not k1 or not k2:
            return None
        g1 = frozenset((k, mach1[k].rstart_closure) for k in k1)
        g2 = frozenset((k, mach2[k].rstart_closure) for k in k2)
        return g1, g2

    def matched(group, machines):
        return any(machines[k].right_matched(s) for k, s in group)

    def advance_group(group, machines, cls):
        done = False
        out = []
        for k, s in group:
            s2 = machines[k].right_advance(s, cls, atom_classes)
            if machines[k].right_matched(s2):
                done = True
            elif s2:
                out.append((k, s2))
        return done, frozenset(out)

    t1_0 = tuple(
        m.left_advance(m.lstart_closure, n_pairs, atom_classes) for m in mach1
    )
    t2_0 = tuple(
        m.left_advance(m.lstart_closure, n_pairs, atom_classes) for m in mach2
    )
    start = ("pre", t1_0, t2_0)
    seen = {start}
    queue = deque([(start, ())])
    limit = 200000
    while queue and limit:
        limit -= 1
        state, path = queue.popleft()
        if state[0] == "pre":
            _, t1, t2 = state
            forked = fork(t1, t2)
            if forked is not None:
                # For a symbol center the slot is filled by some pair with
                # the shared lexical symbol; whichever surface fills it, at
                # least one rule's coercion is violated, so the witness does
                # not depend on the filler.  Right contexts start after the
                # slot (for an insertion center: at the gap itself), so the
                # groups are not advanced here either way.
                g1, g2 = forked
                d1 = matched(g1, mach1)
                d2 = matched(g2, mach2)
                if d1 and d2:
                    return path, ()
                post = ("post", d1, g1, d2, g2, len(path))
                if post not in seen:
                    seen.add(post)
                    queue.append((post, path))
            for pid in range(n_pairs):
                nt1 = tuple(
                    m.left_advance(t, pid, atom_classes)
                    for m, t in zip(mach1, t1)
                )
                nt2 = tuple(
                    m.left_advance(t, pid, atom_classes)
                    for m, t in zip(mach2, t2)
                )
                nxt = ("pre", nt1, nt2)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, path + (a.pairs[pid],)))
        else:
            _, d1, g1, d2, g2, split = state
            for cls in list(range(n_pairs)) + [n_pairs]:
                ad1, ag1 = (True, g1) if d1 else advance_group(g1, mach1, cls)
                ad2, ag2 = (True, g2) if d2 else advance_group(g2, mach2, cls)
                if not ad1 and not ag1:
                    continue
                if not ad2 and not ag2:
                    continue
                if cls == n_pairs:
                    if ad1 and ad2:
                        return path[:split], path[split:]
                    continue
                if ad1 and ad2:
                    return path[:split], path[split:] + (a.pairs[cls],)
                nxt = ("post", ad1, ag1, ad2, ag2, split)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, path + (a.pairs[cls],)))
    return None


def detect_conflicts(rules, a):
    """Pairs of <=/<=> rules that demand different surfaces for one lexical
    symbol in intersecting contexts.  Returns Conflict reports."""
    coercive = [
        r for r in rules if r.operator in ("<=", "<=>")
    ]
    conflicts = []
    for i in range(len(coercive)):
        for j in range(i + 1, len(coercive)):
            r1, r2 = coercive[i], coercive[j]
            if r1.center[0] != r2.center[0]:
                continue
            if r1.center[1] == r2.center[1]:
                # Same demanded surface cannot clash, but identical centers
                # with <=> restrictions intersecting is a separate authoring
                # problem reported by compile vacuity warnings.
                continue
            hit = _conflict_witness(r1, r2, a)
            if hit is not None:
                before, after = hit
                conflicts.append(
                    Conflict(r1.name, r2.name, r1.center[0], before, after)
                )
    return conflicts


def check_pairs_feasible(a, pairs):
    """Raise PairStringError when a pair string strays off the alphabet."""
    for lex, surf in pairs:
        if not a.feasible(lex, surf):
            raise PairStringError(f"infeasible pair {lex}:{surf}")
