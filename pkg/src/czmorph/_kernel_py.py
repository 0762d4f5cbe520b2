"""Pure Python evaluation kernel.

Operates on the flat integer tables built by engine.PackedRules: every rule's
transition table, pair-to-class map, liveness and acceptance vectors are
concatenated into single arrays with per-rule offsets.  The compiled kernel
in _speedups.pyx implements exactly the same two entry points.
"""


def accepts(pk, seq):
    """Run every rule over a sequence of pair ids; True when all accept."""
    states = list(pk.start)
    n_rules = pk.n_rules
    n_pairs = pk.n_pairs
    trans = pk.trans
    trans_off = pk.trans_off
    n_classes = pk.n_classes
    p2c = pk.pair2class
    live = pk.live
    live_off = pk.live_off
    for pid in seq:
        for r in range(n_rules):
            q = trans[
                trans_off[r]
                + states[r] * n_classes[r]
                + p2c[r * n_pairs + pid]
            ]
            if not live[live_off[r] + q]:
                return False
            states[r] = q
    final_ok = pk.final_ok
    for r in range(n_rules):
        if not final_ok[live_off[r] + states[r]]:
            return False
    return True


def _step_all(pk, states, pid):
    """Advance all rules by one pair; None when some rule goes dead."""
    out = list(states)
    for r in range(pk.n_rules):
        q = pk.trans[
            pk.trans_off[r]
            + out[r] * pk.n_classes[r]
            + pk.pair2class[r * pk.n_pairs + pid]
        ]
        if not pk.live[pk.live_off[r] + q]:
            return None
        out[r] = q
    return out


def search(pk, pos_cands, gap_cands):
    """Enumerate accepted pair strings.

    pos_cands[i] lists candidate pair ids for input position i; gap_cands[i]
    lists pair ids that may be inserted in the gap before position i (the
    last gap sits after the final position).  At most one pair is inserted
    per gap.  Returns the accepted sequences as tuples of pair ids.
    """
    n = len(pos_cands)
    results = []

    def at_gap(i, states, acc):
        after_gap(i, states, acc)
        for pid in gap_cands[i]:
            st = _step_all(pk, states, pid)
            if st is not None:
                after_gap(i, st, acc + (pid,))

    def after_gap(i, states, acc):
        if i == n:
            for r in range(pk.n_rules):
                if not pk.final_ok[pk.live_off[r] + states[r]]:
                    return
            results.append(acc)
            return
        for pid in pos_cands[i]:
            st = _step_all(pk, states, pid)
            if st is not None:
                at_gap(i + 1, st, acc + (pid,))

    at_gap(0, list(pk.start), ())
    return results
