# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernel; mirrors _kernel_py exactly.

Both entry points take an engine.PackedRules instance whose tables are
array('i') and bytearray buffers, exposed here as typed memoryviews.
"""

from cpython cimport array
import array


cdef class _Tables:
    cdef int n_rules
    cdef int n_pairs
    cdef int[::1] n_classes
    cdef int[::1] start
    cdef int[::1] trans
    cdef int[::1] trans_off
    cdef int[::1] pair2class
    cdef unsigned char[::1] live
    cdef int[::1] live_off
    cdef unsigned char[::1] final_ok
    cdef list results

    def __init__(self, pk):
        self.n_rules = pk.n_rules
        self.n_pairs = pk.n_pairs
        self.n_classes = pk.n_classes
        self.start = pk.start
        self.trans = pk.trans
        self.trans_off = pk.trans_off
        self.pair2class = pk.pair2class
        self.live = pk.live
        self.live_off = pk.live_off
        self.final_ok = pk.final_ok
        self.results = []

    cdef int _step_all(self, int[::1] src, int[::1] dst, int pid):
        cdef int r, q
        for r in range(self.n_rules):
            q = self.trans[
                self.trans_off[r]
                + src[r] * self.n_classes[r]
                + self.pair2class[r * self.n_pairs + pid]
            ]
            if not self.live[self.live_off[r] + q]:
                return 0
            dst[r] = q
        return 1

    cdef bint _final(self, int[::1] states):
        cdef int r
        for r in range(self.n_rules):
            if not self.final_ok[self.live_off[r] + states[r]]:
                return 0
        return 1

    cdef void _at_gap(self, int i, int[::1] states, tuple acc,
                      list pos_cands, list gap_cands):
        cdef int pid
        cdef array.array scratch
        self._after_gap(i, states, acc, pos_cands, gap_cands)
        for pid in gap_cands[i]:
            scratch = array.array('i', bytes(4 * self.n_rules))
            if self._step_all(states, scratch, pid):
                self._after_gap(i, scratch, acc + (pid,),
                                pos_cands, gap_cands)

    cdef void _after_gap(self, int i, int[::1] states, tuple acc,
                         list pos_cands, list gap_cands):
        cdef int pid
        cdef array.array scratch
        if i == len(pos_cands):
            if self._final(states):
                self.results.append(acc)
            return
        for pid in pos_cands[i]:
            scratch = array.array('i', bytes(4 * self.n_rules))
            if self._step_all(states, scratch, pid):
                self._at_gap(i + 1, scratch, acc + (pid,),
                             pos_cands, gap_cands)


def accepts(pk, seq):
    """Run every rule over a sequence of pair ids; True when all accept."""
    cdef _Tables t = _Tables(pk)
    cdef array.array states = array.array('i', pk.start)
    cdef int[::1] st = states
    cdef int pid, r, q
    for pid in seq:
        for r in range(t.n_rules):
            q = t.trans[
                t.trans_off[r]
                + st[r] * t.n_classes[r]
                + t.pair2class[r * t.n_pairs + pid]
            ]
            if not t.live[t.live_off[r] + q]:
                return False
            st[r] = q
    return bool(t._final(st))


def search(pk, pos_cands, gap_cands):
    """Enumerate accepted pair strings; see _kernel_py.search."""
    cdef _Tables t = _Tables(pk)
    cdef array.array states = array.array('i', pk.start)
    t._at_gap(0, states, (), list(pos_cands), list(gap_cands))
    return t.results
