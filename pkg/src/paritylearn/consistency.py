"""Sample-consistency decision procedures for (partial) transition systems.

Both notions reduce to the same test: build two DFAs over the sample plus a
conflict relation on their state pairs, then a transition system T violates
the notion iff some T-state reaches a conflicting pair in the two products
T x A1 and T x A2.  Conflict membership is precomputed, so repeated checks
against the same sample are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automata import DFA
from .congruence import PartialTS, RightCongruence, infinity_set, sccs, _residual_structure
from .words import Alphabet, OmegaSample, UPWord


class MNPrecondition(ValueError):
    """Iteration consistency requires an MN-consistent leading congruence."""


@dataclass(frozen=True)
class ConflictSetup:
    """Two sample DFAs and the set of conflicting state pairs."""

    a1: DFA
    a2: DFA
    conflicts: frozenset[tuple[int, int]]

    def conflict_masks(self) -> tuple[int, ...]:
        """Per-A1-state bitmask of conflicting A2 states."""
        masks = [0] * self.a1.n_states
        for q1, q2 in self.conflicts:
            masks[q1] |= 1 << q2
        return tuple(masks)


def prefix_acceptor(alphabet: Alphabet, words: tuple[UPWord, ...]) -> DFA:
    """DFA accepting exactly the finite prefixes of the given omega-words."""
    ts, sink, _keys = _residual_structure(alphabet, sorted(
        set(words), key=lambda w: w.sort_key(alphabet)), False)
    finals = frozenset(q for q in range(ts.n_states) if q != sink)
    return DFA(ts, finals)


def _reach_masks(ts: PartialTS, dfa: DFA) -> list[int]:
    """For each T-state, the bitmask of DFA states jointly reachable with it."""
    masks = [0] * ts.n_states
    start = (ts.initial, dfa.ts.initial)
    masks[start[0]] |= 1 << start[1]
    stack = [start]
    seen = {start}
    n_sym = len(ts.alphabet)
    while stack:
        q, d = stack.pop()
        for s in range(n_sym):
            t = ts.delta[q][s]
            if t == -1:
                continue
            pair = (t, dfa.ts.delta[d][s])
            if pair not in seen:
                seen.add(pair)
                masks[pair[0]] |= 1 << pair[1]
                stack.append(pair)
    return masks


def _has_conflict(ts: PartialTS, setup: ConflictSetup) -> bool:
    if not setup.conflicts:
        return False
    masks1 = _reach_masks(ts, setup.a1)
    masks2 = _reach_masks(ts, setup.a2)
    cmask = setup.conflict_masks()
    for q in range(ts.n_states):
        m1, m2 = masks1[q], masks2[q]
        if not m1 or not m2:
            continue
        while m1:
            low = m1 & -m1
            q1 = low.bit_length() - 1
            if cmask[q1] & m2:
                return True
            m1 ^= low
    return False


@lru_cache(maxsize=512)
def mn_setup(sample: OmegaSample) -> ConflictSetup:
    """Conflict setup for MN-consistency.

    A1/A2 accept the prefixes of the positive/negative words; a pair conflicts
    iff some infinite joint run from it stays inside accepting states, i.e.
    the two prefixes share an omega-suffix of opposite signs.
    """
    a1 = prefix_acceptor(sample.alphabet, tuple(sorted(
        sample.positives, key=lambda w: w.sort_key(sample.alphabet))))
    a2 = prefix_acceptor(sample.alphabet, tuple(sorted(
        sample.negatives, key=lambda w: w.sort_key(sample.alphabet))))
    n_sym = len(sample.alphabet)

    pairs = [
        (q1, q2)
        for q1 in a1.finals
        for q2 in a2.finals
    ]
    index = {p: i for i, p in enumerate(pairs)}
    # product restricted to accepting pairs
    succ: list[list[int]] = [[] for _ in pairs]
    for (q1, q2), i in index.items():
        for s in range(n_sym):
            t1, t2 = a1.ts.delta[q1][s], a2.ts.delta[q2][s]
            if (t1, t2) in index:
                succ[i].append(index[(t1, t2)])

    # pairs from which an infinite run inside F1 x F2 exists: backward closure
    # of the pairs lying on a cycle of the restricted product
    alive = [bool(succ[i]) for i in range(len(pairs))]
    changed = True
    while changed:
        changed = False
        for i in range(len(pairs)):
            if alive[i] and not any(alive[j] for j in succ[i]):
                alive[i] = False
                changed = True
    conflicts = frozenset(p for p, i in index.items() if alive[i])
    return ConflictSetup(a1, a2, conflicts)


def check_mn_consistent(ts: PartialTS, sample: OmegaSample) -> bool:
    """No two prefixes with a shared opposite-sign omega-suffix may meet."""
    return not _has_conflict(ts, mn_setup(sample))


def periodic_roots(sample: OmegaSample, positive: bool) -> frozenset[str]:
    """Primitive periods of the purely periodic words of one sign."""
    words = sample.positives if positive else sample.negatives
    return frozenset(w.period for w in words if w.is_periodic)


def _powers_acceptor(alphabet: Alphabet, roots: tuple[str, ...]) -> DFA:
    """DFA for the union of ``y+`` (all positive powers) over the roots."""
    n_sym = len(alphabet)
    if not roots:
        return DFA(PartialTS(alphabet, ((0,) * n_sym,), 0), frozenset())
    dead = -1
    init = (0,) + tuple(0 for _ in roots)  # (started, positions)
    index = {init: 0}
    states = [init]
    rows: list[list[int]] = []
    finals = set()
    i = 0
    while i < len(states):
        started, *pos = states[i]
        row = []
        for s, sym in enumerate(alphabet.symbols):
            nxt = []
            for r, y in enumerate(roots):
                p = pos[r]
                if p != dead and y[p] == sym:
                    nxt.append((p + 1) % len(y))
                else:
                    nxt.append(dead)
            st = (1,) + tuple(nxt)
            if st not in index:
                index[st] = len(states)
                states.append(st)
            row.append(index[st])
        rows.append(row)
        i += 1
    for st, j in index.items():
        if st[0] == 1 and any(p == 0 for p in st[1:]):
            finals.add(j)
    ts = PartialTS(alphabet, tuple(tuple(r) for r in rows), 0)
    return DFA(ts, frozenset(finals))


def _intersect_with_loop(d: DFA, rc: RightCongruence, c: int) -> DFA:
    """Restrict a DFA to the words that loop on class c of the congruence."""
    n_sym = len(d.alphabet)
    init = (d.ts.initial, c)
    index = {init: 0}
    states = [init]
    rows: list[list[int]] = []
    i = 0
    while i < len(states):
        q, l = states[i]
        row = []
        for s in range(n_sym):
            tgt = (d.ts.delta[q][s], rc.ts.delta[l][s])
            if tgt not in index:
                index[tgt] = len(states)
                states.append(tgt)
            row.append(index[tgt])
        rows.append(row)
        i += 1
    finals = frozenset(
        i for i, (q, l) in enumerate(states) if q in d.finals and l == c
    )
    ts = PartialTS(d.alphabet, tuple(tuple(r) for r in rows), 0)
    return DFA(ts, finals)


@lru_cache(maxsize=512)
def iteration_setup(sample: OmegaSample, rc: RightCongruence, c: int) -> ConflictSetup:
    """Conflict setup for iteration consistency at class c.

    A1 accepts the words x in E_c with x^w positive, A2 likewise negative; the
    conflict relation is the backward closure of F1 x F2 under common symbols
    (pairs that reach F1 x F2 on a common completion z).
    """
    if not check_mn_consistent(rc.ts, sample):
        raise MNPrecondition("leading congruence is not MN-consistent")
    alphabet = sample.alphabet
    a1 = _intersect_with_loop(
        _powers_acceptor(alphabet, tuple(sorted(periodic_roots(sample, True)))),
        rc,
        c,
    )
    a2 = _intersect_with_loop(
        _powers_acceptor(alphabet, tuple(sorted(periodic_roots(sample, False)))),
        rc,
        c,
    )
    n_sym = len(alphabet)
    conflicts = set((q1, q2) for q1 in a1.finals for q2 in a2.finals)
    work = list(conflicts)
    # backward closure: predecessors under a common symbol
    preds1: dict[tuple[int, int], list[int]] = {}
    preds2: dict[tuple[int, int], list[int]] = {}
    for q in range(a1.n_states):
        for s in range(n_sym):
            preds1.setdefault((a1.ts.delta[q][s], s), []).append(q)
    for q in range(a2.n_states):
        for s in range(n_sym):
            preds2.setdefault((a2.ts.delta[q][s], s), []).append(q)
    while work:
        q1, q2 = work.pop()
        for s in range(n_sym):
            for p1 in preds1.get((q1, s), ()):
                for p2 in preds2.get((q2, s), ()):
                    if (p1, p2) not in conflicts:
                        conflicts.add((p1, p2))
                        work.append((p1, p2))
    return ConflictSetup(a1, a2, frozenset(conflicts))


def check_iteration_consistent(
    ts: PartialTS, sample: OmegaSample, rc: RightCongruence, c: int
) -> bool:
    """Words x, y with a common z making x z, y z loop on c with opposite
    omega-power signs must be separated by ``ts``."""
    return not _has_conflict(ts, iteration_setup(sample, rc, c))


def check_scc_purity(
    ts: PartialTS,
    pos_loops: frozenset[UPWord] | set[UPWord],
    neg_loops: frozenset[UPWord] | set[UPWord],
) -> bool:
    """No SCC may carry both a positive and a negative looping sample word.

    Words whose run leaves the defined part of ``ts`` contribute nothing.
    """
    if not pos_loops or not neg_loops:
        return True
    info = sccs(ts)
    pos_ids = {
        info.scc_id[q] for w in pos_loops for q in infinity_set(ts, w)
    }
    if not pos_ids:
        return True
    for w in neg_loops:
        for q in infinity_set(ts, w):
            if info.scc_id[q] in pos_ids:
                return False
    return True
