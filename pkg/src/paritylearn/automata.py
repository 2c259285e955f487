"""DFAs, Mealy machines and transition-based deterministic parity automata.

A DPA and a Mealy machine share the same shape: a complete transition system
plus one natural number per transition.  A DPA accepts an omega-word iff the
least priority occurring infinitely often on its run is even.
"""

from __future__ import annotations

from dataclasses import dataclass

from .congruence import PartialTS, canonical_renumber, sccs
from .words import Alphabet, UPWord


class NotWeak(ValueError):
    """The Mealy machine's output function increases along some path."""


class StateBudgetExceeded(RuntimeError):
    """An explicit product construction grew past the configured cap."""


def _check_table(ts: PartialTS, table) -> None:
    if not ts.is_complete:
        raise ValueError("machine requires a complete transition system")
    if len(table) != ts.n_states or any(
        len(row) != len(ts.alphabet) for row in table
    ):
        raise ValueError("output table shape does not match the TS")
    if any(v < 0 for row in table for v in row):
        raise ValueError("priorities must be natural numbers")


@dataclass(frozen=True)
class DFA:
    ts: PartialTS
    finals: frozenset[int]

    def __post_init__(self):
        if any(not (0 <= q < self.ts.n_states) for q in self.finals):
            raise ValueError("final states out of range")

    @property
    def alphabet(self) -> Alphabet:
        return self.ts.alphabet

    @property
    def n_states(self) -> int:
        return self.ts.n_states

    def accepts(self, word: str) -> bool:
        q = self.ts.run_from_initial(word)
        return q is not None and q in self.finals


@dataclass(frozen=True)
class MealyMachine:
    ts: PartialTS
    output: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_table(self.ts, self.output)

    @property
    def alphabet(self) -> Alphabet:
        return self.ts.alphabet

    @property
    def n_states(self) -> int:
        return self.ts.n_states

    @property
    def num_priorities(self) -> int:
        return max(v for row in self.output for v in row) + 1

    def value(self, word: str, start: int | None = None) -> int:
        """Output of the last transition on a non-empty input word."""
        if not word:
            raise ValueError("Mealy output is defined on non-empty words only")
        q = self.ts.initial if start is None else start
        idx = self.alphabet.index
        out = 0
        for s in word:
            a = idx(s)
            out = self.output[q][a]
            q = self.ts.delta[q][a]
        return out

    def as_dpa(self) -> "DPA":
        return DPA(self.ts, self.output)


@dataclass(frozen=True)
class DPA:
    ts: PartialTS
    kappa: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_table(self.ts, self.kappa)

    @property
    def alphabet(self) -> Alphabet:
        return self.ts.alphabet

    @property
    def n_states(self) -> int:
        return self.ts.n_states

    @property
    def num_priorities(self) -> int:
        return max(v for row in self.kappa for v in row) + 1

    def priorities_used(self) -> set[int]:
        return {v for row in self.kappa for v in row}

    def value(self, word: str, start: int | None = None) -> int:
        return self.as_mealy().value(word, start)

    def as_mealy(self) -> MealyMachine:
        return MealyMachine(self.ts, self.kappa)

    def rooted_at(self, q: int) -> "DPA":
        return DPA(PartialTS(self.ts.alphabet, self.ts.delta, q), self.kappa)


def _renumber_machine(ts: PartialTS, table):
    renum, _reps, order = canonical_renumber(ts)
    new_table = tuple(table[old] for old in order)
    return renum, new_table


def make_dpa(alphabet: Alphabet, rows, initial: int = 0) -> DPA:
    """Build a DPA from ``rows[q][a] = (target, priority)`` and canonicalize."""
    delta = tuple(tuple(t for t, _p in row) for row in rows)
    kappa = tuple(tuple(p for _t, p in row) for row in rows)
    ts = PartialTS(alphabet, delta, initial)
    ts2, kappa2 = _renumber_machine(ts, kappa)
    return DPA(ts2, kappa2)


def make_mealy(alphabet: Alphabet, rows, initial: int = 0) -> MealyMachine:
    delta = tuple(tuple(t for t, _p in row) for row in rows)
    out = tuple(tuple(p for _t, p in row) for row in rows)
    ts = PartialTS(alphabet, delta, initial)
    ts2, out2 = _renumber_machine(ts, out)
    return MealyMachine(ts2, out2)


# ---------------------------------------------------------------------------
# Membership and path priorities.


def dpa_membership(a: DPA, w: UPWord) -> bool:
    """True iff the least priority on the run's eventual lasso is even."""
    idx = a.alphabet.index
    q = a.ts.initial
    for s in w.spine:
        q = a.ts.delta[q][idx(s)]
    period = [idx(s) for s in w.period]
    seen: dict[tuple[int, int], int] = {}
    prios: list[int] = []
    pos = 0
    while (q, pos) not in seen:
        seen[(q, pos)] = len(prios)
        prios.append(a.kappa[q][period[pos]])
        q = a.ts.delta[q][period[pos]]
        pos = (pos + 1) % len(period)
    return min(prios[seen[(q, pos)]:]) % 2 == 0


def min_priority_on_path(a: DPA, q: int, u: str) -> int:
    """Least transition priority along the run of non-empty ``u`` from ``q``."""
    if not u:
        raise ValueError("path word must be non-empty")
    idx = a.alphabet.index
    best = None
    for s in u:
        ai = idx(s)
        p = a.kappa[q][ai]
        best = p if best is None else min(best, p)
        q = a.ts.delta[q][ai]
    return best


def dpa_complement(a: DPA) -> DPA:
    """Shift every priority by one; recognizes the complement language."""
    kappa = tuple(tuple(v + 1 for v in row) for row in a.kappa)
    return compact_priorities(DPA(a.ts, kappa))


def compact_priorities(a: DPA) -> DPA:
    """Remove gaps in the priority range, preserving each value's parity."""
    used = sorted(a.priorities_used())
    remap: dict[int, int] = {}
    prev = None
    for p in used:
        if prev is None:
            new = p % 2
        else:
            new = prev + 1 if (prev % 2) != (p % 2) else prev + 2
        remap[p] = new
        prev = new
    if all(remap[p] == p for p in used):
        return a
    kappa = tuple(tuple(remap[v] for v in row) for row in a.kappa)
    return DPA(a.ts, kappa)


# ---------------------------------------------------------------------------
# Emptiness / equivalence witnesses.


def _access_words(ts: PartialTS) -> list[str | None]:
    """llex-minimal access word of every state (None if unreachable)."""
    words: list[str | None] = [None] * ts.n_states
    words[ts.initial] = ""
    queue = [ts.initial]
    i = 0
    while i < len(queue):
        q = queue[i]
        i += 1
        for a, sym in enumerate(ts.alphabet.symbols):
            t = ts.delta[q][a]
            if t != -1 and words[t] is None:
                words[t] = words[q] + sym
                queue.append(t)
    return words


def _shortest_path_word(
    n_states: int,
    edges: dict[int, list[tuple[str, int]]],
    source: int,
    target: int,
) -> str | None:
    """llex-minimal word labelling a path from source to target (may be '')."""
    words: list[str | None] = [None] * n_states
    words[source] = ""
    queue = [source]
    i = 0
    while i < len(queue):
        q = queue[i]
        i += 1
        if q == target:
            return words[q]
        for sym, t in edges.get(q, ()):
            if words[t] is None:
                words[t] = words[q] + sym
                queue.append(t)
    return words[target]


def dpa_nonempty_witness(a: DPA) -> UPWord | None:
    """Some ultimately periodic word in L(A), or None iff the language is empty.

    For each even priority i, looks for a reachable cycle through an
    i-transition inside the subgraph of transitions with priority >= i.  The
    returned witness is the least candidate in the canonical word order.
    """
    access = _access_words(a.ts)
    best: tuple | None = None
    best_word: UPWord | None = None
    for i in sorted(p for p in a.priorities_used() if p % 2 == 0):
        edges = [
            (q, s, a.ts.delta[q][s])
            for q in range(a.ts.n_states)
            for s in range(len(a.alphabet))
            if a.kappa[q][s] >= i
        ]
        info = sccs(a.ts, edges)
        adj: dict[int, list[tuple[str, int]]] = {}
        for q, s, t in edges:
            adj.setdefault(q, []).append((a.alphabet.symbols[s], t))
        for q, s, t in edges:
            if a.kappa[q][s] != i or info.scc_id[q] != info.scc_id[t]:
                continue
            if access[q] is None:
                continue
            scc = info.components[info.scc_id[q]]
            local = {
                p: [(sym, r) for sym, r in adj.get(p, ()) if r in scc] for p in scc
            }
            back = _shortest_path_word(a.ts.n_states, local, t, q)
            if back is None:
                continue
            w = UPWord.of(access[q], a.alphabet.symbols[s] + back)
            key = w.sort_key(a.alphabet)
            if best is None or key < best:
                best, best_word = key, w
    return best_word


def dpa_difference_witness(a: DPA, b: DPA) -> UPWord | None:
    """Least canonical word in L(a) \\ L(b), or None if L(a) <= L(b)."""
    if a.alphabet != b.alphabet:
        raise ValueError("alphabets differ")
    n_sym = len(a.alphabet)
    index: dict[tuple[int, int], int] = {(a.ts.initial, b.ts.initial): 0}
    states = [(a.ts.initial, b.ts.initial)]
    rows: list[list[int]] = []
    i = 0
    while i < len(states):
        qa, qb = states[i]
        row = []
        for s in range(n_sym):
            tgt = (a.ts.delta[qa][s], b.ts.delta[qb][s])
            if tgt not in index:
                index[tgt] = len(states)
                states.append(tgt)
            row.append(index[tgt])
        rows.append(row)
        i += 1

    prod = PartialTS(a.alphabet, tuple(tuple(r) for r in rows), 0)
    access = _access_words(prod)
    best: tuple | None = None
    best_word: UPWord | None = None
    evens = sorted(p for p in a.priorities_used() if p % 2 == 0)
    odds = sorted(p for p in b.priorities_used() if p % 2 == 1)
    for i_a in evens:
        for j_b in odds:
            edges = []
            for q, (qa, qb) in enumerate(states):
                for s in range(n_sym):
                    if a.kappa[qa][s] >= i_a and b.kappa[qb][s] >= j_b:
                        edges.append((q, s, rows[q][s]))
            info = sccs(prod, edges)
            adj: dict[int, list[tuple[str, int]]] = {}
            for q, s, t in edges:
                adj.setdefault(q, []).append((a.alphabet.symbols[s], t))
            for comp_id, comp in enumerate(info.components):
                ia_edges = []
                jb_edges = []
                for q, s, t in edges:
                    if info.scc_id[q] != comp_id or info.scc_id[t] != comp_id:
                        continue
                    qa, qb = states[q]
                    if a.kappa[qa][s] == i_a:
                        ia_edges.append((q, s, t))
                    if b.kappa[qb][s] == j_b:
                        jb_edges.append((q, s, t))
                if not ia_edges or not jb_edges:
                    continue
                local = {
                    p: [(sym, r) for sym, r in adj.get(p, ()) if r in comp]
                    for p in comp
                }
                for q1, s1, t1 in ia_edges:
                    if access[q1] is None:
                        continue
                    for q2, s2, t2 in jb_edges:
                        mid = _shortest_path_word(prod.n_states, local, t1, q2)
                        if mid is None:
                            continue
                        back = _shortest_path_word(prod.n_states, local, t2, q1)
                        if back is None:
                            continue
                        period = (
                            a.alphabet.symbols[s1]
                            + mid
                            + a.alphabet.symbols[s2]
                            + back
                        )
                        w = UPWord.of(access[q1], period)
                        key = w.sort_key(a.alphabet)
                        if best is None or key < best:
                            best, best_word = key, w
    return best_word


def dpa_equivalent(a: DPA, b: DPA) -> UPWord | None:
    """None iff L(a) == L(b); otherwise the least witness in the difference."""
    w1 = dpa_difference_witness(a, b)
    w2 = dpa_difference_witness(b, a)
    if w1 is None:
        return w2
    if w2 is None:
        return w1
    return min(w1, w2, key=lambda w: w.sort_key(a.alphabet))


# ---------------------------------------------------------------------------
# Priority normalization (pointwise-minimal priority function).


def dpa_normalize(a: DPA) -> DPA:
    """Language-preserving pointwise-minimal priority function on the same TS.

    Alternating SCC refinement: inside every SCC the transitions carrying the
    minimal priority get the least value of that parity allowed by the
    enclosing layers, then they are removed and the remainder is processed
    recursively.  Transitions on no cycle get the enclosing floor.
    """
    n_sym = len(a.alphabet)
    new_kappa = [[0] * n_sym for _ in range(a.ts.n_states)]

    def assign(edges: list[tuple[int, int, int]], floor: int) -> None:
        info = sccs(a.ts, edges)
        internal: dict[int, list[tuple[int, int, int]]] = {}
        for q, s, t in edges:
            cid = info.scc_id[q]
            if cid == info.scc_id[t] and info.nontrivial[cid]:
                internal.setdefault(cid, []).append((q, s, t))
            else:
                new_kappa[q][s] = floor
        for cid in sorted(internal):
            comp_edges = internal[cid]
            m = min(a.kappa[q][s] for q, s, _t in comp_edges)
            base = floor if floor % 2 == m % 2 else floor + 1
            rest = []
            for q, s, t in comp_edges:
                if a.kappa[q][s] == m:
                    new_kappa[q][s] = base
                else:
                    rest.append((q, s, t))
            if rest:
                assign(rest, base)

    all_edges = [
        (q, s, a.ts.delta[q][s])
        for q in range(a.ts.n_states)
        for s in range(n_sym)
    ]
    assign(all_edges, 0)
    for q in range(a.ts.n_states):
        for s in range(n_sym):
            assert new_kappa[q][s] <= a.kappa[q][s]
    return DPA(a.ts, tuple(tuple(row) for row in new_kappa))


# ---------------------------------------------------------------------------
# Mealy minimization and equivalence.


def mealy_minimize(m: MealyMachine) -> MealyMachine:
    """Minimal Mealy machine with the same output function, canonical order."""
    reach = m.ts.reachable_states()
    n_sym = len(m.alphabet)

    blocks_by_sig: dict[tuple, int] = {}
    block = {}
    for q in reach:
        blocks_by_sig.setdefault(m.output[q], len(blocks_by_sig))
        block[q] = blocks_by_sig[m.output[q]]

    while True:
        sig_map: dict[tuple, int] = {}
        new_block = {}
        for q in reach:
            sig = (block[q],) + tuple(block[m.ts.delta[q][s]] for s in range(n_sym))
            sig_map.setdefault(sig, len(sig_map))
            new_block[q] = sig_map[sig]
        if len(sig_map) == len(set(block.values())):
            break
        block = new_block

    n_blocks = len(set(block.values()))
    rep_of_block: dict[int, int] = {}
    for q in reach:
        rep_of_block.setdefault(block[q], q)
    delta = []
    output = []
    for b in range(n_blocks):
        q = rep_of_block[b]
        delta.append(tuple(block[m.ts.delta[q][s]] for s in range(n_sym)))
        output.append(tuple(m.output[q]))
    ts = PartialTS(m.alphabet, tuple(delta), block[m.ts.initial])
    ts2, out2 = _renumber_machine(ts, tuple(output))
    return MealyMachine(ts2, out2)


def mealy_separating_word(m1: MealyMachine, m2: MealyMachine) -> str | None:
    """llex-minimal word on which the two output functions differ, if any."""
    if m1.alphabet != m2.alphabet:
        raise ValueError("alphabets differ")
    seen = {(m1.ts.initial, m2.ts.initial)}
    queue = [(m1.ts.initial, m2.ts.initial, "")]
    i = 0
    while i < len(queue):
        q1, q2, w = queue[i]
        i += 1
        for s, sym in enumerate(m1.alphabet.symbols):
            if m1.output[q1][s] != m2.output[q2][s]:
                return w + sym
            tgt = (m1.ts.delta[q1][s], m2.ts.delta[q2][s])
            if tgt not in seen:
                seen.add(tgt)
                queue.append((tgt[0], tgt[1], w + sym))
    return None


# ---------------------------------------------------------------------------
# DFAs: minimization, equivalence, threshold extraction.


def dfa_minimize(d: DFA) -> DFA:
    """Hopcroft-style (naive refinement) minimization with canonical order."""
    reach = d.ts.reachable_states()
    n_sym = len(d.alphabet)
    block = {q: (1 if q in d.finals else 0) for q in reach}
    while True:
        sig_map: dict[tuple, int] = {}
        new_block = {}
        for q in reach:
            sig = (block[q],) + tuple(block[d.ts.delta[q][s]] for s in range(n_sym))
            sig_map.setdefault(sig, len(sig_map))
            new_block[q] = sig_map[sig]
        if len(sig_map) == len(set(block.values())):
            break
        block = new_block
    n_blocks = len(set(block.values()))
    rep_of_block: dict[int, int] = {}
    for q in reach:
        rep_of_block.setdefault(block[q], q)
    delta = []
    finals = set()
    for b in range(n_blocks):
        q = rep_of_block[b]
        delta.append(tuple(block[d.ts.delta[q][s]] for s in range(n_sym)))
        if q in d.finals:
            finals.add(b)
    ts = PartialTS(d.alphabet, tuple(delta), block[d.ts.initial])
    renum, _reps, order = canonical_renumber(ts)
    remap = {old: new for new, old in enumerate(order)}
    return DFA(renum, frozenset(remap[b] for b in finals if b in remap))


def dfa_separating_word(d1: DFA, d2: DFA) -> str | None:
    """llex-minimal word accepted by exactly one of the two DFAs."""
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabets differ")
    start = (d1.ts.initial, d2.ts.initial)
    if (start[0] in d1.finals) != (start[1] in d2.finals):
        return ""
    seen = {start}
    queue = [(start[0], start[1], "")]
    i = 0
    while i < len(queue):
        q1, q2, w = queue[i]
        i += 1
        for s, sym in enumerate(d1.alphabet.symbols):
            t1, t2 = d1.ts.delta[q1][s], d2.ts.delta[q2][s]
            if (t1 in d1.finals) != (t2 in d2.finals):
                return w + sym
            if (t1, t2) not in seen:
                seen.add((t1, t2))
                queue.append((t1, t2, w + sym))
    return None


def check_weak(m: MealyMachine) -> None:
    """Outputs may never increase along a path; raise NotWeak otherwise.

    Weakness is a local property of consecutive transitions, so the check is
    exact (reachable states only).
    """
    for q in m.ts.reachable_states():
        for s in range(len(m.alphabet)):
            t = m.ts.delta[q][s]
            for s2 in range(len(m.alphabet)):
                if m.output[t][s2] > m.output[q][s]:
                    raise NotWeak(
                        f"output rises from {m.output[q][s]} to {m.output[t][s2]}"
                    )


def dfa_from_mealy_threshold(m: MealyMachine, i: int) -> DFA:
    """Minimal DFA for the words the weak machine maps to a value <= i.

    Transitions with output <= i are redirected into an accepting sink.
    """
    check_weak(m)
    n_sym = len(m.alphabet)
    sink = m.ts.n_states
    rows = []
    for q in range(m.ts.n_states):
        rows.append(
            tuple(
                sink if m.output[q][s] <= i else m.ts.delta[q][s]
                for s in range(n_sym)
            )
        )
    rows.append((sink,) * n_sym)
    ts = PartialTS(m.alphabet, tuple(rows), m.ts.initial)
    return dfa_minimize(DFA(ts, frozenset({sink})))


def dfa_accepts_prefix_of_period(d: DFA, q: int, v: str) -> str | None:
    """Shortest non-empty accepted prefix of ``v^w`` from ``q``, if one exists.

    If none of length at most ``|Q| * |v|`` is accepted, none exists at all.
    """
    if not v:
        raise ValueError("period must be non-empty")
    idx = [d.alphabet.index(s) for s in v]
    limit = d.ts.n_states * len(v)
    cur = q
    for n in range(1, limit + 1):
        cur = d.ts.delta[cur][idx[(n - 1) % len(v)]]
        if cur in d.finals:
            return (v * ((n + len(v) - 1) // len(v)))[:n]
    return None
