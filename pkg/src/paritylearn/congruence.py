"""Deterministic (partial) transition systems viewed as right congruences.

States are dense integers; ``delta[q][a] == -1`` marks a missing transition.
A :class:`RightCongruence` wraps a complete, reachable transition system whose
states have been renumbered in BFS order of their llex-minimal access words,
which makes every construction in this package deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .words import Alphabet, OmegaSample, UPWord


@dataclass(frozen=True)
class PartialTS:
    """Deterministic transition system with a possibly partial delta."""

    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    initial: int = 0

    def __post_init__(self):
        n = len(self.delta)
        if not (0 <= self.initial < n):
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("delta row width does not match alphabet")
            for t in row:
                if t != -1 and not (0 <= t < n):
                    raise ValueError("transition target out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def __len__(self) -> int:
        return len(self.delta)

    @property
    def is_complete(self) -> bool:
        return all(t != -1 for row in self.delta for t in row)

    def step(self, q: int, sym_idx: int) -> int | None:
        t = self.delta[q][sym_idx]
        return None if t == -1 else t

    def run(self, q: int, word: str) -> int | None:
        """Target state of the run of ``word`` from ``q`` (None if undefined)."""
        idx = self.alphabet.index
        delta = self.delta
        for s in word:
            q = delta[q][idx(s)]
            if q == -1:
                return None
        return q

    def run_from_initial(self, word: str) -> int | None:
        return self.run(self.initial, word)

    def reachable_states(self) -> list[int]:
        seen = [False] * self.n_states
        seen[self.initial] = True
        order = [self.initial]
        for q in order:
            for t in self.delta[q]:
                if t != -1 and not seen[t]:
                    seen[t] = True
                    order.append(t)
        return order


def run(ts: PartialTS, q: int, word: str) -> int | None:
    return ts.run(q, word)


@dataclass(frozen=True)
class SccInfo:
    components: tuple[frozenset[int], ...]
    scc_id: tuple[int, ...]
    nontrivial: tuple[bool, ...]

    def same_scc(self, p: int, q: int) -> bool:
        return self.scc_id[p] == self.scc_id[q]


def sccs(ts: PartialTS, edges: Sequence[tuple[int, int, int]] | None = None) -> SccInfo:
    """SCC decomposition (iterative Tarjan).

    ``edges`` optionally restricts the graph to the given (state, symbol,
    target) triples; by default all defined transitions are used.  A singleton
    component without a self-loop is flagged trivial.
    """
    n = ts.n_states
    if edges is None:
        succ = [[t for t in row if t != -1] for row in ts.delta]
    else:
        succ = [[] for _ in range(n)]
        for q, _a, t in edges:
            succ[q].append(t)

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    comps: list[frozenset[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            q, pi = work[-1]
            if pi == 0:
                index[q] = low[q] = counter
                counter += 1
                stack.append(q)
                on_stack[q] = True
            advanced = False
            while pi < len(succ[q]):
                t = succ[q][pi]
                pi += 1
                if index[t] == -1:
                    work[-1] = (q, pi)
                    work.append((t, 0))
                    advanced = True
                    break
                if on_stack[t]:
                    low[q] = min(low[q], index[t])
            if advanced:
                continue
            work.pop()
            if low[q] == index[q]:
                comp = []
                while True:
                    s = stack.pop()
                    on_stack[s] = False
                    comp_of[s] = len(comps)
                    comp.append(s)
                    if s == q:
                        break
                comps.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[q])

    nontrivial = []
    for comp in comps:
        if len(comp) > 1:
            nontrivial.append(True)
        else:
            (q,) = comp
            nontrivial.append(q in succ[q])
    return SccInfo(tuple(comps), tuple(comp_of), tuple(nontrivial))


def infinity_set(ts: PartialTS, w: UPWord, start: int | None = None) -> frozenset[int]:
    """States visited infinitely often on the run of ``w``.

    The run is followed from ``start`` (default: the initial state); if some
    transition is missing the run dies and the result is empty.
    """
    q = ts.initial if start is None else start
    idx = ts.alphabet.index
    for s in w.spine:
        nxt = ts.delta[q][idx(s)]
        if nxt == -1:
            return frozenset()
        q = nxt
    period = [idx(s) for s in w.period]
    seen: dict[tuple[int, int], int] = {}
    trace = [q]
    pos = 0
    while (q, pos) not in seen:
        seen[(q, pos)] = len(trace) - 1
        nxt = ts.delta[q][period[pos]]
        if nxt == -1:
            return frozenset()
        q = nxt
        pos = (pos + 1) % len(period)
        trace.append(q)
    return frozenset(trace[seen[(q, pos)]:])


def canonical_order(ts: PartialTS) -> tuple[list[int], list[str]]:
    """Reachable states in BFS order over symbols, with llex-min access words."""
    order = [ts.initial]
    words = [""]
    seen = {ts.initial}
    i = 0
    while i < len(order):
        q = order[i]
        for a, sym in enumerate(ts.alphabet.symbols):
            t = ts.delta[q][a]
            if t != -1 and t not in seen:
                seen.add(t)
                order.append(t)
                words.append(words[i] + sym)
        i += 1
    return order, words


def canonical_renumber(ts: PartialTS) -> tuple[PartialTS, tuple[str, ...], list[int]]:
    """Renumber reachable states in canonical order.

    Returns the renumbered TS, the per-state representatives, and the old
    index of every new state (for carrying along outputs or finals).
    """
    order, reps = canonical_order(ts)
    remap = {old: new for new, old in enumerate(order)}
    delta = tuple(
        tuple(-1 if t == -1 else remap[t] for t in ts.delta[old]) for old in order
    )
    return PartialTS(ts.alphabet, delta, 0), tuple(reps), order


@dataclass(frozen=True)
class RightCongruence:
    """Complete reachable TS with canonical state order and representatives."""

    ts: PartialTS
    reps: tuple[str, ...]

    @staticmethod
    def from_ts(ts: PartialTS) -> "RightCongruence":
        if not ts.is_complete:
            raise ValueError("right congruence requires a complete TS")
        renum, reps, _ = canonical_renumber(ts)
        return RightCongruence(renum, reps)

    @property
    def alphabet(self) -> Alphabet:
        return self.ts.alphabet

    @property
    def n_classes(self) -> int:
        return self.ts.n_states

    def __len__(self) -> int:
        return self.ts.n_states

    def class_of(self, word: str) -> int:
        q = self.ts.run_from_initial(word)
        assert q is not None
        return q

    def rep(self, c: int) -> str:
        return self.reps[c]

    def rooted_at(self, c: int) -> PartialTS:
        return PartialTS(self.ts.alphabet, self.ts.delta, c)


def loops_on(rc: RightCongruence, c: int, x: str) -> bool:
    """True iff the non-empty word ``x`` loops on class ``c``."""
    if not x:
        raise ValueError("loop words must be non-empty")
    return rc.ts.run(c, x) == c


def trivial_congruence(alphabet: Alphabet) -> RightCongruence:
    ts = PartialTS(alphabet, ((0,) * len(alphabet),), 0)
    return RightCongruence.from_ts(ts)


def product_ts(a: PartialTS, b: PartialTS) -> PartialTS:
    """Reachable product of two complete transition systems."""
    if not (a.is_complete and b.is_complete):
        raise ValueError("product requires complete transition systems")
    n_sym = len(a.alphabet)
    index: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        pa, pb = order[i]
        row = []
        for s in range(n_sym):
            tgt = (a.delta[pa][s], b.delta[pb][s])
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            row.append(index[tgt])
        rows.append(row)
        i += 1
    return PartialTS(a.alphabet, tuple(tuple(r) for r in rows), 0)


# ---------------------------------------------------------------------------
# Sample-derived structures built from residual tracking.


def _residual_structure(
    alphabet: Alphabet, words: Sequence[UPWord], split: bool
) -> tuple[PartialTS, int, list[object]]:
    """TS tracking which sample words the input read so far is a prefix of.

    State identity is the set of residual omega-words still alive (tagged with
    the originating word index when ``split`` is set, which keeps the loops of
    distinct words disjoint).  Prefixes shared by two or more words keep their
    own tree node; non-prefixes collapse into a sink.  Returns the TS, the
    sink index, and the per-state keys.
    """
    n_sym = len(alphabet)
    sink_key = ("sink",)

    def state_key(prefix: str, residuals: frozenset) -> object:
        if not residuals:
            return sink_key
        if split or len(residuals) == 1:
            return ("set", residuals)
        return ("node", prefix)

    if split:
        init_res = frozenset((i, w) for i, w in enumerate(words))
    else:
        init_res = frozenset(words)

    index: dict[object, int] = {}
    rows: list[list[int]] = []
    payload: list[tuple[str, frozenset]] = []
    keys: list[object] = []

    def add_state(key: object, prefix: str, residuals: frozenset) -> int:
        if key in index:
            return index[key]
        index[key] = len(rows)
        rows.append([-1] * n_sym)
        payload.append((prefix, residuals))
        keys.append(key)
        return index[key]

    init_key = state_key("", init_res)
    start = add_state(init_key, "", init_res)
    if sink_key not in index:
        sink = add_state(sink_key, "", frozenset())
    else:
        sink = index[sink_key]
    rows[sink] = [sink] * n_sym

    work = [start] if start != sink else []
    done = set()
    while work:
        q = work.pop()
        if q in done or q == sink:
            continue
        done.add(q)
        prefix, residuals = payload[q]
        for s_idx, sym in enumerate(alphabet.symbols):
            if split:
                nxt = frozenset(
                    (i, r.shift()) for i, r in residuals if r.first_symbol() == sym
                )
            else:
                nxt = frozenset(r.shift() for r in residuals if r.first_symbol() == sym)
            key = state_key(prefix + sym, nxt)
            t = add_state(key, prefix + sym, nxt)
            rows[q][s_idx] = t
            if t != sink and t not in done:
                work.append(t)

    ts = PartialTS(alphabet, tuple(tuple(r) for r in rows), start)
    return ts, sink, keys


def default_ts(sample: OmegaSample) -> RightCongruence:
    """The sample's default structure: prefix tree with loops and a sink.

    Prefixes of two or more sample words keep tree nodes; once a prefix pins
    down a single sample word it enters that word's private residual loop;
    non-prefixes collapse into a sink.  Residuals are tagged by originating
    word: prefixes of distinct sample words are always separated (merging the
    loops of two words whose tails coincide would break MN-consistency, e.g.
    for the sample {b a b^w, b^w}), and the loops of positive and negative
    words can never share an SCC.
    """
    ts, _sink, _ = _residual_structure(sample.alphabet, sample.words(), True)
    return RightCongruence.from_ts(ts)
