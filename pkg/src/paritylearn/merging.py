"""Greedy state-merging inference of right congruences.

Starting from the single state for the empty word, missing transitions are
filled in llex order; every existing state is tried as target (in llex order
of representatives) and the first target passing the consistency function is
kept, otherwise a fresh state named by the triggering word is created.  A
complete default structure bounds the search: if the construction ever grows
past it, the default itself is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .congruence import PartialTS, RightCongruence


class DefaultInconsistent(ValueError):
    """The default transition system must satisfy the consistency function."""


@dataclass
class MergeStats:
    """Instrumentation for one learner run."""

    cons_calls: int = 0
    states_created: int = 0
    escaped: bool = False


TraceHook = Callable[[str, str, bool], None]  # (slot word, target rep, verdict)


def learn_right_congruence(
    cons: Callable[[PartialTS], bool],
    default: RightCongruence,
    *,
    trace: TraceHook | None = None,
    stats: MergeStats | None = None,
) -> RightCongruence:
    """Greedy merge loop; returns a complete TS satisfying ``cons``.

    Deterministic: slots are filled in llex order of representative + symbol
    and candidate targets are tried in llex (= creation) order, so two runs on
    equal inputs yield identical structures.  The number of cons invocations
    is bounded by |default|^2 * |alphabet| * (|default| + 1).
    """
    alphabet = default.alphabet
    n_sym = len(alphabet)
    stats = stats if stats is not None else MergeStats()

    if not cons(default.ts):
        raise DefaultInconsistent("cons rejects the default transition system")

    reps: list[str] = [""]
    rows: list[list[int]] = [[-1] * n_sym]
    budget = (n_sym * default.n_classes * default.n_classes * (default.n_classes + 1))

    def snapshot() -> PartialTS:
        return PartialTS(alphabet, tuple(tuple(r) for r in rows), 0)

    while True:
        if len(reps) > default.n_classes:
            stats.escaped = True
            return default
        slot = None
        for q in range(len(reps)):
            for a in range(n_sym):
                if rows[q][a] == -1:
                    cand = (len(reps[q]) + 1, alphabet.indices(reps[q]) + (a,))
                    if slot is None or cand < slot[0]:
                        slot = (cand, q, a)
        if slot is None:
            break
        _, p, a = slot
        word = reps[p] + alphabet.symbols[a]
        merged = False
        for q in range(len(reps)):
            rows[p][a] = q
            stats.cons_calls += 1
            assert stats.cons_calls <= budget
            ok = cons(snapshot())
            if trace:
                trace(word, reps[q], ok)
            if ok:
                merged = True
                break
            rows[p][a] = -1
        if not merged:
            rows[p][a] = len(reps)
            reps.append(word)
            rows.append([-1] * n_sym)
            stats.states_created += 1

    result = snapshot()
    assert cons(result)
    return RightCongruence.from_ts(result)
