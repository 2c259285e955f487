"""Shared fixtures: hand-built reference automata and random generators.

The reference languages used throughout the suite:

* ``L_ab``    over {a,b}: finitely many b, or infinitely many occurrences of
  the infix ``aba``.
* ``L_abd``   over {a,b,d}: infinitely many ``aa`` infixes, or finitely many a
  and (the total number of a is even iff both b and d occur infinitely often).
* ``L_sym d`` over {0..d-1}-like alphabets: every symbol occurs infinitely
  often (tracked either by the subset automaton or by a small cyclic DPA).
"""

from __future__ import annotations

import random

import pytest

from paritylearn.automata import DPA, compact_priorities, make_dpa
from paritylearn.words import Alphabet, OmegaSample, UPWord

AB = Alphabet.of("ab")
ABD = Alphabet.of("abd")


def dpa_for_L_ab() -> DPA:
    """3-state, 3-priority DPA for L_ab (emit 0 on aba, 1 on b, 2 on a)."""
    # states: 0 = no progress, 1 = seen a, 2 = seen ab
    rows = [
        [(1, 2), (0, 1)],  # from 0 on a, b
        [(1, 2), (2, 1)],  # from 1
        [(1, 0), (0, 1)],  # from 2: a completes aba
    ]
    return make_dpa(AB, rows)


def dpa_for_L_abd() -> DPA:
    """8-state, 5-priority DPA for L_abd.

    State: (parity of #a, last symbol was a, which of {b,d} seen since the
    last completed {b,d} pair).  Emissions: 0 on the second consecutive a,
    1 on other a, and on b/d a pair-completion emits 2 (even #a) or 3 (odd),
    a non-completion 3 (even) or 4 (odd).
    """
    states = [(p, la, bd) for p in (0, 1) for (la, bd) in
              [(1, 0), (0, 0), (0, 1), (0, 2)]]  # bd: 0 none, 1 seen b, 2 seen d
    index = {st: i for i, st in enumerate(states)}
    rows = []
    for (p, la, bd) in states:
        row = []
        # on 'a'
        row.append((index[(1 - p, 1, 0)], 0 if la else 1))
        # on 'b'
        if bd == 2:
            row.append((index[(p, 0, 0)], 2 if p == 0 else 3))
        else:
            row.append((index[(p, 0, 1)], 3 if p == 0 else 4))
        # on 'd'
        if bd == 1:
            row.append((index[(p, 0, 0)], 2 if p == 0 else 3))
        else:
            row.append((index[(p, 0, 2)], 3 if p == 0 else 4))
        rows.append(row)
    return make_dpa(ABD, rows, initial=index[(0, 0, 0)])


def symbol_alphabet(d: int) -> Alphabet:
    return Alphabet.of("abcdefgh"[:d])


def tracking_dpa(d: int) -> DPA:
    """Subset-tracking DPA for 'every symbol infinitely often' (2^d - 1 states)."""
    alpha = symbol_alphabet(d)
    subsets = []
    for mask in range(1 << d):
        if mask != (1 << d) - 1:
            subsets.append(mask)
    index = {m: i for i, m in enumerate(subsets)}
    rows = []
    for m in subsets:
        row = []
        for s in range(d):
            m2 = m | (1 << s)
            if m2 == (1 << d) - 1:
                row.append((index[0], 0))
            else:
                row.append((index[m2], 1))
        rows.append(row)
    return make_dpa(alpha, rows, initial=index[0])


def cyclic_dpa(d: int) -> DPA:
    """d-state DPA waiting for the symbols in a fixed cyclic order."""
    alpha = symbol_alphabet(d)
    rows = []
    for h in range(d):
        row = []
        for s in range(d):
            if s == h:
                row.append(((h + 1) % d, 0 if h == d - 1 else 1))
            else:
                row.append((h, 1))
        rows.append(row)
    return make_dpa(alpha, rows)


def L_ab_member(w: UPWord) -> bool:
    """Direct predicate for L_ab on canonical UP-words."""
    v = w.period
    if "b" not in v:
        return True
    reps = v * (3 + (3 // len(v)))
    return any(reps[i : i + 3] == "aba" for i in range(len(v)))


def L_abd_member(w: UPWord) -> bool:
    v = w.period
    reps = v * (3 + (3 // len(v)))
    if any(reps[i : i + 2] == "aa" for i in range(len(v))):
        return True
    if "a" in v:
        return False
    parity = (w.spine.count("a") + 0) % 2  # v is a-free here
    both = ("b" in v) and ("d" in v)
    return (parity == 0) == both


def L_sym_member(d: int):
    alpha = symbol_alphabet(d)

    def member(w: UPWord) -> bool:
        return set(w.period) == set(alpha.symbols)

    return member


def random_dpa(rng: random.Random, alphabet: Alphabet, max_states: int,
               max_priorities: int) -> DPA:
    n = rng.randint(1, max_states)
    rows = []
    for _q in range(n):
        rows.append(
            [
                (rng.randrange(n), rng.randrange(max_priorities))
                for _ in range(len(alphabet))
            ]
        )
    return compact_priorities(make_dpa(alphabet, rows))


def random_upword(rng: random.Random, alphabet: Alphabet, max_spine: int,
                  max_period: int) -> UPWord:
    u = "".join(rng.choice(alphabet.symbols) for _ in range(rng.randint(0, max_spine)))
    v = "".join(rng.choice(alphabet.symbols) for _ in range(rng.randint(1, max_period)))
    return UPWord.of(u, v)


def all_upwords(alphabet: Alphabet, max_total: int) -> list[UPWord]:
    """All canonical UP-words with |spine| + |period| <= max_total."""
    from itertools import product

    seen = set()
    out = []
    for total in range(1, max_total + 1):
        for plen in range(1, total + 1):
            ulen = total - plen
            for u in product(alphabet.symbols, repeat=ulen):
                for v in product(alphabet.symbols, repeat=plen):
                    w = UPWord.of("".join(u), "".join(v))
                    if w not in seen:
                        seen.add(w)
                        out.append(w)
    return out


def random_sample(rng: random.Random, alphabet: Alphabet, max_words: int,
                  max_total: int) -> OmegaSample:
    pos, neg = set(), set()
    for _ in range(rng.randint(0, max_words)):
        total = rng.randint(1, max_total)
        plen = rng.randint(1, total)
        w = UPWord.of(
            "".join(rng.choice(alphabet.symbols) for _ in range(total - plen)),
            "".join(rng.choice(alphabet.symbols) for _ in range(plen)),
        )
        if w in pos or w in neg:
            continue
        (pos if rng.random() < 0.5 else neg).add(w)
    return OmegaSample.of(alphabet, pos, neg)


@pytest.fixture
def ab() -> Alphabet:
    return AB


@pytest.fixture
def abd() -> Alphabet:
    return ABD


@pytest.fixture
def dpa_ab() -> DPA:
    return dpa_for_L_ab()


@pytest.fixture
def dpa_abd() -> DPA:
    return dpa_for_L_abd()
