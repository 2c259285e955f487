import random

from paritylearn.congruence import (
    PartialTS,
    RightCongruence,
    default_ts,
    infinity_set,
    loops_on,
    sccs,
)
from paritylearn.words import Alphabet, OmegaSample, UPWord

from conftest import AB, random_upword

ONE_LOOP = PartialTS(AB, ((0, 0),), 0)


def brute_scc_count(ts: PartialTS) -> int:
    """Transitive-closure oracle for the number of SCCs."""
    n = ts.n_states
    reach = [[False] * n for _ in range(n)]
    for q in range(n):
        reach[q][q] = True
    changed = True
    while changed:
        changed = False
        for q in range(n):
            for t in ts.delta[q]:
                if t == -1:
                    continue
                for r in range(n):
                    if reach[t][r] and not reach[q][r]:
                        reach[q][r] = True
                        changed = True
    classes = {tuple(i for i in range(n) if reach[q][i] and reach[i][q]) for q in range(n)}
    return len(classes)


class TestRun:
    def test_one_state_loop(self):
        assert ONE_LOOP.run(0, "abba") == 0

    def test_empty_word(self):
        ts = PartialTS(AB, ((1, 1), (0, 0)), 0)
        assert ts.run(1, "") == 1

    def test_missing_transition(self):
        ts = PartialTS(AB, ((-1, 0),), 0)
        assert ts.run(0, "a") is None

    def test_concatenation_law(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 4)
            delta = tuple(
                tuple(rng.randrange(n) for _ in range(2)) for _ in range(n)
            )
            ts = PartialTS(AB, delta, 0)
            x = "".join(rng.choice("ab") for _ in range(rng.randint(0, 4)))
            y = "".join(rng.choice("ab") for _ in range(rng.randint(0, 4)))
            q = rng.randrange(n)
            assert ts.run(q, x + y) == ts.run(ts.run(q, x), y)


class TestSccs:
    def test_one_state_loop(self):
        info = sccs(ONE_LOOP)
        assert len(info.components) == 1
        assert info.nontrivial == (True,)

    def test_two_trivial(self):
        ts = PartialTS(AB, ((1, 1), (-1, -1)), 0)
        info = sccs(ts)
        assert len(info.components) == 2
        assert not any(info.nontrivial)

    def test_against_closure_oracle(self):
        rng = random.Random(3)
        for _ in range(120):
            n = rng.randint(1, 6)
            delta = tuple(
                tuple(rng.choice([-1] + list(range(n))) for _ in range(2))
                for _ in range(n)
            )
            ts = PartialTS(AB, delta, 0)
            assert len(sccs(ts).components) == brute_scc_count(ts)


class TestInfinitySet:
    def test_one_state(self):
        assert infinity_set(ONE_LOOP, UPWord.of("ab", "ba")) == {0}

    def test_toggle(self):
        ts = PartialTS(AB, ((1, 0), (0, 1)), 0)
        assert infinity_set(ts, UPWord.of("", "a")) == {0, 1}

    def test_against_long_run_oracle(self):
        rng = random.Random(11)
        for _ in range(80):
            n = rng.randint(1, 5)
            delta = tuple(tuple(rng.randrange(n) for _ in range(2)) for _ in range(n))
            ts = PartialTS(AB, delta, 0)
            w = random_upword(rng, AB, 3, 4)
            big = n * len(w.period) + len(w.spine) + 5
            states = []
            q = 0
            for i in range(big + n * len(w.period)):
                states.append(q)
                q = ts.delta[q][AB.index(w.symbol_at(i))]
            assert infinity_set(ts, w) == set(states[big:])


class TestLoopsOn:
    def test_one_class(self):
        rc = RightCongruence.from_ts(ONE_LOOP)
        assert loops_on(rc, 0, "abab")

    def test_parity_counter(self):
        ts = PartialTS(AB, ((1, 0), (0, 1)), 0)
        rc = RightCongruence.from_ts(ts)
        assert loops_on(rc, 0, "aa")
        assert not loops_on(rc, 0, "a")


class TestDefaultTS:
    def test_paper_figure_shape(self):
        # sample {a^w, ab(ba)^w}: eps, a, [a^w], [(ba)^w], [(ab)^w], sink
        s = OmegaSample.of(AB, positives=[("", "a")], negatives=[("ab", "ba")])
        rc = default_ts(s)
        assert rc.n_classes == 6

    def test_empty_sample(self):
        s = OmegaSample.of(AB)
        assert default_ts(s).n_classes == 1

    def test_single_word(self):
        s = OmegaSample.of(AB, positives=[("", "a")])
        rc = default_ts(s)
        assert rc.n_classes == 2
        assert rc.class_of("aaa") == rc.class_of("")
        assert rc.class_of("b") == rc.class_of("ab")

    def test_size_bound(self):
        # tree nodes are bounded by the longest prefix shared by two words,
        # loop states by the number of distinct suffixes, plus one sink
        rng = random.Random(5)
        for _ in range(40):
            words = {random_upword(rng, AB, 3, 3) for _ in range(rng.randint(0, 4))}
            pos = {w for w in words if rng.random() < 0.5}
            s = OmegaSample.of(AB, pos, words - pos)
            rc = default_ts(s)
            ws = s.words()
            shared = 0
            for i, w1 in enumerate(ws):
                for w2 in ws[i + 1 :]:
                    horizon = 4 * (len(w1.spine) + len(w1.period)) * (
                        len(w2.spine) + len(w2.period)
                    )
                    d = 0
                    while d < horizon and w1.symbol_at(d) == w2.symbol_at(d):
                        d += 1
                    shared = max(shared, d)
            assert rc.n_classes <= (shared + 1) + s.size + 1

    def test_separates_prefixes_of_distinct_words(self):
        s = OmegaSample.of(AB, positives=[("", "ab")], negatives=[("", "ba")])
        rc = default_ts(s)
        assert rc.class_of("a") != rc.class_of("b")

    def test_separates_colliding_residuals(self):
        # ba and bb leave the same residual b^w but belong to different words
        s = OmegaSample.of(AB, positives=[("ba", "b")], negatives=[("", "b")])
        rc = default_ts(s)
        assert rc.class_of("ba") != rc.class_of("bb")

    def test_loops_of_distinct_words_stay_apart(self):
        s = OmegaSample.of(AB, positives=[("", "ab")], negatives=[("", "ba")])
        rc = default_ts(s)
        pos_inf = infinity_set(rc.ts, UPWord.of("", "ab"))
        neg_inf = infinity_set(rc.ts, UPWord.of("", "ba"))
        assert not (pos_inf & neg_inf)
        info = sccs(rc.ts)
        assert not any(
            info.scc_id[p] == info.scc_id[q] for p in pos_inf for q in neg_inf
        )
