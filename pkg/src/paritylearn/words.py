"""Alphabets, finite words, ultimately periodic omega-words and samples.

Finite words are plain strings over an :class:`Alphabet` of single-character
symbols.  An ultimately periodic omega-word ``u v^w`` is stored in a canonical
form (primitive period, loop-absorbed spine) so that two :class:`UPWord`
values compare equal exactly when they denote the same omega-word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class InvalidPeriod(ValueError):
    """The period of an ultimately periodic word must be non-empty."""


def primitive_root(seq):
    """Shortest ``r`` with ``seq == r * k``, via the KMP failure function."""
    n = len(seq)
    if n == 0:
        return seq
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    if n % p == 0:
        return seq[:p]
    return seq


def normalize_parts(spine, period):
    """Canonical (spine, period) pair for ``spine . period^w``.

    Works on any sliceable sequence type (str, tuple).  The period is reduced
    to its primitive root and trailing spine symbols equal to the last period
    symbol are absorbed into the loop (rotating the period), which yields the
    unique representation with the shortest spine and a primitive period.
    """
    if len(period) == 0:
        raise InvalidPeriod("period must be non-empty")
    period = primitive_root(period)
    while len(spine) > 0 and spine[-1:] == period[-1:]:
        spine = spine[:-1]
        period = period[-1:] + period[:-1]
    return spine, period


@dataclass(frozen=True, order=True)
class Alphabet:
    """Ordered set of distinct single-character symbols."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        for s in self.symbols:
            if len(s) != 1:
                raise ValueError(f"alphabet symbols must be single characters: {s!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @staticmethod
    def of(symbols: Iterable[str]) -> "Alphabet":
        return Alphabet(tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, sym: str) -> bool:
        return sym in self._index

    def index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise ValueError(f"symbol {sym!r} not in alphabet {self.symbols}") from None

    def indices(self, word: str) -> tuple[int, ...]:
        return tuple(self.index(s) for s in word)

    def contains_word(self, word: str) -> bool:
        return all(s in self._index for s in word)

    def check_word(self, word: str) -> None:
        for s in word:
            if s not in self._index:
                raise ValueError(f"symbol {s!r} not in alphabet {self.symbols}")

    def llex_key(self, word: str):
        """Sort key realising the length-lexicographic order."""
        return (len(word), self.indices(word))


def llex_compare(x: str, y: str, alphabet: Alphabet) -> int:
    """-1, 0 or 1 comparing two finite words in llex order."""
    kx, ky = alphabet.llex_key(x), alphabet.llex_key(y)
    return (kx > ky) - (kx < ky)


def llex_words(alphabet: Alphabet, max_len: int, min_len: int = 0) -> Iterator[str]:
    """All words of length min_len..max_len in llex order."""
    from itertools import product

    for n in range(min_len, max_len + 1):
        for tup in product(alphabet.symbols, repeat=n):
            yield "".join(tup)


@dataclass(frozen=True)
class UPWord:
    """Canonical ultimately periodic omega-word ``spine . period^w``."""

    spine: str
    period: str

    @staticmethod
    def of(spine: str, period: str) -> "UPWord":
        spine, period = normalize_parts(spine, period)
        return UPWord(spine, period)

    def __post_init__(self):
        s, p = normalize_parts(self.spine, self.period)
        if s != self.spine or p != self.period:
            raise ValueError(
                f"({self.spine!r}, {self.period!r}) is not canonical; use UPWord.of"
            )

    def symbol_at(self, i: int) -> str:
        if i < len(self.spine):
            return self.spine[i]
        return self.period[(i - len(self.spine)) % len(self.period)]

    def prefix(self, n: int) -> str:
        if n <= len(self.spine):
            return self.spine[:n]
        reps = (n - len(self.spine)) // len(self.period) + 1
        return (self.spine + self.period * reps)[:n]

    @property
    def is_periodic(self) -> bool:
        return not self.spine

    def first_symbol(self) -> str:
        return self.spine[0] if self.spine else self.period[0]

    def shift(self) -> "UPWord":
        """The omega-word with the first symbol removed."""
        if self.spine:
            return UPWord.of(self.spine[1:], self.period)
        return UPWord.of("", self.period[1:] + self.period[0])

    def suffixes(self) -> list["UPWord"]:
        """All distinct suffix omega-words (at most ``|spine| + |period|``)."""
        out, seen, w = [], set(), self
        while w not in seen:
            seen.add(w)
            out.append(w)
            w = w.shift()
        return out

    def symbols_used(self) -> set[str]:
        return set(self.spine) | set(self.period)

    def sort_key(self, alphabet: Alphabet):
        """Deterministic total order on canonical words: size, spine, period."""
        return (
            len(self.spine) + len(self.period),
            len(self.spine),
            alphabet.indices(self.spine),
            alphabet.indices(self.period),
        )

    def __str__(self) -> str:
        return f"{self.spine},{self.period}"


def upword_prefix(w: UPWord, n: int) -> str:
    if n < 0:
        raise ValueError("prefix length must be >= 0")
    return w.prefix(n)


def is_prefix_of(x: str, w: UPWord) -> bool:
    return x == w.prefix(len(x))


@dataclass(frozen=True)
class OmegaSample:
    """Finite disjoint sets of positive/negative ultimately periodic words."""

    alphabet: Alphabet
    positives: frozenset[UPWord]
    negatives: frozenset[UPWord]

    @staticmethod
    def of(
        alphabet: Alphabet,
        positives: Iterable[UPWord | tuple[str, str]] = (),
        negatives: Iterable[UPWord | tuple[str, str]] = (),
    ) -> "OmegaSample":
        def conv(ws):
            return frozenset(w if isinstance(w, UPWord) else UPWord.of(*w) for w in ws)

        return OmegaSample(alphabet, conv(positives), conv(negatives))

    def __post_init__(self):
        clash = self.positives & self.negatives
        if clash:
            raise ValueError(f"words appear with both signs: {sorted(map(str, clash))}")
        for w in self.positives | self.negatives:
            for s in w.symbols_used():
                if s not in self.alphabet:
                    raise ValueError(f"symbol {s!r} of {w} not in sample alphabet")

    def words(self) -> list[UPWord]:
        """All sample words in the canonical deterministic order."""
        return sorted(
            self.positives | self.negatives, key=lambda w: w.sort_key(self.alphabet)
        )

    def signed_words(self) -> list[tuple[UPWord, bool]]:
        return [(w, w in self.positives) for w in self.words()]

    def sign_of(self, w: UPWord) -> bool | None:
        if w in self.positives:
            return True
        if w in self.negatives:
            return False
        return None

    @property
    def size(self) -> int:
        """Total symbol count over all stored representations."""
        return sum(len(w.spine) + len(w.period) for w in self.words())

    def is_empty(self) -> bool:
        return not self.positives and not self.negatives

    def with_words(
        self, positives: Iterable[UPWord] = (), negatives: Iterable[UPWord] = ()
    ) -> "OmegaSample":
        return OmegaSample(
            self.alphabet,
            self.positives | frozenset(positives),
            self.negatives | frozenset(negatives),
        )


def sample_prefixes(sample: OmegaSample, bound: int) -> set[str]:
    """All prefixes (up to the given length) of the sample's words."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    out = {""}
    for w in sample.words():
        for n in range(1, bound + 1):
            out.add(w.prefix(n))
    return out
