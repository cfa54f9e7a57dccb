"""Positive braid words and symmetric group machinery.

Permutations are stored in one-line notation as tuples of 0-based images:
``w[k]`` is the image of position ``k``.  Generator labels follow the braid
convention and are 1-based: the letter ``i`` crosses strands ``i`` and
``i+1``, i.e. swaps positions ``i-1`` and ``i``.  Words multiply on the
right in reading order, matching the Demazure fold.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class BraidWord:
    """A positive braid word on ``n`` strands."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one strand")
        for i in self.letters:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"letter {i} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.letters)

    def concat(self, other: BraidWord) -> BraidWord:
        if other.n != self.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)


def parse_braid(text: str, n: int | None = None) -> BraidWord:
    """Parse comma- or space-separated generator indices.

    >>> parse_braid("1,1,2,2").letters
    (1, 1, 2, 2)
    >>> parse_braid("1 2 1").n
    3
    """
    parts = text.replace(",", " ").split()
    letters = tuple(int(p) for p in parts)
    if n is None:
        n = max(letters, default=0) + 1
    return BraidWord(n, letters)


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def longest_perm(n: int) -> Permutation:
    """The longest element w_0.

    >>> longest_perm(3)
    (2, 1, 0)
    """
    return tuple(range(n - 1, -1, -1))


def perm_length(w: Permutation) -> int:
    """Coxeter length = inversion count."""
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def right_mult_gen(w: Permutation, i: int) -> Permutation:
    """w * s_i: swap the entries at positions i-1 and i."""
    v = list(w)
    v[i - 1], v[i] = v[i], v[i - 1]
    return tuple(v)


def left_mult_gen(i: int, w: Permutation) -> Permutation:
    """s_i * w: swap the values i-1 and i."""
    return tuple(i - 1 if x == i else i if x == i - 1 else x for x in w)


def right_ascent(w: Permutation, i: int) -> bool:
    """True iff l(w * s_i) = l(w) + 1."""
    return w[i - 1] < w[i]


def left_descent(w: Permutation, i: int) -> bool:
    """True iff l(s_i * w) = l(w) - 1."""
    n = len(w)
    inv = [0] * n
    for pos, val in enumerate(w):
        inv[val] = pos
    return inv[i - 1] > inv[i]


def perm_mult(w: Permutation, v: Permutation) -> Permutation:
    """(w * v)(k) = w(v(k))."""
    return tuple(w[v[k]] for k in range(len(w)))


def perm_inverse(w: Permutation) -> Permutation:
    inv = [0] * len(w)
    for pos, val in enumerate(w):
        inv[val] = pos
    return tuple(inv)


def word_to_perm(n: int, letters: Iterable[int]) -> Permutation:
    """Ordinary product of the transpositions of a word."""
    w = identity_perm(n)
    for i in letters:
        w = right_mult_gen(w, i)
    return w


def demazure_product(braid: BraidWord) -> Permutation:
    """Fold the word through S_n, absorbing length-decreasing letters.

    >>> demazure_product(BraidWord(2, (1, 1)))
    (1, 0)
    """
    w = identity_perm(braid.n)
    for i in braid.letters:
        if right_ascent(w, i):
            w = right_mult_gen(w, i)
    return w


def half_twist(n: int) -> BraidWord:
    """The word (s_1)(s_2 s_1)...(s_{n-1}...s_1), of length n(n-1)/2.

    >>> half_twist(3).letters
    (1, 2, 1)
    """
    letters: list[int] = []
    for k in range(1, n):
        letters.extend(range(k, 0, -1))
    return BraidWord(n, tuple(letters))


@functools.lru_cache(maxsize=None)
def canonical_reduced_word(w: Permutation) -> tuple[int, ...]:
    """Lexicographically minimal reduced word for ``w`` (generator labels)."""
    if w == identity_perm(len(w)):
        return ()
    i = min(i for i in range(1, len(w)) if left_descent(w, i))
    return (i,) + canonical_reduced_word(left_mult_gen(i, w))


@functools.lru_cache(maxsize=None)
def all_reduced_words(w: Permutation) -> tuple[tuple[int, ...], ...]:
    if w == identity_perm(len(w)):
        return ((),)
    words = []
    for i in range(1, len(w)):
        if left_descent(w, i):
            words.extend((i,) + rest for rest in all_reduced_words(left_mult_gen(i, w)))
    return tuple(sorted(words))


def reduced_word_ending_with(v: Permutation, i: int) -> tuple[int, ...] | None:
    """A canonical reduced word for ``v`` ending with the generator ``i``,
    or None if no reduced word of ``v`` ends in ``i``.

    The word is the lexicographically minimal reduced word for v*s_i with
    the letter i appended.
    """
    if right_ascent(v, i):
        return None
    return canonical_reduced_word(right_mult_gen(v, i)) + (i,)


# -- rewriting between reduced words ---------------------------------------


def word_moves(word: tuple[int, ...]):
    """Positioned hexavalent and distant moves applicable to ``word``."""
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) >= 2:
            yield ("distant", p)
        if p + 2 < len(word) and abs(a - b) == 1 and word[p + 2] == a:
            yield ("hexavalent", p)


def apply_word_move(word: tuple[int, ...], kind: str, p: int) -> tuple[int, ...]:
    if kind == "distant":
        return word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
    if kind == "hexavalent":
        a, b = word[p], word[p + 1]
        return word[:p] + (b, a, b) + word[p + 3 :]
    raise ValueError(f"unknown move kind {kind!r}")


class NotBraidEquivalent(ValueError):
    pass


@functools.lru_cache(maxsize=None)
def _move_path_cached(source: tuple[int, ...], target: tuple[int, ...]):
    if source == target:
        return ()
    frontier = [source]
    parents: dict[tuple[int, ...], tuple] = {source: None}
    while frontier:
        nxt = []
        for word in frontier:
            for kind, p in word_moves(word):
                neighbor = apply_word_move(word, kind, p)
                if neighbor in parents:
                    continue
                parents[neighbor] = (word, kind, p)
                if neighbor == target:
                    path = []
                    cur = neighbor
                    while parents[cur] is not None:
                        prev, k, pos = parents[cur]
                        path.append((k, pos))
                        cur = prev
                    return tuple(reversed(path))
                nxt.append(neighbor)
        frontier = nxt
    raise NotBraidEquivalent(f"no move path from {source} to {target}")


def braid_move_path(
    n: int, source: Sequence[int], target: Sequence[int]
) -> list[tuple[str, int]]:
    """Breadth-first search over the reduced-word graph.

    Both words must be reduced words for the same permutation; Matsumoto's
    theorem then guarantees they are connected by hexavalent and distant
    moves alone.
    """
    source, target = tuple(source), tuple(target)
    if len(source) != len(target):
        raise NotBraidEquivalent("words have different lengths")
    ws, wt = word_to_perm(n, source), word_to_perm(n, target)
    if ws != wt:
        raise NotBraidEquivalent("words are not words for the same permutation")
    if perm_length(ws) != len(source):
        raise NotBraidEquivalent("words are not reduced")
    return list(_move_path_cached(source, target))
