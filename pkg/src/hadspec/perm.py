"""Permutations of {0..k-1} and the slot-insertion construction.

Everything here is 0-based.  Classical treatments of the same material
index slots 1..k; the translation is uniform:

    slot l (1-based)            ->  slot l-1
    new slot k+1 (1-based)      ->  new slot k
    "fixes the element k+1"     ->  extend(sigma, l=k)

A permutation is stored as its image array: ``image[i] = sigma(i)``.
Composition follows the usual function convention,
``compose(p, q)(i) = p(q(i))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Perm:
    """Permutation of {0..k-1}, stored as the tuple (sigma(0), ..., sigma(k-1))."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation image: {self.image}")

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    @staticmethod
    def identity(k: int) -> Perm:
        return Perm(tuple(range(k)))

    @staticmethod
    def transposition(k: int, a: int, b: int) -> Perm:
        """The transposition (a b) on {0..k-1}; a == b gives the identity."""
        img = list(range(k))
        img[a], img[b] = img[b], img[a]
        return Perm(tuple(img))

    def compose(self, other: Perm) -> Perm:
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if self.size != other.size:
            raise ValueError("size mismatch in composition")
        return Perm(tuple(self.image[other.image[i]] for i in range(self.size)))

    def inverse(self) -> Perm:
        img = [0] * self.size
        for i, j in enumerate(self.image):
            img[j] = i
        return Perm(tuple(img))

    def sign(self) -> int:
        """Parity via cycle count: (-1)**(k - number of cycles)."""
        s = len(cycle_decomposition(self).cycles)
        return 1 if (self.size - s) % 2 == 0 else -1


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles covering {0..k-1}, in canonical order.

    Cycle 0 contains index 0; each later cycle starts at the smallest
    index not yet covered.  Within a cycle the indices appear in orbit
    order starting from that smallest index.  ``cycle_id[i]`` is the
    position of the cycle containing i.
    """

    cycles: tuple[tuple[int, ...], ...]
    cycle_id: tuple[int, ...]


def cycle_decomposition(nu: Perm) -> CycleDecomposition:
    k = nu.size
    seen = [False] * k
    cycles: list[tuple[int, ...]] = []
    cycle_id = [0] * k
    for start in range(k):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        j = nu(start)
        while j != start:
            orbit.append(j)
            seen[j] = True
            j = nu(j)
        for i in orbit:
            cycle_id[i] = len(cycles)
        cycles.append(tuple(orbit))
    return CycleDecomposition(tuple(cycles), tuple(cycle_id))


def sigma_sub_l(sigma: Perm, l: int) -> Perm:
    """Insert a new last symbol k into sigma after slot l.

    For l < k the result is sigma (extended to fix k) composed on the
    right with the transposition (l k); in cycle terms, the new symbol k
    is spliced into sigma's cycle immediately after l.  For l == k the
    result is the plain extension fixing k.  In every case the inverse
    of the result maps k to l.

    >>> sigma_sub_l(Perm((1, 0)), 0).image
    (2, 0, 1)
    >>> sigma_sub_l(Perm((0, 1)), 2).image
    (0, 1, 2)
    """
    k = sigma.size
    if not 0 <= l <= k:
        raise ValueError(f"slot l={l} out of range for size-{k} permutation")
    extended = Perm(sigma.image + (k,))
    return extended.compose(Perm.transposition(k + 1, l, k))


def all_perms(k: int):
    """All permutations of {0..k-1} in lexicographic image order."""
    for img in itertools.permutations(range(k)):
        yield Perm(img)


def random_perm(k: int, rng: np.random.Generator) -> Perm:
    return Perm(tuple(int(i) for i in rng.permutation(k)))


def refines_vec(x, y) -> bool:
    """True iff equal coordinates of y force equal coordinates of x."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("refines_vec needs two vectors of equal length")
    k = len(x)
    for i in range(k):
        for j in range(i + 1, k):
            if y[i] == y[j] and x[i] != x[j]:
                return False
    return True


def refines_perm(x, nu: Perm) -> bool:
    """True iff x is constant along every cycle of nu: x[l] == x[nu(l)]."""
    x = np.asarray(x)
    if x.ndim != 1 or len(x) != nu.size:
        raise ValueError("vector length must match permutation size")
    return all(x[l] == x[nu(l)] for l in range(nu.size))


def specifying_vector(x, nu: Perm) -> np.ndarray:
    """Compress a nu-refined vector to one coordinate per cycle of nu.

    Inverse of :func:`expand_specifying_vector`; requires
    ``refines_perm(x, nu)``.
    """
    x = np.asarray(x, dtype=float)
    if not refines_perm(x, nu):
        raise ValueError("vector is not refined by the permutation")
    decomp = cycle_decomposition(nu)
    return np.array([x[c[0]] for c in decomp.cycles])


def expand_specifying_vector(p, nu: Perm) -> np.ndarray:
    """Spread one value per cycle of nu onto the full index set."""
    p = np.asarray(p, dtype=float)
    decomp = cycle_decomposition(nu)
    if len(p) != len(decomp.cycles):
        raise ValueError("one value per cycle required")
    return p[np.asarray(decomp.cycle_id)]


def perm_to_matrix(sigma: Perm) -> np.ndarray:
    """Orthogonal matrix P with (P h)_i = h[sigma(i)], i.e. P^T e_i = e_{sigma(i)}."""
    n = sigma.size
    m = np.zeros((n, n))
    for i in range(n):
        m[i, sigma(i)] = 1.0
    return m
