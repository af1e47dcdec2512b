"""Exact counting of many-body configurations on integer spectra.

A configuration is a set of occupation numbers m_j on single-particle
levels eps_j; the many-body level density at (E, N) is the number of
configurations with sum m_j eps_j = E and sum m_j = N.  For the unit-spaced
oscillator spectrum eps_j = j this is the number of partitions of the
excitation energy into at most N parts, for fermions and bosons alike.

All counts are Python ints, so they never overflow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from operator import add

from .errors import TruncationError


class Statistics(enum.Enum):
    FERMI = "fermi"
    BOSE = "bose"


@dataclass(frozen=True)
class SpectrumSpec:
    """A finite, sorted list of nonnegative integer single-particle levels."""

    levels: tuple[int, ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        if any(not isinstance(e, int) or e < 0 for e in levels):
            raise ValueError("levels must be nonnegative integers")
        if any(b < a for a, b in zip(levels, levels[1:])):
            raise ValueError("levels must be sorted non-decreasing")

    def __len__(self):
        return len(self.levels)

    @classmethod
    def powers(cls, power: int, length: int) -> "SpectrumSpec":
        """Levels j**power for j = 0 .. length-1."""
        if power < 1:
            raise ValueError("power must be a positive integer")
        return cls(tuple(j**power for j in range(length)))

    @classmethod
    def harmonic(cls, length: int) -> "SpectrumSpec":
        """Unit-frequency oscillator with eps_0 = 0."""
        return cls.powers(1, length)

    @classmethod
    def covering(cls, power: int, n_particles: int, energy: int) -> "SpectrumSpec":
        """Shortest j**power spectrum that is complete for (n_particles, energy)."""
        length = max(n_particles, 1)
        while (length - 1) ** power <= energy:
            length += 1
        return cls.powers(power, length)


def _check_covers(spec: SpectrumSpec, n_particles: int, energy: int, stats: Statistics):
    if stats is Statistics.FERMI and n_particles > len(spec):
        raise TruncationError(
            f"{n_particles} fermions need at least {n_particles} levels, spectrum has {len(spec)}"
        )
    if n_particles and (not spec.levels or spec.levels[-1] <= energy):
        raise TruncationError(
            f"spectrum must contain a level above E={energy} to be complete "
            f"(highest level is {spec.levels[-1] if spec.levels else None})"
        )


@lru_cache(maxsize=64)
def _partition_row(max_n: int, max_parts: int) -> tuple[int, ...]:
    """(p_k(0), ..., p_k(max_n)) with k = max_parts, built row by row in k."""
    row = [1] + [0] * max_n
    for k in range(1, min(max_parts, max_n) + 1):
        # p_k(m) = p_{k-1}(m) + p_k(m-k); block j uses block j-1, already updated
        for j in range(k, max_n + 1, k):
            hi = min(j + k, max_n + 1)
            row[j:hi] = map(add, row[j:hi], row[j - k:hi - k])
    return tuple(row)


def restricted_partition_count(n: int, max_parts: int) -> int:
    """Number of partitions of n into at most ``max_parts`` positive parts."""
    if n < 0 or max_parts < 0:
        raise ValueError("n and max_parts must be nonnegative")
    return _partition_row(n, min(max_parts, n))[n]


def unrestricted_partition_count(n: int) -> int:
    """The partition number p(n)."""
    return restricted_partition_count(n, n)


def restricted_partition_row(max_n: int, max_parts: int) -> tuple[int, ...]:
    """p_{max_parts}(m) for every m in 0..max_n, from a single DP pass."""
    if max_n < 0 or max_parts < 0:
        raise ValueError("max_n and max_parts must be nonnegative")
    return _partition_row(max_n, max_parts)


class PartitionTable:
    """Full table p_k(m) for 0 <= m <= max_n, 0 <= k <= max_parts.

    Immutable once built; index with ``table[k, m]``.
    """

    def __init__(self, max_n: int, max_parts: int):
        if max_n < 0 or max_parts < 0:
            raise ValueError("max_n and max_parts must be nonnegative")
        self.max_n = max_n
        self.max_parts = max_parts
        rows = [(1,) + (0,) * max_n]
        for k in range(1, max_parts + 1):
            prev = rows[-1]
            cur = list(prev)
            for m in range(k, max_n + 1):
                cur[m] = prev[m] + cur[m - k]
            rows.append(tuple(cur))
        self.counts: tuple[tuple[int, ...], ...] = tuple(rows)

    def __getitem__(self, key: tuple[int, int]) -> int:
        k, m = key
        if m < 0:
            return 0
        return self.counts[k][m]

    def __repr__(self):
        return f"PartitionTable(max_n={self.max_n}, max_parts={self.max_parts})"


@lru_cache(maxsize=None)
def _distinct_powers(rest: int, k: int, top: int, power: int) -> int:
    # choose k distinct bases from {0, ..., top} with sum of powers == rest
    if k == 0:
        return 1 if rest == 0 else 0
    if top + 1 < k:
        return 0
    total = _distinct_powers(rest, k, top - 1, power)
    t = top**power
    if t <= rest:
        total += _distinct_powers(rest - t, k - 1, top - 1, power)
    return total


def distinct_power_partition_count(n: int, parts: int, power: int) -> int:
    """Ways to write n as a sum of ``parts`` terms j**power over distinct j >= 0.

    j = 0 is allowed (it contributes 0), matching a spectrum whose lowest
    level sits at zero energy.  Counted by recursion on the largest base,
    independently of the level-by-level knapsack in ``exact_mb_counts``.
    """
    if n < 0 or parts < 0:
        return 0
    if power < 1:
        raise ValueError("power must be a positive integer")
    top = 0
    while (top + 1) ** power <= n:
        top += 1
    return _distinct_powers(n, parts, max(top, parts - 1), power)


def ground_state_energy(spec: SpectrumSpec, n_particles: int, stats: Statistics) -> int:
    if stats is Statistics.BOSE:
        return n_particles * spec.levels[0] if n_particles else 0
    if n_particles > len(spec):
        raise TruncationError(f"{n_particles} fermions do not fit in {len(spec)} levels")
    return sum(spec.levels[:n_particles])


def exact_mb_counts(
    spec: SpectrumSpec, n_particles: int, max_energy: int, stats: Statistics
) -> list[int]:
    """Configuration counts at every total energy 0..max_energy.

    Knapsack over levels: each level is taken once (Fermi) or any number of
    times (Bose).  Only the ``ways[N]`` row is returned.
    """
    if n_particles < 0 or max_energy < 0:
        raise ValueError("n_particles and max_energy must be nonnegative")
    _check_covers(spec, n_particles, max_energy, stats)
    N, E = n_particles, max_energy
    ways = [[0] * (E + 1) for _ in range(N + 1)]
    ways[0][0] = 1
    for eps in spec.levels:
        if eps > E:
            break
        if stats is Statistics.FERMI:
            for c in range(N, 0, -1):
                src, dst = ways[c - 1], ways[c]
                for e in range(E, eps - 1, -1):
                    if src[e - eps]:
                        dst[e] += src[e - eps]
        else:
            for c in range(1, N + 1):
                src, dst = ways[c - 1], ways[c]
                for e in range(eps, E + 1):
                    if src[e - eps]:
                        dst[e] += src[e - eps]
    return ways[N]


def exact_mb_density(
    spec: SpectrumSpec, n_particles: int, energy: int, stats: Statistics = Statistics.FERMI
) -> int:
    """Number of configurations with total energy ``energy`` and ``n_particles`` particles."""
    if energy < 0:
        return 0
    return exact_mb_counts(spec, n_particles, energy, stats)[energy]


def exact_mb_density_q(
    spec: SpectrumSpec, n_particles: int, q: int, stats: Statistics = Statistics.FERMI
) -> int:
    """Same as ``exact_mb_density`` but at excitation energy q above the ground state."""
    return exact_mb_density(spec, n_particles, ground_state_energy(spec, n_particles, stats) + q, stats)

