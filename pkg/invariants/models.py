from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from invariants.exceptions import ParameterError


@dataclass(frozen=True)
class Composition:
    """Ordered parts alpha_1..alpha_l; zero parts only when weak=True."""

    parts: tuple
    weak: bool = False

    def __post_init__(self):
        parts = tuple(int(a) for a in self.parts)
        object.__setattr__(self, 'parts', parts)
        if any(a < 0 for a in parts) or (not self.weak and any(a == 0 for a in parts)):
            raise ParameterError(f"invalid composition {parts}")

    @classmethod
    def parse(cls, text):
        try:
            return cls(tuple(int(x) for x in str(text).split(",") if x.strip()))
        except ValueError as e:
            raise ParameterError(f"cannot parse composition '{text}': {str(e)}") from e

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(str(a) for a in self.parts)

    def partial_sums(self):
        """A_0 = 0, A_1, ..., A_l."""
        sums, total = [0], 0
        for a in self.parts:
            total += a
            sums.append(total)
        return sums

    def dominated_by(self, other):
        """beta <= alpha componentwise."""
        return len(self.parts) == len(other.parts) and all(b <= a for b, a in zip(self.parts, other.parts))

    def reversed(self):
        return Composition(tuple(reversed(self.parts)), self.weak)


@dataclass(frozen=True)
class BoxPartition:
    parts: tuple

    def fits(self, s, m):
        return len(self.parts) == s and (not self.parts or self.parts[0] <= m - s)

    @property
    def size(self):
        return sum(self.parts)


@dataclass(frozen=True)
class DicksonWord:
    """(e_1..e_s) standing for Q_{s,s-1}^{e_1} ... Q_{s,0}^{e_s}."""

    exps: tuple

    @property
    def s(self):
        return len(self.exps)

    def exponent_of(self, i):
        """Exponent of Q_{s,i}."""
        return self.exps[self.s - 1 - i]

    def degree(self, q):
        s = self.s
        return sum(e * (q ** s - q ** (s - j)) for j, e in enumerate(self.exps, start=1))

    def times(self, i, k=1):
        """The word multiplied by Q_{s,i}^k."""
        exps = list(self.exps)
        exps[self.s - 1 - i] += k
        return DicksonWord(tuple(exps))

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.exps) + ")"


@dataclass
class BasisElement:
    family: int
    recipe: str
    parameters: dict
    value: object
    degree: int

    def to_dict(self):
        return {
            'family': self.family,
            'recipe': self.recipe,
            'parameters': self.parameters,
            'degree': self.degree,
            'value': str(self.value),
        }


@dataclass
class RunConfig:
    command: str
    q: int = 2
    m: int = 2
    n: Optional[int] = None
    alpha: Optional[Composition] = None
    output_format: str = 'text'
    json_path: Optional[str] = None
    csv_path: Optional[str] = None
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    verbose: bool = False
    max_monomials: int = 20000
    max_orbit_points: int = 10 ** 7
    max_group_order: int = 12000
    random_seed: int = 20240101
    random_samples: int = 50
