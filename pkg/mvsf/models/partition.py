from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod

from mvsf.errors import DomainError


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers, e.g. (3, 1)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(k) for k in self.parts)
        if any(k <= 0 for k in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for k in self.parts if k > j) for j in range(self.parts[0])))

    @cached_property
    def hook_lengths(self) -> tuple[int, ...]:
        """Hook length of every cell, row by row."""
        cols = self.conjugate().parts
        return tuple(
            (k - j - 1) + (cols[j] - i - 1) + 1
            for i, k in enumerate(self.parts)
            for j in range(k)
        )

    @cached_property
    def standard_tableaux(self) -> int:
        """f^K = k! / prod(hooks), the number of standard Young tableaux."""
        return factorial(self.weight) // prod(self.hook_lengths)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"
