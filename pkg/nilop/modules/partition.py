import typing as tp
from dataclasses import dataclass
from functools import lru_cache

from nilop.errors import InvalidObjectError


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts; the Jordan type of a nilpotent operator."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in parts):
            raise InvalidObjectError(f"Partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidObjectError(f"Partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: tp.Iterable[int]) -> "Partition":
        """Sorts and drops zero parts."""
        return cls(tuple(sorted((int(x) for x in parts if int(x) > 0), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def width(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.parts) + "]"

    def count(self, part: int) -> int:
        return self.parts.count(part)

    def union(self, other: "Partition") -> "Partition":
        return Partition.of(self.parts + other.parts)

    def without(self, part: int) -> "Partition":
        return Partition(tuple(x for x in self.parts if x != part))

    def remove(self, part: int, copies: int = 1) -> "Partition":
        """Drops `copies` parts equal to `part`."""
        if self.count(part) < copies:
            raise InvalidObjectError(f"{self} has fewer than {copies} parts equal to {part}")
        parts = list(self.parts)
        for _ in range(copies):
            parts.remove(part)
        return Partition(tuple(parts))

    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.height)))

    def syzygy(self, n: int) -> "Partition":
        """Ω on Jordan types: [m] -> [n - m], projective parts vanish."""
        return Partition.of(n - x for x in self.parts)

    def durfee_rank(self) -> int:
        return sum(1 for i, x in enumerate(self.parts) if x >= i + 1)

    def is_strongly_decreasing(self) -> bool:
        return all(self.parts[i] - self.parts[i + 1] >= 2 for i in range(len(self.parts) - 1))


def jordan_type_from_dims(dims: tp.Sequence[int]) -> Partition:
    """
    Jordan type of a nilpotent operator from the dimensions d_k = dim(image of T^k), k = 0, 1, ...

    The number of blocks of size at least k is d_{k-1} - d_k.
    """
    dims = list(dims) + [0]
    at_least = [dims[k - 1] - dims[k] for k in range(1, len(dims))]
    parts: list[int] = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exact)
    return Partition(tuple(parts))


def partitions(total: int, max_part: int | None = None) -> tp.Iterator[Partition]:
    """All partitions of `total` with parts at most `max_part`, in reverse lexicographic order."""
    if max_part is None:
        max_part = total
    for parts in _partitions(total, max_part):
        yield Partition(parts)


@lru_cache(maxsize=None)
def _partitions(total: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_count(total: int) -> int:
    return len(_partitions(total, total))
