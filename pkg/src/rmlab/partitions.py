"""Set partitions of {0, ..., ell-1} via restricted growth strings."""

from functools import lru_cache

from .errors import PartitionGuardExceeded

# Largest ell for which exhaustive partition enumeration is allowed (Bell(8) = 4140).
BELL_GUARD = 8


@lru_cache(maxsize=None)
def bell(n):
    """Bell numbers from the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


class PartitionIterator:
    """Streams each set partition of range(ell) exactly once.

    A partition is yielded as a tuple of blocks, each block a sorted tuple,
    blocks ordered by their smallest element.
    """

    def __init__(self, ell, guard=BELL_GUARD):
        if ell < 0:
            raise ValueError("ell must be nonnegative")
        if ell > guard:
            raise PartitionGuardExceeded(f"ell={ell} exceeds the partition guard {guard}")
        self.ell = ell

    def __len__(self):
        return bell(self.ell)

    def __iter__(self):
        ell = self.ell
        if ell == 0:
            yield ()
            return
        rgs = [0] * ell
        # maxes[i] = max(rgs[:i]) for the growth constraint
        while True:
            nblocks = max(rgs) + 1
            blocks = [[] for _ in range(nblocks)]
            for i, b in enumerate(rgs):
                blocks[b].append(i)
            yield tuple(tuple(b) for b in blocks)
            i = ell - 1
            while i > 0:
                if rgs[i] <= max(rgs[:i]):
                    rgs[i] += 1
                    for j in range(i + 1, ell):
                        rgs[j] = 0
                    break
                i -= 1
            else:
                return


def set_partitions(ell, guard=BELL_GUARD):
    return iter(PartitionIterator(ell, guard))
