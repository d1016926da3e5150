"""Index arithmetic for the complete binary tree of agents."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Tree:
    """A complete binary tree laid out breadth-first.

    The single agent at level 0 (index 0) is the top of the hierarchy; a
    tree with ``levels`` levels holds ``2**levels - 1`` agents.  Children
    of agent ``i`` sit at ``2i+1`` and ``2i+2``, so every neighbour lookup
    is closed-form index arithmetic.  Boundary convention: the top agent
    is its own parent, and a bottom-level agent is both of its own
    children, which lets every agent treat its neighbourhood uniformly.
    """

    levels: int
    agent_count: int

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.agent_count:
            raise ValueError(
                f"agent index {i} out of range [0, {self.agent_count})"
            )

    def parent_of(self, i: int) -> int:
        """Index of agent ``i``'s parent; the top agent is its own parent."""
        self._check_index(i)
        if i == 0:
            return 0
        return (i - 1) // 2

    def children_of(self, i: int) -> tuple[int, int]:
        """Indices of ``i``'s two children; a leaf is both of its own."""
        self._check_index(i)
        left = 2 * i + 1
        if left >= self.agent_count:
            return (i, i)
        return (left, left + 1)

    def level_of(self, i: int) -> int:
        """Level of agent ``i``, counting the top agent as level 0."""
        self._check_index(i)
        return (i + 1).bit_length() - 1

    def is_leaf(self, i: int) -> bool:
        """Whether agent ``i`` sits on the bottom level."""
        self._check_index(i)
        return 2 * i + 1 >= self.agent_count

    def agents_at_level(self, level: int) -> range:
        """Indices of all agents at ``level``, ascending."""
        if not 0 <= level < self.levels:
            raise ValueError(f"level {level} out of range [0, {self.levels})")
        return range(2**level - 1, 2 ** (level + 1) - 1)


def build_tree(levels: int) -> Tree:
    """Build a complete binary tree with the given number of levels."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    return Tree(levels=levels, agent_count=2**levels - 1)
