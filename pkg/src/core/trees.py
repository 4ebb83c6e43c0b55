"""Ordered rooted trees, the bijection with noncrossing pair partitions and alternating labelings."""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial
import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from ..config.limits import DEFAULT_LIMITS
from .errors import LimitExceeded
from .partitions import AdaptationMode, PairPartition
from .volumes import iter_linear_extensions, region_constraints

logger = logging.getLogger(__name__)

ROOT = 0


class AlternationType(Enum):
    """TYPE_I starts descending from the root, TYPE_II ascending."""
    TYPE_I = "typeI"
    TYPE_II = "typeII"

    @classmethod
    def parse(cls, value) -> "AlternationType":
        if isinstance(value, cls):
            return value
        lowered = str(value).lower()
        for member in cls:
            if member.value.lower() == lowered or member.name.lower() == lowered:
                return member
        raise ValueError(f"Unknown alternation type: {value}")


@dataclass(frozen=True)
class OrderedTree:
    """
    Ordered rooted tree with vertices numbered 0..v-1 in preorder, root 0.

    children[w] is the left-to-right sequence of children of vertex w.
    """
    children: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("A tree has at least one vertex")
        order = list(self._preorder())
        if order != list(range(len(self.children))):
            raise ValueError(f"Vertices must be numbered 0..{len(self.children) - 1} in preorder: {self.children}")

    def _preorder(self) -> Iterator[int]:
        stack = [ROOT]
        seen = 0
        while stack:
            vertex = stack.pop()
            seen += 1
            if seen > len(self.children):
                raise ValueError("Children lists contain a cycle or repeated vertex")
            yield vertex
            stack.extend(reversed(self.children[vertex]))

    @property
    def vertex_count(self) -> int:
        return len(self.children)

    def parents(self) -> List[Optional[int]]:
        parent: List[Optional[int]] = [None] * self.vertex_count
        for vertex, kids in enumerate(self.children):
            for child in kids:
                parent[child] = vertex
        return parent

    def depths(self) -> List[int]:
        depth = [0] * self.vertex_count
        # preorder numbering guarantees parents come first
        for vertex, kids in enumerate(self.children):
            for child in kids:
                depth[child] = depth[vertex] + 1
        return depth

    @classmethod
    def from_nested(cls, shape: Tuple) -> "OrderedTree":
        """Build from a nested tuple where each node is the tuple of its child nodes."""
        children: List[List[int]] = []

        def visit(node) -> int:
            vertex = len(children)
            children.append([])
            for sub in node:
                children[vertex].append(visit(sub))
            return vertex

        visit(shape)
        return cls(tuple(tuple(kids) for kids in children))

    def to_nested(self, vertex: int = ROOT) -> Dict[str, Any]:
        return {"children": [self.to_nested(child) for child in self.children[vertex]]}


@dataclass(frozen=True)
class LabeledOrderedTree:
    """An ordered tree whose vertices carry the distinct labels 1..v."""
    tree: OrderedTree
    labels: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.labels) != list(range(1, self.tree.vertex_count + 1)):
            raise ValueError(f"Labels {self.labels} are not a bijection onto 1..{self.tree.vertex_count}")

    def to_nested(self, vertex: int = ROOT) -> Dict[str, Any]:
        return {
            "label": self.labels[vertex],
            "children": [self.to_nested(child) for child in self.tree.children[vertex]],
        }


def _check_limit(what: str, value: int, limit: Optional[int], default: int) -> None:
    limit = default if limit is None else limit
    if value > limit:
        raise LimitExceeded(what, value, limit)


@lru_cache(maxsize=None)
def _forests(k: int) -> Tuple[Tuple, ...]:
    # Ordered forests on k vertices as nested tuples.
    if k == 0:
        return ((),)
    result = []
    for first_size in range(1, k + 1):
        for first in _forests(first_size - 1):
            for rest in _forests(k - first_size):
                result.append((first,) + rest)
    return tuple(result)


def enumerate_ordered_trees(v: int, limit: Optional[int] = None) -> List[OrderedTree]:
    """
    All ordered rooted trees on v vertices, Catalan(v-1) of them.

    Raises:
        ValueError: If v < 1
        LimitExceeded: If v exceeds the configured vertex limit
    """
    if v < 1:
        raise ValueError(f"A tree needs at least one vertex, got {v}")
    _check_limit("vertices", v, limit, DEFAULT_LIMITS.max_vertices)
    trees = [OrderedTree.from_nested(shape) for shape in _forests(v - 1)]
    logger.debug(f"Enumerated {len(trees)} ordered trees on {v} vertices")
    return trees


def tree_to_partition(tree: OrderedTree) -> PairPartition:
    """
    Image of a tree under the bijection gamma.

    Every non-root vertex becomes a block whose nearest outer block is its
    parent's block; the root becomes the imaginary block. Children order
    follows the left-to-right order of the blocks' left legs.
    """
    blocks: List[Tuple[int, int]] = [None] * (tree.vertex_count - 1)
    position = 0
    # iterative DFS; ("close", v) marks the right leg
    stack: List[Tuple[str, int]] = [("open", child) for child in reversed(tree.children[ROOT])]
    lefts: Dict[int, int] = {}
    while stack:
        action, vertex = stack.pop()
        position += 1
        if action == "open":
            lefts[vertex] = position
            stack.append(("close", vertex))
            stack.extend(("open", child) for child in reversed(tree.children[vertex]))
        else:
            blocks[vertex - 1] = (lefts[vertex], position)
    return PairPartition(2 * (tree.vertex_count - 1), tuple(blocks))


def partition_to_tree(p: PairPartition) -> OrderedTree:
    """Inverse of tree_to_partition: block k becomes vertex k, parent o(k)."""
    return OrderedTree(tuple(tuple(p.children(k)) for k in range(p.s + 1)))


def tree_to_colored_partition(tree: LabeledOrderedTree) -> Tuple[PairPartition, Tuple[int, ...]]:
    """Labeled tree to colored partition; colors are indexed by block, 0 = imaginary."""
    return tree_to_partition(tree.tree), tree.labels


def colored_partition_to_tree(p: PairPartition, colors: Sequence[int]) -> LabeledOrderedTree:
    return LabeledOrderedTree(partition_to_tree(p), tuple(colors))


def simplex_labelings(p: PairPartition, word, mode=AdaptationMode.ETA) -> Iterator[LabeledOrderedTree]:
    """
    Labeled trees of shape gamma(p), one per ordering of colors allowed by V(p).

    For (T*T)^n every TypeI alternating labeling of the shape appears exactly once.
    """
    for ranks in iter_linear_extensions(region_constraints(p, word, mode)):
        yield colored_partition_to_tree(p, ranks)


def _descends(depth: int, which: AlternationType) -> bool:
    # Whether the edge from a parent at this depth must go down in label.
    return (depth % 2 == 0) == (which is AlternationType.TYPE_I)


def is_alternating(tree: LabeledOrderedTree, which=AlternationType.TYPE_I) -> bool:
    """
    Whether labels alternate along every root-to-leaf path.

    Checked per edge: for TYPE_I an edge out of an even-depth vertex needs
    parent label > child label and one out of an odd-depth vertex needs
    parent label < child label; TYPE_II is the reverse.
    """
    which = AlternationType.parse(which)
    depths = tree.tree.depths()
    labels = tree.labels
    for parent, kids in enumerate(tree.tree.children):
        down = _descends(depths[parent], which)
        for child in kids:
            if (labels[parent] > labels[child]) != down:
                return False
    return True


def alternating_labelings(tree: OrderedTree, which=AlternationType.TYPE_I) -> Iterator[LabeledOrderedTree]:
    """All alternating labelings of one tree shape, by backtracking in preorder."""
    which = AlternationType.parse(which)
    v = tree.vertex_count
    parents = tree.parents()
    depths = tree.depths()
    labels = [0] * v
    used = [False] * (v + 1)

    def assign(vertex: int) -> Iterator[LabeledOrderedTree]:
        if vertex == v:
            yield LabeledOrderedTree(tree, tuple(labels))
            return
        parent = parents[vertex]
        for label in range(1, v + 1):
            if used[label]:
                continue
            if parent is not None and (labels[parent] > label) != _descends(depths[parent], which):
                continue
            used[label] = True
            labels[vertex] = label
            yield from assign(vertex + 1)
            used[label] = False

    yield from assign(ROOT)


def enumerate_alternating(n: int, which=AlternationType.TYPE_I, limit: Optional[int] = None) -> List[LabeledOrderedTree]:
    """
    All alternating labeled ordered rooted trees on n+1 vertices of one type.

    Their number is n^n.

    Raises:
        LimitExceeded: If n exceeds the configured limit
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    _check_limit("n", n, limit, DEFAULT_LIMITS.max_alternating_n)
    which = AlternationType.parse(which)
    result = [labeled for shape in _shapes(n + 1) for labeled in alternating_labelings(shape, which)]
    logger.debug(f"Enumerated {len(result)} {which.value} alternating trees on {n + 1} vertices")
    return result


def _shapes(v: int) -> List[OrderedTree]:
    return [OrderedTree.from_nested(shape) for shape in _forests(v - 1)]


def reverse_labels(tree: LabeledOrderedTree) -> LabeledOrderedTree:
    """Label reversal i -> v+1-i, exchanging TYPE_I and TYPE_II."""
    top = tree.tree.vertex_count + 1
    return LabeledOrderedTree(tree.tree, tuple(top - label for label in tree.labels))


def count_labeled_ordered_trees(n: int) -> int:
    """|L_n| = (n+1)! C_n = (2n)!/n! labeled ordered trees on n+1 vertices."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return factorial(2 * n) // factorial(n)


def count_alternating(n: int) -> int:
    """All alternating trees on n+1 vertices, both types: 2 n^n."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return 2 * n ** n
