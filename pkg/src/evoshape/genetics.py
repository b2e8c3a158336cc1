"""Random tree growth and the tree-surgery genetic operators.

Initialization is ramped half-and-half: each tree draws a target depth
uniformly from ``[min_init_depth, max_init_depth]`` and uses the full or
grow method with equal probability.  Crossover and subtree mutation pick
nodes uniformly (preorder indexing) and enforce ``hard_max_depth`` by
retrying the node choice up to three times before falling back to the
unmodified input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .expr import ARITY, CONST, Expression, OPERATORS, TERMINAL_KINDS

# Subtree mutation grows its replacement with the grow method at depth <= 4.
MUTATION_GROW_MAX_DEPTH = 4

# One initial node choice plus three retries before giving up on a depth-safe
# offspring and returning the input unchanged.
_MAX_TRIES = 4


@dataclass(frozen=True)
class GrowthParams:
    min_init_depth: int = 2
    max_init_depth: int = 5
    hard_max_depth: int = 8
    terminal_probability: float = 0.3

    def __post_init__(self):
        if not 1 <= self.min_init_depth <= self.max_init_depth <= self.hard_max_depth:
            raise ValueError(
                "need 1 <= min_init_depth <= max_init_depth <= hard_max_depth, got "
                f"{self.min_init_depth}/{self.max_init_depth}/{self.hard_max_depth}"
            )
        if not 0.0 <= self.terminal_probability <= 1.0:
            raise ValueError("terminal_probability must be a fraction")


def _random_terminal(rng: random.Random) -> Expression:
    kind = rng.choice(TERMINAL_KINDS)
    if kind == CONST:
        # rng.uniform(-1, 1) stays in the half-open interval [-1, 1).
        return Expression(CONST, rng.uniform(-1.0, 1.0))
    return Expression(kind)


def _grow_tree(target_depth: int, full: bool, terminal_p: float,
               rng: random.Random, at_root: bool = True) -> Expression:
    if target_depth <= 1:
        return _random_terminal(rng)
    # Root is a forced operator level (when there is room); grow may stop
    # early anywhere below it.
    if not full and not at_root and rng.random() < terminal_p:
        return _random_terminal(rng)
    kind = rng.choice(OPERATORS)
    children = tuple(
        _grow_tree(target_depth - 1, full, terminal_p, rng, at_root=False)
        for _ in range(ARITY[kind])
    )
    return Expression(kind, children=children)


def random_expression(params: GrowthParams, rng: random.Random) -> Expression:
    """One ramped-half-and-half tree; depth lands in [1, max_init_depth]."""
    target_depth = rng.randint(params.min_init_depth, params.max_init_depth)
    full = rng.random() < 0.5
    return _grow_tree(target_depth, full, params.terminal_probability, rng)


def subtree_at(expr: Expression, index: int) -> Expression:
    """Subtree rooted at the ``index``-th node in preorder (root is 0)."""
    if index == 0:
        return expr
    index -= 1
    for child in expr.children:
        size = child.node_count()
        if index < size:
            return subtree_at(child, index)
        index -= size
    raise IndexError("node index out of range")


def replace_at(expr: Expression, index: int, replacement: Expression) -> Expression:
    """New tree with the ``index``-th preorder node swapped for ``replacement``."""
    if index == 0:
        return replacement
    index -= 1
    children = list(expr.children)
    for slot, child in enumerate(children):
        size = child.node_count()
        if index < size:
            children[slot] = replace_at(child, index, replacement)
            return Expression(expr.kind, expr.value, tuple(children))
        index -= size
    raise IndexError("node index out of range")


def _crossed(recipient: Expression, donor: Expression, hard_max_depth: int,
             rng: random.Random) -> Expression:
    for _ in range(_MAX_TRIES):
        i = rng.randrange(recipient.node_count())
        j = rng.randrange(donor.node_count())
        child = replace_at(recipient, i, subtree_at(donor, j))
        if child.depth() <= hard_max_depth:
            return child
    return recipient


def crossover(a: Expression, b: Expression, hard_max_depth: int,
              rng: random.Random) -> tuple[Expression, Expression]:
    """Subtree exchange at uniformly chosen nodes of each parent.

    Each offspring retries its node choice up to three times when it would
    exceed ``hard_max_depth``, then falls back to the corresponding parent.
    Parents are never modified.
    """
    return (
        _crossed(a, b, hard_max_depth, rng),
        _crossed(b, a, hard_max_depth, rng),
    )


def mutate(expr: Expression, params: GrowthParams, rng: random.Random) -> Expression:
    """Replace a uniformly chosen node with a freshly grown subtree.

    Same depth rule as crossover: three retries, then the input unchanged.
    """
    for _ in range(_MAX_TRIES):
        i = rng.randrange(expr.node_count())
        grown = _grow_tree(
            rng.randint(1, MUTATION_GROW_MAX_DEPTH),
            full=False,
            terminal_p=params.terminal_probability,
            rng=rng,
        )
        child = replace_at(expr, i, grown)
        if child.depth() <= params.hard_max_depth:
            return child
    return expr
