"""Interactive GA engine.

The population holds 100 expression genomes by default; nine candidates at a
time are shown to whoever is steering (a person through the web UI, or the
simulated user in the headless harness).  Fitness is interpolated from the
steering selections: every member's distance is the least-squares difference
to the nearest selection, summed over a 10x10x10x10 grid of evaluation
points spanning [-10, 10] on each of x, y, z, time.  Lower distance is
better.  Reproduction is tournament selection, subtree crossover, and
subtree mutation, with every selection copied unchanged into the next
generation (elitism).

All randomness flows through a caller-owned ``random.Random``, so a whole
evolutionary trajectory is a pure function of (seed, config, selections).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .expr import Expression, evaluate_on_grid, serialize
from .genetics import GrowthParams, crossover, mutate, random_expression


@dataclass(frozen=True)
class EvolutionConfig:
    population_size: int = 100
    display_count: int = 9
    crossover_prob: float = 0.9
    mutation_prob: float = 0.1
    tournament_size: int = 3
    growth: GrowthParams = field(default_factory=GrowthParams)
    grid_points_per_axis: int = 10
    grid_interval: tuple[float, float] = (-10.0, 10.0)
    per_point_cap: float = 1e6

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be positive")
        if not 1 <= self.display_count <= self.population_size:
            raise ValueError("display_count must be in [1, population_size]")
        for name in ("crossover_prob", "mutation_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be a fraction")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be positive")
        if self.grid_points_per_axis < 2:
            raise ValueError("grid_points_per_axis must be at least 2")
        lo, hi = self.grid_interval
        if not lo < hi:
            raise ValueError("grid_interval must satisfy lo < hi")
        if not (self.per_point_cap > 0 and np.isfinite(self.per_point_cap)):
            raise ValueError("per_point_cap must be positive and finite")


@dataclass(frozen=True)
class Individual:
    """A genome plus, once assigned, its distance to the nearest selection."""

    genome: Expression
    distance: float | None = None

    def __post_init__(self):
        if self.distance is not None:
            if not (np.isfinite(self.distance) and self.distance >= 0):
                raise ValueError("distance must be finite and non-negative")


@dataclass(frozen=True)
class Population:
    members: tuple[Individual, ...]
    generation: int = 0


@dataclass(frozen=True)
class SampleGrid:
    """Cartesian evaluation grid shared by x, y, z, time.

    ``axis_values`` holds the per-axis sample positions; ``xs``/``ys``/
    ``zs``/``ts`` are the flattened coordinates of every grid point, in a
    fixed order (x varies slowest) so distance sums are reproducible.
    """

    axis_values: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    zs: np.ndarray
    ts: np.ndarray
    per_point_cap: float

    @property
    def point_count(self) -> int:
        return self.xs.size


def build_sample_grid(config: EvolutionConfig) -> SampleGrid:
    """Evenly spaced inclusive-endpoint grid, grid_points_per_axis^4 points."""
    lo, hi = config.grid_interval
    axis = np.linspace(lo, hi, config.grid_points_per_axis)
    xs, ys, zs, ts = (
        g.ravel() for g in np.meshgrid(axis, axis, axis, axis, indexing="ij")
    )
    for arr in (axis, xs, ys, zs, ts):
        arr.setflags(write=False)
    return SampleGrid(axis, xs, ys, zs, ts, config.per_point_cap)


def grid_values(expr: Expression, grid: SampleGrid) -> np.ndarray:
    """Expression values at every grid point (may contain NaN/±inf)."""
    return evaluate_on_grid(expr, grid.xs, grid.ys, grid.zs, grid.ts)


def capped_square_sum(va: np.ndarray, vb: np.ndarray, cap: float) -> float:
    with np.errstate(all="ignore"):
        sq = np.square(va - vb)
    sq = np.where(np.isfinite(sq), sq, cap)
    return float(np.sum(np.minimum(sq, cap)))


def expression_distance(a: Expression, b: Expression, grid: SampleGrid) -> float:
    """Least-squares distance between two expressions over the grid.

    Per-point squared differences are capped at ``grid.per_point_cap`` and
    non-finite differences count as the cap, so the result is always finite.
    Structurally identical expressions are at distance 0 by definition, even
    where their (shared) values are non-finite.
    """
    if serialize(a) == serialize(b):
        return 0.0
    return capped_square_sum(grid_values(a, grid), grid_values(b, grid),
                              grid.per_point_cap)


def init_population(config: EvolutionConfig, rng: random.Random) -> Population:
    members = tuple(
        Individual(random_expression(config.growth, rng))
        for _ in range(config.population_size)
    )
    return Population(members, generation=0)


def _pick_display(order: list[int], members: tuple[Individual, ...],
                  count: int) -> list[int]:
    # Distinct serializations first, then pad with duplicates in order.
    chosen: list[int] = []
    skipped: list[int] = []
    seen: set[str] = set()
    for i in order:
        text = serialize(members[i].genome)
        if text in seen:
            skipped.append(i)
            continue
        seen.add(text)
        chosen.append(i)
        if len(chosen) == count:
            return chosen
    for i in skipped:
        if len(chosen) == count:
            break
        chosen.append(i)
    return chosen


def display_subset(population: Population,
                   config: EvolutionConfig) -> list[tuple[int, Individual]]:
    """The display_count members to show, as (member_index, Individual) pairs.

    With fitness assigned: lowest-distance members, preferring structurally
    distinct serializations, ties broken by lower index.  Without fitness
    (a fresh or just-reproduced population): first structurally distinct
    members in index order.  Either way, duplicates pad the list when fewer
    distinct forms exist than slots.
    """
    members = population.members
    if len(members) < config.display_count:
        raise ValueError("population smaller than display_count")
    if any(m.distance is not None for m in members):
        order = sorted(
            range(len(members)),
            key=lambda i: (
                members[i].distance if members[i].distance is not None else np.inf,
                i,
            ),
        )
    else:
        order = list(range(len(members)))
    return [(i, members[i]) for i in
            _pick_display(order, members, config.display_count)]


def assign_fitness(population: Population, selections: list[Expression],
                   grid: SampleGrid) -> Population:
    """Distance of every member to its nearest selection.

    Members structurally equal to a selection get distance 0.  Raises
    ``ValueError`` on an empty selection list.
    """
    if not selections:
        raise ValueError("at least one selection is required")
    cache: dict[str, np.ndarray] = {}

    def values(text: str, e: Expression) -> np.ndarray:
        if text not in cache:
            cache[text] = grid_values(e, grid)
        return cache[text]

    sel_texts = [serialize(s) for s in selections]
    sel_values = [values(t, s) for t, s in zip(sel_texts, selections)]
    sel_set = set(sel_texts)

    scored = []
    for member in population.members:
        text = serialize(member.genome)
        if text in sel_set:
            dist = 0.0
        else:
            mv = values(text, member.genome)
            dist = min(
                capped_square_sum(mv, sv, grid.per_point_cap) for sv in sel_values
            )
        scored.append(Individual(member.genome, dist))
    return Population(tuple(scored), population.generation)


def _tournament(members: tuple[Individual, ...], size: int,
                rng: random.Random) -> Expression:
    best: int | None = None
    for _ in range(size):
        i = rng.randrange(len(members))
        if best is None or (members[i].distance, i) < (members[best].distance, best):
            best = i
    return members[best].genome


def next_generation(population: Population, selections: list[Expression],
                    config: EvolutionConfig, rng: random.Random) -> Population:
    """One reproduction step: elitism, tournaments, crossover, mutation.

    Every selection is copied unchanged into the new population, at the
    head so the next display subset always includes it.  All distances are
    cleared; the generation counter advances by one.
    """
    if any(m.distance is None for m in population.members):
        raise ValueError("assign_fitness must run before next_generation")
    if not selections:
        raise ValueError("at least one selection is required")
    if len(selections) > config.population_size:
        raise ValueError("more selections than population slots")

    hard = config.growth.hard_max_depth
    offspring = [Individual(s) for s in selections]
    while len(offspring) < config.population_size:
        parent_a = _tournament(population.members, config.tournament_size, rng)
        parent_b = _tournament(population.members, config.tournament_size, rng)
        if rng.random() < config.crossover_prob:
            child_a, child_b = crossover(parent_a, parent_b, hard, rng)
        else:
            child_a, child_b = parent_a, parent_b
        for child in (child_a, child_b):
            if len(offspring) == config.population_size:
                break
            if rng.random() < config.mutation_prob:
                child = mutate(child, config.growth, rng)
            offspring.append(Individual(child))
    return Population(tuple(offspring), population.generation + 1)


def inject(population: Population, expr: Expression,
           rng: random.Random) -> Population:
    """Replace the worst member (or, without fitness, a random one) with expr."""
    members = list(population.members)
    if any(m.distance is not None for m in members):
        worst = max(
            range(len(members)),
            key=lambda i: members[i].distance
            if members[i].distance is not None else -np.inf,
        )
    else:
        worst = rng.randrange(len(members))
    members[worst] = Individual(expr)
    return Population(tuple(members), population.generation)
