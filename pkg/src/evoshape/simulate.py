"""Headless simulation of the interactive loop.

A target expression stands in for the human: each generation the "user"
picks, from the nine displayed candidates, the one whose grid values are
closest to the target's.  The run records a convergence trace suitable for
desk-scale analysis.  Because the previous pick is always carried into the
next generation unchanged and stays in the display, the pick's distance to
the target can never get worse.

CLI::

    evosim --target "(sin y)" --generations 30 --seed 7 [--pop-size 100]
           [--display 9] [--pick-top-k 1] [--out trace.csv]
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from dataclasses import dataclass

from .evolution import (
    EvolutionConfig,
    SampleGrid,
    capped_square_sum,
    assign_fitness,
    build_sample_grid,
    display_subset,
    expression_distance,
    grid_values,
    init_population,
    next_generation,
)
from .expr import Expression, ParseError, parse, serialize

CSV_COLUMNS = ("generation", "chosen_best_distance", "population_min_distance",
               "chosen_expression")


@dataclass(frozen=True)
class TraceRow:
    generation: int
    chosen_best_distance: float
    population_min_distance: float
    chosen_expression: str


@dataclass(frozen=True)
class ConvergenceTrace:
    target: str
    rows: tuple[TraceRow, ...]

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([row.generation, row.chosen_best_distance,
                             row.population_min_distance, row.chosen_expression])

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def simulated_user_pick(candidates: list[Expression], target: Expression,
                        grid: SampleGrid) -> int:
    """Display index of the candidate closest to the target (ties: lowest)."""
    if not candidates:
        raise ValueError("no candidates to pick from")
    distances = [expression_distance(c, target, grid) for c in candidates]
    return min(range(len(candidates)), key=lambda i: (distances[i], i))


def run_simulation(target_text: str, generations: int, seed: int,
                   config: EvolutionConfig | None = None,
                   pick_top_k: int = 1) -> ConvergenceTrace:
    """Drive the full loop for ``generations`` steps against a target.

    Deterministic for a given (seed, config, target).  Raises
    :class:`evoshape.expr.ParseError` on a malformed target.
    """
    target = parse(target_text)
    if generations < 1:
        raise ValueError("generations must be at least 1")
    if pick_top_k < 1:
        raise ValueError("pick_top_k must be at least 1")
    config = config or EvolutionConfig()

    rng = random.Random(seed)
    grid = build_sample_grid(config)
    population = init_population(config, rng)
    target_text_canonical = serialize(target)
    target_values = grid_values(target, grid)

    def to_target(expr: Expression) -> float:
        # Same computation as expression_distance, with the target's grid
        # values hoisted out of the per-member loop.
        if serialize(expr) == target_text_canonical:
            return 0.0
        return capped_square_sum(grid_values(expr, grid), target_values,
                                  grid.per_point_cap)

    rows = []
    for _ in range(generations):
        subset = display_subset(population, config)
        shown = [ind.genome for _, ind in subset]
        best = simulated_user_pick(shown, target, grid)
        if pick_top_k == 1:
            picks = [best]
        else:
            ranked = sorted(range(len(shown)),
                            key=lambda i: (to_target(shown[i]), i))
            picks = ranked[:pick_top_k]
        selections = [shown[i] for i in picks]

        member_distances = [to_target(m.genome) for m in population.members]
        rows.append(TraceRow(
            generation=population.generation,
            chosen_best_distance=member_distances[subset[best][0]],
            population_min_distance=min(member_distances),
            chosen_expression=serialize(shown[best]),
        ))

        scored = assign_fitness(population, selections, grid)
        population = next_generation(scored, selections, config, rng)
    return ConvergenceTrace(target_text, tuple(rows))


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evosim",
        description="Run the evolution loop headlessly against a target "
                    "expression and write a convergence trace.",
    )
    parser.add_argument("--target", required=True,
                        help='target expression, e.g. "(sin y)"')
    parser.add_argument("--generations", type=int, required=True)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--pop-size", type=int, default=100)
    parser.add_argument("--display", type=int, default=9)
    parser.add_argument("--pick-top-k", type=int, default=1)
    parser.add_argument("--out", default=None,
                        help="CSV output path (default: stdout)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if args.generations < 1:
        parser.error("--generations must be at least 1")
    if args.seed < 0:
        parser.error("--seed must be non-negative")
    if args.pick_top_k < 1:
        parser.error("--pick-top-k must be at least 1")
    try:
        config = EvolutionConfig(population_size=args.pop_size,
                                 display_count=args.display)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        trace = run_simulation(args.target, args.generations, args.seed,
                               config, args.pick_top_k)
    except ParseError as exc:
        parser.error(f"invalid --target: {exc}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            trace.write_csv(fh)
    else:
        sys.stdout.write(trace.to_csv_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
