"""Interactive evolution of vertex-displacement shaders for 3D models."""

from .evolution import (
    EvolutionConfig,
    Individual,
    Population,
    SampleGrid,
    assign_fitness,
    build_sample_grid,
    display_subset,
    expression_distance,
    init_population,
    inject,
    next_generation,
)
from .expr import Env, Expression, ParseError, evaluate, parse, serialize
from .genetics import GrowthParams, crossover, mutate, random_expression
from .shader import ShaderArtifact, emit_expression, emit_vertex_shader, lint_shader
from .simulate import ConvergenceTrace, run_simulation, simulated_user_pick
from .store import Store, TransformationRecord, ModelAsset, validate_model

__version__ = "0.1.0"
