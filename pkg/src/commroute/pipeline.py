"""End-to-end orchestration: optimal swap counts, routing, instance generation.

The swap-optimal pipeline runs three phases:

1. solve the gate-coverage program over t steps for increasing t until it
   turns feasible; that first t is the minimal step count, and the solve
   already minimizes swaps there;
2. (free with 1) record the minimal swap count within minimal steps;
3. re-solve with the one-swap-per-step step-count program at a horizon one
   below that swap count: infeasibility certifies the phase-2 count as the
   overall optimum, feasibility hands back the true optimum directly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import ceil

from .bounds import step_lower_bound
from .graphs import Graph, bridged_cycles_graph, grid_graph
from .milp.backends import ScipyBackend, SolverBackend, default_backend
from .milp.models import (
    ModelVariant,
    build_swap_step_model,
    decode_solution,
    solve_min_swaps_at,
)
from .scheduler import ScheduleOutcome, schedule_circuit
from .solutions import (
    RoutedCircuit,
    SwapSolution,
    TmpInstance,
    TokenPlacement,
    is_subgraph_placement,
)

HARDWARE_PRESETS = {
    "grid3x3": lambda: grid_graph(3, 3),
    "twin5cycles": bridged_cycles_graph,
}


@dataclass
class PipelineConfig:
    variant: ModelVariant = ModelVariant.INDICATOR_ONESIDED
    time_limit: float | None = None  # per solve, seconds
    use_step_lower_bound: bool = True
    use_hardware_symmetry: bool = False
    use_complete_fixing: bool | None = None  # None = auto when every pair is a gate
    backend: SolverBackend | None = None

    def __post_init__(self):
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")

    def resolve_backend(self) -> SolverBackend:
        return self.backend or default_backend()


@dataclass
class PipelineResult:
    mt: int | None = None
    ms_at_mt: int | None = None
    ms: int | None = None
    swap_solution: SwapSolution | None = None
    routed_circuit: RoutedCircuit | None = None
    schedule: ScheduleOutcome | None = None
    mt_optimal: bool = False
    ms_at_mt_optimal: bool = False
    ms_optimal: bool = False
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.mt_optimal and self.ms_at_mt_optimal and self.ms_optimal

    def to_dict(self) -> dict:
        return {
            "mt": self.mt,
            "ms_at_mt": self.ms_at_mt,
            "ms": self.ms,
            "mt_optimal": self.mt_optimal,
            "ms_at_mt_optimal": self.ms_at_mt_optimal,
            "ms_optimal": self.ms_optimal,
            "swap_solution": None if self.swap_solution is None else self.swap_solution.to_dict(),
            "routed_circuit": None if self.routed_circuit is None else self.routed_circuit.to_dict(),
            "timings": self.timings,
            "notes": self.notes,
        }


def _compacted(sol: SwapSolution) -> SwapSolution:
    return SwapSolution(sol.initial, tuple(m for m in sol.matchings if m))


def solve_min_swaps(inst: TmpInstance, cfg: PipelineConfig | None = None) -> PipelineResult:
    """Minimal steps, minimal swaps at that step count, and minimal swaps overall.

    On a solver timeout the result carries whatever was established, with
    the optimality flags of the missing pieces left False.
    """
    cfg = cfg or PipelineConfig()
    if not inst.hardware.is_connected():
        raise ValueError("hardware graph must be connected")
    backend = cfg.resolve_backend()
    res = PipelineResult()

    t0 = time.monotonic()
    direct = is_subgraph_placement(inst)
    if direct is not None:
        res.mt = res.ms_at_mt = res.ms = 0
        res.mt_optimal = res.ms_at_mt_optimal = res.ms_optimal = True
        res.swap_solution = SwapSolution(direct, ())
        res.timings["embed"] = time.monotonic() - t0
        res.notes.append("gates already adjacent under a direct placement")
        return res
    res.timings["embed"] = time.monotonic() - t0

    fixing = cfg.use_complete_fixing
    if fixing is None:
        fixing = inst.algorithm_is_complete() and inst.algorithm.n == inst.hardware.n
    symmetry = cfg.use_hardware_symmetry and not fixing

    t_start = step_lower_bound(inst) if cfg.use_step_lower_bound else 0
    t_cap = inst.hardware.n * inst.hardware.n
    phase1 = 0.0
    attempt = None
    t = t_start
    while t <= t_cap:
        a = solve_min_swaps_at(
            inst, t, cfg.variant, backend,
            time_limit=cfg.time_limit, use_symmetry=symmetry, use_fixing=fixing,
        )
        if a.status == "timeout":
            res.timings["find_min_steps"] = phase1 + a.runtime
            res.notes.append(f"solve timed out while probing {t} steps")
            return res
        if a.status == "optimal":
            attempt = a
            break
        phase1 += a.runtime
        t += 1
    if attempt is None:
        raise RuntimeError(f"no feasible step count up to {t_cap}")
    res.timings["find_min_steps"] = phase1
    res.timings["min_swaps_at_min_steps"] = attempt.runtime
    res.mt = t
    res.mt_optimal = True
    res.ms_at_mt = attempt.swaps
    res.ms_at_mt_optimal = True
    res.swap_solution = _compacted(attempt.solution)

    if res.ms_at_mt == res.mt:
        res.ms = res.ms_at_mt
        res.ms_optimal = True
        res.notes.append("swap count equals step count, already optimal")
        return res

    target = res.ms_at_mt - 1
    t0 = time.monotonic()
    model = build_swap_step_model(inst, steps=target)
    if symmetry:
        from .milp.models import add_hardware_symmetry

        add_hardware_symmetry(model, inst, steps=target)
    if fixing:
        from .milp.models import add_complete_placement_fixing

        add_complete_placement_fixing(model, inst, steps=target)
    step_result = backend.solve(model, time_limit=cfg.time_limit)
    res.timings["min_swaps_overall"] = time.monotonic() - t0
    if step_result.status == "infeasible":
        res.ms = res.ms_at_mt
        res.ms_optimal = True
        res.notes.append(
            f"no solution with fewer swaps fits in {target} single-swap steps"
        )
        return res
    if not step_result.is_optimal:
        res.notes.append(f"step-count solve ended with status {step_result.status}")
        return res
    res.ms = int(round(step_result.objective))
    res.ms_optimal = True
    res.swap_solution = _compacted(decode_solution(inst, target + 1, step_result))
    return res


def route(inst: TmpInstance, cfg: PipelineConfig | None = None) -> PipelineResult:
    """solve_min_swaps, then pack gates into circuit layers."""
    cfg = cfg or PipelineConfig()
    res = solve_min_swaps(inst, cfg)
    if res.swap_solution is None:
        return res
    t0 = time.monotonic()
    outcome = schedule_circuit(
        inst, res.swap_solution, backend=cfg.resolve_backend(), time_limit=cfg.time_limit
    )
    res.timings["schedule"] = time.monotonic() - t0
    res.schedule = outcome
    res.routed_circuit = outcome.circuit
    return res


def generate_instance(hardware: str | Graph, density: float, seed: int) -> TmpInstance:
    """Seeded random gate set over a preset or custom hardware graph.

    Draws ceil(n(n-1)/2 * density) distinct token pairs, retrying up to
    1000 times for a connected gate graph and otherwise keeping the last
    draw.
    """
    if isinstance(hardware, str):
        try:
            h = HARDWARE_PRESETS[hardware]()
        except KeyError:
            raise ValueError(
                f"unknown hardware preset {hardware!r}; "
                f"available: {sorted(HARDWARE_PRESETS)}"
            ) from None
    else:
        h = hardware
    if not 0.0 < density <= 1.0:
        raise ValueError("density must be in (0, 1]")
    n = h.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = ceil(len(pairs) * density)
    rng = random.Random(seed)
    algorithm = None
    for _ in range(1000):
        algorithm = Graph(n, rng.sample(pairs, m))
        if algorithm.is_connected():
            break
    assert algorithm is not None
    return TmpInstance(h, algorithm)


def circuit_ingest(text: str, hardware: Graph) -> TmpInstance:
    """Parse a gate list (one "p q" pair per line) into an instance.

    Lines starting with # are comments. Qubit labels are arbitrary
    non-space words, numbered by first appearance; repeated pairs collapse
    into one gate.
    """
    labels: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two qubit labels, got {raw!r}")
        ids = []
        for part in parts:
            if part not in labels:
                labels[part] = len(labels)
            ids.append(labels[part])
        a, b = ids
        if a == b:
            raise ValueError(f"line {lineno}: gate on a single qubit pair {raw!r}")
        edges.add((min(a, b), max(a, b)))
    algorithm = Graph(len(labels), sorted(edges))
    return TmpInstance(hardware, algorithm)
