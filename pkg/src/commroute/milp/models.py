"""Builders translating a routing instance into MilpModel programs.

Conventions shared by every builder here:

* A horizon is T placements (bijections token -> node), hence T-1 swap
  steps; pass either T or steps. Placement indices run 1..T to keep
  variable names aligned with that convention.
* Tokens are 0..n-1 over the hardware size n; tokens past the algorithm
  size are padding and appear in no gate constraint.
* Variables, in declaration order: w (token p sits on node i at placement
  t), x (token p rides the arc i -> j between placements t and t+1, with
  j = i allowed as a stay arc), then per-gate linearization variables,
  then step indicators. All orderings are sorted, so a rebuilt model is
  byte-identical.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..graphs import Graph, automorphism_orbits
from ..polytope import block_covering_constraints
from ..solutions import SwapSolution, TmpInstance, TokenPlacement
from .backends import SolveResult, SolverBackend, default_backend
from .model import MilpModel


class ModelVariant(enum.Enum):
    """How the "tokens p and q meet at placement t" condition is linearized."""

    PAIR_MCCORMICK = "pair-mccormick"  # variable per ordered adjacent node pair, product rows
    PAIR_AGGREGATED = "pair-aggregated"  # pair variables, neighborhood-aggregated caps
    INDICATOR_FULL = "indicator-full"  # one meeting indicator, both lifted families
    INDICATOR_ONESIDED = "indicator-onesided"  # indicator, only the rows that cap it

    @classmethod
    def from_string(cls, s: str) -> ModelVariant:
        for v in cls:
            if v.value == s or v.name == s.upper().replace("-", "_"):
                return v
        raise ValueError(f"unknown model variant {s!r}")


def _resolve_horizon(T: int | None, steps: int | None) -> int:
    if (T is None) == (steps is None):
        raise ValueError("pass exactly one of T (placements) or steps (= T-1)")
    horizon = T if T is not None else steps + 1
    if horizon < 1:
        raise ValueError("need at least one placement")
    return horizon


def _w(t: int, p: int, i: int) -> str:
    return f"w_t{t}_p{p}_n{i}"


def _x(t: int, p: int, i: int, j: int) -> str:
    return f"x_t{t}_p{p}_n{i}_n{j}"


def _y(t: int, g: int, i: int, j: int) -> str:
    return f"y_t{t}_g{g}_n{i}_n{j}"


def _z(t: int, g: int) -> str:
    return f"z_t{t}_g{g}"


def build_base(inst: TmpInstance, T: int | None = None, *, steps: int | None = None) -> MilpModel:
    """Placement and routing skeleton, objective = number of swaps.

    Gate coverage is NOT included; add_gate_constraints layers it on.
    """
    T = _resolve_horizon(T, steps)
    h = inst.hardware
    n = h.n
    model = MilpModel(name=f"route_n{n}_T{T}")
    for t in range(1, T + 1):
        for p in range(n):
            for i in range(n):
                model.add_var(_w(t, p, i))
    arcs = [(i, j) for i in range(n) for j in sorted([i, *h.adjacency[i]])]
    for t in range(1, T):
        for p in range(n):
            for i, j in arcs:
                model.add_var(_x(t, p, i, j))
    for t in range(1, T + 1):
        for i in range(n):
            model.add_constr(
                f"node_full_t{t}_n{i}", [(_w(t, p, i), 1.0) for p in range(n)], "==", 1.0
            )
    for t in range(1, T + 1):
        for p in range(n):
            model.add_constr(
                f"token_placed_t{t}_p{p}", [(_w(t, p, i), 1.0) for i in range(n)], "==", 1.0
            )
    for t in range(1, T):
        for p in range(n):
            for i in range(n):
                out = [(_x(t, p, i, j), 1.0) for j in sorted([i, *h.adjacency[i]])]
                model.add_constr(
                    f"flow_out_t{t}_p{p}_n{i}", out + [(_w(t, p, i), -1.0)], "==", 0.0
                )
    for t in range(1, T):
        for p in range(n):
            for i in range(n):
                inc = [(_x(t, p, j, i), 1.0) for j in sorted([i, *h.adjacency[i]])]
                model.add_constr(
                    f"flow_in_t{t}_p{p}_n{i}", inc + [(_w(t + 1, p, i), -1.0)], "==", 0.0
                )
    for t in range(1, T):
        for u, v in h.edges:
            terms = [(_x(t, p, u, v), 1.0) for p in range(n)]
            terms += [(_x(t, p, v, u), -1.0) for p in range(n)]
            model.add_constr(f"swap_balance_t{t}_n{u}_n{v}", terms, "==", 0.0)
    objective = [
        (_x(t, p, i, j), 0.5)
        for t in range(1, T)
        for p in range(n)
        for i, j in arcs
        if i != j
    ]
    model.set_objective(objective)
    return model


def _ordered_adjacent(h: Graph) -> list[tuple[int, int]]:
    return [(i, j) for i in range(h.n) for j in sorted(h.adjacency[i])]


def add_gate_constraints(
    model: MilpModel,
    inst: TmpInstance,
    T: int | None = None,
    variant: ModelVariant = ModelVariant.INDICATOR_ONESIDED,
    *,
    steps: int | None = None,
) -> MilpModel:
    """Layer gate coverage onto a build_base model, per the chosen variant."""
    T = _resolve_horizon(T, steps)
    h = inst.hardware
    gates = list(inst.connections)
    pairs = _ordered_adjacent(h)
    if variant in (ModelVariant.PAIR_MCCORMICK, ModelVariant.PAIR_AGGREGATED):
        for t in range(1, T + 1):
            for g in range(len(gates)):
                for i, j in pairs:
                    model.add_var(_y(t, g, i, j))
        for g, (p, q) in enumerate(gates):
            cover = [
                (_y(t, g, i, j), 1.0) for t in range(1, T + 1) for i, j in pairs
            ]
            model.add_constr(f"gate_cover_g{g}", cover, ">=", 1.0)
        if variant is ModelVariant.PAIR_MCCORMICK:
            for t in range(1, T + 1):
                for g, (p, q) in enumerate(gates):
                    for i, j in pairs:
                        y = _y(t, g, i, j)
                        model.add_constr(
                            f"y_le_first_t{t}_g{g}_n{i}_n{j}",
                            [(y, 1.0), (_w(t, p, i), -1.0)], "<=", 0.0,
                        )
                        model.add_constr(
                            f"y_le_second_t{t}_g{g}_n{i}_n{j}",
                            [(y, 1.0), (_w(t, q, j), -1.0)], "<=", 0.0,
                        )
                        model.add_constr(
                            f"y_ge_overlap_t{t}_g{g}_n{i}_n{j}",
                            [(_w(t, p, i), 1.0), (_w(t, q, j), 1.0), (y, -1.0)], "<=", 1.0,
                        )
        else:
            for t in range(1, T + 1):
                for g, (p, q) in enumerate(gates):
                    for i in range(h.n):
                        nbrs = sorted(h.adjacency[i])
                        if not nbrs:
                            continue
                        model.add_constr(
                            f"y_out_cap_t{t}_g{g}_n{i}",
                            [(_y(t, g, i, j), 1.0) for j in nbrs] + [(_w(t, p, i), -1.0)],
                            "<=", 0.0,
                        )
                        model.add_constr(
                            f"y_in_cap_t{t}_g{g}_n{i}",
                            [(_y(t, g, j, i), 1.0) for j in nbrs] + [(_w(t, q, i), -1.0)],
                            "<=", 0.0,
                        )
        return model

    covering = block_covering_constraints(h)
    if variant is ModelVariant.INDICATOR_ONESIDED:
        covering = [c for c in covering if c.kind == "miss"]
    for t in range(1, T + 1):
        for g in range(len(gates)):
            model.add_var(_z(t, g))
    for g in range(len(gates)):
        model.add_constr(
            f"gate_cover_g{g}", [(_z(t, g), 1.0) for t in range(1, T + 1)], ">=", 1.0
        )
    for t in range(1, T + 1):
        for g, (p, q) in enumerate(gates):
            for cc in covering:
                terms = [(_w(t, p, j), c) for j, c in enumerate(cc.x_coeffs) if c != 0.0]
                terms += [(_w(t, q, j), c) for j, c in enumerate(cc.y_coeffs) if c != 0.0]
                terms.append((_z(t, g), cc.z_coeff))
                model.add_constr(
                    f"z_{cc.kind}_{cc.side}_t{t}_g{g}_n{cc.node}", terms, "<=", cc.rhs
                )
    return model


def build_variant(
    inst: TmpInstance,
    T: int | None = None,
    variant: ModelVariant = ModelVariant.INDICATOR_ONESIDED,
    *,
    steps: int | None = None,
) -> MilpModel:
    T = _resolve_horizon(T, steps)
    return add_gate_constraints(build_base(inst, T), inst, T, variant)


def add_hardware_symmetry(model: MilpModel, inst: TmpInstance, T: int | None = None, *, steps: int | None = None) -> MilpModel:
    """Pin token 0 near one representative per hardware-automorphism orbit.

    At the middle placement token 0 must sit on a representative node, and
    at other placements it cannot sit farther from the representative set
    than the elapsed steps allow. Off by default; never changes the
    optimal objective, only prunes mirrored solutions.
    """
    T = _resolve_horizon(T, steps)
    h = inst.hardware
    reps = sorted(min(orbit) for orbit in automorphism_orbits(h))
    k = max(1, T // 2)
    model.add_constr(
        f"sym_anchor_t{k}", [(_w(k, 0, i), 1.0) for i in reps], "==", 1.0
    )
    dist = h.distances
    for t in range(1, T + 1):
        for j in range(h.n):
            if min(dist[i][j] for i in reps) >= 1 + abs(k - t):
                model.fix_var(_w(t, 0, j), 0.0)
    return model


def add_complete_placement_fixing(
    model: MilpModel,
    inst: TmpInstance,
    T: int | None = None,
    placement: TokenPlacement | None = None,
    *,
    steps: int | None = None,
) -> MilpModel:
    """Fix the full middle placement; sound only for all-pairs gate sets.

    When every token pair is a gate, any full placement can be designated
    as the middle one without losing optimal solutions, and tokens can
    then be excluded from nodes farther away than the remaining steps.
    """
    T = _resolve_horizon(T, steps)
    if not inst.algorithm_is_complete() or inst.algorithm.n != inst.hardware.n:
        raise ValueError(
            "full-placement fixing needs a gate between every pair of tokens"
        )
    n = inst.hardware.n
    if placement is None:
        placement = TokenPlacement.identity(n)
    k = max(1, T // 2)
    dist = inst.hardware.distances
    for p in range(n):
        model.fix_var(_w(k, p, placement.node_of(p)), 1.0)
    for t in range(1, T + 1):
        for p in range(n):
            home = placement.node_of(p)
            for j in range(n):
                if dist[home][j] >= 1 + abs(k - t):
                    model.fix_var(_w(t, p, j), 0.0)
    return model


def build_swap_step_model(inst: TmpInstance, T: int | None = None, *, steps: int | None = None) -> MilpModel:
    """Minimize active steps with at most one swap each.

    The optimum over T placements equals the minimum swap count achievable
    with T-1 steps when one-swap-per-step solutions are allowed to idle:
    step indicators are ordered so active steps form a prefix, and no gate
    may be newly covered after an idle step.
    """
    T = _resolve_horizon(T, steps)
    model = build_variant(inst, T, ModelVariant.INDICATOR_ONESIDED)
    h = inst.hardware
    n = h.n
    gates = list(inst.connections)
    for t in range(1, T):
        model.add_var(f"s_t{t}")
    for t in range(1, T):
        terms = [
            (_x(t, p, i, j), 1.0)
            for p in range(n)
            for i in range(n)
            for j in sorted(h.adjacency[i])
        ]
        terms.append((f"s_t{t}", -2.0))
        model.add_constr(f"swap_count_t{t}", terms, "==", 0.0)
    for t in range(1, T - 1):
        model.add_constr(
            f"steps_ordered_t{t}", [(f"s_t{t + 1}", 1.0), (f"s_t{t}", -1.0)], "<=", 0.0
        )
    for t in range(1, T):
        for g in range(len(gates)):
            model.add_constr(
                f"late_meeting_t{t}_g{g}",
                [(_z(t + 1, g), 1.0), (f"s_t{t}", -1.0)], "<=", 0.0,
            )
    model.set_objective([(f"s_t{t}", 1.0) for t in range(1, T)])
    return model


class DecodeError(ValueError):
    pass


def decode_solution(inst: TmpInstance, T: int, result: SolveResult) -> SwapSolution:
    """Read placements from w values and matchings from x arcs.

    Raises DecodeError when the values do not describe placements or when
    arc moves fail to pair up into swaps.
    """
    if result.values is None:
        raise DecodeError(f"no variable values to decode (status {result.status})")
    vals = result.values
    n = inst.hardware.n
    placements = []
    for t in range(1, T + 1):
        pos = []
        for p in range(n):
            nodes = [i for i in range(n) if vals[_w(t, p, i)] > 0.5]
            if len(nodes) != 1:
                raise DecodeError(f"token {p} sits on {len(nodes)} nodes at placement {t}")
            pos.append(nodes[0])
        placements.append(TokenPlacement(tuple(pos)))
    matchings = []
    for t in range(1, T):
        moves = {}
        for p in range(n):
            i = placements[t - 1].node_of(p)
            j = placements[t].node_of(p)
            key = _x(t, p, i, j)
            if key not in vals or vals[key] < 0.5:
                raise DecodeError(f"placement change of token {p} at step {t} has no arc")
            if i != j:
                moves[i] = j
        edges = set()
        for i, j in moves.items():
            if moves.get(j) != i:
                raise DecodeError(f"move {i}->{j} at step {t} is not part of a swap")
            edges.add((min(i, j), max(i, j)))
        matchings.append(tuple(sorted(edges)))
    return SwapSolution(placements[0], tuple(matchings))


@dataclass
class SolveAttempt:
    status: str  # backend status: optimal | infeasible | timeout | ...
    swaps: int | None
    solution: SwapSolution | None
    runtime: float


def _integral_objective(value: float, tol: float = 1e-6) -> int:
    r = round(value)
    if abs(value - r) > tol:
        raise DecodeError(f"objective {value} is not integral within {tol}")
    return int(r)


def solve_min_swaps_at(
    inst: TmpInstance,
    steps: int,
    variant: ModelVariant = ModelVariant.INDICATOR_ONESIDED,
    backend: SolverBackend | None = None,
    time_limit: float | None = None,
    use_symmetry: bool = False,
    use_fixing: bool = False,
) -> SolveAttempt:
    """Minimum swap count over exactly `steps` swap steps, with solution.

    status "infeasible" means no solution covers all gates within the
    horizon; swaps/solution are then None.
    """
    if use_symmetry and use_fixing:
        raise ValueError(
            "symmetry anchoring and full-placement fixing both pin token "
            "positions and can contradict each other; enable at most one"
        )
    T = steps + 1
    model = build_variant(inst, T, variant)
    if use_symmetry:
        add_hardware_symmetry(model, inst, T)
    if use_fixing:
        add_complete_placement_fixing(model, inst, T)
    backend = backend or default_backend()
    result = backend.solve(model, time_limit=time_limit)
    if not result.is_optimal:
        return SolveAttempt(result.status, None, None, result.runtime)
    swaps = _integral_objective(result.objective)
    solution = decode_solution(inst, T, result)
    return SolveAttempt("optimal", swaps, solution, result.runtime)
