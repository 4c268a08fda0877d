"""Problem instances, token placements, swap solutions, routed circuits.

Conventions used throughout the package:
 - hardware nodes and tokens are 0-based contiguous ints
 - a placement maps token -> node and is always a bijection; when the
   algorithm has fewer qubits than the hardware has nodes, the trailing
   token ids act as dummies with no connections
 - a swap step is a matching of the hardware graph, applied simultaneously
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .graphs import Graph, _normalize_edge

Edge = tuple[int, int]
Matching = tuple[Edge, ...]


@dataclass(frozen=True)
class TmpInstance:
    """A routing instance: hardware graph plus algorithm (interaction) graph."""

    hardware: Graph
    algorithm: Graph

    def __post_init__(self):
        if self.algorithm.n > self.hardware.n:
            raise ValueError(
                f"algorithm has {self.algorithm.n} qubits but hardware only "
                f"{self.hardware.n} nodes"
            )

    @property
    def num_nodes(self) -> int:
        return self.hardware.n

    @property
    def num_tokens(self) -> int:
        # dummies pad the token set so placements stay bijections
        return self.hardware.n

    @property
    def num_real_tokens(self) -> int:
        return self.algorithm.n

    @property
    def connections(self) -> tuple[Edge, ...]:
        return self.algorithm.edges

    def algorithm_is_complete(self) -> bool:
        """True when every token pair interacts (no dummies, complete graph)."""
        return self.algorithm.n == self.hardware.n and self.algorithm.is_complete()

    def to_dict(self) -> dict:
        return {"hardware": self.hardware.to_dict(), "algorithm": self.algorithm.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> TmpInstance:
        if not isinstance(data, dict) or "hardware" not in data or "algorithm" not in data:
            raise ValueError("instance object needs 'hardware' and 'algorithm'")
        return cls(Graph.from_dict(data["hardware"]), Graph.from_dict(data["algorithm"]))


@dataclass(frozen=True)
class TokenPlacement:
    """Bijection token -> node, stored as a tuple indexed by token."""

    pos: tuple[int, ...]

    def __post_init__(self):
        n = len(self.pos)
        if sorted(self.pos) != list(range(n)):
            raise ValueError(f"placement {self.pos} is not a bijection on 0..{n - 1}")

    @classmethod
    def identity(cls, n: int) -> TokenPlacement:
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.pos)

    def node_of(self, token: int) -> int:
        return self.pos[token]

    @cached_property
    def token_at(self) -> tuple[int, ...]:
        inv = [0] * len(self.pos)
        for token, node in enumerate(self.pos):
            inv[node] = token
        return tuple(inv)

    def apply_matching(self, matching: Matching) -> TokenPlacement:
        return apply_matching(self, matching)


def check_matching(matching: Matching) -> None:
    """Raise if the edge set is not a matching (shared endpoints, self loops)."""
    seen: set[int] = set()
    for u, v in matching:
        if u == v:
            raise ValueError(f"swap {u, v} is a self loop")
        if u in seen or v in seen:
            raise ValueError(f"edges {matching} share endpoint(s), not a matching")
        seen.update((u, v))


def apply_matching(placement: TokenPlacement, matching: Matching) -> TokenPlacement:
    """Swap the tokens on each matched node pair, all pairs at once."""
    check_matching(matching)
    pos = list(placement.pos)
    tok = placement.token_at
    for u, v in matching:
        if not (0 <= u < len(pos) and 0 <= v < len(pos)):
            raise ValueError(f"swap {u, v} out of range")
        pos[tok[u]], pos[tok[v]] = v, u
    return TokenPlacement(tuple(pos))


@dataclass(frozen=True)
class SwapSolution:
    """Initial placement plus one matching per swap step."""

    initial: TokenPlacement
    matchings: tuple[Matching, ...]

    @property
    def steps(self) -> int:
        return len(self.matchings)

    @property
    def swaps(self) -> int:
        return sum(len(m) for m in self.matchings)

    def to_dict(self) -> dict:
        return {
            "initial": list(self.initial.pos),
            "matchings": [[list(e) for e in m] for m in self.matchings],
        }

    @classmethod
    def from_dict(cls, data: dict) -> SwapSolution:
        if not isinstance(data, dict) or "initial" not in data or "matchings" not in data:
            raise ValueError("swap solution object needs 'initial' and 'matchings'")
        return cls(
            TokenPlacement(tuple(int(x) for x in data["initial"])),
            tuple(
                tuple(_normalize_edge(int(u), int(v)) for u, v in m)
                for m in data["matchings"]
            ),
        )


def placement_trajectory(solution: SwapSolution) -> list[TokenPlacement]:
    """All placements the solution passes through, initial one included."""
    out = [solution.initial]
    for m in solution.matchings:
        out.append(out[-1].apply_matching(m))
    return out


@dataclass
class SwapValidation:
    valid: bool
    steps: int
    swaps: int
    uncovered: list[Edge] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "steps": self.steps,
            "swaps": self.swaps,
            "uncovered": [list(e) for e in self.uncovered],
            "problems": self.problems,
        }


def covered_connections(inst: TmpInstance, placements: list[TokenPlacement]) -> set[Edge]:
    """Connections realized on some hardware edge by at least one placement."""
    conns = inst.algorithm.edge_set
    covered: set[Edge] = set()
    for f in placements:
        tok = f.token_at
        for u, v in inst.hardware.edges:
            pair = _normalize_edge(tok[u], tok[v])
            if pair in conns:
                covered.add(pair)
    return covered


def validate_swap_solution(inst: TmpInstance, solution: SwapSolution) -> SwapValidation:
    """Structural and coverage diagnostics; never raises on a bad solution."""
    problems: list[str] = []
    n = inst.num_nodes
    if len(solution.initial) != n:
        return SwapValidation(
            False, solution.steps, solution.swaps,
            problems=[f"initial placement has size {len(solution.initial)}, expected {n}"],
        )
    for t, m in enumerate(solution.matchings, start=1):
        try:
            check_matching(m)
        except ValueError as exc:
            problems.append(f"step {t}: {exc}")
            continue
        for e in m:
            if _normalize_edge(*e) not in inst.hardware.edge_set:
                problems.append(f"step {t}: swap {e} is not a hardware edge")
    if problems:
        return SwapValidation(False, solution.steps, solution.swaps, problems=problems)
    placements = placement_trajectory(solution)
    covered = covered_connections(inst, placements)
    uncovered = sorted(set(inst.connections) - covered)
    if uncovered:
        problems.append(f"{len(uncovered)} connection(s) never adjacent")
    return SwapValidation(not problems, solution.steps, solution.swaps, uncovered, problems)


@dataclass(frozen=True)
class CircuitLayer:
    """One depth slot: disjoint swap gates and two-qubit gates on hardware edges."""

    swap_edges: Matching = ()
    gate_edges: Matching = ()

    def to_dict(self) -> dict:
        return {
            "swap_edges": [list(e) for e in self.swap_edges],
            "gate_edges": [list(e) for e in self.gate_edges],
        }


@dataclass(frozen=True)
class RoutedCircuit:
    initial: TokenPlacement
    layers: tuple[CircuitLayer, ...]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def swaps(self) -> int:
        return sum(len(layer.swap_edges) for layer in self.layers)

    def to_dict(self) -> dict:
        return {
            "initial": list(self.initial.pos),
            "layers": [layer.to_dict() for layer in self.layers],
        }

    @classmethod
    def from_dict(cls, data: dict) -> RoutedCircuit:
        if not isinstance(data, dict) or "initial" not in data or "layers" not in data:
            raise ValueError("routed circuit object needs 'initial' and 'layers'")
        layers = tuple(
            CircuitLayer(
                tuple(_normalize_edge(int(u), int(v)) for u, v in layer.get("swap_edges", [])),
                tuple(_normalize_edge(int(u), int(v)) for u, v in layer.get("gate_edges", [])),
            )
            for layer in data["layers"]
        )
        return cls(TokenPlacement(tuple(int(x) for x in data["initial"])), layers)


@dataclass
class CircuitValidation:
    valid: bool
    depth: int
    swaps: int
    problems: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "depth": self.depth,
            "swaps": self.swaps,
            "problems": self.problems,
        }


def validate_routed_circuit(inst: TmpInstance, circuit: RoutedCircuit) -> CircuitValidation:
    """Check layer structure and that every connection runs exactly once."""
    problems: list[str] = []
    n = inst.num_nodes
    if len(circuit.initial) != n:
        return CircuitValidation(
            False, circuit.depth, circuit.swaps,
            [f"initial placement has size {len(circuit.initial)}, expected {n}"],
        )
    f = circuit.initial
    remaining = set(inst.connections)
    for d, layer in enumerate(circuit.layers, start=1):
        combined = tuple(layer.swap_edges) + tuple(layer.gate_edges)
        try:
            check_matching(combined)
        except ValueError as exc:
            problems.append(f"layer {d}: {exc}")
            break
        bad = [e for e in combined if _normalize_edge(*e) not in inst.hardware.edge_set]
        if bad:
            problems.append(f"layer {d}: non-hardware edge(s) {bad}")
            break
        tok = f.token_at
        for u, v in layer.gate_edges:
            pair = _normalize_edge(tok[u], tok[v])
            if pair not in inst.algorithm.edge_set:
                problems.append(f"layer {d}: gate on {u, v} acts on tokens {pair}, not a connection")
            elif pair not in remaining:
                problems.append(f"layer {d}: connection {pair} executed twice")
            else:
                remaining.discard(pair)
        f = f.apply_matching(layer.swap_edges)
    if remaining:
        problems.append(f"{len(remaining)} connection(s) never executed")
    return CircuitValidation(not problems, circuit.depth, circuit.swaps, problems)


def is_subgraph_placement(inst: TmpInstance) -> TokenPlacement | None:
    """A placement realizing every connection at once, or None.

    Backtracking embedding of the algorithm graph into the hardware graph;
    dummy tokens fill the leftover nodes in ascending order.
    """
    a, h = inst.algorithm, inst.hardware
    if a.num_edges > h.num_edges:
        return None
    hdeg = [h.degree(i) for i in range(h.n)]
    order = sorted(range(a.n), key=lambda p: -a.degree(p))
    image = [-1] * a.n
    used = [False] * h.n

    def place(k: int) -> bool:
        if k == a.n:
            return True
        p = order[k]
        for node in range(h.n):
            if used[node] or a.degree(p) > hdeg[node]:
                continue
            if any(image[q] >= 0 and not h.has_edge(node, image[q]) for q in a.adjacency[p]):
                continue
            image[p] = node
            used[node] = True
            if place(k + 1):
                return True
            image[p] = -1
            used[node] = False
        return False

    if not place(0):
        return None
    free = [i for i in range(h.n) if not used[i]]
    pos = image + free
    return TokenPlacement(tuple(pos))
