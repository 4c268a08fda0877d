import json

import pytest

from commroute.cli import main
from commroute.graphs import complete_graph, path_graph, star_graph
from commroute.solutions import TmpInstance


@pytest.fixture
def tiny_instance(tmp_path):
    inst = TmpInstance(path_graph(3), complete_graph(3))
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst.to_dict()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    payload = json.loads(out.out) if out.out.strip() else None
    return code, payload, out.err


def test_generate(capsys):
    code, payload, _ = run(capsys, "generate", "--hardware", "grid3x3",
                           "--density", "1.0", "--seed", "0")
    assert code == 0
    assert payload["hardware"]["n"] == 9
    assert len(payload["algorithm"]["edges"]) == 36


def test_generate_out_file(capsys, tmp_path):
    out = tmp_path / "inst.json"
    code, payload, _ = run(capsys, "generate", "--hardware", "twin5cycles",
                           "--density", "0.2", "--seed", "4", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == payload


def test_bounds(capsys, tiny_instance):
    code, payload, _ = run(capsys, "bounds", tiny_instance)
    assert code == 0
    assert set(payload) >= {"swap_lower", "step_lower", "max_gain_per_swap"}


def test_oracle(capsys, tiny_instance):
    code, payload, _ = run(capsys, "oracle", tiny_instance)
    assert code == 0
    assert payload == {"mt": 1, "ms": 1}


def test_oracle_infeasible_horizon(capsys, tiny_instance):
    code, payload, _ = run(capsys, "oracle", tiny_instance, "--steps", "0")
    assert code == 2
    assert payload["feasible"] is False


def test_solve(capsys, tiny_instance):
    code, payload, _ = run(capsys, "solve", tiny_instance)
    assert code == 0
    assert payload["mt"] == 1 and payload["ms"] == 1
    assert payload["ms_optimal"]


def test_route_and_verify(capsys, tmp_path, tiny_instance):
    circ = tmp_path / "circ.json"
    code, payload, _ = run(capsys, "route", tiny_instance, "--out", str(circ))
    assert code == 0
    circuit_file = tmp_path / "circuit.json"
    circuit_file.write_text(json.dumps(payload["routed_circuit"]))
    code, verdict, _ = run(capsys, "verify", tiny_instance, "--circuit", str(circuit_file))
    assert code == 0
    assert verdict["valid"]


def test_verify_rejects_bad_solution(capsys, tmp_path, tiny_instance):
    sol = tmp_path / "sol.json"
    sol.write_text(json.dumps({"initial": [0, 1, 2], "matchings": []}))
    code, verdict, _ = run(capsys, "verify", tiny_instance, "--solution", str(sol))
    assert code == 2
    assert not verdict["valid"]


def test_verify_needs_exactly_one_target(capsys, tiny_instance):
    code, _, err = run(capsys, "verify", tiny_instance)
    assert code == 4
    assert "error" in json.loads(err)


def test_schedule(capsys, tmp_path, tiny_instance):
    sol = tmp_path / "sol.json"
    sol.write_text(json.dumps({"initial": [0, 1, 2], "matchings": [[[0, 1]]]}))
    code, payload, _ = run(capsys, "schedule", tiny_instance, str(sol))
    assert code == 0
    assert payload["optimal"]
    assert payload["depth"] >= 1


def test_heuristic(capsys, tmp_path):
    hw = tmp_path / "h.json"
    hw.write_text(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}))
    code, payload, _ = run(capsys, "heuristic", "--hardware", "custom",
                           "--hardware-file", str(hw))
    assert code == 0
    assert payload["swaps"] <= 4


def test_polytope(capsys, tmp_path):
    hw = tmp_path / "h.json"
    hw.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]]}))
    code, payload, _ = run(capsys, "polytope", "--hardware", "custom",
                           "--hardware-file", str(hw), "--objectives", "20")
    assert code == 0
    assert payload["integral"] and payload["zero_one_exact"]


def test_ingest(capsys, tmp_path):
    gates = tmp_path / "gates.txt"
    gates.write_text("a b\nb c\na b\n")
    hw = tmp_path / "h.json"
    hw.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]]}))
    code, payload, _ = run(capsys, "ingest", str(gates), "--hardware", "custom",
                           "--hardware-file", str(hw))
    assert code == 0
    assert payload["algorithm"]["edges"] == [[0, 1], [1, 2]]


def test_missing_file_is_input_error(capsys):
    code, payload, err = run(capsys, "oracle", "no-such-file.json")
    assert code == 4
    assert "error" in json.loads(err)


def test_unknown_flag_is_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--no-such-flag"])
    assert exc.value.code == 4


def test_timeout_exit_code(capsys, tmp_path):
    inst = TmpInstance(path_graph(6), star_graph(6))
    path = tmp_path / "big.json"
    path.write_text(json.dumps(inst.to_dict()))
    code, payload, _ = run(capsys, "solve", str(path), "--time-limit", "0.01")
    assert code == 3
    assert not payload["ms_optimal"]
