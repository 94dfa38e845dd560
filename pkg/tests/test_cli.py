import json

import pytest

from ternlight.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_success(capsys):
    code, out, _ = run_cli(capsys, "parse", "--text", "Turn on kitchen lights")
    assert code == 0
    assert json.loads(out) == {"type": "turn_on", "zone": "kitchen"}


def test_parse_failure_exit_and_diagnostic(capsys):
    code, out, err = run_cli(capsys, "parse", "--text", "do the thing")
    assert code == 3
    assert json.loads(err)["slot"] == "verb"


def test_parse_with_home_lexicon(capsys):
    code, out, _ = run_cli(
        capsys, "parse", "--text", "turn on the study", "--config", "configs/home_family4.json"
    )
    assert code == 0
    assert json.loads(out)["zone"] == "office"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["parse"])  # missing --text
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_bad_config_exit_code(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "gen-corpus", "--count", "10", "--out", str(tmp_path / "c.jsonl"),
        "--config", str(tmp_path / "missing.json"),
    )
    assert code == 2
    assert "configuration error" in err


def test_gen_corpus(capsys, tmp_path):
    out_path = tmp_path / "corpus.jsonl"
    code, out, _ = run_cli(
        capsys, "gen-corpus", "--count", "200", "--seed", "4", "--out", str(out_path),
        "--noise-levels", "0",
    )
    assert code == 0
    assert json.loads(out)["count"] == 200
    lines = out_path.read_text().splitlines()
    assert len(lines) == 200
    assert all(json.loads(l)["noise_level"] == 0 for l in lines)


def test_gen_corpus_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_cli(capsys, "gen-corpus", "--count", "100", "--seed", "9", "--out", str(a))
    run_cli(capsys, "gen-corpus", "--count", "100", "--seed", "9", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_bench_report(capsys, tmp_path):
    out_path = tmp_path / "bench.json"
    code, out, _ = run_cli(
        capsys, "bench", "--dims", "16x16", "--kernels", "ternary,twobit,float,lut",
        "--out", str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert len(report["rows"]) == 4
    assert report["environment"]["cpu_model"]


def test_eval_checkpoint_mismatch(capsys, tmp_path):
    from ternlight.agent import AgentConfig, DQNAgent, save_checkpoint

    agent = DQNAgent(5, 7, AgentConfig(seed=1))
    ckpt = tmp_path / "bad.ckpt"
    save_checkpoint(ckpt, agent.online, 5, 7)
    code, _, err = run_cli(
        capsys, "eval", "--ckpt", str(ckpt), "--config", "configs/home_family4.json",
        "--episodes", "1",
    )
    assert code == 2


def test_train_eval_smoke(capsys, tmp_path):
    # tiny run: checkpoint written, paired eval produces a report with both
    # controllers; no performance claim at this scale
    ckpt = tmp_path / "agent.ckpt"
    metrics = tmp_path / "metrics.csv"
    code, out, err = run_cli(
        capsys, "train", "--config", "configs/home_single2.json", "--episodes", "2",
        "--seed", "3", "--out", str(ckpt), "--metrics", str(metrics),
    )
    assert code == 0, err
    assert ckpt.exists()
    header = metrics.read_text().splitlines()[0]
    assert header == "episode,total_reward,energy_kwh,comfort_mean,overrides,epsilon"

    report_path = tmp_path / "eval.json"
    code, out, err = run_cli(
        capsys, "eval", "--ckpt", str(ckpt), "--config", "configs/home_single2.json",
        "--episodes", "2", "--seed", "11", "--out", str(report_path),
    )
    assert code == 0, err
    report = json.loads(report_path.read_text())
    assert report["agent"]["episodes"] == 2
    assert report["baseline"]["episodes"] == 2
    assert "energy_savings_fraction" in report


def test_eval_trace_output(capsys, tmp_path):
    from ternlight.agent import AgentConfig, DQNAgent, save_checkpoint, state_dim

    agent = DQNAgent(state_dim(2), 111, AgentConfig(seed=2))
    ckpt = tmp_path / "agent.ckpt"
    save_checkpoint(ckpt, agent.online, state_dim(2), 111)
    trace = tmp_path / "trace.jsonl"
    code, _, err = run_cli(
        capsys, "eval", "--ckpt", str(ckpt), "--config", "configs/home_single2.json",
        "--episodes", "1", "--seed", "4", "--out", str(tmp_path / "r.json"),
        "--trace", str(trace),
    )
    assert code == 0, err
    records = [json.loads(l) for l in trace.read_text().splitlines()]
    assert len(records) == 288
    first = records[0]
    assert set(first) == {"t", "state", "action", "reward", "events"}
    assert set(first["reward"]) == {"r_energy", "r_comfort", "r_circadian", "total"}
    assert set(first["events"]) == {"override", "arrivals", "departures"}
    from ternlight.sim import state_from_doc

    state_from_doc(first["state"])  # parses back into a valid HomeState


def test_send_against_live_gateway(capsys, tmp_path):
    import threading
    import time

    import uvicorn

    from test_gateway import free_port
    from ternlight.gateway import ServerConfig, create_app

    port = free_port()
    cfg = ServerConfig(
        home_config="configs/home_family4.json", secret="cli-secret", mode="manual",
        time_scale=0.0, trajectory_log=str(tmp_path / "t.jsonl"), seed=2, port=port,
    )
    server = uvicorn.Server(uvicorn.Config(create_app(cfg), host="127.0.0.1", port=port,
                                           log_level="error"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        assert time.time() < deadline
        time.sleep(0.01)
    try:
        code, out, _ = run_cli(
            capsys, "send", "--url", f"http://127.0.0.1:{port}",
            "--token", "cli-secret", "--text", "turn on the kitchen lights",
        )
        assert code == 0
        assert json.loads(out)["intent"]["zone"] == "kitchen"
        code, _, _ = run_cli(
            capsys, "send", "--url", f"http://127.0.0.1:{port}",
            "--token", "wrong", "--text", "status",
        )
        assert code == 3
    finally:
        server.should_exit = True
        thread.join(timeout=5)


def test_eval_baseline_deterministic(capsys, tmp_path):
    from ternlight.agent import RewardWeights
    from ternlight.evaluation import baseline_policy, run_controller
    from ternlight.sim import HomeConfig

    cfg = HomeConfig.from_json("configs/home_single2.json")
    a = run_controller(baseline_policy(cfg), cfg, RewardWeights(), seed=5, episodes=3)
    b = run_controller(baseline_policy(cfg), cfg, RewardWeights(), seed=5, episodes=3)
    assert a == b
