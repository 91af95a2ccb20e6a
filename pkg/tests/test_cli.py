import json

import numpy as np
import pytest

from sympredict.classifiers import knn_train
from sympredict.cli import main
from sympredict.dataset import binarize, parse_raw_csv
from sympredict.serialization import load_model, save_model

TINY_CSV = "disease,symptom_1,symptom_2,symptom_3\n" + "".join(
    [
        *[f"alpha,a,b{',c' if i % 3 == 0 else ','}\n" for i in range(12)],
        *[f"beta,c,d{',a' if i % 4 == 0 else ','}\n" for i in range(12)],
        *[f"gamma,e,f{',d' if i % 5 == 0 else ','}\n" for i in range(12)],
    ]
)

TRAIN_ARGS = ["--alpha", "2", "--rf-trees", "3", "--knn-n", "1", "--seed", "3"]


@pytest.fixture
def data_file(tmp_path):
    path = tmp_path / "cases.csv"
    path.write_text(TINY_CSV)
    return str(path)


def test_train_writes_artifacts(tmp_path, data_file, capsys):
    out = tmp_path / "out"
    rc = main(["train", "--data", data_file, "--out", str(out), *TRAIN_ARGS])
    assert rc == 0
    assert (out / "model.json").exists()
    assert (out / "weights.csv").exists()
    assert (out / "weights.json").exists()

    printed = capsys.readouterr().out
    for name in ("random_forest", "naive_bayes", "knn", "ensemble"):
        assert name in printed

    weights = json.loads((out / "weights.json").read_text())
    assert weights["alpha"] == 2
    assert all(len(m["samples"]) == 2 for m in weights["members"].values())

    model = load_model(str(out / "model.json"))
    assert set(model.weights) == {"knn", "naive_bayes", "random_forest"}


def test_train_single_split_alpha_one(tmp_path, data_file):
    out = tmp_path / "out"
    rc = main(["train", "--data", data_file, "--out", str(out),
               "--alpha", "1", "--rf-trees", "2", "--knn-n", "1"])
    assert rc == 0
    weights = json.loads((out / "weights.json").read_text())
    assert all(len(m["samples"]) == 1 for m in weights["members"].values())


def test_train_missing_file_exit_2(tmp_path):
    assert main(["train", "--data", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]) == 2


def test_train_invalid_alpha_exit_2(tmp_path, data_file):
    assert main(["train", "--data", data_file, "--out", str(tmp_path), "--alpha", "0"]) == 2


def test_train_picks_up_sweep_best_n(tmp_path, data_file, capsys):
    out = tmp_path / "out"
    rc = main(["sweep", "--data", data_file, "--out", str(out),
               "--alpha", "2", "--n-max", "4", "--seed", "3"])
    assert rc == 0
    sweep = json.loads((out / "sweep.json").read_text())
    capsys.readouterr()
    rc = main(["train", "--data", data_file, "--out", str(out),
               "--alpha", "1", "--rf-trees", "2"])
    assert rc == 0
    info = json.loads((out / "model.json").read_text())["training"]
    assert info["knn_n"] == sweep["best_n"]


def test_sweep_outputs_and_determinism(tmp_path, data_file):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    for out in (out_a, out_b):
        rc = main(["sweep", "--data", data_file, "--out", str(out),
                   "--alpha", "3", "--n-max", "5", "--seed", "11"])
        assert rc == 0
    assert (out_a / "sweep.csv").read_bytes() == (out_b / "sweep.csv").read_bytes()
    lines = (out_a / "sweep.csv").read_text().strip().splitlines()
    assert lines[0] == "n,mean_score"
    assert len(lines) == 6


def test_sweep_range_too_large_exit_2(tmp_path, data_file):
    rc = main(["sweep", "--data", data_file, "--out", str(tmp_path),
               "--alpha", "1", "--n-max", "50"])
    assert rc == 2


def test_evaluate_writes_metrics(tmp_path, data_file):
    out = tmp_path / "out"
    assert main(["train", "--data", data_file, "--out", str(out), *TRAIN_ARGS]) == 0
    rc = main(["evaluate", "--model", str(out / "model.json"),
               "--data", data_file, "--out", str(out)])
    assert rc == 0
    metrics = json.loads((out / "metrics.json").read_text())
    assert 0.0 <= metrics["accuracy"] <= 1.0
    confusion = (out / "confusion.csv").read_text().strip().splitlines()
    assert len(confusion) == 4  # header + 3 classes
    # row sums equal per-class supports of the split
    totals = sum(int(v) for line in confusion[1:] for v in line.split(",")[1:])
    assert totals == 7  # floor(0.2 * 36)


def test_evaluate_vocabulary_mismatch_exit_3(tmp_path, data_file):
    out = tmp_path / "out"
    assert main(["train", "--data", data_file, "--out", str(out), *TRAIN_ARGS]) == 0
    other = tmp_path / "other.csv"
    other.write_text("disease,symptom_1,symptom_2\nalpha,zz,yy\nbeta,yy,\n" * 1)
    rc = main(["evaluate", "--model", str(out / "model.json"),
               "--data", str(other), "--out", str(out)])
    assert rc == 3


def test_evaluate_memorizing_knn_member(tmp_path):
    csv_text = (
        "disease,symptom_1,symptom_2\n"
        "c0,s0,\nc0,s0,s1\nc1,s1,\nc1,s1,s2\nc2,s2,\nc2,s0,s2\n"
    )
    data = tmp_path / "unique.csv"
    data.write_text(csv_text)
    ds = binarize(parse_raw_csv(csv_text))
    assert len(np.unique(ds.features, axis=0)) == ds.n_rows  # rows unique
    model_path = tmp_path / "knn.json"
    save_model(knn_train(ds, 1), str(model_path))

    out = tmp_path / "out"
    rc = main(["evaluate", "--model", str(model_path), "--data", str(data),
               "--split", "all", "--out", str(out)])
    assert rc == 0
    metrics = json.loads((out / "metrics.json").read_text())
    assert metrics["accuracy"] == 1.0


def test_serve_missing_model_exit_4(tmp_path):
    rc = main(["serve", "--model", str(tmp_path / "missing.json")])
    assert rc == 4


def test_serve_answers_health_within_five_seconds(tmp_path, data_file):
    import signal
    import socket
    import subprocess
    import sys
    import time

    import httpx

    from sympredict.classifiers import nb_train, rf_train
    from sympredict.ensemble import EnsembleModel

    out = tmp_path / "out"
    assert main(["train", "--data", data_file, "--out", str(out), *TRAIN_ARGS]) == 0

    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]

    proc = subprocess.Popen(
        [sys.executable, "-m", "sympredict.cli", "serve",
         "--model", str(out / "model.json"),
         "--journal", str(tmp_path / "journal.ndjson"),
         "--port", str(port)],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
    )
    try:
        deadline = time.time() + 5.0
        body = None
        while time.time() < deadline:
            try:
                body = httpx.get(f"http://127.0.0.1:{port}/api/health", timeout=1.0).json()
                break
            except httpx.HTTPError:
                time.sleep(0.1)
        assert body == {"status": "ok", "model_loaded": True}
        r = httpx.post(
            f"http://127.0.0.1:{port}/api/predict",
            json={"symptoms": ["a", "b"]},
            timeout=5.0,
        )
        assert r.status_code == 200
    finally:
        proc.send_signal(signal.SIGINT)
        proc.wait(timeout=10)


def test_serve_port_in_use_exit_4(tmp_path, data_file):
    import socket
    import threading

    out = tmp_path / "out"
    assert main(["train", "--data", data_file, "--out", str(out),
                 "--alpha", "1", "--rf-trees", "2", "--knn-n", "1"]) == 0
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        sock.listen(1)
        port = sock.getsockname()[1]
        rc = main(["serve", "--model", str(out / "model.json"),
                   "--journal", str(tmp_path / "j.ndjson"), "--port", str(port)])
    assert rc == 4


def test_serve_invalid_model_kind_exit_4(tmp_path, data_file):
    ds = binarize(parse_raw_csv(TINY_CSV))
    path = tmp_path / "knn.json"
    save_model(knn_train(ds, 1), str(path))
    assert main(["serve", "--model", str(path)]) == 4
