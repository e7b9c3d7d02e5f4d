"""Smoke tests for the Python bindings: the file-level pipeline plus the
in-memory training and prediction surface."""

import csv
import json
import math

import pytest

import fakedet


def test_feature_names():
    names = fakedet.feature_names()
    assert len(names) == 17
    assert names[0] == "pos"
    assert names[-1] == "pi"


def test_pearson():
    assert fakedet.pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert fakedet.pearson([1, 2, 3], [6, 4, 2]) == pytest.approx(-1.0)
    assert fakedet.pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fakedet.pearson([1], [2])


def test_extract_features_single_account():
    account = {
        "account_id": "a1",
        "followers": 100,
        "following": 50,
        "biography": "hello",
        "has_profile_picture": True,
        "has_external_link": False,
        "posts": [
            {
                "caption": "sunset pic",
                "hashtags": ["sunset"],
                "likes": 10,
                "comments": 2,
                "has_image": True,
                "location_tagged": False,
                "posted_at": 1000,
            },
            {
                "caption": "sunset again",
                "hashtags": [],
                "likes": 20,
                "comments": 2,
                "has_image": True,
                "location_tagged": True,
                "posted_at": 1000 + 7200,
            },
        ],
    }
    values = fakedet.extract_features(json.dumps(account))
    features = dict(zip(fakedet.feature_names(), values))
    assert features["pos"] == 2
    assert features["flw"] == 100
    assert features["bl"] == 5
    assert features["erl"] == pytest.approx(30 / (2 * 100))
    assert features["pi"] == pytest.approx(2.0)
    assert 0.0 <= features["cs"] <= 1.0

    with pytest.raises(ValueError):
        fakedet.extract_features("{not json")


def test_file_pipeline(tmp_path):
    data = tmp_path / "data"
    fakedet.synth(per_class=30, seed=11, out_dir=str(data))
    assert (data / "accounts.jsonl").exists()
    assert (data / "labels.csv").exists()

    features = tmp_path / "features.csv"
    fakedet.extract(str(data / "accounts.jsonl"), str(data / "labels.csv"),
                    str(features))
    with open(features) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 120

    corr = tmp_path / "corr"
    fakedet.correlate(str(features), str(corr))
    assert (corr / "correlation.csv").exists()
    assert (corr / "top_pairs.csv").exists()

    out = tmp_path / "eval"
    fakedet.evaluate(str(features), str(out), schemes="2", algos="dt,knn",
                     seed=3)
    report = json.loads((out / "report.json").read_text())
    assert {cell["algorithm"] for cell in report["results"]} == {"dt", "knn"}
    for cell in report["results"]:
        assert 0.0 <= cell["accuracy"] <= 100.0


def test_pipeline_train_predict_save_load(tmp_path):
    data = tmp_path / "data"
    fakedet.synth(per_class=25, seed=5, out_dir=str(data))
    features = tmp_path / "features.csv"
    fakedet.extract(str(data / "accounts.jsonl"), str(data / "labels.csv"),
                    str(features))

    pipeline = fakedet.Pipeline.train_csv(str(features), scheme=4, algo="dt",
                                          seed=1)
    assert pipeline.scheme == 4
    assert pipeline.algorithm == "dt"

    with open(features) as fh:
        rows = list(csv.DictReader(fh))
    names = fakedet.feature_names()
    vectors = [[float(r[n]) for n in names] for r in rows]
    labels = [r["label"] for r in rows]

    # unlimited-depth tree memorizes its training data
    assert pipeline.predict_batch(vectors) == labels

    model_path = tmp_path / "model.json"
    pipeline.save(str(model_path))
    loaded = fakedet.Pipeline.load(str(model_path))
    assert loaded.predict_batch(vectors) == labels


def test_in_memory_training():
    rows = [[float(i)] + [0.0] * 16 for i in range(8)]
    labels = ["authentic"] * 4 + ["spammer"] * 4
    pipeline = fakedet.Pipeline.train(rows, labels, scheme=2, algo="knn",
                                      seed=0)
    assert pipeline.predict(rows[0]) == "real"
    assert pipeline.predict(rows[-1]) == "fake"
    with pytest.raises(ValueError):
        fakedet.Pipeline.train(rows, ["nope"] * 8, scheme=2, algo="knn")
