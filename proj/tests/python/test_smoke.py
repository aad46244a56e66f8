import json

import pytest

import _cpt as cpt


def test_tensor_roundtrip():
    t = cpt.SymmetricTensor(3, 2)
    t.set([1, 1, 2], 0.5)
    t.set([2, 2, 2], 1.0)
    assert t.at([2, 1, 1]) == 0.5
    parsed = json.loads(t.to_json())
    assert parsed["order"] == 3 and parsed["dim"] == 2
    back = cpt.SymmetricTensor.from_json(t.to_json())
    assert back.at([1, 1, 2]) == 0.5


def test_json_rejects_noncanonical_index():
    bad = json.dumps(
        {"order": 3, "dim": 2, "entries": [{"idx": [2, 1, 1], "val": 1.0}]}
    )
    with pytest.raises(cpt.TensorError):
        cpt.SymmetricTensor.from_json(bad)


def test_classify_identity_dnn():
    n = 3
    t = cpt.SymmetricTensor(3, n)
    for i in range(1, n + 1):
        t.set([i, i, i], 1.0)
    v = cpt.classify_dnn(t)
    assert v["status"] == "CertifiedYes"


def test_laplacian_dnn_not_cp():
    q = cpt.signless_laplacian(4, 3, [[1, 2, 3], [2, 3, 4]])
    assert cpt.classify_dnn(q)["status"] == "CertifiedYes"
    cp = cpt.classify_cp(q)
    assert cp["status"] == "CertifiedNo"
    assert cp["witness"][0] == "index"


def test_cauchy_cp_with_decomposition():
    t = cpt.cauchy_from_vector([1.0, 2.0, 3.0], 3)
    res = cpt.classify_cp(t)
    assert res["status"] == "CertifiedYes"
    d = res["decomposition"]
    assert d.spans_full_space()


def test_preprocess_and_tcp():
    t = cpt.hilbert_tensor(3, 2)
    rep = cpt.preprocess(t)
    assert rep["forwarded"]
    n = 2
    ident = cpt.SymmetricTensor(3, n)
    for i in range(1, n + 1):
        ident.set([i, i, i], 1.0)
    out = cpt.tcp_residual(ident, [-1.0, -1.0], [1.0, 1.0])
    assert out["solution"] and out["complementarity_gap"] == 0.0
