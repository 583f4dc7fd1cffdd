"""The compiled kernel module and the numpy fallback must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest

from coxhom import _kernels
from coxhom._kernels import _pyfallback

_core = pytest.importorskip("coxhom._kernels._core")

WIDTH = 30


def perms(rng, m):
    out = np.empty((m, WIDTH), dtype=np.uint16)
    for i in range(m):
        out[i] = rng.permutation(WIDTH)
    return out


@pytest.fixture(scope="module")
def data():
    rng = np.random.default_rng(42)
    return {
        "a": perms(rng, 200),
        "b": perms(rng, 200),
        "t": rng.permutation(WIDTH).astype(np.uint16),
        "g": rng.permutation(WIDTH).astype(np.uint16),
    }


def test_compose_rows(data):
    assert np.array_equal(
        _core.compose_rows(data["a"], data["b"]),
        _pyfallback.compose_rows(data["a"], data["b"]),
    )


def test_compose_many_one(data):
    assert np.array_equal(
        _core.compose_many_one(data["a"], data["t"]),
        _pyfallback.compose_many_one(data["a"], data["t"]),
    )


def test_compose_one_many(data):
    assert np.array_equal(
        _core.compose_one_many(data["t"], data["b"]),
        _pyfallback.compose_one_many(data["t"], data["b"]),
    )


def test_invert_rows(data):
    assert np.array_equal(
        _core.invert_rows(data["a"]), _pyfallback.invert_rows(data["a"])
    )
    ident = np.tile(np.arange(WIDTH, dtype=np.uint16), (5, 1))
    assert np.array_equal(
        _core.compose_rows(data["a"][:5], _core.invert_rows(data["a"][:5])), ident
    )


def test_conjugate_by(data):
    g = data["g"]
    ginv = _pyfallback.invert_rows(g[None, :])[0]
    assert np.array_equal(
        _core.conjugate_by(g, ginv, data["a"]),
        _pyfallback.conjugate_by(g, ginv, data["a"]),
    )


def test_commute_and_braid_masks(data):
    # random permutations rarely commute, so force some hits
    rows = data["a"].copy()
    rows[17] = data["t"]
    rows[3] = np.arange(WIDTH, dtype=np.uint16)
    for fn in ("commute_mask", "braid_mask"):
        got = getattr(_core, fn)(rows, data["t"])
        want = getattr(_pyfallback, fn)(rows, data["t"])
        assert got.dtype == np.bool_
        assert np.array_equal(got, want), fn
    assert _core.commute_mask(rows, data["t"])[17]
    assert _core.braid_mask(rows, data["t"])[17]


def test_pair_matrices(data):
    a, b = data["a"][:60], data["b"][:60]
    assert np.array_equal(
        _core.commute_matrix(a, b), _pyfallback.commute_matrix(a, b)
    )
    assert np.array_equal(
        _core.braid_matrix(a, b), _pyfallback.braid_matrix(a, b)
    )


def test_matrix_matches_mask_columns(data):
    a = data["a"][:40]
    m_core = _core.commute_matrix(a, a)
    for j in range(0, 40, 7):
        assert np.array_equal(m_core[:, j], _core.commute_mask(a, a[j]))


def test_rowset_parity():
    rng = np.random.default_rng(7)
    batch1 = perms(rng, 120)
    batch2 = np.concatenate([batch1[40:80], perms(rng, 40)])
    for impl in (_core, _pyfallback):
        rs = impl.RowSet(WIDTH)
        m1 = rs.add_new(batch1)
        m2 = rs.add_new(batch2)
        assert m1.all()
        assert not m2[:40].any()
        assert m2[40:].all()


def test_rowset_dedup_within_batch():
    rows = np.tile(np.arange(WIDTH, dtype=np.uint16), (4, 1))
    for impl in (_core, _pyfallback):
        rs = impl.RowSet(WIDTH)
        mask = rs.add_new(rows)
        assert mask.sum() == 1


def test_backend_env_selection():
    code = "from coxhom import _kernels; print(_kernels.BACKEND)"
    for env_val, expect in [("py", "python"), ("c", "c"), ("auto", "c")]:
        env = dict(os.environ, COXHOM_KERNEL=env_val)
        out = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env
        )
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == expect, env_val


def test_bad_backend_env_rejected():
    env = dict(os.environ, COXHOM_KERNEL="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import coxhom._kernels"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode != 0


def test_active_backend_exports_full_surface():
    for name in (
        "compose_rows",
        "compose_many_one",
        "compose_one_many",
        "invert_rows",
        "conjugate_by",
        "commute_mask",
        "braid_mask",
        "commute_matrix",
        "braid_matrix",
        "RowSet",
    ):
        assert hasattr(_kernels, name)
