"""Kernel selection and cross-kernel parity."""
import pytest

from spanfact import treesearch
from spanfact.digraph import build_shift, build_toy, enumerate_factorizations, factorization_at
from spanfact.fixtures import load_fixture
from spanfact.spanning import max_relocatable_tree

HAVE_COMPILED = treesearch._compiled is not None


def test_pure_kernel_always_available():
    d, f = build_toy(3)
    res = max_relocatable_tree(f, force_pure=True)
    assert res.kernel == "python"
    assert res.size == 6 and res.certificate


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_compiled_kernel_selected_by_default():
    d, f = build_toy(3)
    res = max_relocatable_tree(f)
    assert res.kernel == "cython"


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
@pytest.mark.parametrize(
    "builder",
    [lambda: build_toy(3), lambda: build_toy(4), lambda: build_shift(5)],
)
def test_kernel_parity_small(builder):
    d, _ = builder()
    for f in enumerate_factorizations(d):
        fast = max_relocatable_tree(f)
        pure = max_relocatable_tree(f, force_pure=True)
        assert (fast.size, fast.nodes, fast.certificate) == (
            pure.size,
            pure.nodes,
            pure.certificate,
        )
        assert fast.words == pure.words


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_kernel_parity_a5():
    d = load_fixture("a5-ex2").digraph
    for b in (0, 5, 8):
        f = factorization_at(d, b)
        fast = max_relocatable_tree(f)
        pure = max_relocatable_tree(f, force_pure=True)
        assert (fast.size, fast.nodes, fast.certificate) == (
            pure.size,
            pure.nodes,
            pure.certificate,
        )
        assert fast.words == pure.words


def test_env_var_forces_pure(monkeypatch):
    monkeypatch.setenv("SPANFACT_PURE_KERNEL", "1")
    assert treesearch.active_kernel_name() == "python"
