import random

import pytest

from groupcontrol import _kernels_py as pure
from groupcontrol import kernels

compiled = kernels.compiled
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def random_case(rng, n):
    rows = [rng.getrandbits(n) for _ in range(n)]
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if r >> j & 1:
                cols[j] |= 1 << i
    selfm = sum(1 << i for i in range(n) if rows[i] >> i & 1)
    kind = rng.randrange(3)
    s, t = rng.randint(1, 4), rng.randint(1, 4)
    return kind, s, t, cols, rows, selfm


def test_for_size_picks_pure_for_wide_profiles():
    assert kernels.for_size(200) is pure
    if compiled is not None:
        assert kernels.for_size(63) is compiled
        assert kernels.for_size(64) is pure


def test_pure_search_order_is_size_then_lex():
    # every singleton works; the smallest index must come first
    rows, cols, selfm = [1, 2, 4], [1, 2, 4], 7
    got = pure.search_delete(pure.CONSENT, 1, 1, cols, rows, selfm, 3, 0b001, 0b110, 2)
    assert got == 0


@needs_ext
def test_backends_agree_on_eval():
    rng = random.Random(11)
    for _ in range(2000):
        n = rng.randint(1, 12)
        args = random_case(rng, n)
        T = rng.getrandbits(n)
        assert compiled.eval_mask(*args, T) == pure.eval_mask(*args, T)


@needs_ext
def test_backends_agree_on_searches():
    rng = random.Random(12)
    for _ in range(600):
        n = rng.randint(1, 8)
        args = random_case(rng, n)
        full = (1 << n) - 1
        S = rng.getrandbits(n) or 1
        T = S | rng.getrandbits(n)
        k = rng.randint(0, n)
        assert compiled.search_add(*args, S, T, full & ~T, k) == pure.search_add(*args, S, T, full & ~T, k)
        assert compiled.search_delete(*args, n, S, full & ~S, k) == pure.search_delete(*args, n, S, full & ~S, k)
        assert compiled.search_partition(*args, n, S) == pure.search_partition(*args, n, S)
        U = rng.getrandbits(n)
        assert compiled.partition_value(*args, n, U) == pure.partition_value(*args, n, U)


@needs_ext
def test_compiled_handles_63_individuals():
    rng = random.Random(13)
    args = random_case(rng, 63)
    T = (1 << 63) - 1
    assert compiled.eval_mask(*args, T) == pure.eval_mask(*args, T)


def test_pure_backend_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GROUPCONTROL_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import groupcontrol; print(groupcontrol.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
