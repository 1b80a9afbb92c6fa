import random

import pytest

from parcross import _kernel_py, kernel


def random_problem(rng, n):
    parent = [-1] * n
    for k in range(n):
        if rng.random() < 0.4 and k:
            p = rng.randrange(k)
            if parent[p] == -1:
                parent[k] = p
    masks, re, im = [], [], []
    for _ in range(rng.randint(0, 5)):
        m = 0
        for k in range(n):
            if rng.random() < 0.3:
                m |= 1 << k
        masks.append(m)
        re.append(rng.randint(-3, 3))
        im.append(rng.randint(-2, 2))
    fixed_one = 0
    free = 0
    for k in range(n):
        r = rng.random()
        if r < 0.15:
            fixed_one |= 1 << k
        elif r < 0.85:
            free |= 1 << k
    # a fixed child forces its parent to be fixed too
    for k in range(n):
        if fixed_one >> k & 1 and parent[k] >= 0:
            fixed_one |= 1 << parent[k]
            free &= ~(1 << parent[k])
    return masks, re, im, parent, fixed_one, free


def brute(masks, re, im, parent, fixed_one, free, want_zero):
    n = len(parent)
    bits = [k for k in range(n) if free >> k & 1]
    n_cons = n_sat = 0
    and_m, or_m = -1, 0
    for s in range(1 << len(bits)):
        a = fixed_one
        for j, k in enumerate(bits):
            if s >> j & 1:
                a |= 1 << k
        if any(a >> k & 1 and parent[k] >= 0 and not a >> parent[k] & 1 for k in range(n)):
            continue
        n_cons += 1
        vr = sum(r for m, r in zip(masks, re) if m & a == m)
        vi = sum(i for m, i in zip(masks, im) if m & a == m)
        if (vr == 0 and vi == 0) == want_zero:
            n_sat += 1
            and_m &= a
            or_m |= a
    return n_cons, n_sat, (and_m if n_sat else 0), or_m


@pytest.mark.parametrize("backend", kernel.available_backends())
def test_scan_matches_brute_force(backend):
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(0, 9)
        prob = random_problem(rng, n)
        for want_zero in (True, False):
            got = kernel.scan(*prob, want_zero, backend=backend)
            assert got[:4] == brute(*prob, want_zero)
            if got[1]:
                first = got[4]
                assert (first & prob[4]) == prob[4]


@pytest.mark.parametrize("backend", kernel.available_backends())
def test_max_abs2_matches_brute_force(backend):
    rng = random.Random(8)
    for _ in range(300):
        prob = random_problem(rng, rng.randint(0, 8))
        masks, re, im, parent, fixed_one, free = prob
        best, arg = kernel.max_abs2(*prob, backend=backend)
        vr = sum(r for m, r in zip(masks, re) if m & arg == m)
        vi = sum(i for m, i in zip(masks, im) if m & arg == m)
        assert vr * vr + vi * vi == best


def test_backends_agree():
    backends = kernel.available_backends()
    if len(backends) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(9)
    for _ in range(300):
        prob = random_problem(rng, rng.randint(0, 12))
        assert kernel.scan(*prob, True, backend="compiled") == kernel.scan(*prob, True, backend="python")
        assert kernel.max_abs2(*prob, backend="compiled") == kernel.max_abs2(*prob, backend="python")


def test_big_coefficients_use_exact_path():
    masks, re, im = [0, 1], [1 << 70, -(1 << 70)], [0, 0]
    n_cons, n_sat, *_ = kernel.scan(masks, re, im, [-1], 0, 1, True)
    assert (n_cons, n_sat) == (2, 1)


def test_count_consistent():
    assert kernel.count_consistent([-1, 0], 0, 0b11) == 3
    assert kernel.count_consistent([-1, -1], 0, 0b11) == 4
    assert _kernel_py.scan([], [], [], [], 0, 0, True)[:2] == (1, 1)


def test_forced_python_backend_runs_solver():
    import os
    import subprocess
    import sys

    code = ("from parcross import kernel, vanishes_on_omega, char\n"
            "from parcross.presentations import build_ck, Matrix01\n"
            "P = build_ck(Matrix01([[1, 1], [1, 0]]), Matrix01([[0, 1], [1, 0]]))\n"
            "e = P.ctx.group.identity\n"
            "assert kernel.BACKEND == 'python'\n"
            "assert vanishes_on_omega(char(P.ctx, e, 1) * char(P.ctx, e, 2), P.relations, 0).vanishes\n"
            "assert not vanishes_on_omega(char(P.ctx, e, 1), P.relations, 2).vanishes\n")
    env = dict(os.environ, PARCROSS_KERNEL="python")
    subprocess.run([sys.executable, "-c", code], env=env, check=True)


def test_benchmark_smoke(capsys):
    import runpy
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernel.py"
    bench = runpy.run_path(str(path))
    bench["main"](["--sizes", "4", "--repeat", "1"])
    assert "scan" in capsys.readouterr().out
