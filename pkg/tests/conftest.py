import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from opuclab.moments import make_family, point_masses  # noqa: E402

#: lines recorded by the acceptance module, printed in the terminal summary
ACCEPTANCE_LINES = []


def random_point_masses(rng, m, *, symmetric=False, min_sep=0.15):
    """Random ``m``-atom measure; ``symmetric`` mirrors it (real moments)."""
    while True:
        if symmetric:
            half = m // 2
            a = rng.uniform(min_sep, np.pi - min_sep, half)
            angles = np.concatenate([a, -a] + ([[0.0]] if m % 2 else []))
        else:
            angles = rng.uniform(0, 2 * np.pi, m)
        s = np.sort(np.mod(angles, 2 * np.pi))
        gaps = np.diff(np.concatenate([s, [s[0] + 2 * np.pi]]))
        if gaps.min() > min_sep:
            break
    if symmetric:
        w = rng.uniform(0.2, 1.5, m // 2)
        weights = np.concatenate([w, w] + ([[rng.uniform(0.2, 1.5)]] if m % 2 else []))
    else:
        weights = rng.uniform(0.2, 1.5, m)
    return point_masses(np.exp(1j * angles), weights)


def builtin_families():
    """``(label, sequence, largest admissible n)`` for the closed-form families."""
    out = [("lebesgue", make_family("lebesgue"), 8)]
    out += [(f"rogers-szego({q})", make_family("rogers-szego", q=q), 8) for q in (0.25, 0.5, 0.75)]
    out += [(f"gaussian-pf({r})", make_family("gaussian-pf", r=r), 8) for r in (0.3, 0.5)]
    return out


def random_families(count=50, seed=20240611):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        m = int(rng.integers(3, 10))
        out.append((f"point-masses#{i}({m})", random_point_masses(rng, m), min(8, m - 1)))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
