import pytest

# criterion number -> list of (ok, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p for p, _ in parts)
        bad = [d for p, d in parts if not p]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({sum(p for p, _ in parts)}/{len(parts)} cases)"
        if bad:
            line += " -- " + "; ".join(bad[:4])
        tr.write_line(line)


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(20240501)
