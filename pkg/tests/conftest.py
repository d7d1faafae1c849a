import functools

import pytest

from treecover.elements import Context
from treecover.generators import exhaustive_corpus, gen_random_cut_outerplanar
from treecover.treenum import analyze

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def corpus(max_edges: int):
    return tuple(exhaustive_corpus(max_edges, 7))


@functools.lru_cache(maxsize=None)
def whole_report(g):
    return analyze(Context(g).whole())


def walk(report):
    stack = [report]
    while stack:
        r = stack.pop()
        yield r
        stack.extend(r.children)


@functools.lru_cache(maxsize=None)
def small_random(count: int = 200, max_edges: int = 16):
    """Seeded random instances with at most ``max_edges`` edges."""
    out = []
    seed = 0
    while len(out) < count:
        g = gen_random_cut_outerplanar(seed, 1 + seed % 4, 3 + seed % 6)
        seed += 1
        if g.m <= max_edges:
            out.append(g)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def large_random(count: int = 50):
    """Seeded random instances between roughly 10^3 and 10^4 edges."""
    out = []
    for i in range(count):
        blocks = 16 + (5 * i) // 2
        g = gen_random_cut_outerplanar(1000 + i, blocks, 90)
        out.append(g)
    return tuple(out)


def record(criterion: int, ok: bool, detail: str):
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def diamond():
    from treecover.generators import gen_diamond

    return gen_diamond()
