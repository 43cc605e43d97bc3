import random
from fractions import Fraction

import pytest

from gl2orbits import catalog
from gl2orbits.subgroups import SubgroupSpec
from gl2orbits.zmod import Mat2

_RESULTS: dict[str, str] = {}


def image(j) -> SubgroupSpec:
    """Generators of the exceptional image for a given j."""
    j = Fraction(j)
    for img in catalog.exceptional_images():
        if img.j.value == j:
            return img.spec
    raise KeyError(j)


def random_element(rng: random.Random, n: int) -> Mat2:
    from math import gcd

    while True:
        e = [rng.randrange(n) for _ in range(4)]
        if gcd((e[0] * e[3] - e[1] * e[2]) % n, n) == 1:
            return Mat2.of(e, n)


def random_spec(rng: random.Random, n: int, max_gens: int = 3) -> SubgroupSpec:
    k = rng.randint(1, max_gens)
    return SubgroupSpec(n, tuple(random_element(rng, n) for _ in range(k)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if name.startswith("test_criterion_"):
        _RESULTS[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS, key=lambda s: int(s.split("_")[2])):
        outcome = _RESULTS[name]
        flag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome)
        terminalreporter.write_line(f"criterion {name.split('_')[2]}: {flag}  ({name})")
