import os
import random
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

DEFAULT_SEED = 20240521
ITEM_BUDGET_S = 5.0

_criteria: dict[int, dict] = {}

# the first example of a run may pay for loading compiled kernels
settings.register_profile("surgcalc", deadline=None)
settings.load_profile("surgcalc")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): one acceptance criterion")
    seed = config.getoption("seed")
    # hypothesis reads its own option; route --seed into it unless given explicitly
    if getattr(config.option, "hypothesis_seed", None) is None:
        config.option.hypothesis_seed = seed


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    ok = call.excinfo is None
    _criteria[number] = {"title": title, "ok": ok, "detail": detail, "seconds": call.duration}


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        c = _criteria[n]
        status = "PASS" if c["ok"] else "FAIL"
        extra = f"  ({c['detail']})" if c["detail"] else ""
        if c["seconds"] > ITEM_BUDGET_S:
            extra += f"  over the {ITEM_BUDGET_S:.0f} s per-item budget"
        tr.write_line(f"[{status}] {n:2d}. {c['title']}  [{c['seconds']:.2f} s]{extra}")
    passed = sum(c["ok"] for c in _criteria.values())
    tr.write_line(f"{passed}/{len(_criteria)} criteria passed")
