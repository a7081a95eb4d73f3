# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the slow time-dependent simulations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def out_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("SQUEEZESIM_OUT", raising=False)
    monkeypatch.delenv("SQUEEZESIM_THREADS", raising=False)
    return tmp_path / "out"
