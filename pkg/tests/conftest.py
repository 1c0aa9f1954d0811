from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from mhcq.coquasi import function_algebra_structure, group_algebra_structure
from mhcq.loopcore import cyclic_group, steiner_l10, symmetric_group

settings.register_profile("mhcq", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("mhcq")

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


@pytest.fixture(scope="session")
def l10():
    return steiner_l10()


@pytest.fixture(scope="session")
def kl10(l10):
    return function_algebra_structure(l10, name="k(L10)")


@pytest.fixture(scope="session")
def ks3():
    return function_algebra_structure(symmetric_group(3), name="k(S3)")


@pytest.fixture(scope="session")
def gs3():
    return group_algebra_structure(symmetric_group(3), name="k[S3]")


@pytest.fixture(scope="session")
def gz2():
    return group_algebra_structure(cyclic_group(2), name="k[Z2]")
