import warnings

import pytest

from co2dryout.properties import OperatingConditions, bundled_table, dimensionless_groups, properties_at
from co2dryout.stability import ProblemParams

_ACCEPTANCE: dict[int, str] = {}


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    _ACCEPTANCE[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])


@pytest.fixture(scope="session")
def co2_table():
    return bundled_table("co2")


@pytest.fixture(scope="session")
def co2_props(co2_table):
    return properties_at(co2_table, -15.0)


def reference_params(props, G=1200.0, k=0.1, N=20, q=30e3, D=1e-3, **kw) -> ProblemParams:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cond = OperatingConditions(D=D, G=G, q=q, T_sat=props.T_sat)
    return ProblemParams(dimensionless_groups(props, cond), k=k, N=N, props=props, cond=cond, **kw)


@pytest.fixture(scope="session")
def ref_params(co2_props):
    """T_sat = -15 C, q = 30 kW/m2, G = 1200, D = 1 mm, k = 0.1, N = 20."""
    return reference_params(co2_props)
