import itertools

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def excluded_configurations():
    """The configurations with rho(4) = 4 listed for non-torus sextics."""
    X5 = ["D5", "A5"]
    X6 = ["D6", "A6", "E6"]
    X7 = ["D7", "A7", "E7"]
    out = [["D4"] * 4]
    out += [["D4"] * 3 + [x] for x in X5]
    out += [["D4"] * 3 + [x] for x in X6]
    out += [["D4"] * 2 + [x, y] for x, y in itertools.product(X5, X5)]
    out += [["D10", "D4", "D4"]]
    out += [["D4"] * 3 + [x] for x in X7]
    for j in range(5, 7):
        k = 11 - j
        for fx, fy in itertools.product("DAE", "DAE"):
            x, y = f"{fx}{j}", f"{fy}{k}"
            if all(n[0] != "E" or int(n[1:]) in (6, 7, 8) for n in (x, y)):
                out.append(["D4", "D4", x, y])
    out += [["D4", "D4", x] for x in ("D11", "A11")]
    out += [["D4", x, y, z] for x, y, z in itertools.product(X5, X5, X5)]
    out += [["D4", "D10", x] for x in X5]
    return out


@pytest.fixture(scope="session")
def six_lines_curve():
    from sextic_alexander.constructions import six_lines

    return six_lines()


@pytest.fixture(scope="session")
def torus_curve():
    from sextic_alexander.constructions import torus_six_cusps

    return torus_six_cusps()


@pytest.fixture(scope="session")
def linear_torus_curve():
    from sextic_alexander.constructions import linear_torus_3A5

    return linear_torus_3A5()


@pytest.fixture(scope="session")
def nine_cusp_curve():
    from sextic_alexander.constructions import nine_cuspidal

    return nine_cuspidal()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {ok}  {detail}")
