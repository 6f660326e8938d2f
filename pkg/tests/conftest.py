import numpy as np
import pytest

from rounded_moments import DistributionSpec, Family, NormalizedForm, RoundingSpec

FAMILIES = (Family.NORMAL, Family.LAPLACE, Family.UNIFORM)
SIGMAS = (0.3, 0.7, 1.0, 2.0, 5.0)
CHIS = (-0.5, -0.3, 0.0, 0.25, 0.5)
DELTAS = (-0.5, 0.0, 0.37)


def grid_points():
    """(family, sigma, chi, delta, mu) over the standard test grid, w = 1."""
    for fam in FAMILIES:
        for sigma in SIGMAS:
            for chi in CHIS:
                for delta in DELTAS:
                    # M = 2 keeps the window away from the origin
                    yield fam, sigma, chi, delta, 2.0 + delta + chi


@pytest.fixture
def unit():
    return RoundingSpec()


@pytest.fixture
def std_normal():
    return DistributionSpec(Family.NORMAL, 0.0, 1.0)


def _exp_F(u):
    u = np.asarray(u, dtype=float)
    return np.where(u >= -1.0, np.exp(-np.maximum(u + 1.0, 0.0)), 0.0)


def _exp_Phi(tau):
    tau = np.asarray(tau, dtype=float)
    return np.exp(-1j * tau) / (1.0 - 1j * tau)


def _exp_dPhi(tau):
    tau = np.asarray(tau, dtype=float)
    return np.exp(-1j * tau) * (-1j / (1.0 - 1j * tau) + 1j / (1.0 - 1j * tau) ** 2)


# Exponential distribution shifted to zero mean: an asymmetric custom family.
SHIFTED_EXP = NormalizedForm(_exp_F, _exp_Phi, _exp_dPhi, symmetric=False,
                             breakpoints=(-1.0,), support=(-1.0, np.inf),
                             sampler=lambda ua, ub: -np.log1p(-ua) - 1.0,
                             name="shifted-exponential")


@pytest.fixture
def shifted_exp():
    return SHIFTED_EXP


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log(capsys):
    def log(line):
        _ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
