import pytest

from maskcrypt.groups import GroupElement, SubgroupSpec
from maskcrypt.numtheory import Factorization
from maskcrypt.paramgen import FieldParams, RingParams, assemble_mask_params
from maskcrypt.schemes import DhSession, ElGamalSubgroupKeyPair


# Naive oracles. Deliberately share no code with the package.

def naive_pow(base, exp, m):
    acc = 1 % m
    for _ in range(exp):
        acc = acc * base % m
    return acc


def naive_order(g, m):
    acc, k = g % m, 1
    while acc != 1:
        acc, k = acc * g % m, k + 1
    return k


def naive_gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def naive_phi(m):
    return sum(1 for x in range(1, m) if naive_gcd(x, m) == 1)


def naive_is_prime(m):
    return m >= 2 and all(m % d for d in range(2, int(m**0.5) + 1))


def naive_closure(gens, m):
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % m
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# Toy parameter sets used throughout: F_31 with H = gp(5), U = gp(2), and
# Z_77 with H = gp(23), U = gp(36).

@pytest.fixture
def field31():
    return FieldParams(31, Factorization.of([2, 3, 5]))


@pytest.fixture
def f31_params(field31):
    H = SubgroupSpec.of(31, [5], [3])
    U = SubgroupSpec.of(31, [2], [5])
    return assemble_mask_params(field31, H, U)


@pytest.fixture
def ring77():
    return RingParams(77, 7, 11, 60, Factorization.of([2, 3]), Factorization.of([2, 5]))


@pytest.fixture
def z77_params(ring77):
    H = SubgroupSpec.of(77, [23], [3])
    U = SubgroupSpec.of(77, [36], [5])
    return assemble_mask_params(ring77, H, U)


@pytest.fixture
def elgamal31(field31):
    return ElGamalSubgroupKeyPair.derive(field31, GroupElement(3, 31), 3, 5)


@pytest.fixture
def dh31(field31):
    H = SubgroupSpec.of(31, [5], [3])
    U = SubgroupSpec.of(31, [2], [5])
    return DhSession(field31, GroupElement(3, 31), 3, 5, 1, 1, H, U)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance" in report.nodeid:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_ACCEPTANCE.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
