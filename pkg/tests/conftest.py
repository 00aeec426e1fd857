import pytest

from aaidx import reference, testkit

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def education_elite():
    return reference.education_elite_set()


@pytest.fixture(scope="session")
def small_generated():
    """A 6-journal generated corpus shared by read-only tests."""
    spec = testkit.GenSpec(seed=11, journals=6, articles_per_journal=90,
                           elite_fraction_per_journal=(0.1, 0.25, 0.4), missing_affiliation_rate=0.03)
    corpus, truth, universe = testkit.gen_corpus(spec)
    return corpus, truth, universe
