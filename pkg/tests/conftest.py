from fractions import Fraction

from hypothesis import strategies as st

from raabe.exact_algebra import Polynomial

small_ints = st.integers(min_value=-50, max_value=50)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=30))


def polynomials(max_degree=8):
    return st.lists(rationals, max_size=max_degree + 1).map(Polynomial)


# filled by test_acceptance; one line per criterion
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
