import itertools

from hypothesis import settings, strategies as st

from cantorlab.automata import ParityAutomaton, UPWord

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def automata(draw, alphabet_size=2, max_states=4, max_prio=4):
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in range(alphabet_size)] for _ in range(n)]
    prio = [[draw(st.integers(0, max_prio)) for _ in range(alphabet_size)] for _ in range(n)]
    return ParityAutomaton.build(alphabet_size, 0, delta, prio)


def words(alphabet_size=2, max_stem=4, max_cycle=4):
    letters = st.integers(0, alphabet_size - 1)
    return st.builds(UPWord, st.lists(letters, max_size=max_stem),
                     st.lists(letters, min_size=1, max_size=max_cycle))


def all_words(max_stem=3, max_cycle=3):
    for ls in range(max_stem + 1):
        for lc in range(1, max_cycle + 1):
            for stem in itertools.product((0, 1), repeat=ls):
                for cyc in itertools.product((0, 1), repeat=lc):
                    yield UPWord(stem, cyc)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
