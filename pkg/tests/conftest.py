import pytest

from cgeltk import data
from cgeltk.interop.conllu import read_conllu_file
from cgeltk.interop.ptb import read_ptb_file
from cgeltk.notation import read_file

WH_CLAUSE = """\
# sent_id = wh-1
(Clause
    :Prenucleus (NP :x
        :Det-Head (DP
            :Head (D :t "which")))
    :Head (Clause
        :Subj (NP
            :Head (Nom
                :Head (N :t "Liz")))
        :Head (VP
            :Head (V :t "bought" :l "buy")
            :Obj (GAP :x))))
"""


@pytest.fixture(scope="session")
def mini_text():
    return data.path(data.MINI_CGEL).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def mini_trees():
    return read_file(data.path(data.MINI_CGEL)).trees


@pytest.fixture(scope="session")
def mini_by_id(mini_trees):
    return {t.id: t for t in mini_trees}


@pytest.fixture(scope="session")
def mini_ud():
    return read_conllu_file(data.path(data.MINI_CONLLU))


@pytest.fixture(scope="session")
def mini_ptb():
    return read_ptb_file(data.path(data.MINI_PTB))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
