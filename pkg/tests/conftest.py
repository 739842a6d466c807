import pytest

from aspkit.parser import parse_program

# The running example: five answer sets {p,q},{p,r},{p,s},{p,s,t},{s,t}.
TOY_TEXT = """\
1 {p, t} :- 1 {r, s, not t} 2.
{q, r} 1 :- 1 {p, t}.
s :- not q, not r.
"""

TOY_MIN_TEXT = TOY_TEXT + "#minimize[p=1@1, q=1@1, r=1@1, s=1@1].\n"

# Hand-ground network-repair toy: two faults, each fixable by an edge
# flip (weight-1 group) or by relaxing vertices (weight-2 group).
REPAIR_TEXT = """\
{ef_a}.
{ef_b}.
{rv_x}.
{rv_y}.
ok1 :- ef_a.
ok1 :- rv_x, rv_y.
ok2 :- ef_b.
ok2 :- rv_y.
:- not ok1.
:- not ok2.
#minimize[ef_a=1@1, ef_b=1@1, rv_x=2@1, rv_y=2@1].
"""


@pytest.fixture
def toy():
    return parse_program(TOY_TEXT)


@pytest.fixture
def toy_min():
    return parse_program(TOY_MIN_TEXT)


@pytest.fixture
def repair():
    return parse_program(REPAIR_TEXT)
