from __future__ import annotations

import pytest

from lcgd.seqcore import Seq

# lines appended by the acceptance tests, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def S(*entries, offset=0) -> Seq:
    return Seq(list(entries), offset)


@pytest.fixture
def seq():
    return S


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def max_ratio_sequence(seqs) -> Seq:
    """The dominating sequence B with b_k / b_(k-1) = max_i a_(i,k) / a_(i,k-1).

    B starts at the latest first-nonzero index among the members and is
    scaled to integers.
    """
    from fractions import Fraction
    from math import lcm

    k0 = max(s.lo for s in seqs)
    h0 = max(s.hi for s in seqs)
    b = [Fraction(1)]
    for k in range(k0 + 1, h0 + 1):
        ratios = [Fraction(s[k], s[k - 1]) for s in seqs if s[k - 1] > 0]
        step = max(ratios, default=Fraction(0))
        if step == 0:
            break
        b.append(b[-1] * step)
    scale = lcm(*(x.denominator for x in b))
    return Seq([int(x * scale) for x in b], k0)
