"""Partitioned genus distributions and amalgamation chains.

A singly rooted graph carries the pair (D, S): embeddings in which two
distinct faces meet the root, and embeddings in which one face meets it
twice.  A doubly rooted graph carries ten partials ``dd0 dd1 dd2 ds0 ds1
sd0 sd1 ss0 ss1 ss2`` (``dd1``/``dd2`` are the primed classes dd', dd'').
They are opaque inputs here; only their sums are checked against
enumeration.

Amalgamating (G, t) with (H, u, v) at ``t ~ u`` (vertex mode) or at root
edges (edge mode) gives (X, v), whose partials are linear in the inputs.
The recursions are stored as coefficient rows (``VERTEX_TERMS``,
``EDGE_TERMS``) and evaluated term by term; the same result is also
computed through the four abbreviations A1, A2, B1, B2 and the two are
compared on every call.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, fields

from .seqcore import (
    ConsistencyError,
    Seq,
    Verdict,
    Witness,
    ZERO,
    combine,
    convolve,
    has_no_internal_zeros,
    is_log_concave,
    offset_seq,
    ratio_dominates,
    sumclvls_premises,
)

PARTIALS = ("dd0", "dd1", "dd2", "ds0", "ds1", "sd0", "sd1", "ss0", "ss1", "ss2")
GROUPS = {
    "DD": ("dd0", "dd1", "dd2"),
    "DS": ("ds0", "ds1"),
    "SD": ("sd0", "sd1"),
    "SS": ("ss0", "ss1", "ss2"),
}
MODES = ("vertex", "edge")
# "vertex-complete" replaces the vertex S-term 2D*ds1+ by 2D*DS+; it is the
# form that matches exhaustive enumeration of amalgamated graphs.
VARIANTS = MODES + ("vertex-complete",)


@dataclass(frozen=True)
class SingleRootPGD:
    D: Seq = ZERO
    S: Seq = ZERO

    @property
    def gamma(self) -> Seq:
        return self.D + self.S

    def total(self) -> int:
        return self.D.total() + self.S.total()


@dataclass(frozen=True)
class DoubleRootPGD:
    dd0: Seq = ZERO
    dd1: Seq = ZERO
    dd2: Seq = ZERO
    ds0: Seq = ZERO
    ds1: Seq = ZERO
    sd0: Seq = ZERO
    sd1: Seq = ZERO
    ss0: Seq = ZERO
    ss1: Seq = ZERO
    ss2: Seq = ZERO

    def group(self, name: str) -> Seq:
        """One of the groupings DD, DS, SD, SS, or a single partial by name."""
        if name in GROUPS:
            return combine([1] * len(GROUPS[name]), [getattr(self, p) for p in GROUPS[name]])
        return getattr(self, name)

    @property
    def DD(self) -> Seq:
        return self.group("DD")

    @property
    def DS(self) -> Seq:
        return self.group("DS")

    @property
    def SD(self) -> Seq:
        return self.group("SD")

    @property
    def SS(self) -> Seq:
        return self.group("SS")

    @property
    def gamma(self) -> Seq:
        return self.DD + self.DS + self.SD + self.SS

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


@dataclass(frozen=True)
class AbbrevQuad:
    A1: Seq
    A2: Seq
    B1: Seq
    B2: Seq

    def as_lists(self) -> tuple[list[Seq], list[Seq]]:
        return [self.A1, self.A2], [self.B1, self.B2]


# ---------------------------------------------------------------------------
# Recursions as coefficient rows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """``coef * G_part * H_class`` added to output ``target`` (H_class shifted by one if ``plus``)."""

    target: str  # "D" or "S"
    coef: int
    g_part: str  # "D" or "S"
    h_class: str  # a grouping or a single partial
    plus: bool = False


_T = Term
VERTEX_TERMS = (
    _T("D", 4, "D", "DD"),
    _T("D", 2, "D", "dd0", True),
    _T("D", 2, "D", "dd1", True),
    _T("D", 6, "S", "DD"),
    _T("D", 6, "D", "SD"),
    _T("D", 6, "S", "SD"),
    _T("D", 2, "D", "ss2"),
    _T("S", 2, "D", "dd2", True),
    _T("S", 4, "D", "DS"),
    _T("S", 2, "D", "ds1", True),
    _T("S", 6, "S", "DS"),
    _T("S", 6, "D", "ss0"),
    _T("S", 6, "D", "ss1"),
    _T("S", 4, "D", "ss2"),
    _T("S", 6, "S", "SS"),
)
EDGE_TERMS = (
    _T("D", 2, "D", "DD"),
    _T("D", 2, "D", "dd0", True),
    _T("D", 2, "D", "dd1", True),
    _T("D", 4, "D", "SD"),
    _T("D", 2, "D", "ss2"),
    _T("D", 4, "S", "DD"),
    _T("D", 4, "S", "sd1"),
    _T("S", 2, "D", "dd2", True),
    _T("S", 2, "D", "DS"),
    _T("S", 2, "D", "DS", True),
    _T("S", 4, "D", "ss0"),
    _T("S", 4, "D", "ss1"),
    _T("S", 2, "D", "ss2"),
    _T("S", 4, "S", "DS"),
    _T("S", 4, "S", "SS"),
)
VERTEX_COMPLETE_TERMS = tuple(
    _T("S", 2, "D", "DS", True) if (t.target, t.h_class) == ("S", "ds1") else t for t in VERTEX_TERMS
)
TERMS = {"vertex": VERTEX_TERMS, "edge": EDGE_TERMS, "vertex-complete": VERTEX_COMPLETE_TERMS}
# (first-block weight on D, second-block weights on D and S)
COMPACT_WEIGHTS = {"vertex": (2, 4, 6), "edge": (2, 2, 4), "vertex-complete": (2, 4, 6)}


def _check_mode(mode: str) -> None:
    if mode not in TERMS:
        raise ValueError(f"unknown amalgamation mode {mode!r}; expected one of {', '.join(VARIANTS)}")


def _by_displayed_terms(g: SingleRootPGD, h: DoubleRootPGD, mode: str) -> SingleRootPGD:
    out = {"D": ZERO, "S": ZERO}
    for t in TERMS[mode]:
        hs = h.group(t.h_class)
        if t.plus:
            hs = offset_seq(hs)
        out[t.target] = out[t.target] + t.coef * convolve(getattr(g, t.g_part), hs)
    return SingleRootPGD(out["D"], out["S"])


def _by_abbreviations(g: SingleRootPGD, h: DoubleRootPGD, mode: str) -> SingleRootPGD:
    q = abbreviate(h, mode)
    w1, wd, ws = COMPACT_WEIGHTS[mode]
    first = w1 * g.D
    second = combine([wd, ws], [g.D, g.S])
    return SingleRootPGD(first * q.A1 + second * q.A2, first * q.B1 + second * q.B2)


def mass_multipliers(mode: str) -> dict[tuple[str, str], int]:
    """Total coefficient on each (G part, single H partial) cell.

    Summing every output entry of a recursion gives
    ``sum over cells of m[cell] * |G part| * |H partial|``; these are the
    ``m`` values, read off the coefficient rows by expanding each grouping
    into its partials.  Merging two 2-valent vertices into one 4-valent
    vertex has 3! = 6 rotations and merging two root edges leaves two
    3-valent vertices with 2 * 2 = 4, so a recursion that accounts for every
    embedding has every cell equal to 6 (vertex) or 4 (edge).
    """
    _check_mode(mode)
    m = {(gp, p): 0 for gp in "DS" for p in PARTIALS}
    for t in TERMS[mode]:
        for p in GROUPS.get(t.h_class, (t.h_class,)):
            m[t.g_part, p] += t.coef
    return m


def predicted_total(g: SingleRootPGD, h: DoubleRootPGD, mode: str) -> int:
    """Sum of the output entries, predicted from the input totals alone."""
    parts = {"D": g.D.total(), "S": g.S.total()}
    return sum(c * parts[gp] * getattr(h, p).total() for (gp, p), c in mass_multipliers(mode).items())


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def suppress_first_root(h: DoubleRootPGD) -> SingleRootPGD:
    return SingleRootPGD(h.DD + h.SD, h.DS + h.SS)


def abbrev_vertex(h: DoubleRootPGD) -> AbbrevQuad:
    return AbbrevQuad(
        A1=offset_seq(h.dd0) + offset_seq(h.dd1) + h.ss2 + h.SD,
        A2=h.SD + h.DD,
        B1=offset_seq(h.ds1) + offset_seq(h.dd2) + h.ss0 + h.ss1,
        B2=h.SS + h.DS,
    )


def abbrev_vertex_complete(h: DoubleRootPGD) -> AbbrevQuad:
    q = abbrev_vertex(h)
    return AbbrevQuad(q.A1, q.A2, offset_seq(h.DS) + offset_seq(h.dd2) + h.ss0 + h.ss1, q.B2)


def abbrev_edge(h: DoubleRootPGD) -> AbbrevQuad:
    return AbbrevQuad(
        A1=offset_seq(h.dd0) + offset_seq(h.dd1) + h.ss2 + h.sd0 + h.SD,
        A2=h.sd1 + h.DD,
        B1=offset_seq(h.DS) + offset_seq(h.dd2) + h.ss0 + h.ss1,
        B2=h.SS + h.DS,
    )


def abbreviate(h: DoubleRootPGD, mode: str) -> AbbrevQuad:
    if mode == "vertex":
        return abbrev_vertex(h)
    if mode == "edge":
        return abbrev_edge(h)
    if mode == "vertex-complete":
        return abbrev_vertex_complete(h)
    raise ValueError(f"unknown amalgamation mode {mode!r}")


def evaluate_routes(g: SingleRootPGD, h: DoubleRootPGD, mode: str) -> tuple[SingleRootPGD, SingleRootPGD]:
    """The recursion evaluated term by term and through the abbreviations."""
    _check_mode(mode)
    return _by_displayed_terms(g, h, mode), _by_abbreviations(g, h, mode)


def amalgamate(g: SingleRootPGD, h: DoubleRootPGD, mode: str) -> SingleRootPGD:
    """Partials of the amalgamated graph; both evaluation routes must agree."""
    displayed, compact = evaluate_routes(g, h, mode)
    if displayed != compact:
        raise ConsistencyError(f"{mode} recursion: term-by-term {displayed} != abbreviated {compact}")
    return displayed


def amalgamate_vertex(g: SingleRootPGD, h: DoubleRootPGD) -> SingleRootPGD:
    return amalgamate(g, h, "vertex")


def amalgamate_edge(g: SingleRootPGD, h: DoubleRootPGD) -> SingleRootPGD:
    return amalgamate(g, h, "edge")


def check_amalgamand(h: DoubleRootPGD, mode: str) -> Verdict:
    """Premise for certified chains: abbreviations gap-free and lexicographic."""
    q = abbreviate(h, mode)
    for name in ("A1", "A2", "B1", "B2"):
        v = has_no_internal_zeros(getattr(q, name))
        if not v:
            return v.located(name)
    return sumclvls_premises(*q.as_lists())


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    step: int
    amalgamand: str
    mode: str
    D: Seq
    S: Seq
    dominance: Verdict
    gamma_log_concave: Verdict
    premise: Verdict | None

    @property
    def gamma(self) -> Seq:
        return self.D + self.S


@dataclass
class ChainReport:
    init: SingleRootPGD
    steps: list[ChainStep] = field(default_factory=list)
    certified: bool = False

    @property
    def final(self) -> SingleRootPGD:
        if not self.steps:
            return self.init
        last = self.steps[-1]
        return SingleRootPGD(last.D, last.S)

    @property
    def all_hold(self) -> bool:
        return all(
            s.dominance and s.gamma_log_concave and (s.premise is None or s.premise) for s in self.steps
        )


class CertificationError(RuntimeError):
    def __init__(self, step: int, what: str, verdict: Verdict):
        super().__init__(f"step {step}: {what} fails: {verdict.witness}")
        self.step = step
        self.what = what
        self.verdict = verdict


def run_chain(init: SingleRootPGD, amalgamands, certify: bool = False) -> ChainReport:
    """Iterate amalgamations; ``amalgamands`` holds ``(pgd, mode)`` or ``(name, pgd, mode)``.

    With ``certify`` the premises (initial ``D ≲ S`` and every amalgamand's
    lexicographic conditions) are checked up front, and after each step
    ``D ≲ S`` and log-concavity of ``D + S`` are checked; the first failure
    raises :class:`CertificationError`.  Without it, every verdict is
    recorded and the chain runs to the end.
    """
    items = []
    for i, item in enumerate(amalgamands):
        if len(item) == 2:
            items.append((f"H{i + 1}", *item))
        else:
            items.append(tuple(item))
    report = ChainReport(init, certified=certify)
    if certify:
        v = ratio_dominates(init.D, init.S)
        if not v:
            raise CertificationError(0, "initial D ≲ S", v)
        for i, (name, h, mode) in enumerate(items, 1):
            v = check_amalgamand(h, mode)
            if not v:
                raise CertificationError(i, f"premise of {name}", v)
    cur = init
    for i, (name, h, mode) in enumerate(items, 1):
        premise = check_amalgamand(h, mode)
        cur = amalgamate(cur, h, mode)
        step = ChainStep(
            i, name, mode, cur.D, cur.S,
            ratio_dominates(cur.D, cur.S), is_log_concave(cur.gamma), premise,
        )
        report.steps.append(step)
        if certify:
            if not step.dominance:
                raise CertificationError(i, "D ≲ S", step.dominance)
            if not step.gamma_log_concave:
                raise CertificationError(i, "log-concavity of D + S", step.gamma_log_concave)
    return report


# ---------------------------------------------------------------------------
# Loading checks
# ---------------------------------------------------------------------------


class PGDError(ValueError):
    pass


def check_single(pgd: SingleRootPGD, label: str = "") -> SingleRootPGD:
    v = has_no_internal_zeros(pgd.gamma)
    if not v:
        raise PGDError(f"{label}: D + S = {pgd.gamma} has an internal zero at {v.witness.k}")
    for name in ("D", "S"):
        if not has_no_internal_zeros(getattr(pgd, name)):
            warnings.warn(f"{label}: partial {name} has internal zeros", stacklevel=2)
    return pgd


def check_double(pgd: DoubleRootPGD, label: str = "") -> DoubleRootPGD:
    """Groupings are recomputed from the ten partials; their sum must be gap-free."""
    v = has_no_internal_zeros(pgd.gamma)
    if not v:
        raise PGDError(f"{label}: DD+DS+SD+SS = {pgd.gamma} has an internal zero at {v.witness.k}")
    return pgd


__all__ = [
    "AbbrevQuad",
    "CertificationError",
    "ChainReport",
    "ChainStep",
    "DoubleRootPGD",
    "SingleRootPGD",
    "abbrev_edge",
    "abbrev_vertex",
    "abbrev_vertex_complete",
    "abbreviate",
    "amalgamate",
    "amalgamate_edge",
    "amalgamate_vertex",
    "check_amalgamand",
    "evaluate_routes",
    "mass_multipliers",
    "predicted_total",
    "run_chain",
    "suppress_first_root",
]
