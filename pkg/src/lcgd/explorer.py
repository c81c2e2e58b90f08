"""Search harness: fuzz the sequence theorems, scan graphs, hunt for witnesses.

Each fuzz suite is a :class:`Theorem`: a generator of candidate instances, a
*domain* (side conditions such as log-concavity or no internal zeros), a
*premise* (the hypothesis proper) and a *conclusion* returning a
:class:`~lcgd.seqcore.Verdict`.  Candidates are drawn until one satisfies
domain and premise; a proved theorem must then never fail its conclusion.
With ``negate=True`` the premise is inverted, which is how the harness shows
it can find failures at all.

Trials run in fixed-size chunks, each with its own generator seeded from
``(seed, theorem, chunk)``.  The chunking does not depend on the number of
workers, so a report is the same for any ``jobs``.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .embed import CapExceeded, Graph, partials_edge_root, partials_vertex_root
from .seqcore import (
    Seq,
    Verdict,
    Witness,
    combine,
    convolve,
    has_no_internal_zeros,
    in_gtLC,
    in_ltLC,
    in_tLC,
    interlocked,
    is_lexicographic,
    is_log_concave,
    lex_families,
    offset_seq,
    ratio_dominates,
    sumclvls_premises,
    synchronized,
)

CHUNK = 500
BUDGET = 100  # candidate draws allowed per requested trial


class StarvationError(RuntimeError):
    def __init__(self, theorem: str, accepted: int, attempts: int):
        super().__init__(
            f"{theorem}: only {accepted} premise-satisfying instances in {attempts} draws; "
            "loosen the generator bounds or lower the trial count"
        )
        self.theorem = theorem
        self.accepted = accepted
        self.attempts = attempts


@dataclass(frozen=True)
class FuzzSpec:
    theorem: str
    trials: int = 10_000
    max_len: int = 6
    max_entry: int = 50
    seed: int = 0
    negate: bool = False

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem id {self.theorem!r}; known: {', '.join(THEOREMS)}")
        if self.trials < 1 or self.max_len < 1 or self.max_entry < 1:
            raise ValueError("trials, max_len and max_entry must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class ScanReport:
    kind: str
    params: dict
    examined: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "examined": self.examined,
            "violations": self.violations,
            "notes": self.notes,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


# ---------------------------------------------------------------------------
# Instance generators
# ---------------------------------------------------------------------------


def _fits(s: Seq, spec: FuzzSpec) -> bool:
    return len(s.entries) <= spec.max_len and all(x <= spec.max_entry for x in s.entries)


def random_seq(rng: random.Random, spec: FuzzSpec) -> Seq:
    """Uniform raw entries with a random zero prefix."""
    n = rng.randint(1, spec.max_len)
    lead = rng.randint(0, min(2, n - 1))
    return Seq([0] * lead + [rng.randint(0, spec.max_entry) for _ in range(n - lead)])


def real_rooted_seq(rng: random.Random, spec: FuzzSpec) -> Seq:
    """Product of linear factors ``p + q x``: log-concave with no internal zeros."""
    for _ in range(20):
        s = Seq([rng.randint(1, 3)])
        for _ in range(rng.randint(0, spec.max_len - 1)):
            s = s * Seq([rng.randint(1, 4), rng.randint(1, 4)])
        if rng.random() < 0.3:
            s = s.shift(rng.randint(0, 2))
        if _fits(s, spec):
            return s
    return Seq([rng.randint(1, spec.max_entry)], rng.randint(0, 1))


def lc_seq(rng: random.Random, spec: FuzzSpec) -> Seq:
    """A mix of raw draws and log-concave constructions."""
    r = rng.random()
    if r < 0.4:
        return real_rooted_seq(rng, spec)
    if r < 0.55:
        # geometric-like runs; these sit on the log-concavity boundary
        n = rng.randint(1, spec.max_len)
        base, ratio = rng.randint(1, 3), rng.randint(1, 3)
        s = Seq([base * ratio ** k for k in range(n)])
        s = Seq(list(reversed(s.entries))) if rng.random() < 0.5 else s
        return s if _fits(s, spec) else real_rooted_seq(rng, spec)
    return random_seq(rng, spec)


def dominating_pair(rng: random.Random, spec: FuzzSpec) -> tuple[Seq, Seq]:
    """Candidate ``A ≲ B`` pair: raw, shifted, or multiplied by a linear factor."""
    a = lc_seq(rng, spec)
    r = rng.random()
    if r < 0.3:
        b = offset_seq(a) if rng.random() < 0.5 else a * rng.randint(1, 3)
    elif r < 0.65:
        b = a * Seq([rng.randint(0, 3), rng.randint(1, 4)])
    else:
        b = lc_seq(rng, spec)
    if not _fits(b, spec):
        b = lc_seq(rng, spec)
    return a, b


def _weights(rng: random.Random, n: int, top: int = 5) -> tuple[int, ...]:
    return tuple(rng.randint(0, top) for _ in range(n))


def _fan(rng: random.Random, spec: FuzzSpec, n: int) -> tuple[Seq, ...] | None:
    """``base * (p_i, q_i)`` with ``q_i / p_i`` increasing: ordered by construction."""
    small = FuzzSpec("sumls", 1, max(1, spec.max_len - 1), max(1, spec.max_entry // 4))
    base = real_rooted_seq(rng, small)
    factors = []
    while len(factors) < n:
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        if p or q:
            factors.append((p, q))
    factors.sort(key=lambda f: Fraction(f[1], f[0]) if f[0] else math.inf)
    out = []
    for p, q in factors:
        s = base * Seq([p, q])
        if not _fits(s, spec):
            return None
        out.append(s)
    return tuple(out)


def ordered_family(rng: random.Random, spec: FuzzSpec, n: int) -> tuple[Seq, ...]:
    """Candidate ltLC family built by repeated dominating steps.

    Each step shifts, repeats, or multiplies by a short linear factor, all of
    which preserve ``≲`` for log-concave inputs; a step that would break the
    generator bounds is replaced by a fresh draw.
    """
    if rng.random() < 0.5:
        fan = _fan(rng, spec, n)
        if fan is not None:
            return fan
    small = FuzzSpec("sumls", 1, max(1, spec.max_len - n + 1), spec.max_entry)
    first = real_rooted_seq if rng.random() < 0.7 else lc_seq
    out = [first(rng, small if rng.random() < 0.6 else spec)]
    while len(out) < n:
        prev = out[-1]
        r = rng.random()
        if r < 0.25:
            nxt = offset_seq(prev)
        elif r < 0.4:
            nxt = prev
        elif r < 0.75:
            nxt = prev * Seq([rng.randint(0, 2), rng.randint(1, 3)])
        else:
            nxt = lc_seq(rng, spec)
        if not _fits(nxt, spec):
            nxt = lc_seq(rng, spec)
        out.append(nxt)
    return tuple(out)


# ---------------------------------------------------------------------------
# Theorems
# ---------------------------------------------------------------------------


def _all(*verdicts) -> bool:
    return all(bool(v) for v in verdicts)


def _gapless(*seqs: Seq) -> bool:
    return all(has_no_internal_zeros(s) for s in seqs)


def _lc_gapless(*seqs: Seq) -> bool:
    return all(has_no_internal_zeros(s) and is_log_concave(s) for s in seqs)


def _locked(*groups) -> bool:
    """Every group interlocked; see :func:`lcgd.seqcore.interlocked`."""
    return all(interlocked(g) for g in groups)


def _iff(name: str, left: bool, right: bool) -> Verdict:
    if left == right:
        return Verdict(True)
    return Verdict(False, Witness(name, 0, left, right))


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    draw: Callable
    domain: Callable
    premise: Callable
    conclusion: Callable


def _draw_convo(rng, spec):
    a, b = dominating_pair(rng, spec)
    if rng.random() < 0.5:
        a, b = b, a
    return {"A": a, "B": b, "C": lc_seq(rng, spec)}


def _draw_pwconvo(rng, spec):
    a, b = dominating_pair(rng, spec)
    c, d = dominating_pair(rng, spec)
    return {"A": a, "B": b, "C": c, "D": d}


def _draw_collection(rng, spec):
    n = rng.randint(1, 3)
    fam = ordered_family(rng, spec, n)
    fam = tuple(rng.sample(fam, n))
    return {"As": fam, "u": _weights(rng, n), "v": _weights(rng, n)}


def _draw_sumls(rng, spec):
    n, m = rng.randint(1, 2), rng.randint(1, 2)
    fam = ordered_family(rng, spec, n + m)
    return {"As": fam[:n], "Bs": fam[n:], "u": _weights(rng, n), "v": _weights(rng, m)}


def _draw_pair(rng, spec):
    a, b = dominating_pair(rng, spec)
    return {"A": a, "B": b}


def _draw_simls(rng, spec):
    a, b = dominating_pair(rng, spec)
    if rng.random() < 0.5:
        a, b = b, a
    return {"A": a, "B": b}


def _draw_four(rng, spec):
    a, b, c, d = ordered_family(rng, spec, 4)
    return {"A": a, "B": b, "C": c, "D": d}


def _draw_bcac(rng, spec):
    a, b = dominating_pair(rng, spec)
    return {"A": a, "B": b, "C": lc_seq(rng, spec)}


def _draw_sumclvls(rng, spec):
    # larger families are rejected more often, so draw them more often
    n = rng.choice((1, 2, 2, 3, 3, 3))
    # the paper's amalgamand quadruples have this shape: B_i sits one step
    # above A_i, and both families decrease in i
    base = ordered_family(rng, spec, n + 1)
    if rng.random() < 0.6:
        As = tuple(reversed(base[:n]))
        Bs = tuple(reversed(base[1:]))
    else:
        As = tuple(lc_seq(rng, spec) for _ in range(n))
        Bs = tuple(lc_seq(rng, spec) for _ in range(n))
    Ws = ordered_family(rng, spec, n)
    return {"As": As, "Bs": Bs, "Ws": Ws}


def _sum_conv(ws, xs) -> Seq:
    out = Seq()
    for w, x in zip(ws, xs):
        out = out + convolve(w, x)
    return out


def _lx_consequences(As, Bs) -> Verdict:
    for i, v in enumerate([in_gtLC(As), in_gtLC(Bs)]):
        if not v:
            return v.located("As" if i == 0 else "Bs")
    for i, (a, b) in enumerate(zip(As, Bs)):
        v = ratio_dominates(a, b)
        if not v:
            return v.located(i)
    return Verdict(True)


def _offset_laws(x) -> Verdict:
    a, b = x["A"], x["B"]
    ab = bool(ratio_dominates(a, b))
    v = _iff("A≲B iff B≲A+", ab, bool(ratio_dominates(b, offset_seq(a))))
    if not v:
        return v
    v = _iff("A≲B iff A+≲B+", ab, bool(ratio_dominates(offset_seq(a), offset_seq(b))))
    if not v or not is_log_concave(a):
        return v
    return ratio_dominates(a, offset_seq(a)).located("A≲A+")


_TH = Theorem
THEOREMS: dict[str, Theorem] = {
    t.id: t
    for t in [
        _TH(
            "convo-sync",
            "A ~ B, all log-concave without internal zeros => A*C ~ B*C",
            _draw_convo,
            lambda x: _lc_gapless(x["A"], x["B"], x["C"]) and _locked([x["A"], x["B"]], [x["C"]]),
            lambda x: bool(synchronized(x["A"], x["B"])),
            lambda x: synchronized(convolve(x["A"], x["C"]), convolve(x["B"], x["C"])),
        ),
        _TH(
            "pwconvo",
            "A ≲ B and C ≲ D, no internal zeros => A*D ~ B*C",
            _draw_pwconvo,
            lambda x: _locked([x["A"], x["B"]], [x["C"], x["D"]]),
            lambda x: _all(ratio_dominates(x["A"], x["B"]), ratio_dominates(x["C"], x["D"])),
            lambda x: synchronized(convolve(x["A"], x["D"]), convolve(x["B"], x["C"])),
        ),
        _TH(
            "lincomb",
            "collection in tLC => sum u_i A_i ~ sum v_i A_i",
            _draw_collection,
            lambda x: _locked(x["As"]),
            lambda x: bool(in_tLC(x["As"])),
            lambda x: synchronized(combine(x["u"], x["As"]), combine(x["v"], x["As"])),
        ),
        _TH(
            "sumls",
            "every A_i ≲ every B_j => sum u_i A_i ≲ sum v_j B_j",
            _draw_sumls,
            lambda x: _locked([*x["As"], *x["Bs"]]),
            lambda x: all(ratio_dominates(a, b) for a in x["As"] for b in x["Bs"]),
            lambda x: ratio_dominates(combine(x["u"], x["As"]), combine(x["v"], x["Bs"])),
        ),
        _TH(
            "simls",
            "A ~ B and A ≲ A+B => A ≲ B",
            _draw_simls,
            lambda x: _locked([x["A"], x["B"]]),
            lambda x: _all(synchronized(x["A"], x["B"]), ratio_dominates(x["A"], x["A"] + x["B"])),
            lambda x: ratio_dominates(x["A"], x["B"]),
        ),
        _TH(
            "sumclvls",
            "W in ltLC, b/a and a/b families lexicographic, no internal zeros => sum W_i*A_i ≲ sum W_i*B_i",
            _draw_sumclvls,
            lambda x: _locked([*x["As"], *x["Bs"]], x["Ws"]),
            lambda x: _all(in_ltLC(x["Ws"]), sumclvls_premises(x["As"], x["Bs"])),
            lambda x: ratio_dominates(_sum_conv(x["Ws"], x["As"]), _sum_conv(x["Ws"], x["Bs"])),
        ),
        _TH(
            "ac-bc",
            "A ≲ B, all log-concave without internal zeros => A*C ≲ B*C",
            _draw_bcac,
            lambda x: _lc_gapless(x["A"], x["B"], x["C"]) and _locked([x["A"], x["B"]], [x["C"]]),
            lambda x: bool(ratio_dominates(x["A"], x["B"])),
            lambda x: ratio_dominates(convolve(x["A"], x["C"]), convolve(x["B"], x["C"])),
        ),
        _TH(
            "ac-bd",
            "(A, B, C, D) in ltLC, no internal zeros => A*C ≲ B*D",
            _draw_four,
            lambda x: _locked([x["A"], x["B"], x["C"], x["D"]]),
            lambda x: bool(in_ltLC([x["A"], x["B"], x["C"], x["D"]])),
            lambda x: ratio_dominates(convolve(x["A"], x["C"]), convolve(x["B"], x["D"])),
        ),
        _TH(
            "offset-laws",
            "A ≲ B <=> B ≲ A+ <=> A+ ≲ B+, and A ≲ A+ for log-concave A",
            _draw_pair,
            lambda x: _locked([x["A"], x["B"]]),
            lambda x: True,
            _offset_laws,
        ),
        _TH(
            "bc-ac+",
            "A ≲ B, all log-concave without internal zeros => B*C ≲ A*C+",
            _draw_bcac,
            lambda x: _lc_gapless(x["A"], x["B"], x["C"]) and _locked([x["A"], x["B"]], [x["C"]]),
            lambda x: bool(ratio_dominates(x["A"], x["B"])),
            lambda x: ratio_dominates(convolve(x["B"], x["C"]), convolve(x["A"], offset_seq(x["C"]))),
        ),
        _TH(
            "lx",
            "b/a and a/b families lexicographic => As, Bs in gtLC and A_i ≲ B_i",
            _draw_sumclvls,
            lambda x: _locked([*x["As"], *x["Bs"]]),
            lambda x: all(map(bool, _lex_verdicts(x))),
            lambda x: _lx_consequences(x["As"], x["Bs"]),
        ),
    ]
}


def _lex_verdicts(x):
    return [is_lexicographic(f) for f in lex_families(x["As"], x["Bs"])]


# ---------------------------------------------------------------------------
# Instance echo and replay
# ---------------------------------------------------------------------------


def _echo(v):
    from .io import seq_to_json

    if isinstance(v, Seq):
        return seq_to_json(v)
    if isinstance(v, tuple) and v and isinstance(v[0], Seq):
        return [seq_to_json(s) for s in v]
    if isinstance(v, tuple):
        return list(v)
    return v


def instance_to_json(x: dict) -> dict:
    return {k: _echo(v) for k, v in x.items()}


def instance_from_json(obj: dict) -> dict:
    from .io import seq_from_json

    out = {}
    for k, v in obj.items():
        if isinstance(v, dict):
            out[k] = seq_from_json(v)
        elif v and isinstance(v[0], dict):
            out[k] = tuple(seq_from_json(s) for s in v)
        else:
            out[k] = tuple(int(w) for w in v)
    return out


def replay(theorem: str, instance: dict, negate: bool = False) -> Verdict | None:
    """Conclusion verdict on an instance, or None if the (possibly negated) premise is not met."""
    t = THEOREMS[theorem]
    if not t.domain(instance) or t.premise(instance) == negate:
        return None
    return t.conclusion(instance)


def _is_violation(t: Theorem, x: dict, negate: bool) -> bool:
    v = replay(t.id, x, negate)
    return v is not None and not v.holds


# ---------------------------------------------------------------------------
# Minimization
# ---------------------------------------------------------------------------


def _seq_moves(s: Seq):
    e = list(s.entries)
    if len(e) > 1:
        yield Seq(e[1:], s.offset + 1)
        yield Seq(e[:-1], s.offset)
    if s.offset > 0:
        yield Seq(e, s.offset - 1)
    for i, x in enumerate(e):
        for y in sorted({0, x // 2, x - 1}):
            if 0 <= y < x:
                yield Seq(e[:i] + [y] + e[i + 1:], s.offset)


def _moves(x: dict):
    for k, v in x.items():
        if isinstance(v, Seq):
            for s in _seq_moves(v):
                yield {**x, k: s}
        elif v and isinstance(v[0], Seq):
            for i, s in enumerate(v):
                for t in _seq_moves(s):
                    yield {**x, k: v[:i] + (t,) + v[i + 1:]}
        else:
            for i, w in enumerate(v):
                for y in sorted({0, w // 2, w - 1}):
                    if 0 <= y < w:
                        yield {**x, k: v[:i] + (y,) + v[i + 1:]}


def minimize(theorem: str, x: dict, negate: bool = False, max_rounds: int = 1000) -> dict:
    """Greedy shrink: apply the first move that keeps the violation, repeat.

    Best-effort; the result is a violation but not necessarily a minimum.
    """
    t = THEOREMS[theorem]
    for _ in range(max_rounds):
        for y in _moves(x):
            if _is_violation(t, y, negate):
                x = y
                break
        else:
            return x
    return x


# ---------------------------------------------------------------------------
# Fuzzing
# ---------------------------------------------------------------------------


def _violation_record(t: Theorem, x: dict, negate: bool) -> dict:
    from .io import verdict_to_json

    small = minimize(t.id, x, negate)
    return {
        "theorem": t.id,
        "instance": instance_to_json(x),
        "minimized": instance_to_json(small),
        "verdict": verdict_to_json(replay(t.id, small, negate)),
    }


def _fuzz_chunk(args) -> tuple[int, int, list]:
    spec, chunk, trials = args
    t = THEOREMS[spec.theorem]
    rng = random.Random(f"{spec.seed}/{spec.theorem}/{chunk}")
    accepted = attempts = 0
    found = []
    while accepted < trials:
        if attempts >= BUDGET * trials:
            raise StarvationError(spec.theorem, accepted, attempts)
        attempts += 1
        x = t.draw(rng, spec)
        if not t.domain(x) or t.premise(x) == spec.negate:
            continue
        accepted += 1
        v = t.conclusion(x)
        if not v.holds:
            found.append(_violation_record(t, x, spec.negate))
    return accepted, attempts, found


def fuzz(spec: FuzzSpec, jobs: int = 1, max_reported: int = 20) -> ScanReport:
    """Draw ``spec.trials`` premise-satisfying instances and test the conclusion."""
    start = time.perf_counter()
    chunks = [(spec, c, min(CHUNK, spec.trials - c * CHUNK)) for c in range(-(-spec.trials // CHUNK))]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fuzz_chunk, chunks))
    else:
        results = [_fuzz_chunk(c) for c in chunks]
    report = ScanReport(
        "fuzz",
        {
            "theorem": spec.theorem,
            "statement": THEOREMS[spec.theorem].statement,
            "trials": spec.trials,
            "max_len": spec.max_len,
            "max_entry": spec.max_entry,
            "seed": spec.seed,
            "negate": spec.negate,
        },
    )
    attempts = 0
    total_found = 0
    for accepted, tried, found in results:
        report.examined += accepted
        attempts += tried
        total_found += len(found)
        report.violations.extend(found[: max(0, max_reported - len(report.violations))])
    report.notes.append(f"{attempts} candidates drawn for {report.examined} accepted instances")
    if total_found > len(report.violations):
        report.notes.append(f"{total_found} violations in total; first {len(report.violations)} reported")
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Graph scans
# ---------------------------------------------------------------------------


def _root_partials(g: Graph, cap: int | None):
    if g.root_edges:
        return "edge", g.root_edges[0], partials_edge_root(g, g.root_edges[0], cap)
    if g.root_vertices:
        return "vertex", g.root_vertices[0], partials_vertex_root(g, g.root_vertices[0], cap)
    raise ValueError(f"graph {g.name or '?'} has no root")


def partial_failures(D: Seq, S: Seq) -> list[dict]:
    from .io import verdict_to_json

    out = []
    for name, s in (("D", D), ("S", S)):
        for what, v in (("no internal zeros", has_no_internal_zeros(s)), ("log-concave", is_log_concave(s))):
            if not v:
                out.append({"partial": name, "property": what, "verdict": verdict_to_json(v)})
    return out


def scan_partials(graphs, cap: int | None = None, jobs: int = 1) -> ScanReport:
    """Single-root partials of each graph, checked for gaps and log-concavity.

    Whether ``D ≲ S`` holds is recorded per graph but is not a violation.
    Graphs over the enumeration cap are skipped with a note.
    """
    from .io import seq_to_json

    start = time.perf_counter()
    report = ScanReport("scan", {"graphs": [g.name or f"#{i}" for i, g in enumerate(graphs)]})
    for i, g in enumerate(graphs):
        name = g.name or f"#{i}"
        try:
            kind, root, p = _root_partials(g, cap) if jobs == 1 else _root_partials_jobs(g, cap, jobs)
        except CapExceeded as exc:
            report.notes.append(f"{name}: skipped, {exc}")
            continue
        report.examined += 1
        dom = bool(ratio_dominates(p.D, p.S))
        report.notes.append(f"{name}: {kind} root {root}, D={p.D}, S={p.S}, D≲S {'holds' if dom else 'fails'}")
        failures = partial_failures(p.D, p.S)
        if failures:
            report.violations.append(
                {"graph": g.to_json(), "name": name, "D": seq_to_json(p.D), "S": seq_to_json(p.S), "failures": failures}
            )
    report.wall_time = time.perf_counter() - start
    return report


def standard_scan_graphs() -> list[Graph]:
    """The four worked-example graphs, cycles C3..C8 and dipole(3), each singly rooted."""
    from dataclasses import replace

    from .embed import builtin, rooted_example, subdivide

    out = [replace(rooted_example(n), name=n) for n in ("W4", "ML4", "K4", "circ(7:1,2)")]
    for n in list(range(3, 9)) + ["dipole(3)"]:
        g = builtin(f"C{n}" if isinstance(n, int) else n)
        g, w = subdivide(g, 0)
        out.append(replace(g.with_roots([w]), name=f"{g.name or n} with subdivided edge"))
    return out


def _root_partials_jobs(g: Graph, cap, jobs):
    if g.root_edges:
        return "edge", g.root_edges[0], partials_edge_root(g, g.root_edges[0], cap, jobs)
    if g.root_vertices:
        return "vertex", g.root_vertices[0], partials_vertex_root(g, g.root_vertices[0], cap, jobs)
    raise ValueError(f"graph {g.name or '?'} has no root")


# ---------------------------------------------------------------------------
# Non-transitivity of synchronicity
# ---------------------------------------------------------------------------


def small_sequences(max_len: int, max_entry: int) -> list[Seq]:
    """Nonzero log-concave sequences on windows starting at 0, by size."""
    seen = set()
    out = []
    for n in range(1, max_len + 1):
        for entries in product(range(max_entry + 1), repeat=n):
            s = Seq(list(entries))
            if s.is_zero() or s in seen or not is_log_concave(s):
                continue
            seen.add(s)
            out.append(s)
    return out


def search_nontransitivity(max_len: int = 4, max_entry: int = 6, interlocked_only: bool = False) -> ScanReport:
    """First triple with ``A ~ B``, ``B ~ C`` and not ``A ~ C``.

    The zero sequence is excluded: it is synchronized with every log-concave
    sequence, so it would make any non-synchronized pair a witness.  With
    ``interlocked_only`` the triple must also have pairwise gap-free sums,
    which rules out witnesses that only exploit far-apart supports.
    Triples are visited so that the first witness minimizes the largest
    position of its members in :func:`small_sequences` order.
    """
    from .io import seq_to_json, verdict_to_json

    if max_len < 1 or max_entry < 1:
        raise ValueError("bounds must be positive")
    start = time.perf_counter()
    report = ScanReport(
        "nontrans", {"max_len": max_len, "max_entry": max_entry, "interlocked": interlocked_only}
    )
    seqs = small_sequences(max_len, max_entry)
    cache: dict = {}

    def sync(i, j):
        key = (min(i, j), max(i, j))
        if key not in cache:
            ok = synchronized(seqs[key[0]], seqs[key[1]])
            if ok and interlocked_only and not interlocked([seqs[key[0]], seqs[key[1]]]):
                ok = None
            cache[key] = ok
        return cache[key]

    for top in range(len(seqs)):
        for b in range(top + 1):
            for a in range(top + 1):
                for c in range(a + 1, top + 1):
                    if top not in (a, b, c):
                        continue
                    report.examined += 1
                    if not (sync(a, b) and sync(b, c)):
                        continue
                    ac = synchronized(seqs[a], seqs[c])
                    if ac or (interlocked_only and not interlocked([seqs[a], seqs[b], seqs[c]])):
                        continue
                    report.violations.append(
                        {
                            "A": seq_to_json(seqs[a]),
                            "B": seq_to_json(seqs[b]),
                            "C": seq_to_json(seqs[c]),
                            "A~C": verdict_to_json(ac),
                        }
                    )
                    report.wall_time = time.perf_counter() - start
                    return report
    report.notes.append(f"no witness among {len(seqs)} sequences")
    report.wall_time = time.perf_counter() - start
    return report


__all__ = [
    "FuzzSpec",
    "ScanReport",
    "StarvationError",
    "THEOREMS",
    "Theorem",
    "fuzz",
    "minimize",
    "replay",
    "scan_partials",
    "search_nontransitivity",
    "standard_scan_graphs",
]
