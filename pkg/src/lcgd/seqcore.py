"""Exact sequences and the relations between them.

Sequences are finite windows of nonnegative Python integers, read as zero
outside the window.  Every relation is decided with integer products only;
ratios appear solely through :class:`Frac`, whose comparison implements the
usual conventions for ``0/0`` and ``x/0``.

Each decision procedure returns a :class:`Verdict`.  A failing verdict
carries a :class:`Witness` naming the inequality that failed and the index
where it failed; :meth:`Witness.recheck` re-evaluates it on the operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True, init=False)
class Seq:
    """Finite nonnegative integer sequence with a support window.

    ``Seq([0, 8])`` and ``Seq([8], offset=1)`` are the same value: leading
    and trailing zeros are trimmed and folded into ``offset``.  The zero
    sequence has no entries and offset 0.
    """

    entries: tuple[int, ...]
    offset: int

    def __init__(self, entries: Iterable[int] = (), offset: int = 0):
        vals = [int(x) for x in entries]
        for x in vals:
            if x < 0:
                raise ValueError(f"negative entry {x} in sequence")
        lo, hi = 0, len(vals)
        while lo < hi and vals[lo] == 0:
            lo += 1
        while hi > lo and vals[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "entries", ())
            object.__setattr__(self, "offset", 0)
        else:
            object.__setattr__(self, "entries", tuple(vals[lo:hi]))
            object.__setattr__(self, "offset", int(offset) + lo)

    @classmethod
    def unit(cls, at: int = 0) -> Seq:
        return cls([1], offset=at)

    # window -------------------------------------------------------------
    @property
    def lo(self) -> int:
        """Index of the first nonzero entry (0 for the zero sequence)."""
        return self.offset

    @property
    def hi(self) -> int:
        """Index of the last nonzero entry (-1 for the zero sequence)."""
        return self.offset + len(self.entries) - 1

    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, k: int) -> int:
        i = k - self.offset
        if 0 <= i < len(self.entries):
            return self.entries[i]
        return 0

    def __len__(self) -> int:
        return len(self.entries)

    def total(self) -> int:
        return sum(self.entries)

    def window(self, lo: int, hi: int) -> list[int]:
        """Entries at indices ``lo..hi`` inclusive, zero-padded."""
        return [self[k] for k in range(lo, hi + 1)]

    def to_list(self, start: int = 0) -> list[int]:
        """Entries from index ``start`` through the last nonzero entry."""
        if self.is_zero():
            return []
        return self.window(min(start, self.lo), self.hi)

    # algebra ------------------------------------------------------------
    def __add__(self, other: Seq) -> Seq:
        if not isinstance(other, Seq):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return Seq([self[k] + other[k] for k in range(lo, hi + 1)], lo)

    def __mul__(self, other):
        if isinstance(other, Seq):
            return convolve(self, other)
        if isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                raise ValueError("negative scalar")
            return Seq([other * x for x in self.entries], self.offset)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, by: int = 1) -> Seq:
        if self.is_zero():
            return self
        return Seq(self.entries, self.offset + by)

    def __repr__(self) -> str:
        if self.offset >= 0:
            return f"Seq({self.to_list()})"
        return f"Seq({list(self.entries)}, offset={self.offset})"

    def __str__(self) -> str:
        """Tuple notation from index 0, e.g. ``(0,14,36)``; ``@k`` marks a negative start."""
        if self.is_zero():
            return "(0)"
        if self.offset >= 0:
            return "(" + ",".join(map(str, self.to_list())) + ")"
        return "(" + ",".join(map(str, self.entries)) + f")@{self.offset}"


ZERO = Seq()


@dataclass(frozen=True, slots=True)
class Frac:
    """Unreduced nonnegative ratio ``num/den``.

    ``Frac(0, 0)`` is kept as its own value (it compares true against
    anything); ``Frac(x, 0)`` with ``x > 0`` is +infinity.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.num < 0 or self.den < 0:
            raise ValueError(f"negative ratio {self.num}/{self.den}")

    @property
    def vacuous(self) -> bool:
        return self.num == 0 and self.den == 0

    @property
    def infinite(self) -> bool:
        return self.den == 0 and self.num > 0

    def __le__(self, other: Frac) -> bool:
        return ratio_leq(self, other)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def ratio_leq(p: Frac, q: Frac) -> bool:
    """Decide ``p <= q`` with the default-true cases for vacuous ratios.

    True when either ratio is ``0/0`` or both denominators vanish; otherwise
    ``x/0`` is +infinity and finite ratios are cross-multiplied.
    """
    if p.vacuous or q.vacuous or (p.den == 0 and q.den == 0):
        return True
    if q.den == 0:
        return True
    if p.den == 0:
        return False
    return p.num * q.den <= q.num * p.den


# ---------------------------------------------------------------------------
# Verdicts and witnesses
# ---------------------------------------------------------------------------


def _lc(a, b, k):
    return a[k - 1] * a[k + 1], a[k] * a[k]


def _sync_lower(a, b, k):
    return a[k - 1] * b[k + 1], a[k] * b[k]


def _sync_upper(a, b, k):
    return a[k + 1] * b[k - 1], a[k] * b[k]


def _dominance(a, b, k):
    return a[k + 1] * b[k], a[k] * b[k + 1]


# relation name -> (lhs, rhs) evaluator; the inequality is lhs <= rhs
INEQUALITIES = {
    "a[k-1]*a[k+1] <= a[k]^2": _lc,
    "a[k-1]*b[k+1] <= a[k]*b[k]": _sync_lower,
    "a[k+1]*b[k-1] <= a[k]*b[k]": _sync_upper,
    "a[k+1]*b[k] <= a[k]*b[k+1]": _dominance,
}
LOG_CONCAVE, SYNC_LOWER, SYNC_UPPER, DOMINANCE = INEQUALITIES


@dataclass(frozen=True)
class Witness:
    """A failed inequality.

    ``relation`` names the inequality, ``k`` the index where it fails and
    ``lhs``/``rhs`` its two sides.  ``where`` locates the operands inside a
    larger input: ``("B",)`` for the second operand of a pair check,
    ``(i, j)`` for a pair inside a collection.  Lexicographic witnesses
    compare entry ``(where[-2], k[0])`` with the later entry
    ``(where[-1], k[1])``.
    """

    relation: str
    k: int | tuple[int, int]
    lhs: object
    rhs: object
    where: tuple = ()

    def recheck(self, *operands) -> bool:
        """Re-evaluate on the operands the witness refers to; True if it still fails."""
        if self.relation in INEQUALITIES:
            a, b = _operands_for(self, operands)
            lhs, rhs = INEQUALITIES[self.relation](a, b, self.k)
            return lhs > rhs
        if self.relation == "unimodal":
            (a,) = operands[:1]
            j, k = self.k
            return j < k and a[j] > a[j + 1] and a[k] < a[k + 1]
        if self.relation == "no internal zeros":
            (a,) = operands[:1]
            return a[self.k] == 0 and a.lo < self.k < a.hi
        if self.relation == "lexicographic":
            (fam,) = operands[:1]
            (i, j), (k, h) = self.where[-2:], self.k
            return (k, i) < (h, j) and not ratio_leq(fam.at(i, k), fam.at(j, h))
        raise KeyError(self.relation)


def _operands_for(w: Witness, operands):
    # a lone non-Seq operand is a collection indexed by the leading (i, j)
    where = list(w.where)
    if len(operands) == 1 and not isinstance(operands[0], Seq):
        i, j = where.pop(0), where.pop(0)
        a, b = operands[0][i], operands[0][j]
    elif len(operands) == 1:
        a = b = operands[0]
    else:
        a, b = operands[:2]
    for tag in where:
        if tag == "swap":
            a, b = b, a
        elif tag == "A":
            b = a
        elif tag == "B":
            a = b
    return a, b


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a witness is present exactly when the check fails")

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def ok(cls) -> Verdict:
        return _OK

    def located(self, *where) -> Verdict:
        """Prefix the witness location (used when a pair sits in a collection)."""
        if self.holds:
            return self
        w = self.witness
        return Verdict(False, Witness(w.relation, w.k, w.lhs, w.rhs, tuple(where) + w.where))


_OK = Verdict(True)


# ---------------------------------------------------------------------------
# Sequence operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Report:
    nonnegative: bool
    internal_zeros: bool
    first_nonzero: int | None
    last_nonzero: int | None


def validate(a: Seq | Sequence[int], offset: int = 0) -> Report:
    """Describe a sequence; raw lists may contain negatives."""
    if isinstance(a, Seq):
        vals, offset = list(a.entries), a.offset
    else:
        vals = [int(x) for x in a]
    nonzero = [i for i, x in enumerate(vals) if x != 0]
    if not nonzero:
        return Report(all(x >= 0 for x in vals), False, None, None)
    first, last = nonzero[0], nonzero[-1]
    gaps = any(vals[i] == 0 for i in range(first, last + 1))
    return Report(all(x >= 0 for x in vals), gaps, first + offset, last + offset)


def has_no_internal_zeros(a: Seq) -> Verdict:
    for k in range(a.lo, a.hi + 1):
        if a[k] == 0:
            return Verdict(False, Witness("no internal zeros", k, 0, None))
    return _OK


def convolve(a: Seq, b: Seq) -> Seq:
    if a.is_zero() or b.is_zero():
        return ZERO
    x, y = a.entries, b.entries
    out = [0] * (len(x) + len(y) - 1)
    for i, ai in enumerate(x):
        if ai:
            for j, bj in enumerate(y):
                out[i + j] += ai * bj
    return Seq(out, a.offset + b.offset)


def offset_seq(a: Seq) -> Seq:
    """The offset sequence, ``(a+)_k = a_{k-1}``."""
    return a.shift(1)


def combine(weights: Sequence[int], seqs: Sequence[Seq]) -> Seq:
    """Pointwise nonnegative linear combination."""
    if len(weights) != len(seqs):
        raise ValueError(f"{len(weights)} weights for {len(seqs)} sequences")
    out = ZERO
    for u, s in zip(weights, seqs):
        if u < 0:
            raise ValueError("negative weight")
        if u:
            out = out + u * s
    return out


def _span(*seqs: Seq) -> tuple[int, int]:
    live = [s for s in seqs if not s.is_zero()]
    if not live:
        return 0, -1
    return min(s.lo for s in live), max(s.hi for s in live)


def _first_failure(name, a, b, ks, where=()) -> Verdict:
    f = INEQUALITIES[name]
    for k in ks:
        lhs, rhs = f(a, b, k)
        if lhs > rhs:
            return Verdict(False, Witness(name, k, lhs, rhs, where))
    return _OK


def is_log_concave(a: Seq) -> Verdict:
    """``a[k-1]*a[k+1] <= a[k]^2`` for every k; witness is the least failing k."""
    lo, hi = _span(a)
    return _first_failure(LOG_CONCAVE, a, a, range(lo - 1, hi + 2))


def is_unimodal(a: Seq) -> Verdict:
    """Rise to a peak, then fall.

    The witness index pair ``(j, k)`` is a descent ``a[j] > a[j+1]``
    followed by an ascent ``a[k] < a[k+1]``.
    """
    descent = None
    for k in range(a.lo, a.hi):
        if a[k] > a[k + 1] and descent is None:
            descent = k
        elif a[k] < a[k + 1] and descent is not None:
            return Verdict(False, Witness("unimodal", (descent, k), a[descent], a[k + 1]))
    return _OK


def synchronized(a: Seq, b: Seq) -> Verdict:
    """Decide ``A ~ B``: both log-concave and the two cross inequalities."""
    v = is_log_concave(a)
    if not v:
        return v.located("A")
    v = is_log_concave(b)
    if not v:
        return v.located("B")
    lo, hi = _span(a, b)
    ks = range(lo - 1, hi + 2)
    v = _first_failure(SYNC_LOWER, a, b, ks)
    if not v:
        return v
    return _first_failure(SYNC_UPPER, a, b, ks)


def ratio_dominates(a: Seq, b: Seq) -> Verdict:
    """Decide ``A ≲ B`` (B is ratio-dominant over A)."""
    v = synchronized(a, b)
    if not v:
        return v
    lo, hi = _span(a, b)
    return _first_failure(DOMINANCE, a, b, range(lo - 1, hi + 2))


# ---------------------------------------------------------------------------
# Collections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CollectionClass:
    in_tLC: Verdict
    in_ltLC: Verdict
    in_gtLC: Verdict


class ConsistencyError(AssertionError):
    """Two routes that must agree disagreed; indicates a bug."""


def _pairwise(seqs, rel) -> Verdict:
    # i == j is included: A ~ A is log-concavity, which every member of a
    # collection class must have even when n == 1
    for i, j in combinations_with_replacement(range(len(seqs)), 2):
        v = rel(seqs[i], seqs[j])
        if not v:
            return v.located(i, j)
    return _OK


def _chain(seqs, rel) -> Verdict:
    # consecutive relations plus first ~ last
    for i in range(len(seqs) - 1):
        v = rel(seqs[i], seqs[i + 1])
        if not v:
            return v.located(i, i + 1)
    return synchronized(seqs[0], seqs[-1]).located(0, len(seqs) - 1)


def interlocked(seqs: Sequence[Seq]) -> bool:
    """All members nonzero and gap-free, and every pairwise sum gap-free.

    Outside such collections the relations hold vacuously in degenerate
    ways: a zero sequence is related to everything, and two sequences whose
    supports are two or more places apart are synchronized because every
    product in the definition is zero.  Transitivity arguments such as the
    chain criterion need the supports to interlock.
    """
    if any(s.is_zero() or not has_no_internal_zeros(s) for s in seqs):
        return False
    return all(has_no_internal_zeros(a + b) for a, b in combinations_with_replacement(seqs, 2))


def _ordered(seqs, rel) -> Verdict:
    pairwise = _pairwise(seqs, rel)
    if not interlocked(seqs):
        return pairwise
    chain = _chain(seqs, rel)
    if pairwise.holds != chain.holds:
        raise ConsistencyError(f"pairwise {pairwise} vs chain {chain} on {list(seqs)}")
    return pairwise


def _dominated_by(a: Seq, b: Seq) -> Verdict:
    return ratio_dominates(b, a).located("swap")


def in_tLC(seqs: Sequence[Seq]) -> Verdict:
    return _pairwise(seqs, synchronized)


def in_ltLC(seqs: Sequence[Seq]) -> Verdict:
    """Pairwise ``A_i ≲ A_j`` for i < j, cross-checked against the chain criterion."""
    return _ordered(seqs, ratio_dominates)


def in_gtLC(seqs: Sequence[Seq]) -> Verdict:
    """Pairwise ``A_i ≳ A_j`` for i < j."""
    return _ordered(seqs, _dominated_by)


def collection_class(seqs: Sequence[Seq]) -> CollectionClass:
    if not seqs:
        raise ValueError("empty collection")
    return CollectionClass(in_tLC(seqs), in_ltLC(seqs), in_gtLC(seqs))


# ---------------------------------------------------------------------------
# Lexicographic families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BivFamily:
    """Rows ``f_{i,k}`` of ratios over one shared index window.

    Entries outside the window read as ``0/0``.
    """

    rows: tuple[tuple[Frac, ...], ...]
    offset: int = 0

    def __post_init__(self):
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("rows must share one index window")

    @property
    def n(self) -> int:
        return len(self.rows)

    def at(self, i: int, k: int) -> Frac:
        j = k - self.offset
        row = self.rows[i]
        if 0 <= j < len(row):
            return row[j]
        return Frac(0, 0)

    def link(self, i: int, k: int) -> tuple[Frac, Frac]:
        """The i-th comparison of column k: ``f_{i,k} <= f_{i+1,k}``, the last row wrapping to ``f_{0,k+1}``."""
        if i + 1 < self.n:
            return self.at(i, k), self.at(i + 1, k)
        return self.at(i, k), self.at(0, k + 1)

    def chain(self) -> list[Frac]:
        """Entries in lexicographic reading order (column by column)."""
        width = len(self.rows[0]) if self.rows else 0
        return [self.at(i, k) for k in range(self.offset, self.offset + width) for i in range(self.n)]

    @classmethod
    def ratios(cls, nums: Sequence[Seq], dens: Sequence[Seq], den_shift: int = 0) -> BivFamily:
        """Family ``nums[i][t] / dens[i][t + den_shift]`` over the joint support."""
        lo, hi = _span(*nums, *(d.shift(-den_shift) for d in dens))
        lo -= 1
        hi += 1
        rows = tuple(
            tuple(Frac(p[t], q[t + den_shift]) for t in range(lo, hi + 1))
            for p, q in zip(nums, dens)
        )
        return cls(rows, lo)


def is_lexicographic(fam: BivFamily) -> Verdict:
    """Entries read column by column never decrease.

    ``0/0`` entries compare true against anything, so they are skipped
    rather than allowed to link two entries that are out of order; every
    remaining entry is compared with the last one kept.  Without ``0/0``
    entries this is exactly the chain
    ``f_{1,k} <= ... <= f_{n,k} <= f_{1,k+1}``.
    """
    width = len(fam.rows[0]) if fam.rows else 0
    prev = prev_at = None
    for k in range(fam.offset, fam.offset + width):
        for i in range(fam.n):
            cur = fam.at(i, k)
            if cur.vacuous:
                continue
            if prev is not None and not ratio_leq(prev, cur):
                return Verdict(False, Witness("lexicographic", (prev_at[1], k), prev, cur, (prev_at[0], i)))
            prev, prev_at = cur, (i, k)
    return _OK


def lex_families(As: Sequence[Seq], Bs: Sequence[Seq]) -> tuple[BivFamily, BivFamily]:
    """The two families ``b_{i,t}/a_{i,t}`` and ``a_{i,t-1}/b_{i,t}``."""
    return BivFamily.ratios(Bs, As), BivFamily.ratios([a.shift(1) for a in As], Bs)


def sumclvls_premises(As: Sequence[Seq], Bs: Sequence[Seq]) -> Verdict:
    """Both ratio families lexicographic.

    When they are, the implied relations (``As`` and ``Bs`` in gtLC and
    ``A_i ≲ B_i``) are re-derived directly and a mismatch raises
    :class:`ConsistencyError`.
    """
    if len(As) != len(Bs):
        raise ValueError(f"{len(As)} A-sequences for {len(Bs)} B-sequences")
    fam_ba, fam_ab = lex_families(As, Bs)
    v = is_lexicographic(fam_ba)
    if not v:
        return v.located("b/a")
    v = is_lexicographic(fam_ab)
    if not v:
        return v.located("a/b")
    # a zero member turns its links into 0/0, which compare true against
    # anything, so the implied relations only follow for interlocked inputs
    if interlocked([*As, *Bs]):
        implied = [in_gtLC(As), in_gtLC(Bs)] + [ratio_dominates(a, b) for a, b in zip(As, Bs)]
        bad = [w for w in implied if not w]
        if bad:
            raise ConsistencyError(f"lexicographic premises hold but {bad[0].witness} on {As}, {Bs}")
    return _OK
