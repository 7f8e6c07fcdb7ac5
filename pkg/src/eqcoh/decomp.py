"""Splittings of Eilenberg-MacLane smash products with projective spaces into shifted copies.

A cell filtration is a list of representation spheres added one at a time. When
every attaching map lands in a vanishing homotopy group, the smash product with
the integral Eilenberg-MacLane spectrum splits as a wedge of suspensions indexed
by the cells; this module builds those filtrations and checks the vanishing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import (
    CoeffGroup,
    MackeySum,
    SectorError,
    ZERO,
    mackey_modp,
    mackey_modp_table,
    pi_star_e,
    star_e_coords,
    vanishing_reason,
)
from .errors import DomainError
from .reps import VirtualRep, divisors, fixed_dims, hz_canonical, phi, quat_w, sign, trivial, twist, zero

SIGN_SPHERE = "SignSphere"


@dataclass(frozen=True)
class CellFiltration:
    n: int
    cells: tuple[VirtualRep, ...]
    line_order: tuple[int, ...] | None = None  # exponents of the complex lines, when built from lines

    @classmethod
    def from_lines(cls, n: int, line_order) -> "CellFiltration":
        """Cells of the projectivization of ``sum L^{e}`` in the given order."""
        order = tuple(e % n for e in line_order)
        cells = []
        span = zero(n)
        for e in order:
            cells.append(twist(span, e))
            span = span + VirtualRep.of(n, 0, {e: 1})
        return cls(n, tuple(cells), order)


@dataclass(frozen=True)
class HypothesisFailure:
    lower: int  # index of the cell W
    upper: int  # index of the cell V
    small: int  # subgroup order H with dim W^H < dim V^H
    big: int  # subgroup order K containing H with dim W^K > dim V^K


def check_free_hypothesis(filt: CellFiltration) -> HypothesisFailure | None:
    """Pairwise cell condition ``dim W^H < dim V^H  =>  dim W^K <= dim V^K`` for H in K.

    Returns the first violation, scanning ordered pairs of cells, or None.
    """
    dims = [fixed_dims(c) for c in filt.cells]
    subs = divisors(filt.n)
    for i, dw in enumerate(dims):
        for j, dv in enumerate(dims):
            if i == j:
                continue
            for h in subs:
                if dw[h] < dv[h]:
                    for k in subs:
                        if k % h == 0 and dw[k] > dv[k]:
                            return HypothesisFailure(i, j, h, k)
    return None


def connecting_obstruction(upper: VirtualRep, lower: VirtualRep) -> tuple[VirtualRep, str | None]:
    """Degree ``upper - lower - 1`` of a potential attaching map and why it vanishes."""
    alpha = upper - lower - trivial(upper.n, 1)
    reason = vanishing_reason(alpha)
    if reason is not None:
        return alpha, str(reason)
    if alpha.n == 2 and alpha == sign(2):
        # the sign sphere has no reduced degree-0 integral cohomology
        return alpha, SIGN_SPHERE
    return alpha, None


@dataclass
class Decomposition:
    family: str
    n: int
    summands: list[VirtualRep]
    filtration: CellFiltration
    twist: int = 0
    cap: int | None = None  # set for truncations of infinite families
    obstructions: list[tuple[int, int, str | None]] = field(default_factory=list)

    @property
    def splits(self) -> bool:
        return all(r is not None for _, _, r in self.obstructions)


def _verify(dec: Decomposition) -> Decomposition:
    fail = check_free_hypothesis(dec.filtration)
    if fail is not None:
        raise AssertionError(f"{dec.family} filtration violates the cell condition: {fail}")
    cells = dec.filtration.cells
    dec.obstructions = [
        (i, j, connecting_obstruction(cells[j], cells[i])[1]) for j in range(len(cells)) for i in range(j)
    ]
    if not dec.splits:
        raise AssertionError(f"{dec.family}: an attaching map does not vanish")
    return dec


def a_counts(mults) -> list[int]:
    top = max(mults)
    return [sum(1 for k in mults if k >= i) for i in range(1, top + 1)]


def a_block_order(p: int, mults) -> list[int]:
    """Lines grouped by level: first every exponent with multiplicity >= 1, then >= 2, ..."""
    order = []
    for level in range(1, max(mults) + 1):
        order.extend(i for i, k in enumerate(mults) if k >= level)
    return order


def decompose_cp(p: int, mults) -> Decomposition:
    """Projective space of ``sum_i mults[i] L^i`` over C_p."""
    mults = list(mults)
    if len(mults) != p or any(k < 0 for k in mults) or sum(mults) == 0:
        raise DomainError(f"need {p} non-negative multiplicities, not all zero")
    j = mults.index(max(mults))
    rotated = mults[j:] + mults[:j]  # multiplicities after tensoring with L^{-j}
    counts = a_counts(rotated)
    summands = []
    lo = 0
    for level, a in enumerate(counts, start=1):
        hi = lo + a - 1
        for i in range(lo, hi + 1):
            summands.append(VirtualRep.of(p, 2 * (level - 1), {1: i}))
        lo = hi
    filt = CellFiltration.from_lines(p, a_block_order(p, rotated))
    dec = Decomposition("cp", p, summands, filt, twist=j)
    _verify(dec)
    if sorted(map(_key, map(hz_canonical, filt.cells))) != sorted(map(_key, summands)):
        raise AssertionError("cells and summands disagree")
    return dec


def _key(v: VirtualRep):
    return (v.trivial, v.lam, v.sigma)


def _length(m: int | None, cap: int | None, scale: int) -> tuple[int, int | None]:
    if (m is None) == (cap is None):
        raise DomainError("give exactly one of m (finite) or cap (truncation of the infinite family)")
    if m is not None:
        if m < 1:
            raise DomainError("m must be positive")
        return scale * m, None
    if cap < 1:
        raise DomainError("cap must be positive")
    return cap, cap


def decompose_regular(n: int, m: int | None = None, cap: int | None = None) -> Decomposition:
    """Projective space of ``m`` copies of the complex regular rep, or its first ``cap`` cells."""
    length, kept = _length(m, cap, n)
    filt = CellFiltration.from_lines(n, [i % n for i in range(length)])
    dec = Decomposition("regular", n, [phi(i, n) for i in range(length)], filt, cap=kept)
    return _verify(dec)


def decompose_quat(n: int, m: int | None = None, cap: int | None = None) -> Decomposition:
    """Quaternionic projective space of ``m`` regular reps, or its first ``cap`` cells."""
    length, kept = _length(m, cap, n)
    summands = [quat_w(i, n) for i in range(length)]
    dec = Decomposition("quat", n, summands, CellFiltration(n, tuple(summands)), cap=kept)
    return _verify(dec)


def decompose_conj(n_max: int) -> Decomposition:
    """Complex projective space of dimension ``n_max`` with complex conjugation (C_2)."""
    if n_max < 0:
        raise DomainError("dimension must be >= 0")
    summands = [VirtualRep.of(2, i, sigma=i) for i in range(n_max + 1)]
    dec = Decomposition("conj", 2, summands, CellFiltration(2, tuple(summands)))
    return _verify(dec)


def cap_for(family: str, n: int, alpha: VirtualRep) -> int:
    """Truncation length beyond which every further summand contributes zero at ``alpha``.

    Later cells have all fixed dimensions at least those of ``alpha`` plus 2, so the
    degree ``cell - alpha`` has all fixed dimensions positive.
    """
    need = max(fixed_dims(alpha).values()) + 2
    step = 2 if family == "regular" else 4
    blocks = max(0, -(-need // step))
    return n * (blocks + 1) + 1


@dataclass
class QueryResult:
    coeff: str
    per_summand: list[tuple[VirtualRep, object]]
    total: object

    def nonzero(self) -> list[tuple[VirtualRep, object]]:
        return [(w, g) for w, g in self.per_summand if not _is_zero(g)]


def _is_zero(g) -> bool:
    return g.is_zero() if isinstance(g, MackeySum) else g.kind == "Zero"


def cohomology_query(dec: Decomposition, alpha: VirtualRep, coeff: str = "Z") -> QueryResult:
    """Cohomology at ``alpha`` of the (unreduced) space, summed over the splitting.

    The summand ``W`` contributes point cohomology in degree ``alpha - W``, which is
    homotopy in degree ``W - alpha``.
    """
    if alpha.n != dec.n:
        raise DomainError(f"degree over C_{alpha.n}, decomposition over C_{dec.n}")
    rows = []
    for w in dec.summands:
        deg = w - alpha
        if coeff == "Z":
            rows.append((w, _integral(deg, w)))
        elif coeff == "modp":
            rows.append((w, mackey_modp(dec.n, deg)))
        elif coeff == "modp_table":
            rows.append((w, mackey_modp_table(dec.n, deg)))
        else:
            raise DomainError(f"unknown coefficient system {coeff!r}")
    if coeff in ("modp", "modp_table"):
        total = MackeySum(dec.n)
        for _, g in rows:
            total = total + g
    else:
        total = [g for _, g in rows if not _is_zero(g)]
    return QueryResult(coeff, rows, total)


def _integral(deg: VirtualRep, summand: VirtualRep) -> CoeffGroup:
    if vanishing_reason(deg) is not None:
        return ZERO
    try:
        star_e_coords(deg)
    except SectorError as exc:
        raise SectorError(f"summand {summand}: degree {deg} is out of sector ({exc})") from exc
    return pi_star_e(deg)
