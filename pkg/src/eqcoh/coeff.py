"""Coefficient groups of the integral and mod p Eilenberg-MacLane spectra.

Homotopy of the integral Eilenberg-MacLane spectrum of C_n at a degree ``alpha``
is computed in two ways:

* vanishing criteria driven only by fixed-point dimensions, valid in all of RO(C_n);
* an explicit description in the sector ``l - sum_d b_d L^d`` (``d | n``, ``b_d >= 0``),
  spanned by monomials in Euler classes ``a_d`` (degree ``-L^d``) and orientation
  classes ``u_d`` (degree ``2 - L^d``).

Cohomology of a point in degree ``beta`` is homotopy in degree ``-beta``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, lcm
from typing import Iterator

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import DomainError, SectorError
from .reps import VirtualRep, divisors, fixed_dims, hz_canonical


class VanishingReason(str, Enum):
    ALL_FIXED_POSITIVE = "AllFixedPositive"
    ALL_FIXED_NEGATIVE = "AllFixedNegative"
    EVEN_POSITIVE_NONNEG_FIXED = "EvenPositiveNonNegFixed"
    ODD_WITH_CONDITION = "OddWithCondition"

    def __str__(self) -> str:
        return self.value


def vanishing_reason(alpha: VirtualRep) -> VanishingReason | None:
    """First fixed-point criterion forcing the integral homotopy at ``alpha`` to vanish."""
    dims = fixed_dims(alpha)
    vals = list(dims.values())
    if all(v > 0 for v in vals):
        return VanishingReason.ALL_FIXED_POSITIVE
    if all(v < 0 for v in vals):
        return VanishingReason.ALL_FIXED_NEGATIVE
    if all(v % 2 == 0 for v in vals) and dims[1] > 0 and all(v >= 0 for d, v in dims.items() if d > 1):
        return VanishingReason.EVEN_POSITIVE_NONNEG_FIXED
    if alpha.sigma == 0 and all(v % 2 for v in vals) and _odd_condition(dims):
        return VanishingReason.ODD_WITH_CONDITION
    return None


def _odd_condition(dims: dict[int, int]) -> bool:
    # dim^H > -1 must force dim^K >= -1 for every K containing H
    for h, vh in dims.items():
        if vh > -1:
            for k, vk in dims.items():
                if k % h == 0 and vk < -1:
                    return False
    return True


# ---------------------------------------------------------------- monomials


@dataclass(frozen=True)
class Monomial:
    """Product of ``a_d^{x_d} u_d^{y_d}`` over proper divisors ``d`` of ``n``."""

    n: int
    a: tuple[tuple[int, int], ...]
    u: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, n: int, a: dict[int, int], u: dict[int, int]) -> "Monomial":
        return cls(n, tuple(sorted((d, k) for d, k in a.items() if k)), tuple(sorted((d, k) for d, k in u.items() if k)))

    @property
    def order(self) -> int | None:
        """Additive order; None for the torsion-free u-only monomial."""
        if not self.a:
            return None
        return self.n // lcm(*(d for d, _ in self.a))

    def degree(self) -> VirtualRep:
        lams: dict[int, int] = {}
        triv = 0
        for d, k in self.a:
            lams[d] = lams.get(d, 0) - k
        for d, k in self.u:
            lams[d] = lams.get(d, 0) - k
            triv += 2 * k
        return VirtualRep.of(self.n, triv, lams)

    def sort_key(self) -> tuple:
        a, u = dict(self.a), dict(self.u)
        ds = sorted(set(a) | set(u))
        return tuple((d, -a.get(d, 0), -u.get(d, 0)) for d in ds)

    def __str__(self) -> str:
        bits = []
        for d, k in self.a:
            bits.append(f"a_L{d}" + (f"^{k}" if k > 1 else ""))
        for d, k in self.u:
            bits.append(f"u_L{d}" + (f"^{k}" if k > 1 else ""))
        return "*".join(bits) if bits else "1"


@dataclass(frozen=True)
class CoeffGroup:
    kind: str  # "Zero", "FreeZ" or "Cyclic"
    order: int | None = None
    generator: Monomial | None = None
    monomials: tuple[tuple[Monomial, int | None], ...] = field(default=(), compare=False)

    def __str__(self) -> str:
        if self.kind == "Zero":
            return "0"
        if self.kind == "FreeZ":
            return f"Z generated by {self.generator}"
        exact = self.generator is not None and self.generator.order == self.order
        tail = "" if exact else " (no single monomial generates)"
        return f"Z/{self.order}, canonical monomial {self.generator}{tail}"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "generator": None if self.generator is None else str(self.generator),
            "monomials": [[str(m), o] for m, o in self.monomials],
        }


ZERO = CoeffGroup("Zero")


def star_e_coords(alpha: VirtualRep) -> tuple[int, dict[int, int]]:
    """Return ``(l, b)`` with ``alpha ~ l - sum b_d L^d`` or raise SectorError.

    Characters are first replaced by ``L^{gcd(i, n)}``; the integral theory cannot
    distinguish them.
    """
    if alpha.sigma:
        raise SectorError("degree contains the sign representation")
    canon = hz_canonical(alpha)
    b = {d: -k for d, k in canon.lam}
    if any(k < 0 for k in b.values()):
        raise SectorError(f"degree {alpha} has a positive non-trivial character")
    return canon.trivial, b


def _distributions(b: dict[int, int], target: int) -> Iterator[dict[int, int]]:
    ds = sorted(b)

    def rec(idx: int, left: int, acc: dict[int, int]):
        if idx == len(ds):
            if left == 0:
                yield dict(acc)
            return
        d = ds[idx]
        rest = sum(b[e] for e in ds[idx + 1 :])
        for y in range(max(0, left - rest), min(b[d], left) + 1):
            acc[d] = y
            yield from rec(idx + 1, left - y, acc)
        acc.pop(d, None)

    if target < 0:
        return
    yield from rec(0, target, {})


def monomials_in_degree(alpha: VirtualRep) -> list[Monomial]:
    """All a/u monomials of the given degree (sector checked)."""
    ell, b = star_e_coords(alpha)
    if ell % 2:
        return []
    out = []
    for y in _distributions(b, ell // 2):
        x = {d: b[d] - y.get(d, 0) for d in b}
        out.append(Monomial.of(alpha.n, x, y))
    out.sort(key=Monomial.sort_key)
    return out


def pi_star_e(alpha: VirtualRep) -> CoeffGroup:
    """Integral homotopy of C_n at ``alpha`` in the sector ``l - sum b_d L^d``."""
    monos = monomials_in_degree(alpha)
    if not monos:
        return ZERO
    listing = tuple((m, m.order) for m in monos)
    free = [m for m in monos if m.order is None]
    if free:
        return CoeffGroup("FreeZ", None, free[0], listing)
    k = lcm(*(m.order for m in monos))
    if k == 1:
        return CoeffGroup("Zero", monomials=listing)
    best = max(m.order for m in monos)
    gen = next(m for m in monos if m.order == best)
    return CoeffGroup("Cyclic", k, gen, listing)


@dataclass(frozen=True)
class Presentation:
    """Group generated by the monomials of one degree modulo all defining relations."""

    monomials: tuple[Monomial, ...]
    invariants: tuple[int, ...]  # torsion orders > 1, ascending divisibility
    free_rank: int
    coords: tuple[tuple[int, ...], ...]  # per monomial, coordinates in the SNF basis

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.invariants) <= 1

    def residue(self, coeffs: dict[Monomial, int]) -> tuple[int, ...]:
        """Reduced SNF coordinates of a Z-combination of monomials."""
        idx = {m: i for i, m in enumerate(self.monomials)}
        width = len(self.invariants) + self.free_rank
        vec = [0] * width
        for m, c in coeffs.items():
            row = self.coords[idx[m]]
            for j in range(width):
                vec[j] += c * row[j]
        mods = list(self.invariants) + [0] * self.free_rank
        return tuple(v % q if q else v for v, q in zip(vec, mods))


def relation_rows(monos: list[Monomial]) -> list[list[int]]:
    """Torsion relations ``(n/d) a_d = 0`` and exchange relations between monomials."""
    idx = {m: i for i, m in enumerate(monos)}
    rows = []
    width = len(monos)
    for m in monos:
        if m.order is not None:
            row = [0] * width
            row[idx[m]] = m.order
            rows.append(row)
    # (d/g) a_s u_d R = (s/g) a_d u_s R
    for m in monos:
        a, u = dict(m.a), dict(m.u)
        for s in a:
            for d in u:
                if d == s:
                    continue
                a2, u2 = dict(a), dict(u)
                a2[s] -= 1
                u2[d] -= 1
                a2[d] = a2.get(d, 0) + 1
                u2[s] = u2.get(s, 0) + 1
                other = Monomial.of(m.n, a2, u2)
                g = gcd(d, s)
                row = [0] * width
                row[idx[m]] += d // g
                row[idx[other]] -= s // g
                rows.append(row)
    return rows


def present(alpha: VirtualRep) -> Presentation:
    """Smith normal form of the monomial presentation at ``alpha``."""
    monos = monomials_in_degree(alpha)
    if not monos:
        return Presentation((), (), 0, ())
    rows = relation_rows(monos)
    width = len(monos)
    if not rows:
        rows = [[0] * width]
    A = Matrix(rows)
    D, _, V = smith_normal_decomp(A, domain=ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))] + [0] * max(0, width - min(D.shape))
    keep = [j for j, q in enumerate(diag) if q != 1]
    invariants = tuple(diag[j] for j in keep if diag[j] != 0)
    free = sum(1 for j in keep if diag[j] == 0)
    order = [j for j in keep if diag[j] != 0] + [j for j in keep if diag[j] == 0]
    coords = tuple(tuple(int(V[i, j]) for j in order) for i in range(width))
    return Presentation(tuple(monos), invariants, free, coords)


# ----------------------------------------------------------- mod p Mackey functors

CONST = "const"  # constant Mackey functor Z/p
DUAL = "dual"  # its dual, restriction multiplication by p
POINT = "point"  # Z/p concentrated at the orbit G/G
LAMBDA = "lambda"  # Z/2 concentrated at the free orbit (C_2 only)


@dataclass(frozen=True)
class MackeySum:
    p: int
    parts: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, p: int, counts: Counter | dict) -> "MackeySum":
        order = [CONST, DUAL, POINT, LAMBDA]
        return cls(p, tuple((t, counts[t]) for t in order if counts.get(t, 0)))

    def __add__(self, other: "MackeySum") -> "MackeySum":
        c = Counter(dict(self.parts))
        c.update(dict(other.parts))
        return MackeySum.of(self.p, c)

    def count(self, tag: str) -> int:
        return dict(self.parts).get(tag, 0)

    def is_zero(self) -> bool:
        return not self.parts

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        names = {CONST: f"Z/{self.p}", DUAL: f"Z/{self.p}*", POINT: f"<Z/{self.p}>", LAMBDA: "<Lambda>"}
        return " + ".join(names[t] + (f"^{k}" if k > 1 else "") for t, k in self.parts)


def mackey_modp_from_dims(p: int, dim: int, fix: int, tabulated: bool = False) -> MackeySum:
    """Mod p homotopy Mackey functor of C_p from underlying and fixed dimensions.

    With ``tabulated=True`` odd primes follow the classical case table, whose two
    ``<Z/p>`` rows carry parity conditions. The chain-level computation in
    :mod:`eqcoh.cellular` shows ``<Z/p>`` also at the other parity, so the default
    drops those conditions. Both agree on every even-dimensional degree.
    """
    if dim == 0:
        if fix >= 0:
            tag = CONST
        elif fix == -1 and p == 2:
            tag = LAMBDA  # checked before the dual row, which would shadow it
        else:
            tag = DUAL
    elif dim < 0:
        ok = fix >= 0 and (p == 2 or not tabulated or dim % 2 == 0)
        tag = POINT if ok else None
    else:
        ok = fix < -1 and (p == 2 or not tabulated or dim % 2 == 1)
        tag = POINT if ok else None
    return MackeySum.of(p, {tag: 1} if tag else {})


def _check_cp(p: int, alpha: VirtualRep) -> tuple[int, int]:
    if alpha.n != p or not _is_prime(p):
        raise DomainError(f"mod p Mackey functors need a degree over C_p with p prime, got C_{alpha.n}, p={p}")
    dims = fixed_dims(alpha)
    return dims[1], dims[p]


def mackey_modp_table(p: int, alpha: VirtualRep) -> MackeySum:
    """Classical case table for the mod p Eilenberg-MacLane spectrum of C_p at ``alpha``."""
    return mackey_modp_from_dims(p, *_check_cp(p, alpha), tabulated=True)


def mackey_modp(p: int, alpha: VirtualRep) -> MackeySum:
    """Homotopy Mackey functor of the mod p Eilenberg-MacLane spectrum of C_p at ``alpha``."""
    return mackey_modp_from_dims(p, *_check_cp(p, alpha))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


# --------------------------------------------------------- u / a rewrite rules


@dataclass(frozen=True)
class URule:
    lhs: str
    rhs: str
    lhs_order: int
    rhs_order: int

    @property
    def consistent(self) -> bool:
        return self.lhs_order == self.rhs_order


def _a_order(n: int, j: int) -> int:
    return n // gcd(j, n)


def u_a_relation_check(n: int, k: int, d: int) -> list[URule]:
    """Rewrite rules for the invertible class between L^k and L^{dk}.

    Returns the Euler-class rule, the orientation rule and, when ``d`` is prime, the
    mod ``d`` vanishing of ``a_{L^{dk}} u_{L^k}``. Orders are compared on both sides.
    """
    if n < 1 or k % n == 0 or d < 1:
        raise DomainError(f"need non-trivial L^{k} over C_{n} and d >= 1")
    lhs_ord = _a_order(n, d * k)
    base = _a_order(n, k)
    rules = [
        URule(f"u_(L{k}-L{d * k})*a_L{d * k}", f"{d}*a_L{k}", lhs_ord, base // gcd(d, base)),
        URule(f"u_(L{k}-L{d * k})*u_L{d * k}", f"u_L{k}", 0, 0),
    ]
    if _is_prime(d):
        # exchange relation: a_{dk} u_k = d * a_k u_{dk}, zero mod d
        rules.append(URule(f"a_L{d * k}*u_L{k}", f"{d}*a_L{k}*u_L{d * k}", lhs_ord, base // gcd(d, base)))
    return rules


def cyclic_coordinates(alpha: VirtualRep) -> tuple[int | None, dict[Monomial, int]]:
    """Coordinates of every monomial in the cyclic group at ``alpha`` for prime-power ``n``.

    Exchange relations move orientation classes to larger divisors at the cost of
    ``p^{valuation gap}``, so each monomial is ``p^e`` times the monomial ``T`` with
    orientation classes pushed as high as possible; ``T`` generates. Returns the
    group order (None for Z) and the coordinate of each monomial relative to ``T``.
    Agrees with :func:`present` up to a unit; much faster for large degrees.
    """
    n = alpha.n
    ps = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    if len(ps) != 1:
        raise DomainError(f"cyclic coordinates need a prime-power order, got {n}")
    p = ps[0]
    monos = monomials_in_degree(alpha)
    if not monos:
        return 1, {}

    def weight(mon: Monomial) -> int:
        return sum(k * _vp(d, p) for d, k in mon.u)

    top = max(monos, key=lambda mon: (weight(mon), -(mon.order or 0)))
    if top.order is None:
        return None, {mon: (1 if mon.order is None else 0) for mon in monos}
    q = top.order
    return q, {mon: pow(p, weight(top) - weight(mon), q) % q for mon in monos}


def _vp(d: int, p: int) -> int:
    k = 0
    while d % p == 0:
        d //= p
        k += 1
    return k
