"""Mackey-functor obstructions to integer-degree equivariant lifts of mod p operations.

A stable operation of degree ``r`` lifting to ``HZ/p -> Sigma^r HZ/p`` over C_p induces
a map of Mackey functors ``H^alpha(X) -> H^{alpha+r}(X)`` for every space ``X``. With
``X`` a smash power of a projective space, both sides split into shifted copies of
the point, so they can be read off the mod p table. If the source is the constant
functor and the target contains only duals (plus functors invisible to the free
orbit) while the underlying map is an isomorphism, no such map exists.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb

from .coeff import CONST, DUAL, LAMBDA, MackeySum, mackey_modp_table
from .decomp import decompose_conj, decompose_regular
from .errors import DomainError
from .grammar import format_degree
from .reps import VirtualRep, fixed_dim, hz_canonical, lam, sign, trivial, zero
from .ringstr.poly import is_prime

LIFT_EXCLUDED = "lift-excluded"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CensusEntry:
    summand: VirtualRep  # degree of one wedge summand of X smashed with HZ
    count: int  # number of ordered factor tuples producing it
    at_alpha: MackeySum
    at_target: MackeySum

    def as_dict(self) -> dict:
        return {
            "summand": format_degree(self.summand),
            "count": self.count,
            "source": str(self.at_alpha),
            "target": str(self.at_target),
        }


@dataclass
class ObstructionReport:
    p: int
    r: int
    s: int  # number of smash factors
    space: str
    alpha: VirtualRep
    source: MackeySum
    target: MackeySum
    verdict: str
    bound: int  # largest fixed-point weight a target summand can have
    census: list[CensusEntry] = field(default_factory=list)

    @property
    def excluded(self) -> bool:
        return self.verdict == LIFT_EXCLUDED

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "s": self.s,
            "space": self.space,
            "alpha": format_degree(self.alpha),
            "source": str(self.source),
            "target": str(self.target),
            "verdict": self.verdict,
            "bound": self.bound,
            "census": [e.as_dict() for e in self.census],
        }


def _smash_powers(factors: list[VirtualRep], s: int, fix_budget: int) -> Counter:
    """Summand degrees of an ``s``-fold smash power with multiplicities.

    Partial sums whose fixed dimension exceeds ``fix_budget`` are dropped; every
    factor has non-negative fixed dimension, so they can only grow.
    """
    n = factors[0].n if factors else 1
    acc: Counter = Counter({zero(n): 1})
    for _ in range(s):
        nxt: Counter = Counter()
        for w, c in acc.items():
            for f in factors:
                v = hz_canonical(w + f)
                if fixed_dim(v, n) <= fix_budget:
                    nxt[v] += c
        acc = nxt
    return acc


def _verdict(source: MackeySum, target: MackeySum) -> str:
    # the free orbit sees an isomorphism, which no map from the constant functor
    # into duals or Lambda can realise
    src_ok = source.parts == ((CONST, 1),)
    tgt_ok = target.count(CONST) == 0 and (target.count(DUAL) + target.count(LAMBDA)) > 0
    return LIFT_EXCLUDED if src_ok and tgt_ok else INCONCLUSIVE


def _report(p, r, s, space, alpha, shift, summands: Counter, bound) -> ObstructionReport:
    source, target = MackeySum(p), MackeySum(p)
    census = []
    for w in sorted(summands, key=lambda v: (v.dim, fixed_dim(v, p), v.lam, v.sigma)):
        c = summands[w]
        lo = mackey_modp_table(p, w - alpha)
        hi = mackey_modp_table(p, w - alpha - shift)
        if lo.is_zero() and hi.is_zero():
            continue
        census.append(CensusEntry(w, c, lo, hi))
        for _ in range(c):
            source, target = source + lo, target + hi
    return ObstructionReport(p, r, s, space, alpha, source, target, _verdict(source, target), bound, census)


def obstruction_check(p: int, r: int, slack: int = 0) -> ObstructionReport:
    """Test ``X = P(U)^{^s}``, ``alpha = s L`` over C_p for an odd prime ``p``.

    Here ``s = r / (p - 1)`` and ``P(U)`` is the projective space of a complete
    universe. ``slack`` widens the enumeration beyond what can contribute, which
    must not change the outcome.
    """
    if not (is_prime(p) and p % 2):
        raise DomainError(f"need an odd prime, got p={p}")
    if r < 0 or r % 2 or r % (p - 1):
        raise DomainError(f"degree must be even, non-negative and divisible by p-1={p - 1}, got r={r}")
    s = r // (p - 1)
    # a nonzero target needs fixed weight k <= max(r/2, (2s+r)/2p)
    kmax = max(r // 2, (2 * s + r) // (2 * p)) + slack
    factors = list(decompose_regular(p, cap=p * (kmax + 1)).summands[1:])
    summands = _smash_powers(factors, s, 2 * kmax)
    alpha = lam(p, 1, s) if s else zero(p)
    return _report(p, r, s, f"P(U)^{s} over C_{p}", alpha, trivial(p, r), summands, (2 * s + r) // (2 * p))


def obstruction_check_c2(r: int, slack: int = 0) -> ObstructionReport:
    """Test ``X`` = the ``r/2``-fold smash of conjugation-acted CP^infty at ``alpha = (r/2) rho``."""
    if r < 0 or r % 2:
        raise DomainError(f"degree must be even and non-negative, got r={r}")
    w = r // 2
    # summand L rho contributes at the target only for L <= 3w
    cap = 2 * w + 1 + slack
    factors = list(decompose_conj(cap).summands[1:])
    summands = _smash_powers(factors, w, 3 * w + slack)
    alpha = trivial(2, w) + sign(2, w) if w else zero(2)
    return _report(2, r, w, f"CP^inf_tau^{w}", alpha, trivial(2, r), summands, 3 * w)


def compositions(total: int, parts: int) -> int:
    """Ordered ways to write ``total`` as ``parts`` positive integers."""
    return comb(total - 1, parts - 1) if parts else int(total == 0)
