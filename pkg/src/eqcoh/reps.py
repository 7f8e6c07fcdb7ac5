"""Virtual real representations of a cyclic group C_n.

A degree is stored as ``trivial + sum(mult_i * L^i) + sigma * s`` where ``L^i`` is
the complex character ``g -> exp(2 pi i k / n)`` (real dimension 2) and ``s`` the
real sign representation, available only for even ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

from .errors import DomainError


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise DomainError(f"group order must be positive, got {n}")
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@dataclass(frozen=True)
class VirtualRep:
    """Element of RO(C_n) spanned by trivial, complex characters and the sign rep.

    ``lam`` holds ``(exponent, multiplicity)`` pairs with exponents in ``1..n-1``
    and nonzero multiplicities. Exponent 0 is folded into ``trivial`` (2 each).
    Use :meth:`of` rather than the raw constructor.
    """

    n: int
    trivial: int = 0
    lam: tuple[tuple[int, int], ...] = ()
    sigma: int = 0

    @classmethod
    def of(
        cls,
        n: int,
        trivial: int = 0,
        lam: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
        sigma: int = 0,
    ) -> "VirtualRep":
        if n < 1:
            raise DomainError(f"group order must be positive, got {n}")
        if sigma and n % 2:
            raise DomainError(f"sign representation needs even n, got n={n}")
        acc: dict[int, int] = {}
        items = lam.items() if isinstance(lam, Mapping) else (lam or ())
        for exp, mult in items:
            e = exp % n
            if e == 0:
                trivial += 2 * mult
            else:
                acc[e] = acc.get(e, 0) + mult
        pairs = tuple(sorted((e, k) for e, k in acc.items() if k))
        return cls(n, trivial, pairs, sigma)

    @property
    def lam_dict(self) -> dict[int, int]:
        return dict(self.lam)

    def mult(self, exp: int) -> int:
        e = exp % self.n
        if e == 0:
            raise DomainError("exponent 0 is stored in the trivial part")
        return self.lam_dict.get(e, 0)

    def _combine(self, other: "VirtualRep", sign: int) -> "VirtualRep":
        if not isinstance(other, VirtualRep):
            return NotImplemented
        if other.n != self.n:
            raise DomainError(f"group mismatch: C_{self.n} vs C_{other.n}")
        acc = self.lam_dict
        for e, k in other.lam:
            acc[e] = acc.get(e, 0) + sign * k
        return VirtualRep.of(
            self.n, self.trivial + sign * other.trivial, acc, self.sigma + sign * other.sigma
        )

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        return self._combine(other, 1)

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self._combine(other, -1)

    def __neg__(self) -> "VirtualRep":
        return self.scale(-1)

    def scale(self, k: int) -> "VirtualRep":
        return VirtualRep.of(self.n, k * self.trivial, {e: k * m for e, m in self.lam}, k * self.sigma)

    def __rmul__(self, k: int) -> "VirtualRep":
        return self.scale(k)

    def plus_trivial(self, k: int) -> "VirtualRep":
        return VirtualRep(self.n, self.trivial + k, self.lam, self.sigma)

    @property
    def dim(self) -> int:
        """Underlying real dimension."""
        return self.trivial + 2 * sum(k for _, k in self.lam) + self.sigma

    def is_zero(self) -> bool:
        return self.trivial == 0 and not self.lam and self.sigma == 0

    def is_actual(self) -> bool:
        """True when every coefficient is non-negative."""
        return self.trivial >= 0 and self.sigma >= 0 and all(k > 0 for _, k in self.lam)

    def __str__(self) -> str:
        from .grammar import format_degree

        return format_degree(self)


def zero(n: int) -> VirtualRep:
    return VirtualRep.of(n)


def trivial(n: int, k: int) -> VirtualRep:
    return VirtualRep.of(n, trivial=k)


def lam(n: int, i: int, mult: int = 1) -> VirtualRep:
    return VirtualRep.of(n, lam={i: mult})


def sign(n: int, mult: int = 1) -> VirtualRep:
    return VirtualRep.of(n, sigma=mult)


def fixed_dim(alpha: VirtualRep, d: int) -> int:
    """Real dimension of the C_d-fixed points, where C_d is the subgroup of order d."""
    n = alpha.n
    if d < 1 or n % d:
        raise DomainError(f"{d} does not divide {n}")
    total = alpha.trivial + 2 * sum(k for e, k in alpha.lam if e % d == 0)
    if (n // d) % 2 == 0:
        total += alpha.sigma
    return total


def fixed_dims(alpha: VirtualRep) -> dict[int, int]:
    """Fixed-point dimension for every subgroup, keyed by subgroup order."""
    return {d: fixed_dim(alpha, d) for d in divisors(alpha.n)}


def is_even(alpha: VirtualRep) -> bool:
    return all(v % 2 == 0 for v in fixed_dims(alpha).values())


def twist(alpha: VirtualRep, j: int) -> VirtualRep:
    """Tensor a complex representation with L^{-j}.

    Trivial summands are read as complex lines, so the trivial part must be even.
    """
    if alpha.sigma:
        raise DomainError("sign representation is not complex; cannot twist")
    if alpha.trivial % 2:
        raise DomainError("odd trivial part is not complex; cannot twist")
    acc: dict[int, int] = {}
    for e, k in ((0, alpha.trivial // 2),) + alpha.lam:
        tgt = (e - j) % alpha.n
        acc[tgt] = acc.get(tgt, 0) + k
    return VirtualRep.of(alpha.n, 0, acc)


def phi(ell: int, n: int) -> VirtualRep:
    """Complex rep with characters L^{-ell}, ..., L^{-1}; the ell-th cell of P(U)."""
    if ell < 0:
        raise DomainError(f"phi index must be >= 0, got {ell}")
    acc: dict[int, int] = {}
    for j in range(ell):
        e = (j - ell) % n
        acc[e] = acc.get(e, 0) + 1
    return VirtualRep.of(n, 0, acc)


def quat_w(k: int, n: int) -> VirtualRep:
    """Complex rep L^{-k} * sum_{i<k} (L^i + L^{-i}); cells of quaternionic projective space."""
    if k < 0:
        raise DomainError(f"quaternionic index must be >= 0, got {k}")
    acc: dict[int, int] = {}
    for i in range(k):
        for e in (i - k, -i - k):
            acc[e % n] = acc.get(e % n, 0) + 1
    return VirtualRep.of(n, 0, acc)


def regular(n: int) -> VirtualRep:
    """Complex regular representation: every character once (real dimension 2n)."""
    return VirtualRep.of(n, 2, {i: 1 for i in range(1, n)})


def real_regular(n: int) -> VirtualRep:
    """Real regular representation (real dimension n)."""
    pairs = {i: 1 for i in range(1, (n + 1) // 2)}
    return VirtualRep.of(n, 1, pairs, 1 if n % 2 == 0 else 0)


def restrict(alpha: VirtualRep, m: int) -> VirtualRep:
    """Restrict to the subgroup C_m; the result lives over C_m."""
    n = alpha.n
    if m < 1 or n % m:
        raise DomainError(f"{m} does not divide {n}")
    acc: dict[int, int] = {}
    for e, k in alpha.lam:
        acc[e % m] = acc.get(e % m, 0) + k
    triv = alpha.trivial
    sig = 0
    if alpha.sigma:
        if (n // m) % 2 == 0:
            triv += alpha.sigma
        else:
            sig = alpha.sigma
    return VirtualRep.of(m, triv, acc, sig)


def hz_canonical(alpha: VirtualRep) -> VirtualRep:
    """Replace each L^i by L^{gcd(i, n)}.

    Smashing integral Eilenberg-MacLane spectra with S^{L^i} only sees gcd(i, n),
    so this is the representative used when comparing cells up to that equivalence.
    """
    acc: dict[int, int] = {}
    for e, k in alpha.lam:
        g = gcd(e, alpha.n)
        acc[g] = acc.get(g, 0) + k
    return VirtualRep.of(alpha.n, alpha.trivial, acc, alpha.sigma)
