"""Restriction of ring generators to the fixed projective space ``P(C^infty)``.

``q0_closed`` evaluates the closed formulas; ``q0_via_tau`` walks the cell-removal
calculus one summand at a time. They are written independently so that each can
serve as the oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy.polys.rings import PolyElement

from ..errors import DomainError
from .poly import CoeffRing, valuation


@dataclass(frozen=True)
class NormalizedClass:
    kind: str  # "a" or "u"
    index: int | None  # k in a_k / u_k; None when the class is trivial
    scalar: int  # multiplier (a-classes only)

    def as_poly(self, R: CoeffRing) -> PolyElement:
        if self.index is None:
            return R.zero if self.kind == "a" else R.one
        base = R.a(self.index) if self.kind == "a" else R.u(self.index)
        return R.nf(self.scalar * base)


def normalize_class(kind: str, j: int, p: int, m: int) -> NormalizedClass:
    """Rewrite ``a_{L^j}`` as ``s * a_k`` or ``u_{L^j}`` as ``u_k`` where ``j = s p^k``."""
    if kind not in ("a", "u"):
        raise DomainError(f"kind must be 'a' or 'u', got {kind!r}")
    n = p**m
    j %= n
    if j == 0:
        return NormalizedClass(kind, None, 0 if kind == "a" else 1)
    k, s = valuation(j, p)
    return NormalizedClass(kind, k, s % n if kind == "a" else 1)


def _check_d(R: CoeffRing, d: int) -> None:
    if not 1 <= d <= R.n:
        raise DomainError(f"need 1 <= d <= p^m = {R.n}, got d={d}")


def _z(R: CoeffRing, s: int) -> PolyElement:
    return R.a_lam(s) + R.u_lam(s) * R.x


def _theta_a(R: CoeffRing, j: int, d: int) -> PolyElement:
    """Euler class of the map ``S^{L^{j-d}}``; equals ``Theta_{j,d} a_{L^j}`` for p-power ``d``.

    Mod p the closed formulas use ``a_{L^j}`` itself.
    """
    return R.a_lam(j - d) if R.mode == "Z" else R.a_lam(j)


def q0_closed(d: int, R: CoeffRing) -> PolyElement:
    """Restriction of the generator in degree ``phi_d`` via the closed formulas."""
    _check_d(R, d)
    if R.mode == "modp" or d == R.n:
        prod_z, prod_a = R.one, R.one
        for s in range(1, d + 1):
            prod_z = R.nf(prod_z * _z(R, s))
            prod_a = R.nf(prod_a * R.a_lam(s))
        return R.nf(prod_z - prod_a)
    # suffix products of a + u x
    tail = [R.one] * (d + 2)
    for s in range(d, 0, -1):
        tail[s] = R.nf(tail[s + 1] * _z(R, s))
    total = R.zero
    head = R.one
    for i in range(d):
        total += R.nf(head * R.u_lam(i + 1) * R.x * tail[i + 2])
        head = R.nf(head * _theta_a(R, i + 1, d))
    return R.nf(total)


# ---------------------------------------------------------------- Delta / Omega


@dataclass(frozen=True)
class Delta:
    removed: frozenset[int]  # characters already removed from {1..d-1}


@dataclass(frozen=True)
class Omega:
    removed: frozenset[int]
    level: int  # ell: the class lives in degree V_{I,ell}


def tau(state: dict, i: int, d: int, k: int, R: CoeffRing) -> dict:
    """Pull back along the inclusion that forgets ``L^i`` (``1 <= i < d``)."""
    out: dict = {}

    def add(key, coef):
        out[key] = R.nf(out.get(key, R.zero) + coef)

    for key, coef in state.items():
        if isinstance(key, Delta):
            rest = key.removed | {i}
            add(Delta(rest), coef * _theta_a(R, i, d))
            add(Omega(rest, 0), coef * R.u_lam(i))
        elif isinstance(key, Omega):
            rest = key.removed | {i}
            add(Omega(rest, key.level), coef * R.a_lam(i))
            if key.level + 1 < k:  # the top class is zero
                add(Omega(rest, key.level + 1), coef * R.u_lam(i))
        else:
            add(key, coef)
    return {key: c for key, c in out.items() if c}


def tau_last(state: dict, d: int, R: CoeffRing) -> PolyElement:
    """Forget ``L^d`` once ``I`` is empty; lands in polynomials in ``x``."""
    x = R.x
    total = R.zero
    for key, coef in state.items():
        if isinstance(key, Delta):
            total += coef * R.u_lam(d) * x
        elif isinstance(key, Omega):
            total += coef * (R.a_lam(d) * x ** (key.level + 1) + R.u_lam(d) * x ** (key.level + 2))
        else:
            total += coef
    return R.nf(total)


def q0_via_tau(d: int, R: CoeffRing) -> PolyElement:
    """Restriction of the generator in degree ``phi_d`` via the removal calculus."""
    _check_d(R, d)
    k = d
    state = {Delta(frozenset()): R.one}
    for i in range(1, d):
        state = tau(state, i, d, k, R)
    return tau_last(state, d, R)


def tau_composite_omega(removals: list[int], t: int, d: int, k: int, R: CoeffRing) -> PolyElement:
    """Apply the removal maps for ``removals`` and then ``L^d`` to one Omega class."""
    state = {Omega(frozenset(), t): R.one}
    for i in removals:
        state = tau(state, i, d, k, R)
    return tau_last(state, d, R)


# ---------------------------------------------------------------- the algebraic map


def q0_images(R: CoeffRing) -> dict[str, PolyElement]:
    """Images of the generators ``g_j`` (degree ``phi_{p^j}``) under the algebraic restriction."""
    return {f"{R.gen}{j}": q0_closed(R.p**j, R) for j in range(R.m + 1)}


def Q0(f: PolyElement, R: CoeffRing, images: dict[str, PolyElement] | None = None) -> PolyElement:
    return R.substitute(f, images if images is not None else q0_images(R))


def underlying(f: PolyElement, R: CoeffRing) -> PolyElement:
    """Forget to the trivial group: ``a_k -> 0``, ``u_k, v_r -> 1``."""
    values: dict[str, int] = {}
    for k in range(R.m):
        values[f"a{k}"] = 0
        values[f"u{k}"] = 1
    for r in range(1, R.m):
        values[f"v{r}"] = 1
    return R.substitute(f, values)
