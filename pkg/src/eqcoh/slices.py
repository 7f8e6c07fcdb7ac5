"""Slice certificates for the summands of projective-space splittings.

A summand ``S^{V}`` (with ``V`` the cell shifted by 2 or 4) smashed with the
integral Eilenberg-MacLane spectrum is a slice of level ``N`` when

* connectivity: ``dim V^{C_d} >= N/d`` for every subgroup order ``d``;
* coconnectivity: for every subgroup ``H = C_m`` and all ``k*m > N``, ``r >= 0``,
  the group ``[S^{k rho_H + r}, S^V ^ HZ]^H`` vanishes. That group is homotopy in
  degree ``k rho_H + r - res V``; its fixed dimensions grow with ``k`` and ``r``, so
  once they are all positive they stay positive and only a finite window of
  ``(k, r)`` needs a separate vanishing argument.

Inside the window the fixed-point criteria are tried first. They miss degrees
containing the sign representation (even ``m`` with odd ``k``), which are then
settled by the chain-level calculator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cellular import homotopy_group
from .coeff import vanishing_reason
from .errors import DomainError
from .reps import VirtualRep, divisors, fixed_dim, fixed_dims, phi, quat_w, real_regular, restrict, trivial


def in_tau_geq(v: VirtualRep, level: int) -> bool:
    """Connectivity test ``dim V^{C_d} >= level / d`` for all ``d | n`` (exact arithmetic)."""
    if not v.is_actual():
        raise DomainError(f"connectivity needs an actual representation, got {v}")
    return all(d * fixed_dim(v, d) >= level for d in divisors(v.n))


@dataclass(frozen=True)
class Witness:
    m: int  # subgroup order
    k: int  # multiple of the real regular rep of C_m
    r: int  # trivial shift
    alpha: VirtualRep  # cohomological degree res V - r - k rho over C_m
    reason: str | None


@dataclass
class SliceCertificate:
    family: str
    n: int
    ell: int
    summand: VirtualRep
    level: int
    connective_ok: bool
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def coconnective_ok(self) -> bool:
        return all(w.reason is not None for w in self.witnesses)

    @property
    def valid(self) -> bool:
        return self.connective_ok and self.coconnective_ok

    def failures(self) -> list[Witness]:
        return [w for w in self.witnesses if w.reason is None]


_FAMILIES = {
    "complex": (phi, 2),
    "quat": (quat_w, 4),
}


def slice_summand(family: str, n: int, ell: int) -> tuple[VirtualRep, int]:
    """Shifted summand ``V`` and its expected slice level."""
    if family not in _FAMILIES:
        raise DomainError(f"family must be one of {sorted(_FAMILIES)}, got {family!r}")
    if n < 1 or ell < 0:
        raise DomainError("need n >= 1 and ell >= 0")
    cell, shift = _FAMILIES[family]
    return cell(ell, n) + trivial(n, shift), shift * (ell + 1)


def coconnective_window(v: VirtualRep, level: int, m: int) -> list[Witness]:
    """Every ``(k, r)`` over C_m whose degree still has a non-positive fixed dimension.

    The first entry is the extremal instance ``k = level // m + 1, r = 0``.
    """
    res = restrict(v, m)
    rho = real_regular(m)
    out = []
    k = level // m + 1
    while True:
        r = 0
        while True:
            homotopy = rho.scale(k) + trivial(m, r) - res
            if min(fixed_dims(homotopy).values()) > 0 and (k, r) != (level // m + 1, 0):
                break
            out.append(Witness(m, k, r, -homotopy, _why_zero(homotopy)))
            if min(fixed_dims(homotopy).values()) > 0:
                break
            r += 1
        if r == 0:
            break
        k += 1
    return out


CELLULAR = "CellularComputation"


def _why_zero(alpha: VirtualRep) -> str | None:
    reason = vanishing_reason(alpha)
    if reason is not None:
        return str(reason)
    return CELLULAR if homotopy_group(alpha).is_zero else None


def certify_slice(family: str, n: int, ell: int) -> SliceCertificate:
    """Certify that the ``ell``-th summand (complex or quaternionic) is a slice."""
    v, level = slice_summand(family, n, ell)
    cert = SliceCertificate(family, n, ell, v, level, in_tau_geq(v, level))
    for m in divisors(n):
        cert.witnesses.extend(coconnective_window(v, level, m))
    return cert
