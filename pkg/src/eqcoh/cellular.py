"""Exact homotopy of Eilenberg-MacLane spectra of cyclic groups from cellular chains.

For a cyclic p-group ``G = C_q`` and an actual representation ``V`` whose non-trivial
irreducibles are ordered by decreasing kernel, ``S^V`` has a cell structure with one
orbit ``G/K`` per dimension. Maps between the free Eilenberg-MacLane modules on
orbits are maps of permutation modules and have no higher homotopy, so

    pi_{A + q - B}(HZ)  =  H_q( Hom_G( C(S^A), C(S^B) ) ).

A general cyclic group is handled one Sylow subgroup at a time: restriction to the
Sylow p-subgroup is an isomorphism after inverting the primes other than ``p``.
With ``modulus=p`` the same complex computes the mod p Mackey functor of C_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .errors import DomainError
from .reps import VirtualRep, restrict


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out, m, p = [], n, 2
    while m > 1:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
        p += 1
    return out


@dataclass(frozen=True)
class AbGroup:
    free: int
    torsion: tuple[int, ...]  # prime-power orders, sorted

    @property
    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_cyclic(self) -> bool:
        if self.free:
            return not self.torsion
        primes = [_prime_powers(t)[0][0] for t in self.torsion]
        return len(primes) == len(set(primes))

    def __str__(self) -> str:
        parts = (["Z"] if self.free == 1 else [f"Z^{self.free}"] if self.free else []) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _prime_power_split(k: int) -> list[int]:
    return [p**a for p, a in _prime_powers(k)]


# ----------------------------------------------------------------- chain complexes


@dataclass(frozen=True)
class _Mod:
    """Z[G/K] with the generator acting by ``chi`` times the shift; ``t = |G/K|``."""

    t: int
    chi: int


def _sphere_blocks(q: int, p: int, alpha: VirtualRep) -> list[tuple[int, int]]:
    """Non-trivial irreducibles of an actual rep over C_q as ``(|G/K|, real dim)``,
    ordered by decreasing kernel."""
    sig = alpha.sigma
    lam_by_t: dict[int, int] = {}
    for e, k in alpha.lam:
        t = q // gcd(e, q)
        if t == 2:
            sig += 2 * k  # L^{q/2} is twice the sign rep
        else:
            lam_by_t[t] = lam_by_t.get(t, 0) + k
    blocks = [(2, 1)] * sig
    for t in sorted(lam_by_t):
        blocks.extend([(t, 2)] * lam_by_t[t])
    return blocks


def _sphere_complex(blocks: tuple[tuple[int, int], ...]):
    """Modules and differentials of the reduced chains of the sphere."""
    mods = [_Mod(1, 1)]
    diffs: list[list[list[int]] | None] = [None]  # diffs[k]: C_k -> C_{k-1}
    z = [1]  # fundamental cycle in the top degree
    chi = 1
    for t, dim in blocks:
        bottom = _Mod(t, chi)
        # each cone cell bounds the previous fundamental cycle
        mods.append(bottom)
        diffs.append([[z[r]] * t for r in range(len(z))])
        if dim == 1:
            z = [1, -1] if t == 2 else None
            if z is None:
                raise DomainError("one-dimensional block needs index 2")
            chi = -chi
        else:
            mods.append(_Mod(t, chi))
            d = [[0] * t for _ in range(t)]
            for i in range(t):
                d[(i + 1) % t][i] += 1
                d[i][i] -= 1
            diffs.append(d)
            z = [1] * t
    return mods, diffs


def _invariant_basis(src: _Mod, dst: _Mod, modulus: int | None) -> list[list[int]]:
    """Images of the first basis vector under a Z-basis of G-maps ``src -> dst``."""
    t1, t2 = src.t, dst.t
    s = dst.chi ** t1
    if modulus == 2:
        s = 1
    seen = [False] * t2
    basis = []
    for j0 in range(t2):
        if seen[j0]:
            continue
        vec = [0] * t2
        c, j, ok = 1, j0, True
        while True:
            seen[j] = True
            vec[j] = c
            j = (j + t1) % t2
            c *= s
            if j == j0:
                ok = c == 1
                break
        if ok:
            basis.append(vec)
    return basis


def _map_matrix(src: _Mod, dst: _Mod, v: list[int], modulus: int | None) -> list[list[int]]:
    """Full matrix of the G-map sending the first basis vector of ``src`` to ``v``."""
    t1, t2 = src.t, dst.t
    x = [[0] * t1 for _ in range(t2)]
    for i in range(t1):
        sgn = (src.chi * dst.chi) ** i
        if modulus == 2:
            sgn = 1
        for j, c in enumerate(v):
            if c:
                x[(j + i) % t2][i] += sgn * c
    return x


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


class _HomComplex:
    def __init__(self, a_blocks, b_blocks, modulus: int | None, equivariant: bool = True):
        self.modulus = modulus
        self.A = _sphere_complex(a_blocks)
        self.B = _sphere_complex(b_blocks)
        self.equivariant = equivariant
        self._bases: dict[int, list[tuple[int, list[int], list[list[int]]]]] = {}

    def _pair_basis(self, src: _Mod, dst: _Mod):
        if self.equivariant:
            out = []
            for v in _invariant_basis(src, dst, self.modulus):
                out.append((v, _map_matrix(src, dst, v, self.modulus)))
            return out
        out = []
        for r in range(dst.t):
            for c in range(src.t):
                m = [[0] * src.t for _ in range(dst.t)]
                m[r][c] = 1
                out.append(((r, c), m))
        return out

    def basis(self, q: int):
        if q not in self._bases:
            amods, bmods = self.A[0], self.B[0]
            out = []
            for k, src in enumerate(amods):
                if 0 <= k + q < len(bmods):
                    for key, mat in self._pair_basis(src, bmods[k + q]):
                        out.append((k, key, mat))
            self._bases[q] = out
        return self._bases[q]

    def _coords(self, q: int, k: int, mat) -> dict[int, int]:
        """Coordinates of a block-``k`` map in the basis of degree ``q``."""
        out = {}
        for idx, (kk, key, _) in enumerate(self.basis(q)):
            if kk != k:
                continue
            if self.equivariant:
                lead = next(j for j, c in enumerate(key) if c)
                val = mat[lead][0] * key[lead]
            else:
                r, c = key
                val = mat[r][c]
            if val:
                out[idx] = val
        return out

    def differential(self, q: int) -> list[list[int]]:
        """Matrix of D: Hom_q -> Hom_{q-1}, f |-> d f - (-1)^q f d."""
        src = self.basis(q)
        rows = len(self.basis(q - 1))
        cols = [[0] * len(src) for _ in range(rows)]
        _, adiff = self.A
        _, bdiff = self.B
        for col, (k, _, f) in enumerate(src):
            if k + q >= 1 and bdiff[k + q] is not None:
                for r, v in self._coords(q - 1, k, _matmul(bdiff[k + q], f)).items():
                    cols[r][col] += v
            if k + 1 < len(adiff):
                g = _matmul(f, adiff[k + 1])
                sgn = -1 if q % 2 == 0 else 1
                for r, v in self._coords(q - 1, k + 1, g).items():
                    cols[r][col] += sgn * v
        return cols


def _rank_mod(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(vi - f * vr) % p for vi, vr in zip(m[i], m[rank])]
        rank += 1
    return rank


def _integral_homology(cx: _HomComplex, q: int) -> tuple[int, list[int]]:
    dim = len(cx.basis(q))
    if dim == 0:
        return 0, []
    dq = cx.differential(q)
    dq1 = cx.differential(q + 1)
    rk_q = Matrix(dq).rank() if dq and dq[0] else 0
    tors: list[int] = []
    rk_q1 = 0
    if dq1 and dq1[0]:
        for f in invariant_factors(Matrix(dq1), domain=ZZ):
            f = abs(int(f))
            if f:
                rk_q1 += 1
                if f > 1:
                    tors.append(f)
    return dim - rk_q - rk_q1, tors


@lru_cache(maxsize=None)
def _sylow_group(q: int, p: int, a_blocks, b_blocks, shift: int) -> tuple[int, tuple[int, ...]]:
    cx = _HomComplex(a_blocks, b_blocks, None)
    free, tors = _integral_homology(cx, shift)
    return free, tuple(tors)


def _split(alpha: VirtualRep) -> tuple[VirtualRep, VirtualRep, int]:
    pos = VirtualRep.of(alpha.n, 0, {e: k for e, k in alpha.lam if k > 0}, max(alpha.sigma, 0))
    neg = VirtualRep.of(alpha.n, 0, {e: -k for e, k in alpha.lam if k < 0}, max(-alpha.sigma, 0))
    return pos, neg, alpha.trivial


def _cancel_hz(alpha: VirtualRep, q: int) -> VirtualRep:
    """Over C_q identify L^i with L^{gcd(i, q)} and L^{q/2} with twice the sign rep."""
    acc: dict[int, int] = {}
    sig = alpha.sigma
    for e, k in alpha.lam:
        g = gcd(e, q)
        if 2 * g == q:
            sig += 2 * k
        else:
            acc[g] = acc.get(g, 0) + k
    return VirtualRep.of(q, alpha.trivial, acc, sig)


def homotopy_group(alpha: VirtualRep) -> AbGroup:
    """The group pi_alpha of the integral Eilenberg-MacLane spectrum of C_n at level G/G."""
    n = alpha.n
    if n == 1:
        return AbGroup(1 if alpha.dim == 0 else 0, ())
    free = None
    torsion: list[int] = []
    for p, a in _prime_powers(n):
        q = p**a
        local = _cancel_hz(restrict(alpha, q), q)
        pos, neg, shift = _split(local)
        f, tors = _sylow_group(q, p, tuple(_sphere_blocks(q, p, pos)), tuple(_sphere_blocks(q, p, neg)), shift)
        free = f if free is None else free
        for t in tors:
            torsion.extend(x for x in _prime_power_split(t) if x % p == 0)
    return AbGroup(free or 0, tuple(sorted(torsion)))


# ------------------------------------------------------------------ mod p, C_p


@dataclass(frozen=True)
class ModpLevels:
    """Dimensions at the two orbits of C_p and ranks of restriction and transfer."""

    top: int
    bottom: int
    res_rank: int
    tr_rank: int


def _cycles_and_boundaries(cx: _HomComplex, q: int, p: int):
    dim = len(cx.basis(q))
    dq = cx.differential(q)
    dq1 = cx.differential(q + 1)
    return dim, dq, dq1


def _nullspace_mod(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    m = [[v % p for v in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(vi - f * vr) % p for vi, vr in zip(m[i], m[rank])]
        pivots.append(c)
        rank += 1
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r][fc]) % p
        basis.append(v)
    return basis


def _columns(mat: list[list[int]], ncols: int) -> list[list[int]]:
    return [[row[c] for row in mat] for c in range(ncols)]


def modp_levels(alpha: VirtualRep, p: int) -> ModpLevels:
    """Mod p homotopy of C_p at ``alpha``: both levels plus restriction and transfer ranks."""
    if alpha.n != p:
        raise DomainError("mod p levels are computed over C_p")
    pos, neg, shift = _split(_cancel_hz(alpha, p))
    ab, bb = tuple(_sphere_blocks(p, p, pos)), tuple(_sphere_blocks(p, p, neg))
    eq = _HomComplex(ab, bb, p, equivariant=True)
    ne = _HomComplex(ab, bb, p, equivariant=False)

    def level(cx):
        dim = len(cx.basis(shift))
        if dim == 0:
            return 0, [], []
        dq = cx.differential(shift)
        dq1 = cx.differential(shift + 1)
        z = _nullspace_mod(dq, dim, p) if dq else [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
        b = _columns(dq1, len(cx.basis(shift + 1))) if dq1 and dq1[0] else []
        return dim, z, b

    dim_g, z_g, b_g = level(eq)
    dim_e, z_e, b_e = level(ne)
    h_g = _rank_mod(z_g + b_g, p) - _rank_mod(b_g, p) if dim_g else 0
    h_e = _rank_mod(z_e + b_e, p) - _rank_mod(b_e, p) if dim_e else 0

    def to_plain(cx_from, vec):
        out = [0] * len(ne.basis(shift))
        for coeff, (k, _, mat) in zip(vec, cx_from.basis(shift)):
            if coeff:
                for r, c in ne._coords(shift, k, mat).items():
                    out[r] = (out[r] + coeff * c) % p
        return out

    # restriction: forget equivariance of equivariant cycles
    res_imgs = [to_plain(eq, v) for v in z_g] if dim_g and dim_e else []
    res_rank = (_rank_mod(res_imgs + b_e, p) - _rank_mod(b_e, p)) if res_imgs else 0

    # transfer: average a plain cycle over the group
    tr_rank = 0
    if dim_g and dim_e and z_e:
        imgs = []
        for v in z_e:
            acc = [0] * len(eq.basis(shift))
            for coeff, (k, (r, c), mat) in zip(v, ne.basis(shift)):
                if not coeff:
                    continue
                src, dst = eq.A[0][k], eq.B[0][k + shift]
                summed = [[0] * src.t for _ in range(dst.t)]
                for g in range(p):
                    pg = _perm(dst, g, p)
                    pinv = _perm(src, -g, p)
                    conj = _matmul(_matmul(pg, mat), pinv)
                    for i in range(dst.t):
                        for j in range(src.t):
                            summed[i][j] += conj[i][j]
                for idx, val in eq._coords(shift, k, summed).items():
                    acc[idx] = (acc[idx] + coeff * val) % p
            imgs.append(acc)
        tr_rank = _rank_mod(imgs + b_g, p) - _rank_mod(b_g, p)
    return ModpLevels(h_g, h_e, res_rank, tr_rank)


def _perm(mod: _Mod, g: int, p: int):
    t = mod.t
    m = [[0] * t for _ in range(t)]
    g %= p
    sgn = 1 if p == 2 else mod.chi**g
    for i in range(t):
        m[(i + g) % t][i] = sgn
    return m
