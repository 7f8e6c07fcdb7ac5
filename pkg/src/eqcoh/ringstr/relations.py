"""Ring relations for the cohomology of ``B S^1`` and ``B S^3`` over C_{p^m}, checked through q0."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import GF
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from ..coeff import Monomial, cyclic_coordinates
from ..decomp import decompose_conj
from ..errors import DomainError
from ..reps import VirtualRep, hz_canonical, lam, phi, zero
from .poly import CoeffRing, valuation
from .q0 import Q0, q0_closed, q0_images, underlying

QUAT_NOTE = (
    "quaternionic restriction is the complex one composed with the substitution "
    "a_k -> a_k^2, u_k -> u_k^2, v_r -> v_r^2 (x read as the degree-4 class)"
)


def pfun(z: PolyElement, w: PolyElement, R: CoeffRing) -> PolyElement:
    """``P(z, w) = (z - w)^{p-1} - w^{p-1}``."""
    return R.nf((z - w) ** (R.p - 1) - w ** (R.p - 1))


def _prod(R: CoeffRing, factors) -> PolyElement:
    out = R.one
    for f in factors:
        out = R.nf(out * f)
    return out


def squaring(R: CoeffRing) -> dict[str, PolyElement]:
    """Substitution ``a_k -> a_k^2``, ``u_k -> u_k^2``, ``v_r -> v_r^2``."""
    vals = {}
    for k in range(R.m):
        vals[f"a{k}"] = R.a(k) ** 2
        vals[f"u{k}"] = R.u(k) ** 2
    for r in range(1, R.m):
        vals[f"v{r}"] = R.var(f"v{r}") ** 2
    return vals


# ---------------------------------------------------------------- series


@dataclass
class SeriesTerms:
    R: CoeffRing
    B: list[PolyElement]  # B_0..B_r in the target ring
    T: list[PolyElement]  # T_0..T_{r-1} in the source ring
    TT: list[PolyElement]  # Q0(T_j), built directly as B_j (x u + a)
    A: list[PolyElement]  # source-side A_j
    AA: list[PolyElement]  # target-side A_j
    images_match: bool  # Q0(T_j) == TT_j and Q0(A_j) == AA_j
    factorization_ok: bool  # B_j == prod_{i<j} AA_i for every j <= r


def _chain(R: CoeffRing, count: int, base, sq) -> tuple[list, list]:
    """``T_j = base_j + prod a`` style chains: returns (T, A) for j < count."""
    p = R.p
    T, A = [], []
    for j in range(count):
        T.append(R.nf(base(j) + _prod(R, (sq(R.a_lam(i)) for i in range(1, p**j + 1)))))
        A.append(pfun(T[j], R.nf(sq(R.a_lam(p**j)) * _prod(R, A)), R))
    return T, A


def series_terms(r: int, p: int, m: int) -> SeriesTerms:
    """Auxiliary series of the mod p relations, with both consistency checks evaluated."""
    if not 0 <= r <= m:
        raise DomainError(f"need 0 <= r <= m, got r={r}, m={m}")
    R = CoeffRing(p, m, "modp")
    images = q0_images(R)
    B = [_prod(R, (R.a_lam(i) + R.u_lam(i) * R.x for i in range(1, p**j))) for j in range(r + 1)]
    same = lambda f: f  # noqa: E731
    T, A = _chain(R, r, R.g, same)
    TT = [R.nf(B[j] * (R.x * R.u_lam(p**j) + R.a_lam(p**j))) for j in range(r)]
    _, AA = _chain(R, r, lambda j: TT[j] - _prod(R, (R.a_lam(i) for i in range(1, p**j + 1))), same)
    images_ok = all(Q0(t, R, images) == tt for t, tt in zip(T, TT)) and all(
        Q0(a, R, images) == aa for a, aa in zip(A, AA)
    )
    fact_ok = all(B[j] == _prod(R, AA[:j]) for j in range(r + 1))
    return SeriesTerms(R, B, T, TT, A, AA, images_ok, fact_ok)


# ---------------------------------------------------------------- relations


@dataclass
class RelationCheck:
    kind: str
    p: int
    m: int
    r: int
    relation: str
    residual: str
    ok: bool
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "m": self.m,
            "r": self.r,
            "relation": self.relation,
            "residual": self.residual,
            "ok": self.ok,
            "notes": list(self.notes),
        }


def relation_poly(R: CoeffRing, r: int, quaternionic: bool = False) -> PolyElement:
    """``rho_r`` (or ``mu_r``) as an element of the source ring.

    ``v_r^e g_r - T_{r-1}^p + a^{e(p-1)} T_{r-1} (prod_{i<r-1} A_i)^{p-1}`` with
    ``e = 1`` for the complex case and squared classes for the quaternionic one.
    """
    if not 1 <= r <= R.m:
        raise DomainError(f"need 1 <= r <= m, got r={r}, m={R.m}")
    p = R.p
    sq_vals = squaring(R)
    sq = (lambda f: R.substitute(f, sq_vals)) if quaternionic else (lambda f: f)
    T, A = _chain(R, r, R.g, sq)
    t = T[r - 1]
    head = R.nf(sq(R.v(r)) * R.g(r))
    tail = R.nf(sq(R.a_lam(p ** (r - 1))) ** (p - 1) * t * _prod(R, A[: r - 1]) ** (p - 1))
    return R.nf(head - t**p + tail)


def _images(R: CoeffRing, quaternionic: bool) -> dict[str, PolyElement]:
    images = q0_images(R)
    if quaternionic:
        vals = squaring(R)
        images = {k: R.substitute(v, vals) for k, v in images.items()}
    return images


def verify_relation(kind: str, p: int, m: int = 1, r: int = 1) -> RelationCheck:
    """Map a ring relation through q0 and check that it vanishes."""
    if kind in ("rho", "mu"):
        if not 1 <= r <= m:
            raise DomainError(f"need 1 <= r <= m, got r={r}, m={m}")
        quat = kind == "mu"
        R = CoeffRing(p, m, "modp", gen="beta" if quat else "alpha")
        rel = relation_poly(R, r, quat)
        res = Q0(rel, R, _images(R, quat))
        notes = [QUAT_NOTE] if quat else []
        return RelationCheck(kind, p, m, r, R.format(rel), R.format(res), not res, notes)
    if kind == "lewis":
        # integral bookkeeping: a-free coefficients in Z, p * a0 = 0
        R = CoeffRing(p, 1, "Z")
        g0, g1 = R.g(0), R.g(1)
        rel = R.nf(R.u(0) * g1 - g0 * _prod(R, (i * R.a(0) + g0 for i in range(1, p))))
        res = Q0(rel, R)
        return RelationCheck(kind, p, 1, 1, R.format(rel), R.format(res), not res)
    if kind == "lemma":
        if not 1 <= r <= m:
            raise DomainError(f"need 1 <= r <= m, got r={r}, m={m}")
        R = CoeffRing(p, m, "modp")
        a, u, x = R.a(r - 1), R.u(r - 1), R.x
        lhs = _prod(R, (i * a + x * u for i in range(1, p)))
        rhs = R.nf((x * u) ** (p - 1) - a ** (p - 1))
        return RelationCheck(kind, p, m, r, f"{R.format(lhs)} = {R.format(rhs)}", R.format(R.nf(lhs - rhs)), lhs == rhs)
    raise DomainError(f"unknown relation kind {kind!r}; use rho, mu, lewis or lemma")


# ---------------------------------------------------------------- injectivity


@dataclass
class InjectivityProfile:
    p: int
    m: int
    j: int
    labels: list[int]  # generator index i, ordered p^j, p^j - 1, ..., 0
    source_orders: list[int | None]  # None = Z
    target_orders: list[int | None]
    t_formula: list[int | None]  # exponent t_{j,i} from the valuation formula
    matrix: list[list[int]]  # rows: targets x^l, columns: sources, both in label order
    diagonal: list[int]  # diagonal entries normalized to powers of p (0 if zero)
    diagonal_formula: list[int]  # p^{t - m + j - 1} predicted by the valuation formula
    lower_triangular: bool
    injective: bool

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in (
            "p", "m", "j", "labels", "source_orders", "target_orders", "t_formula",
            "matrix", "diagonal", "diagonal_formula", "lower_triangular", "injective",
        )}


def t_exponent(p: int, m: int, j: int, i: int) -> int:
    """Best possible ``m - max v_p`` over ``p^j - i`` labels drawn from ``{1..p^j-1} + {p^{j-1}}``."""
    vals = sorted([valuation(s, p)[0] for s in range(1, p**j)] + [j - 1])
    return m - vals[p**j - i - 1]


def _zeta(p: int, m: int, j: int) -> VirtualRep:
    n = p**m
    v = lam(n, p ** (j - 1))
    for i in range(1, p**j):
        v = v + lam(n, i)
    return v


def _poly_to_monomials(R: CoeffRing, f: PolyElement) -> dict[int, dict[Monomial, int]]:
    """Split by powers of x and translate a_k, u_k into divisor-indexed monomials."""
    ix = R.names.index("x")
    out: dict[int, dict[Monomial, int]] = {}
    for mono, c in f.items():
        a = {R.p**k: mono[k] for k in range(R.m) if mono[k]}
        u = {R.p**k: mono[R.m + k] for k in range(R.m) if mono[R.m + k]}
        mon = Monomial.of(R.n, a, u)
        bucket = out.setdefault(mono[ix], {})
        bucket[mon] = bucket.get(mon, 0) + c
    return out


def injectivity_profile(p: int, m: int, j: int) -> InjectivityProfile:
    """Matrix of q0 at the degree ``zeta_{p^j}`` in the monomial bases of source and target."""
    if not 1 <= j <= m:
        raise DomainError(f"need 1 <= j <= m, got j={j}, m={m}")
    R = CoeffRing(p, m, "Z")
    n, top = p**m, p**j
    zeta = _zeta(p, m, j)
    labels = list(range(top, -1, -1))
    pieces = {jj: q0_closed(p**jj, R) for jj in range(m + 1)}

    # sources: v_j g_j and a_{zeta - phi_i} * (generator in degree phi_i)
    images = []
    source_orders: list[int | None] = []
    for i in labels:
        if i == top:
            images.append(R.nf(R.v(j) * q0_closed(top, R)))
            source_orders.append(None)
            continue
        a_part = _prod(R, [R.a_lam(s) for s in range(i + 1, top)] + [R.a_lam(p ** (j - 1))])
        # the additive generator in degree phi_i differs from this product of ring
        # generators by a unitriangular change of basis, so injectivity is unaffected
        gen = _prod(R, (pieces[jj] ** e for jj, e in _digits(i, p, m)))
        images.append(R.nf(a_part * gen))
        source_orders.append(cyclic_coordinates(phi(i, n) - zeta)[0])

    targets = [cyclic_coordinates(VirtualRep.of(n, 2 * l) - zeta) for l in labels]
    target_orders = [q for q, _ in targets]
    t_formula: list[int | None] = [None if l == top else t_exponent(p, m, j, l) for l in labels]

    matrix = [[0] * len(labels) for _ in labels]
    for col, img in enumerate(images):
        for l, coeffs in _poly_to_monomials(R, img).items():
            row = labels.index(l)
            expect = hz_canonical(VirtualRep.of(n, 2 * l) - zeta)
            for mon in coeffs:
                if hz_canonical(mon.degree()) != expect:
                    raise AssertionError(f"degree mismatch for {mon} at x^{l}")
            q, coords = targets[row]
            val = sum(c * coords[mon] for mon, c in coeffs.items())
            matrix[row][col] = int(val if q is None else val % q)

    lower = all(matrix[r][c] == 0 for r in range(len(labels)) for c in range(r + 1, len(labels)))
    diagonal = []
    for k in range(len(labels)):
        entry, q = matrix[k][k], target_orders[k]
        if q is None:
            diagonal.append(abs(entry))
        else:
            diagonal.append(p ** valuation(entry, p)[0] if entry % q else 0)  # up to a unit
    formula = [1] + [p ** (t - m + j - 1) for t in t_formula[1:]]
    injective = matrix[0][0] != 0 and _socle_injective(p, matrix, source_orders, target_orders)
    return InjectivityProfile(
        p, m, j, labels, source_orders, target_orders, t_formula, matrix, diagonal, formula, lower, injective
    )


def _socle_injective(p: int, matrix, source_orders, target_orders) -> bool:
    """Whether no element of order p in the torsion of the source maps to zero.

    Order-p elements are ``(s/p) b`` with ``b`` in F_p; their images lie in the order-p
    part of the target, so injectivity reduces to full column rank over F_p.
    """
    cols = [c for c, s in enumerate(source_orders) if s is not None and s > 1]
    rows = []
    for r, q in enumerate(target_orders):
        if q is None or q == 1:
            continue
        row = []
        for c in cols:
            val = (source_orders[c] // p) * matrix[r][c] % q
            if val % (q // p):
                raise AssertionError("image of an order-p element is not of order p")
            row.append(val // (q // p) % p)
        rows.append(row)
    if not cols:
        return True
    if not rows:
        return False
    dm = DomainMatrix([[GF(p)(v) for v in row] for row in rows], (len(rows), len(cols)), GF(p))
    return dm.rank() == len(cols)


# ---------------------------------------------------------------- module basis


@dataclass
class BasisMonomial:
    k: int
    i: int
    p: int
    m: int
    factors: list[tuple[int, int]]  # (j, exponent) for generators in degree phi_{p^j}
    res_e_exponent: int
    degree_matches: bool  # sum of factor degrees equals phi_{kn+i} up to unit twists
    leading_unit: bool  # top coefficient of q0 equals that of the basis element

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"alpha_phi{self.p ** j}" + (f"^{e}" if e > 1 else "") for j, e in self.factors)


def _digits(i: int, p: int, m: int) -> list[tuple[int, int]]:
    """Nonzero base-p digits of ``i < p^m`` as ``(position, digit)``, highest first."""
    out = []
    for jj in range(m - 1, -1, -1):
        d = (i // p**jj) % p
        if d:
            out.append((jj, d))
    return out


def basis_monomial(k: int, i: int, p: int, m: int) -> BasisMonomial:
    """Product of ring generators replacing the additive generator in degree ``k phi_n + phi_i``."""
    n = p**m
    if k < 0 or not 0 <= i < n:
        raise DomainError(f"need k >= 0 and 0 <= i < {n}")
    factors = ([(m, k)] if k else []) + _digits(i, p, m)
    total = k * n + i

    deg = zero(n)
    for jj, e in factors:
        deg = deg + phi(p**jj, n).scale(e)
    degree_ok = hz_canonical(deg) == hz_canonical(phi(total, n))

    R = CoeffRing(p, m, "Z")
    images = q0_images(R)
    prod = _prod(R, (R.g(jj) ** e for jj, e in factors))
    img = Q0(prod, R, images)
    ix = R.names.index("x")
    lead = R._ring({mono: c for mono, c in img.items() if mono[ix] == total})
    want = R.nf(_prod(R, (R.u_lam(s) for s in range(1, total + 1))) * R.x**total)
    leading_ok = lead == want and underlying(img, R) == R.x**total
    return BasisMonomial(k, i, p, m, factors, total, degree_ok, leading_ok)


# ---------------------------------------------------------------- conjugation


@dataclass
class ConjRing:
    generator: str
    generator_degree: VirtualRep
    powers: list[tuple[int, VirtualRep, int]]  # (k, degree of eps^k, exponent of res_e)
    matches_decomposition: bool

    def as_dict(self) -> dict:
        return {
            "generator": self.generator,
            "generator_degree": str(self.generator_degree),
            "powers": [{"k": k, "degree": str(d), "res_e": f"x^{e}"} for k, d, e in self.powers],
            "matches_decomposition": self.matches_decomposition,
        }


def conj_ring(n_cap: int) -> ConjRing:
    """Polynomial ring on one generator in degree ``1 + s`` for complex conjugation on CP^infty."""
    if n_cap < 0:
        raise DomainError("need n_cap >= 0")
    gen = VirtualRep.of(2, 1, sigma=1)
    powers = [(k, gen.scale(k), k) for k in range(n_cap + 1)]
    dec = decompose_conj(n_cap)
    return ConjRing("eps", gen, powers, list(dec.summands) == [d for _, d, _ in powers])
