"""Coefficient rings for the cohomology of classifying spaces over C_{p^m}.

Polynomials live in a sympy sparse ring on the generators

* ``a0..a{m-1}``, ``u0..u{m-1}``: Euler and orientation classes of ``L^{p^k}``;
* ``v1..v{m-1}``: the invertible-type class between ``L^{p^{r-1}}`` and ``L^{p^r}``;
* ``x``: the degree-2 generator of the trivially acted projective space;
* ``g0..gm``: the ring generators of the classifying space (one per ``p^j``).

After every operation a normal form is taken: ``v_r u_r -> u_{r-1}`` and
``v_r a_r -> p a_{r-1}`` are applied eagerly (orientation rule first), then
coefficients are reduced. With ``modp`` everything is reduced mod p; with ``Z`` a
monomial containing ``a_k`` lives in a group of order dividing ``p^{m-k}``, so its
coefficient is reduced mod ``p^{m - max k}`` while ``a``-free coefficients stay integral.
The exchange relation between ``a`` and ``u`` classes is deliberately absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from sympy import ZZ
from sympy.polys.rings import PolyElement, ring

from ..errors import DomainError

MODES = ("Z", "modp")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def valuation(j: int, p: int) -> tuple[int, int]:
    """Split ``j != 0`` as ``s * p^k`` with ``p`` not dividing ``s``."""
    k = 0
    while j % p == 0:
        j //= p
        k += 1
    return k, j


@dataclass(frozen=True)
class CoeffRing:
    p: int
    m: int
    mode: str = "modp"
    gen: str = "alpha"  # prefix used when printing the classifying-space generators

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"ring structure needs a prime p, got {self.p} (mixed-prime orders are not supported)")
        if self.m < 1:
            raise DomainError("need m >= 1")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")

    @property
    def n(self) -> int:
        return self.p**self.m

    @cached_property
    def names(self) -> list[str]:
        m = self.m
        return (
            [f"a{k}" for k in range(m)]
            + [f"u{k}" for k in range(m)]
            + [f"v{r}" for r in range(1, m)]
            + ["x"]
            + [f"{self.gen}{j}" for j in range(m + 1)]
        )

    @cached_property
    def _ring(self):
        R, *_ = ring(",".join(self.names), ZZ)
        return R

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    # ------------------------------------------------------------ constructors

    def var(self, name: str) -> PolyElement:
        return self._ring.gens[self._pos[name]]

    def const(self, c: int) -> PolyElement:
        return self.nf(self._ring(c))

    @property
    def one(self) -> PolyElement:
        return self._ring.one

    @property
    def zero(self) -> PolyElement:
        return self._ring.zero

    @property
    def x(self) -> PolyElement:
        return self.var("x")

    def a(self, k: int) -> PolyElement:
        return self.zero if k >= self.m else self.var(f"a{k}")

    def u(self, k: int) -> PolyElement:
        return self.one if k >= self.m else self.var(f"u{k}")

    def v(self, r: int) -> PolyElement:
        """Class between ``L^{p^{r-1}}`` and ``L^{p^r}``; for ``r = m`` it equals ``u_{m-1}``."""
        if not 1 <= r <= self.m:
            raise DomainError(f"v_r needs 1 <= r <= m, got r={r}")
        return self.u(self.m - 1) if r == self.m else self.var(f"v{r}")

    def g(self, j: int) -> PolyElement:
        return self.var(f"{self.gen}{j}")

    def a_lam(self, j: int) -> PolyElement:
        """Euler class of ``L^j`` in normalized form: ``s * a_k`` for ``j = s p^k``."""
        j %= self.n
        if j == 0:
            return self.zero
        k, s = valuation(j, self.p)
        return self.nf(s * self.a(k))

    def u_lam(self, j: int) -> PolyElement:
        j %= self.n
        if j == 0:
            return self.one
        return self.u(valuation(j, self.p)[0])

    # ------------------------------------------------------------ normal form

    def nf(self, f: PolyElement) -> PolyElement:
        """Normal form: apply the ``v`` rewrite rules and reduce coefficients."""
        m, p = self.m, self.p
        pos = self._pos
        out: dict[tuple, int] = {}
        for mono, c in f.items():
            e = list(mono)
            for r in range(m - 1, 0, -1):
                iv = pos[f"v{r}"]
                if not e[iv]:
                    continue
                iu, iu1 = pos[f"u{r}"], pos[f"u{r - 1}"]
                t = min(e[iv], e[iu])
                e[iv] -= t
                e[iu] -= t
                e[iu1] += t
                ia, ia1 = pos[f"a{r}"], pos[f"a{r - 1}"]
                s = min(e[iv], e[ia])
                e[iv] -= s
                e[ia] -= s
                e[ia1] += s
                c *= p**s
            key = tuple(e)
            out[key] = out.get(key, 0) + c
        res = {}
        for key, c in out.items():
            c = self._reduce(key, c)
            if c:
                res[key] = c
        return self._ring(res)

    def modulus(self, mono: tuple) -> int | None:
        """Order bound of a monomial's coefficient group; None means integral."""
        if self.mode == "modp":
            return self.p
        top = max((k for k in range(self.m) if mono[k]), default=None)
        return None if top is None else self.p ** (self.m - top)

    def _reduce(self, mono: tuple, c: int) -> int:
        q = self.modulus(mono)
        return c if q is None else c % q

    # ------------------------------------------------------------ helpers

    def substitute(self, f: PolyElement, values: dict[str, PolyElement | int]) -> PolyElement:
        """Ring homomorphism sending the named generators to the given values."""
        pairs = [(self.var(k), v if isinstance(v, PolyElement) else self._ring(v)) for k, v in values.items()]
        return self.nf(f.compose(pairs)) if pairs else self.nf(f)

    def terms(self, f: PolyElement) -> list[tuple[dict[str, int], int]]:
        """Terms in graded-lex order (total degree, then exponents in generator order)."""
        keyed = sorted(f.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
        return [({self.names[i]: e for i, e in enumerate(mono) if e}, c) for mono, c in keyed]

    def format(self, f: PolyElement) -> str:
        if not f:
            return "0"
        out = []
        for exps, c in self.terms(f):
            body = "*".join(k if e == 1 else f"{k}^{e}" for k, e in exps.items())
            mag = abs(c)
            piece = body if body and mag == 1 else (f"{mag}*{body}" if body else str(mag))
            out.append(("- " if c < 0 else "+ ") + piece)
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def as_json(self, f: PolyElement) -> list[dict]:
        return [{"coeff": c, "exponents": exps} for exps, c in self.terms(f)]
