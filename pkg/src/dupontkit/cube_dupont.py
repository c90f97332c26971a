"""Cubical forms on ``[0,1]^n`` and the tensor-product Dupont retraction.

A cube form is a polynomial form in the product coordinates ``x_1 ... x_n``
(indexed from 0 internally).  Each term ``x^e dx_S`` factorizes as a tensor
product of one-dimensional forms ``x_k^{e_k} (dx_k)``, so tensor operators act
slot by slot, with the Koszul sign ``(-1)^(|A| * degree to the left)`` for an
operator ``A`` of odd degree.

The one-dimensional operators are written for an arbitrary interval piece
``[a, b]`` in a global coordinate so that they also serve subdivided slots.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable, Mapping, Sequence

from .complexes import (Cochain, CubicalComplex, DomainError, OperatorRetraction, check_dr, coboundary,
                        standard_complex)
from .report import Report, make_check

HALF = Fraction(1, 2)


def _add_into(out: dict, key, coef) -> None:
    v = out.get(key, 0) + coef
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# ---------------------------------------------------------------------------
# one-variable polynomials: dict exponent -> coefficient

def poly_eval(p: Mapping[int, Fraction], x: Fraction) -> Fraction:
    return sum((c * x ** e for e, c in p.items()), Fraction(0))


def poly_antiderivative(p: Mapping[int, Fraction], a: Fraction) -> dict:
    """``x -> ∫_a^x p``."""
    out: dict = {}
    for e, c in p.items():
        _add_into(out, e + 1, c / (e + 1))
    const = -poly_eval(out, a)
    _add_into(out, 0, const)
    return out


def poly_linear(c0: Fraction, c1: Fraction) -> dict:
    out: dict = {}
    _add_into(out, 0, Fraction(c0))
    _add_into(out, 1, Fraction(c1))
    return out


def poly_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            _add_into(out, e1 + e2, c1 * c2)
    return out


# ---------------------------------------------------------------------------
# the interval operators on a piece [a, b]
#
# A 1-d form is a dict (exponent, has_dx) -> coefficient.  A 1-d cochain on
# the piece is a dict with keys "a", "b" (vertices) and "ab" (the edge).

def interval_whitney(cochain: Mapping[str, Fraction], a=0, b=1) -> dict:
    a, b = Fraction(a), Fraction(b)
    L = b - a
    out: dict = {}
    for e, c in poly_linear(b / L, -1 / L).items():
        _add_into(out, (e, False), c * cochain.get("a", 0))
    for e, c in poly_linear(-a / L, 1 / L).items():
        _add_into(out, (e, False), c * cochain.get("b", 0))
    _add_into(out, (0, True), cochain.get("ab", 0) / L)
    return out


def interval_integration(form: Mapping, a=0, b=1) -> dict:
    a, b = Fraction(a), Fraction(b)
    f = {e: c for (e, dx), c in form.items() if not dx}
    g = {e: c for (e, dx), c in form.items() if dx}
    return {"a": poly_eval(f, a), "b": poly_eval(f, b), "ab": poly_eval(poly_antiderivative(g, a), b)}


def interval_s(form: Mapping, a=0, b=1) -> dict:
    """``s(g dx) = ∫_a^x g - ((x - a)/(b - a)) ∫_a^b g`` and ``s(f) = 0``."""
    a, b = Fraction(a), Fraction(b)
    g = {e: c for (e, dx), c in form.items() if dx}
    prim = poly_antiderivative(g, a)
    total = poly_eval(prim, b)
    out: dict = {}
    for e, c in prim.items():
        _add_into(out, (e, False), c)
    for e, c in poly_linear(-a / (b - a), 1 / (b - a)).items():
        _add_into(out, (e, False), -c * total)
    return out


def interval_wr(form: Mapping, a=0, b=1) -> dict:
    return interval_whitney(interval_integration(form, a, b), a, b)


def interval_ops(which: str, value, a=0, b=1):
    """The 1-d operators ``W`` (cochain dict -> form), ``R`` (form -> cochain dict) and ``s``."""
    if which == "W":
        return interval_whitney(value, a, b)
    if which == "R":
        return interval_integration(value, a, b)
    if which == "s":
        return interval_s(value, a, b)
    raise DomainError(f"unknown interval operator {which!r}")


# ---------------------------------------------------------------------------
# cube forms

class CubeForm:
    """Polynomial form on ``[0,1]^n``: ``(exponents, sorted dx slots) -> coefficient``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None, _trusted: bool = False):
        self.n = n
        if _trusted:
            self.terms = dict(terms)
            return
        clean = {}
        for (e, w), c in (terms or {}).items():
            e, w = tuple(e), tuple(w)
            if len(e) != n or list(w) != sorted(set(w)) or any(not 0 <= j < n for j in w):
                raise DomainError(f"bad cube form term {(e, w)}")
            c = Fraction(c)
            if c:
                clean[(e, w)] = c
        self.terms = clean

    @classmethod
    def const(cls, n: int, c=1) -> "CubeForm":
        return cls(n, {((0,) * n, ()): c})

    @classmethod
    def x(cls, n: int, k: int) -> "CubeForm":
        return cls(n, {(tuple(int(j == k) for j in range(n)), ()): 1})

    @classmethod
    def dx(cls, n: int, k: int) -> "CubeForm":
        return cls(n, {((0,) * n, (k,)): 1})

    def _check(self, other):
        if not isinstance(other, CubeForm) or other.n != self.n:
            raise DomainError("cube forms of different dimensions")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return CubeForm(self.n, out, True)

    def __neg__(self):
        return CubeForm(self.n, {k: -c for k, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CubeForm):
            return self.wedge(other)
        s = Fraction(other)
        return CubeForm(self.n, {k: c * s for k, c in self.terms.items()} if s else {}, True)

    __rmul__ = __mul__

    def wedge(self, other: "CubeForm") -> "CubeForm":
        self._check(other)
        out: dict = {}
        for (ea, wa), ca in self.terms.items():
            for (eb, wb), cb in other.terms.items():
                if set(wa) & set(wb):
                    continue
                inv = sum(1 for x in wa for y in wb if x > y)
                e = tuple(x + y for x, y in zip(ea, eb))
                _add_into(out, (e, tuple(sorted(wa + wb))), (-1) ** inv * ca * cb)
        return CubeForm(self.n, out, True)

    def d(self) -> "CubeForm":
        out: dict = {}
        for (e, w), c in self.terms.items():
            for k, a in enumerate(e):
                if a and k not in w:
                    sign = (-1) ** sum(1 for j in w if j < k)
                    e2 = e[:k] + (a - 1,) + e[k + 1:]
                    _add_into(out, (e2, tuple(sorted(w + (k,)))), sign * a * c)
        return CubeForm(self.n, out, True)

    def degrees(self) -> set[int]:
        return {len(w) for _, w in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, CubeForm) and other.n == self.n and other.terms == self.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return format_cube_form(self)

    def __repr__(self) -> str:
        return f"CubeForm(n={self.n}, {self})"


def format_cube_form(f: CubeForm) -> str:
    if not f.terms:
        return "0"
    parts = []
    for (e, w) in sorted(f.terms, key=lambda k: (len(k[1]), k[1], tuple(-x for x in k[0]))):
        factors = [str(f.terms[(e, w)])]
        for i, a in enumerate(e):
            if a:
                factors.append(f"x{i + 1}" + (f"^{a}" if a > 1 else ""))
        if w:
            factors.append("^".join(f"dx{j + 1}" for j in w))
        parts.append("*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# tensor action

SlotOp = Callable[[dict], dict]  # 1-d form -> 1-d form


def apply_slotwise(ops: Sequence[tuple[SlotOp, int]], f: CubeForm) -> CubeForm:
    """Apply ``A_1 ⊗ ... ⊗ A_n`` where ``ops[k] = (A_k, degree of A_k)``.

    The Koszul rule gives the sign ``Π_k (-1)^(|A_k| Σ_{l<k} |f_l|)`` on a
    factorized term ``f_1 ⊗ ... ⊗ f_n``.
    """
    n = f.n
    if len(ops) != n:
        raise DomainError("one operator per slot required")
    out: dict = {}
    for (e, w), c in f.terms.items():
        wset = set(w)
        sign = 1
        left = 0
        images = []
        for k, (op, deg) in enumerate(ops):
            if deg % 2 and left % 2:
                sign = -sign
            has = k in wset
            left += has
            image = op({(e[k], has): Fraction(1)})
            if not image:
                images = None
                break
            images.append(image)
        if images is None:
            continue
        for combo in product(*[list(im.items()) for im in images]):
            coef = sign * c
            exps = []
            wedge = []
            for k, ((ek, dk), ck) in enumerate(combo):
                coef *= ck
                exps.append(ek)
                if dk:
                    wedge.append(k)
            _add_into(out, (tuple(exps), tuple(wedge)), coef)
    return CubeForm(n, out, True)


def _identity(form: dict) -> dict:
    return dict(form)


IDENTITY = (_identity, 0)
WR = (lambda form: interval_wr(form), 0)
S = (lambda form: interval_s(form), 1)


def tau(sigma: Sequence[int], f: CubeForm) -> CubeForm:
    """Slot permutation: the factor in slot ``k`` moves to slot ``σ(k)`` (with Koszul sign)."""
    n = f.n
    if sorted(sigma) != list(range(n)):
        raise DomainError(f"not a permutation of the slots: {sigma}")
    out: dict = {}
    for (e, w), c in f.terms.items():
        e2 = [0] * n
        for k in range(n):
            e2[sigma[k]] = e[k]
        moved = [sigma[k] for k in w]
        sign = 1
        for i in range(len(moved)):
            for j in range(i + 1, len(moved)):
                if moved[i] > moved[j]:
                    sign = -sign
        _add_into(out, (tuple(e2), tuple(sorted(moved))), sign * c)
    return CubeForm(n, out, True)


def inverse_permutation(sigma: Sequence[int]) -> tuple:
    inv = [0] * len(sigma)
    for k, s in enumerate(sigma):
        inv[s] = k
    return tuple(inv)


# ---------------------------------------------------------------------------
# W, R, s on the cube

def cube_of(n: int) -> CubicalComplex:
    return standard_complex("cube", n)


_SLOT_FORM = {(0,): {(0, False): Fraction(1), (1, False): Fraction(-1)},
              (1,): {(1, False): Fraction(1)},
              (0, 1): {(0, True): Fraction(1)}}


def cube_whitney(x: Cochain, n: int | None = None) -> CubeForm:
    """``W ⊗ ... ⊗ W`` on a cochain of the standard cube."""
    if n is None:
        n = x.complex.dimension
    if x.complex != cube_of(n):
        raise DomainError("cochain does not live on the standard cube")
    out: dict = {}
    for cell, c in x.terms.items():
        for combo in product(*[list(_SLOT_FORM[s].items()) for s in cell]):
            coef = c
            exps, wedge = [], []
            for k, ((e, dk), ck) in enumerate(combo):
                coef *= ck
                exps.append(e)
                if dk:
                    wedge.append(k)
            _add_into(out, (tuple(exps), tuple(wedge)), coef)
    return CubeForm(n, out, True)


def cube_integration(f: CubeForm) -> Cochain:
    """``R ⊗ ... ⊗ R``: slot-wise endpoint values and edge integrals."""
    n = f.n
    cplx = cube_of(n)
    out: dict = {}
    for (e, w), c in f.terms.items():
        choices = []
        for k in range(n):
            if k in w:
                choices.append([((0, 1), Fraction(1, e[k] + 1))])
            else:
                choices.append([((0,), Fraction(int(e[k] == 0))), ((1,), Fraction(1))])
        for combo in product(*choices):
            coef = c
            for _, v in combo:
                coef *= v
            if coef:
                _add_into(out, tuple(cell for cell, _ in combo), coef)
    return Cochain(cplx, out)


def s0_ops(n: int) -> list[list]:
    """Summands of ``s_0 = Σ_j 1^{j-1} ⊗ s ⊗ (WR)^{n-j}`` as per-slot operator lists."""
    return [[IDENTITY] * j + [S] + [WR] * (n - 1 - j) for j in range(n)]


def psi_ops(eps: Sequence[int]) -> list[list]:
    """``ψ_ε = Σ_j (WR)^{ε_1} ⊗ ... ⊗ s ⊗ ... ⊗ (WR)^{ε_{n-1}}``, s in slot j."""
    n = len(eps) + 1
    out = []
    for j in range(n):
        ops = [WR if e else IDENTITY for e in eps]
        out.append(ops[:j] + [S] + ops[j:])
    return out


def _sum_ops(summands, f: CubeForm, scale=1) -> CubeForm:
    total = CubeForm(f.n)
    for ops in summands:
        total = total + apply_slotwise(ops, f)
    return total * scale if scale != 1 else total


def cube_s0(f: CubeForm) -> CubeForm:
    return _sum_ops(s0_ops(f.n), f)


def psi(eps: Sequence[int], f: CubeForm) -> CubeForm:
    return _sum_ops(psi_ops(eps), f)


def C_coefficient(e: int, n: int) -> int:
    return factorial(e) * factorial(n - 1 - e)


def cube_s_expansion(f: CubeForm) -> CubeForm:
    """``(1/n!) Σ_ε C_{|ε|,n} ψ_ε``."""
    n = f.n
    total = CubeForm(n)
    for eps in product((0, 1), repeat=n - 1):
        total = total + psi(eps, f) * C_coefficient(sum(eps), n)
    return total * Fraction(1, factorial(n))


def cube_s_average(f: CubeForm) -> CubeForm:
    """``(1/n!) Σ_σ τ_σ s_0 τ_σ^{-1}``."""
    n = f.n
    total = CubeForm(n)
    for sigma in permutations(range(n)):
        total = total + tau(sigma, cube_s0(tau(inverse_permutation(sigma), f)))
    return total * Fraction(1, factorial(n))


def cube_dupont_s(f: CubeForm, variant: str = "symmetrized") -> CubeForm:
    if variant == "s0":
        return cube_s0(f)
    if variant == "symmetrized":
        return cube_s_expansion(f)
    raise DomainError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# probes and verification

def random_cube_form(n: int, p: int, d: int, seed: int, terms: int = 3) -> CubeForm:
    """Deterministic nonzero p-form on the n-cube, coefficients in [-3, 3], poly degree <= d."""
    if not 0 <= p <= n:
        raise DomainError(f"no {p}-forms on the {n}-cube")
    rng = random.Random(f"cube:{n}:{p}:{d}:{seed}")
    wedges = list(combinations(range(n), p))
    while True:
        out: dict = {}
        for _ in range(rng.randint(1, terms)):
            e = [0] * n
            for _ in range(rng.randint(0, d)):
                e[rng.randrange(n)] += 1
            _add_into(out, (tuple(e), rng.choice(wedges)), rng.choice([-3, -2, -1, 1, 2, 3]))
        if out:
            return CubeForm(n, out, True)


def cube_probes(n: int, probes: int, degree: int, seed: int) -> list[CubeForm]:
    cplx = cube_of(n)
    out = [cube_whitney(Cochain(cplx, {c: 1}), n) for c in cplx]
    for p in range(n + 1):
        out += [random_cube_form(n, p, degree, seed * 100_003 + j) for j in range(probes)]
    return out


def cube_retraction(n: int, probes: list[CubeForm], variant: str) -> OperatorRetraction:
    cplx = cube_of(n)
    return OperatorRetraction(
        include=lambda x: cube_whitney(x, n),
        project=cube_integration,
        homotopy=lambda f: cube_dupont_s(f, variant),
        d_small=coboundary,
        d_big=lambda f: f.d(),
        small_probes=[Cochain(cplx, {c: 1}) for c in cplx],
        big_probes=probes,
        small_is_zero=lambda x: not x,
        big_is_zero=lambda f: f.is_zero(),
    )


def _first_failure(items, lhs, rhs, fmt=str):
    for item in items:
        left, right = lhs(item), rhs(item)
        if left != right:
            return {"input": fmt(item), "lhs": str(left), "rhs": str(right)}
    return None


def verify_cubical(n: int, probes: int = 25, degree: int = 3, seed: int = 0) -> Report:
    if n < 1:
        raise DomainError("the cubical suite needs n >= 1")
    report = Report("cubical", {"n": n, "probes": probes, "degree": degree, "seed": seed})
    big = cube_probes(n, probes, degree, seed)
    names = {"p_i_identity": "RW_identity", "homotopy_identity": "ds_plus_sd",
             "a_squared_zero": "s_squared_zero", "a_i_zero": "sW_zero", "p_a_zero": "Rs_zero"}
    for variant in ("s0", "symmetrized"):
        for c in check_dr(cube_retraction(n, big, variant)):
            c.name = f"{variant}.{names[c.name]}"
            report.add(c)
    cplx = cube_of(n)
    basis = [Cochain(cplx, {c: 1}) for c in cplx]
    bad = _first_failure(basis, lambda x: cube_whitney(coboundary(x), n), lambda x: cube_whitney(x, n).d())
    report.add(make_check("W_cochain_map", bad is None, counterexample=bad))
    bad = _first_failure(big, lambda f: cube_integration(f.d()), lambda f: coboundary(cube_integration(f)))
    report.add(make_check("R_cochain_map", bad is None, counterexample=bad))
    bad = _first_failure(big, cube_s_average, cube_s_expansion)
    report.add(make_check("average_equals_C_expansion", bad is None, counterexample=bad))
    bad = None
    for sigma in permutations(range(n)):
        inv = inverse_permutation(sigma)
        bad = _first_failure(big, lambda f: tau(sigma, cube_s_expansion(tau(inv, f))), cube_s_expansion,
                             lambda f, sigma=sigma: f"sigma={list(sigma)}: {f}")
        if bad:
            break
    report.add(make_check("slot_permutation_invariance", bad is None, counterexample=bad))
    eps_list = list(product((0, 1), repeat=n - 1))
    bad = None
    for e1, e2 in combinations(eps_list, 2):
        bad = _first_failure(big, lambda f: psi(e1, psi(e2, f)) + psi(e2, psi(e1, f)),
                             lambda f: CubeForm(n), lambda f, e1=e1, e2=e2: f"eps={e1},{e2}: {f}")
        if bad:
            break
    report.add(make_check("psi_anticommute", bad is None, counterexample=bad))
    return report
