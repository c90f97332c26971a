"""Polynomial differential forms on the standard simplex, in barycentric coordinates.

A form on ``|Δ^n|`` is stored in the chart ``t_0, ..., t_{n-1}``: the last
coordinate is eliminated through ``t_n = 1 - Σ t_i`` and ``dt_n = -Σ dt_i``.
Every term is keyed by ``(exponents, wedge)`` where ``exponents`` has length
``n`` and ``wedge`` is a strictly increasing tuple of chart indices, which
gives a unique normal form, so equality of forms is equality of term maps.

All pointwise operators (``d``, wedge, contraction with the vector fields
``E_i``, the cone homotopies ``h^q``, evaluation, affine pullback) act
directly on chart coordinates.  Affine maps between simplices are given by the
images of the source vertices, as points of the target.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .complexes import DomainError, SimplicialComplex, format_cell, orient

Key = tuple  # (exponents, wedge)


# ---------------------------------------------------------------------------
# points

def bary_point(coords: Iterable) -> tuple[Fraction, ...]:
    """Validate and normalize a barycentric point (non-negative, summing to one)."""
    q = tuple(Fraction(c) for c in coords)
    if not q or sum(q) != 1 or any(c < 0 for c in q):
        raise DomainError(f"not a barycentric point: {q}")
    return q


def vertex_point(n: int, i: int) -> tuple[Fraction, ...]:
    if not 0 <= i <= n:
        raise DomainError(f"vertex {i} outside Δ^{n}")
    return tuple(Fraction(int(j == i)) for j in range(n + 1))


def barycenter(n: int, indices: Iterable[int]) -> tuple[Fraction, ...]:
    idx = set(indices)
    if not idx or not idx <= set(range(n + 1)):
        raise DomainError(f"bad face {sorted(idx)} of Δ^{n}")
    w = Fraction(1, len(idx))
    return tuple(w if j in idx else Fraction(0) for j in range(n + 1))


# ---------------------------------------------------------------------------
# raw term arithmetic

@lru_cache(maxsize=None)
def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of sorting the concatenation of two increasing disjoint tuples (0 if they meet)."""
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def _merge(a: tuple, b: tuple) -> tuple[int, tuple]:
    return _merge_sign(a, b), tuple(sorted(a + b))


def _add_into(out: dict, key, coef) -> None:
    v = out.get(key, 0) + coef
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for (ea, wa), ca in a.items():
        for (eb, wb), cb in b.items():
            sign, w = _merge(wa, wb)
            if not sign:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            _add_into(out, (e, w), ca * cb if sign > 0 else -(ca * cb))
    return out


class SimplexForm:
    """Canonical polynomial form on ``|Δ^n|``."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None):
        if n < 0:
            raise DomainError("negative simplex dimension")
        self.n = n
        clean = {}
        for (e, w), c in (terms or {}).items():
            e, w = tuple(e), tuple(w)
            if len(e) != n or any(x < 0 for x in e) or list(w) != sorted(set(w)) or any(not 0 <= j < n for j in w):
                raise DomainError(f"non-canonical term key {(e, w)} for n={n}")
            c = Fraction(c)
            if c:
                clean[(e, w)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, n: int, terms: dict) -> "SimplexForm":
        """Trusted constructor for terms already canonical, nonzero and Fraction-valued."""
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors ----------------------------------------------------------
    @classmethod
    def const(cls, n: int, c=1) -> "SimplexForm":
        return cls(n, {((0,) * n, ()): c})

    @classmethod
    def zero(cls, n: int) -> "SimplexForm":
        return cls(n)

    @classmethod
    def t(cls, n: int, i: int) -> "SimplexForm":
        """Barycentric coordinate ``t_i`` (``i = n`` gives ``1 - Σ t_j``)."""
        if not 0 <= i <= n:
            raise DomainError(f"coordinate t_{i} outside Δ^{n}")
        if i < n:
            return cls(n, {(_unit(n, i), ()): 1})
        out = {((0,) * n, ()): Fraction(1)}
        for j in range(n):
            out[(_unit(n, j), ())] = Fraction(-1)
        return cls(n, out)

    @classmethod
    def dt(cls, n: int, i: int) -> "SimplexForm":
        if not 0 <= i <= n:
            raise DomainError(f"coordinate dt_{i} outside Δ^{n}")
        if i < n:
            return cls(n, {((0,) * n, (i,)): 1})
        return cls(n, {((0,) * n, (j,)): -1 for j in range(n)})

    # structure -------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {len(w) for _, w in self.terms}

    @property
    def degree(self) -> int:
        """Form degree of a homogeneous form (0 for the zero form)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise DomainError("form is not homogeneous")
        return ds.pop() if ds else 0

    def part(self, p: int) -> "SimplexForm":
        return SimplexForm._make(self.n, {k: c for k, c in self.terms.items() if len(k[1]) == p})

    def poly_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def _check(self, other: "SimplexForm"):
        if not isinstance(other, SimplexForm) or other.n != self.n:
            raise DomainError("forms live on simplices of different dimensions")

    # linear structure ------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return SimplexForm._make(self.n, out)

    def __neg__(self):
        return SimplexForm._make(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SimplexForm):
            return self.wedge(other)
        s = Fraction(other)
        if not s:
            return SimplexForm._make(self.n, {})
        return SimplexForm._make(self.n, {k: c * s for k, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def wedge(self, other: "SimplexForm") -> "SimplexForm":
        self._check(other)
        return SimplexForm._make(self.n, _mul_terms(self.terms, other.terms))

    __xor__ = wedge

    def __pow__(self, k: int) -> "SimplexForm":
        out = SimplexForm.const(self.n)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == SimplexForm.const(self.n, other)
        return isinstance(other, SimplexForm) and other.n == self.n and other.terms == self.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # operators -------------------------------------------------------------
    def d(self) -> "SimplexForm":
        out: dict = {}
        for (e, w), c in self.terms.items():
            for i, a in enumerate(e):
                if not a or i in w:
                    continue
                sign = _merge_sign((i,), w)
                e2 = e[:i] + (a - 1,) + e[i + 1:]
                _add_into(out, (e2, tuple(sorted((i,) + w))), sign * a * c)
        return SimplexForm._make(self.n, out)

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"SimplexForm(n={self.n}, {self})"


def _unit(n: int, i: int) -> tuple:
    return tuple(int(j == i) for j in range(n))


def _sort_key(key):
    e, w = key
    return (len(w), w, tuple(-x for x in e))


def format_form(f, var: str = "t", offset: int = 0) -> str:
    """Render as ``coef*t0^2*t1*dt0^dt1`` terms joined by `` + ``."""
    if not f.terms:
        return "0"
    parts = []
    for key in sorted(f.terms, key=_sort_key):
        e, w = key
        factors = [str(f.terms[key])]
        for i, a in enumerate(e):
            if a == 1:
                factors.append(f"{var}{i + offset}")
            elif a > 1:
                factors.append(f"{var}{i + offset}^{a}")
        if w:
            factors.append("^".join(f"d{var}{j + offset}" for j in w))
        parts.append("*".join(factors))
    return " + ".join(parts)


def canonicalize(n: int, raw: Mapping) -> SimplexForm:
    """Reduce an ambient form in all ``n + 1`` coordinates modulo Σt = 1, Σdt = 0.

    ``raw`` maps ``(exponents of length n+1, ordered wedge indices)`` to coefficients.
    """
    total = SimplexForm.zero(n)
    for (e, w), c in raw.items():
        if len(e) != n + 1:
            raise DomainError("ambient exponent vector must have n+1 entries")
        term = SimplexForm.const(n, c)
        for i, a in enumerate(e):
            if a:
                term = term.wedge(SimplexForm.t(n, i) ** a)
        for j in w:
            term = term.wedge(SimplexForm.dt(n, j))
        total = total + term
    return total


def wedge(a: SimplexForm, b: SimplexForm) -> SimplexForm:
    return a.wedge(b)


def exterior_derivative(a: SimplexForm) -> SimplexForm:
    return a.d()


# ---------------------------------------------------------------------------
# Whitney forms

def whitney_form(n: int, indices: Sequence[int], barred: bool = False) -> SimplexForm:
    """``ω_I = Σ_l (-1)^l t_{i_l} dt_{i_0}...(omit i_l)...dt_{i_p}``; barred scales by ``p!``."""
    idx = tuple(indices)
    if not idx or len(set(idx)) != len(idx) or any(not 0 <= i <= n for i in idx):
        raise DomainError(f"bad Whitney index set {idx} on Δ^{n}")
    return _whitney(n, idx, barred)


@lru_cache(maxsize=None)
def _whitney(n: int, idx: tuple, barred: bool) -> SimplexForm:
    p = len(idx) - 1
    total = SimplexForm.zero(n)
    for l, il in enumerate(idx):
        term = SimplexForm.t(n, il) * (-1) ** l
        for j in idx[:l] + idx[l + 1:]:
            term = term.wedge(SimplexForm.dt(n, j))
        total = total + term
    return total * factorial(p) if barred else total


# ---------------------------------------------------------------------------
# contraction, cone homotopy, evaluation

def _interior(form: SimplexForm, components: Sequence[SimplexForm]) -> SimplexForm:
    """Interior product with the vector field whose chart components are given (0-forms)."""
    n = form.n
    out = SimplexForm.zero(n)
    for (e, w), c in form.terms.items():
        for pos, j in enumerate(w):
            rest = SimplexForm(n, {(e, w[:pos] + w[pos + 1:]): c * (-1) ** pos})
            out = out + components[j].wedge(rest)
    return out


def contract_E(i: int, a: SimplexForm) -> SimplexForm:
    """Interior product with ``E_i = Σ_j (δ_ij - t_j) ∂/∂t_j``."""
    n = a.n
    if not 0 <= i <= n:
        raise DomainError(f"vertex {i} outside Δ^{n}")
    comps = [SimplexForm.const(n, int(i == j)) - SimplexForm.t(n, j) for j in range(n)]
    return _interior(a, comps)


@lru_cache(maxsize=200_000)
def _cone_term(q: tuple, e: tuple, w: tuple) -> tuple:
    """h^q of the single term ``t^e dt_w``, as a tuple of (key, coef) items."""
    n = len(e)
    r = len(w)
    if r == 0:
        return ()
    # expand prod_i ((1-s) t_i + s q_i)^{e_i} = sum over b of coef * (1-s)^{|b|} s^{|e|-|b|} t^b
    radial: dict = {}
    ranges = [range(a + 1) for a in e]
    for b in product(*ranges):
        coef = Fraction(1)
        for i, (a, bi) in enumerate(zip(e, b)):
            if a - bi:
                if not q[i]:
                    coef = Fraction(0)
                    break
                coef *= comb(a, bi) * q[i] ** (a - bi)
            else:
                coef *= comb(a, bi)
        if not coef:
            continue
        k = r - 1 + sum(b)
        m = sum(e) - sum(b)
        beta = Fraction(factorial(m) * factorial(k), factorial(m + k + 1))
        _add_into(radial, b, coef * beta)
    out: dict = {}
    for pos, j in enumerate(w):
        rest = w[:pos] + w[pos + 1:]
        sign = (-1) ** pos
        for b, c in radial.items():
            if q[j]:
                _add_into(out, (b, rest), sign * c * q[j])
            b2 = b[:j] + (b[j] + 1,) + b[j + 1:]
            _add_into(out, (b2, rest), -sign * c)
    return tuple(out.items())


def cone_homotopy(q: Sequence, a: SimplexForm) -> SimplexForm:
    """Fiber integral along the straight-line contraction onto the point ``q``.

    On ``f dt_S`` with ``|S| = r`` this is
    ``(∫_0^1 (1-s)^(r-1) f((1-s)t + sq) ds) Σ_j (-1)^j (q_{S_j} - t_{S_j}) dt_{S - S_j}``.
    """
    q = bary_point(q)
    if len(q) != a.n + 1:
        raise DomainError("point and form live on different simplices")
    qc = q[:a.n]
    out: dict = {}
    for (e, w), c in a.terms.items():
        for key, v in _cone_term(qc, e, w):
            _add_into(out, key, c * v)
    return SimplexForm._make(a.n, out)


def h(i: int, a: SimplexForm) -> SimplexForm:
    """Cone homotopy onto vertex ``e_i``."""
    return cone_homotopy(vertex_point(a.n, i), a)


def eval_at(q: Sequence, a: SimplexForm) -> SimplexForm:
    """Evaluation at ``q``: the degree-0 part evaluated, as a constant form."""
    q = bary_point(q)
    if len(q) != a.n + 1:
        raise DomainError("point and form live on different simplices")
    total = Fraction(0)
    for (e, w), c in a.terms.items():
        if w:
            continue
        v = c
        for qi, ei in zip(q, e):
            if ei:
                v *= qi ** ei
        total += v
    return SimplexForm.const(a.n, total)


def eval_value(q: Sequence, a: SimplexForm) -> Fraction:
    f = eval_at(q, a)
    return f.terms.get(((0,) * a.n, ()), Fraction(0))


# ---------------------------------------------------------------------------
# affine pullbacks

def pullback_affine(points: Sequence[Sequence], a: SimplexForm) -> SimplexForm:
    """Pull back along the affine map ``Δ^m -> Δ^n`` sending vertex ``k`` to ``points[k]``."""
    pts = [bary_point(p) for p in points]
    m = len(pts) - 1
    n = a.n
    if any(len(p) != n + 1 for p in pts):
        raise DomainError("image points do not live in the target simplex")
    last = pts[m]
    coord = []
    dcoord = []
    for j in range(n):
        lin = {((0,) * m, ()): last[j]}
        dl = {}
        for k in range(m):
            slope = pts[k][j] - last[j]
            if slope:
                lin[(_unit(m, k), ())] = slope
                dl[((0,) * m, (k,))] = slope
        coord.append(SimplexForm(m, lin))
        dcoord.append(SimplexForm(m, dl))
    powers: dict = {}

    def power(j, k):
        if (j, k) not in powers:
            powers[(j, k)] = coord[j] ** k
        return powers[(j, k)]

    out = SimplexForm.zero(m)
    for (e, w), c in a.terms.items():
        term = SimplexForm.const(m, c)
        for j, k in enumerate(e):
            if k:
                term = term.wedge(power(j, k))
        for j in w:
            term = term.wedge(dcoord[j])
            if not term:
                break
        out = out + term
    return out


def permutation_points(sigma: Sequence[int]) -> list:
    """Vertex images of the map whose pullback is ``t_j -> t_{σ(j)}``."""
    n = len(sigma) - 1
    if sorted(sigma) != list(range(n + 1)):
        raise DomainError(f"not a permutation: {sigma}")
    inv = [0] * (n + 1)
    for j, s in enumerate(sigma):
        inv[s] = j
    return [vertex_point(n, inv[k]) for k in range(n + 1)]


def face_points(n: int, i: int) -> list:
    """Vertex images of the face inclusion ``Δ^{n-1} -> Δ^n`` missing vertex ``i``."""
    if not 0 <= i <= n or n == 0:
        raise DomainError(f"no face {i} of Δ^{n}")
    return [vertex_point(n, k if k < i else k + 1) for k in range(n)]


def pullback(kind: str, arg, a: SimplexForm) -> SimplexForm:
    """``kind='permutation'`` with σ as a sequence, or ``kind='face'`` with the omitted vertex."""
    if kind == "permutation":
        if len(arg) != a.n + 1:
            raise DomainError("permutation size does not match the simplex")
        return pullback_affine(permutation_points(arg), a)
    if kind == "face":
        return pullback_affine(face_points(a.n, arg), a)
    raise DomainError(f"unknown pullback kind {kind!r}")


# ---------------------------------------------------------------------------
# integration

def _check_face(n: int, indices) -> tuple:
    idx = tuple(indices)
    if not idx or list(idx) != sorted(set(idx)) or any(not 0 <= i <= n for i in idx):
        raise DomainError(f"bad face {idx} of Δ^{n}")
    return idx


def integrate_face(indices: Sequence[int], a: SimplexForm, method: str = "dirichlet") -> Fraction:
    """Integral of the degree-p part of ``a`` over the oriented face ``[i_0, ..., i_p]``."""
    idx = _check_face(a.n, indices)
    p = len(idx) - 1
    if a.terms and a.degrees() != {p}:
        raise DomainError(f"integrating a form of degree {sorted(a.degrees())} over a {p}-face")
    if method == "homotopy":
        return _integrate_homotopy(idx, a)
    if method == "dirichlet":
        return _integrate_dirichlet(idx, a)
    raise DomainError(f"unknown integration method {method!r}")


def _integrate_homotopy(idx: tuple, a: SimplexForm) -> Fraction:
    f = a
    for i in idx[:-1]:
        f = h(i, f)
    return (-1) ** (len(idx) - 1) * eval_value(vertex_point(a.n, idx[-1]), f)


def _integrate_dirichlet(idx: tuple, a: SimplexForm) -> Fraction:
    p = len(idx) - 1
    g = pullback_affine([vertex_point(a.n, i) for i in idx], a)
    # the oriented volume form of [u_0..u_p] in the chart u_0..u_{p-1} is (-1)^p du_0...du_{p-1}
    total = Fraction(0)
    for (e, w), c in g.terms.items():
        num = 1
        for x in e:
            num *= factorial(x)
        total += c * Fraction(num, factorial(sum(e) + p))
    return (-1) ** p * total


def integrate(a: SimplexForm) -> Fraction:
    """Integral over the whole simplex with its standard orientation."""
    return integrate_face(tuple(range(a.n + 1)), a.part(a.n))


# ---------------------------------------------------------------------------
# random probes

def random_form(n: int, p: int, d: int, seed: int, terms: int = 3) -> SimplexForm:
    """Deterministic nonzero p-form with integer coefficients in [-3, 3] and poly degree <= d."""
    if not 0 <= p <= n:
        raise DomainError(f"no {p}-forms on Δ^{n}")
    if d < 0:
        raise DomainError("negative polynomial degree bound")
    rng = random.Random(f"form:{n}:{p}:{d}:{seed}")
    wedges = list(combinations(range(n), p))
    while True:
        out: dict = {}
        for _ in range(rng.randint(1, terms)):
            total = rng.randint(0, d)
            e = [0] * n
            for _ in range(total if n else 0):
                e[rng.randrange(n)] += 1
            w = rng.choice(wedges)
            _add_into(out, (tuple(e), w), rng.choice([-3, -2, -1, 1, 2, 3]))
        if out:
            return SimplexForm(n, out)


def monomial_forms(n: int, p: int, d: int) -> list[SimplexForm]:
    """All chart monomials ``t^e dt_S`` with ``|S| = p`` and ``|e| <= d``."""
    out = []
    for w in combinations(range(n), p):
        for e in product(range(d + 1), repeat=n):
            if sum(e) <= d:
                out.append(SimplexForm(n, {(e, w): 1}))
    return out


# ---------------------------------------------------------------------------
# piecewise forms

class CompatibilityError(DomainError):
    """Two pieces of a piecewise form disagree on a shared face."""


class PiecewiseForm:
    """One form per top cell of a simplicial complex, each in its own barycentric chart.

    ``charts`` maps each top cell to the ordered vertex list defining the chart
    (defaults to the canonical order).  Compatibility on shared faces is
    validated on construction unless ``validate=False``.
    """

    __slots__ = ("complex", "charts", "pieces")

    def __init__(self, complex: SimplicialComplex, pieces: Mapping, charts: Mapping | None = None,
                 validate: bool = True):
        tops = complex.top_cells()
        self.complex = complex
        self.charts = {T: tuple((charts or {}).get(T, T)) for T in tops}
        for T, order in self.charts.items():
            if sorted(map(str, order)) != sorted(map(str, T)) or len(order) != len(T):
                raise DomainError(f"chart {order} does not order the vertices of {format_cell(T)}")
        if set(pieces) != set(tops):
            raise DomainError("need exactly one form per top cell")
        self.pieces = {}
        for T in tops:
            f = pieces[T]
            if f.n != len(T) - 1:
                raise DomainError(f"piece on {format_cell(T)} has the wrong dimension")
            self.pieces[T] = f
        if validate:
            self.validate()

    def face_restriction(self, T, face) -> SimplexForm:
        """Pullback of the piece on ``T`` to ``face`` in the face's canonical order."""
        order = self.charts[T]
        n = len(order) - 1
        return pullback_affine([vertex_point(n, order.index(v)) for v in face], self.pieces[T])

    def validate(self) -> None:
        tops = list(self.pieces)
        for a in range(len(tops)):
            for b in range(a + 1, len(tops)):
                shared = set(tops[a]) & set(tops[b])
                if not shared:
                    continue
                _, face = orient(shared)
                if self.face_restriction(tops[a], face) != self.face_restriction(tops[b], face):
                    raise CompatibilityError(f"pieces disagree on face {format_cell(face)}")

    def is_compatible(self) -> bool:
        try:
            self.validate()
        except CompatibilityError:
            return False
        return True

    def _map(self, fn, validate=False) -> "PiecewiseForm":
        return PiecewiseForm(self.complex, {T: fn(f) for T, f in self.pieces.items()}, self.charts, validate)

    def _zip(self, other: "PiecewiseForm", fn) -> "PiecewiseForm":
        if other.complex != self.complex or other.charts != self.charts:
            raise DomainError("piecewise forms over different charts")
        return PiecewiseForm(self.complex, {T: fn(f, other.pieces[T]) for T, f in self.pieces.items()},
                             self.charts, validate=False)

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self):
        return self._map(lambda f: -f)

    def __mul__(self, scalar):
        if isinstance(scalar, PiecewiseForm):
            return self.wedge(scalar)
        return self._map(lambda f: f * scalar)

    __rmul__ = __mul__

    def wedge(self, other: "PiecewiseForm") -> "PiecewiseForm":
        return self._zip(other, lambda x, y: x.wedge(y))

    def d(self) -> "PiecewiseForm":
        return self._map(lambda f: f.d())

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.pieces.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, PiecewiseForm) and other.complex == self.complex
                and other.charts == self.charts and other.pieces == self.pieces)

    __hash__ = None

    def __str__(self) -> str:
        return "; ".join(f"{format_cell(self.charts[T])}: {self.pieces[T]}" for T in sorted(self.pieces, key=str))

    def __repr__(self) -> str:
        return f"PiecewiseForm({self})"


def piecewise(complex: SimplicialComplex, assignments: Mapping, charts: Mapping | None = None) -> PiecewiseForm:
    """Validated piecewise form from per-top-cell assignments."""
    return PiecewiseForm(complex, assignments, charts, validate=True)


def restrict_global(a: SimplexForm, complex: SimplicialComplex, points: Mapping,
                    charts: Mapping | None = None, validate: bool = False) -> PiecewiseForm:
    """Restrict a form on ``Δ^n`` to a subdivision whose vertices sit at ``points[v]``."""
    charts = {T: tuple((charts or {}).get(T, T)) for T in complex.top_cells()}
    pieces = {T: pullback_affine([points[v] for v in order], a) for T, order in charts.items()}
    return PiecewiseForm(complex, pieces, charts, validate)
