"""Cell complexes, (co)chains, exact graded linear maps and deformation retractions.

Simplices are tuples of vertex labels.  Ordinary vertices are non-negative
integers and the subdivision vertex is the string ``"*"``, which sorts first.
A canonical simplex has its vertices strictly increasing in that order; any
other ordering is normalized to the canonical one together with the sign of
the sorting permutation.

Cube cells are tuples of slot simplices, one per coordinate, each a cell of
``Δ^1`` or of its subdivision ``⋆Δ^1``.  Their orientation is the product
orientation in slot order, so the boundary picks up the Koszul sign
``(-1)^(number of edge slots to the left)``.

Linear maps are stored as dense per-degree matrices of :class:`fractions.Fraction`
held in numpy object arrays; bases are the canonical cells of each degree in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable, Mapping

import numpy as np

from .report import Check, Report, make_check

Scalar = Fraction
STAR = "*"


class DomainError(ValueError):
    """An operation was applied outside its domain (wrong complex, bad cell, ...)."""


# ---------------------------------------------------------------------------
# vertices and oriented simplices

def vertex_key(v):
    if v == STAR:
        return (0, 0)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise DomainError(f"bad vertex label {v!r}")
    return (1, v)


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (entries must be distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def orient(vertices: Iterable) -> tuple[int, tuple]:
    """Return ``(sign, canonical simplex)`` for an ordered vertex list."""
    verts = tuple(vertices)
    keys = [vertex_key(v) for v in verts]
    if len(set(keys)) != len(keys):
        raise DomainError(f"repeated vertex in {verts!r}")
    order = sorted(range(len(verts)), key=lambda i: keys[i])
    return permutation_sign(order), tuple(verts[i] for i in order)


def simplex_faces(cell: tuple) -> list[tuple[int, tuple]]:
    """Codimension-one faces of a canonical simplex with their boundary signs."""
    if len(cell) <= 1:
        return []
    return [((-1) ** i, cell[:i] + cell[i + 1:]) for i in range(len(cell))]


def format_simplex(cell: tuple) -> str:
    return "[" + ",".join(str(v) for v in cell) + "]"


def format_cell(cell) -> str:
    if cell and isinstance(cell[0], tuple):
        return "x".join(format_simplex(c) for c in cell)
    return format_simplex(cell)


def format_scalar(c) -> str:
    return str(Fraction(c))


# ---------------------------------------------------------------------------
# complexes

class CellComplex:
    """A finite face-closed complex; subclasses supply dimension and faces."""

    def __init__(self, cells: Iterable):
        cells = set(cells)
        self._by_dim: dict[int, tuple] = {}
        for c in sorted(cells, key=self._sort_key):
            self._by_dim.setdefault(self.cell_dim(c), ())
            self._by_dim[self.cell_dim(c)] += (c,)
        self._cells = frozenset(cells)
        self._index = {c: i for cs in self._by_dim.values() for i, c in enumerate(cs)}
        for c in cells:
            for _, f in self.faces(c):
                if f not in self._cells:
                    raise DomainError(f"complex not closed under faces: {format_cell(f)} missing")

    def _sort_key(self, cell):
        raise NotImplementedError

    def cell_dim(self, cell) -> int:
        raise NotImplementedError

    def faces(self, cell) -> list[tuple[int, object]]:
        raise NotImplementedError

    @property
    def cells(self) -> frozenset:
        return self._cells

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    def basis(self, p: int) -> tuple:
        return self._by_dim.get(p, ())

    def degrees(self) -> list[int]:
        return sorted(self._by_dim)

    def index(self, cell) -> int:
        return self._index[cell]

    def counts(self) -> list[int]:
        return [len(self.basis(p)) for p in range(self.dimension + 1)]

    def __contains__(self, cell) -> bool:
        return cell in self._cells

    def __iter__(self):
        for p in self.degrees():
            yield from self._by_dim[p]

    def __len__(self) -> int:
        return len(self._cells)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._cells == other._cells

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._cells))

    def top_cells(self) -> list:
        """Cells that are not a face of any other cell."""
        covered = {f for c in self._cells for _, f in self.faces(c)}
        return [c for c in self if c not in covered]

    def cofaces(self, cell) -> list:
        return [c for c in self.basis(self.cell_dim(cell) + 1) if any(f == cell for _, f in self.faces(c))]


class SimplicialComplex(CellComplex):
    """Face-closed set of canonical simplices."""

    def __init__(self, cells: Iterable):
        canon = set()
        for c in cells:
            _, cc = orient(c)
            if not cc:
                raise DomainError("empty simplex")
            canon.add(cc)
        super().__init__(canon)

    @classmethod
    def closure(cls, simplices: Iterable) -> "SimplicialComplex":
        out = set()
        for s in simplices:
            _, s = orient(s)
            for r in range(1, len(s) + 1):
                out.update(combinations(s, r))
        return cls(out)

    def _sort_key(self, cell):
        return (len(cell), tuple(vertex_key(v) for v in cell))

    def cell_dim(self, cell) -> int:
        return len(cell) - 1

    def faces(self, cell):
        return simplex_faces(cell)

    def vertices(self) -> tuple:
        return tuple(c[0] for c in self.basis(0))

    def __repr__(self) -> str:
        return f"SimplicialComplex(counts={self.counts()})"


class CubicalComplex(CellComplex):
    """Product-shaped cubical complex; cells are tuples of slot simplices."""

    def __init__(self, cells: Iterable):
        super().__init__(tuple(tuple(s) for s in c) for c in cells)

    @classmethod
    def product(cls, slots: list[SimplicialComplex]) -> "CubicalComplex":
        return cls(product(*[list(s) for s in slots]))

    def _sort_key(self, cell):
        return (self.cell_dim(cell), tuple((len(s), tuple(vertex_key(v) for v in s)) for s in cell))

    def cell_dim(self, cell) -> int:
        return sum(len(s) - 1 for s in cell)

    def faces(self, cell):
        out = []
        left = 0
        for j, s in enumerate(cell):
            for sign, f in simplex_faces(s):
                out.append(((-1) ** left * sign, cell[:j] + (f,) + cell[j + 1:]))
            left += len(s) - 1
        return out

    @property
    def n_slots(self) -> int:
        return len(next(iter(self.cells)))

    def __repr__(self) -> str:
        return f"CubicalComplex(counts={self.counts()})"


def standard_complex(kind: str, n: int) -> CellComplex:
    """The standard n-simplex or the n-cube ``(Δ^1)^n`` with all faces."""
    if n < 0:
        raise DomainError("dimension must be non-negative")
    if kind == "simplex":
        return SimplicialComplex.closure([tuple(range(n + 1))])
    if kind == "cube":
        if n == 0:
            raise DomainError("the 0-cube has no slots")
        return CubicalComplex.product([standard_complex("simplex", 1)] * n)
    raise DomainError(f"unknown complex kind {kind!r}")


def expected_counts(kind: str, n: int) -> list[int]:
    if kind == "simplex":
        return [comb(n + 1, p + 1) for p in range(n + 1)]
    return [comb(n, p) * 2 ** (n - p) for p in range(n + 1)]


# ---------------------------------------------------------------------------
# chains and cochains

@dataclass(frozen=True)
class GradedSpace:
    """Chains or cochains of a complex, graded by cell dimension."""

    complex: CellComplex
    side: str  # "chains" or "cochains"

    def __post_init__(self):
        if self.side not in ("chains", "cochains"):
            raise DomainError(f"bad side {self.side!r}")

    def basis(self, p: int) -> tuple:
        return self.complex.basis(p)

    def degrees(self) -> list[int]:
        return self.complex.degrees()

    def dual(self) -> "GradedSpace":
        return GradedSpace(self.complex, "cochains" if self.side == "chains" else "chains")

    @property
    def differential_shift(self) -> int:
        return -1 if self.side == "chains" else 1

    def vector(self, terms: Mapping | None = None):
        cls = Chain if self.side == "chains" else Cochain
        return cls(self.complex, terms or {})

    def basis_vector(self, cell):
        return self.vector({cell: 1})

    def differential(self) -> "GradedLinearMap":
        if self.side == "chains":
            return GradedLinearMap.from_rule(self, self, -1, lambda c: boundary(Chain(self.complex, {c: 1})).terms)
        return GradedLinearMap.from_rule(self, self, 1, lambda c: coboundary(Cochain(self.complex, {c: 1})).terms)

    def identity(self) -> "GradedLinearMap":
        return GradedLinearMap.from_rule(self, self, 0, lambda c: {c: 1})


class _CellVector:
    """Finite formal sum of canonical cells with Scalar coefficients."""

    hat = ""

    __slots__ = ("complex", "terms")

    def __init__(self, complex: CellComplex, terms: Mapping):
        self.complex = complex
        clean = {}
        for cell, coef in terms.items():
            if cell not in complex:
                raise DomainError(f"cell {format_cell(cell)} not in complex")
            coef = Fraction(coef)
            if coef:
                clean[cell] = clean.get(cell, 0) + coef
                if not clean[cell]:
                    del clean[cell]
        self.terms = clean

    @classmethod
    def of(cls, complex: CellComplex, vertices, coef=1):
        """Basis element for an ordered vertex list (sign from reordering)."""
        sign, cell = orient(vertices)
        return cls(complex, {cell: sign * Fraction(coef)})

    def _check(self, other):
        if type(other) is not type(self) or other.complex != self.complex:
            raise DomainError("vectors live in different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + v
        return type(self)(self.complex, out)

    def __neg__(self):
        return type(self)(self.complex, {c: -v for c, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return type(self)(self.complex, {c: v * Fraction(scalar) for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.complex == self.complex and other.terms == self.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=repr)))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, cell) -> Fraction:
        return self.terms.get(cell, Fraction(0))

    def coefficient(self, vertices) -> Fraction:
        sign, cell = orient(vertices)
        return sign * self[cell]

    def degrees(self) -> set[int]:
        return {self.complex.cell_dim(c) for c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=self.complex._sort_key)
        return " + ".join(f"{format_scalar(self.terms[c])}*{format_cell(c)}{self.hat}" for c in ordered)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class Chain(_CellVector):
    __slots__ = ()
    side = "chains"


class Cochain(_CellVector):
    __slots__ = ()
    side = "cochains"
    hat = "^"


def boundary(c: Chain) -> Chain:
    """Alternating-sum face map (slot-wise with Koszul signs on cubes)."""
    out: dict = {}
    for cell, coef in c.terms.items():
        if cell not in c.complex:
            raise DomainError(f"cell {format_cell(cell)} not in complex")
        for sign, f in c.complex.faces(cell):
            out[f] = out.get(f, 0) + sign * coef
    return Chain(c.complex, out)


def coboundary(x: Cochain) -> Cochain:
    """Adjoint of the boundary: ``<dx, c> = <x, ∂c>``."""
    cplx = x.complex
    out: dict = {}
    for cell, coef in x.terms.items():
        if cell not in cplx:
            raise DomainError(f"cell {format_cell(cell)} not in complex")
        for co in cplx.basis(cplx.cell_dim(cell) + 1):
            for sign, f in cplx.faces(co):
                if f == cell:
                    out[co] = out.get(co, 0) + sign * coef
    return Cochain(cplx, out)


def pair(x: Cochain, c: Chain) -> Fraction:
    if x.complex != c.complex:
        raise DomainError("pairing across different complexes")
    return sum((v * c.terms.get(cell, 0) for cell, v in x.terms.items()), Fraction(0))


# ---------------------------------------------------------------------------
# graded linear maps

def _zeros(rows: int, cols: int) -> np.ndarray:
    m = np.empty((rows, cols), dtype=object)
    m.fill(Fraction(0))
    return m


def _is_zero(m: np.ndarray) -> bool:
    return all(v == 0 for v in m.flat)


class GradedLinearMap:
    """Exact linear map between graded (co)chain spaces, shifting degree by ``shift``."""

    def __init__(self, domain: GradedSpace, codomain: GradedSpace, shift: int, blocks: Mapping[int, np.ndarray]):
        self.domain = domain
        self.codomain = codomain
        self.shift = shift
        self.blocks: dict[int, np.ndarray] = {}
        for p in domain.degrees():
            shape = (len(codomain.basis(p + shift)), len(domain.basis(p)))
            b = blocks.get(p)
            if b is None:
                b = _zeros(*shape)
            if b.shape != shape:
                raise DomainError(f"block {p} has shape {b.shape}, expected {shape}")
            self.blocks[p] = b

    @classmethod
    def from_rule(cls, domain: GradedSpace, codomain: GradedSpace, shift: int,
                  rule: Callable[[object], Mapping]) -> "GradedLinearMap":
        """Build from the image of each domain basis cell (a cell -> coefficient map)."""
        blocks = {}
        cod = codomain.complex
        for p in domain.degrees():
            rows = codomain.basis(p + shift)
            m = _zeros(len(rows), len(domain.basis(p)))
            for j, cell in enumerate(domain.basis(p)):
                image = rule(cell)
                if isinstance(image, _CellVector):
                    image = image.terms
                for target, coef in image.items():
                    if not coef:
                        continue
                    if target not in cod or cod.cell_dim(target) != p + shift:
                        raise DomainError(f"image cell {format_cell(target)} outside degree {p + shift}")
                    m[cod.index(target), j] += Fraction(coef)
            blocks[p] = m
        return cls(domain, codomain, shift, blocks)

    @classmethod
    def zero(cls, domain: GradedSpace, codomain: GradedSpace, shift: int = 0) -> "GradedLinearMap":
        return cls(domain, codomain, shift, {})

    def apply(self, v):
        if v.complex != self.domain.complex or v.side != self.domain.side:
            raise DomainError("vector not in the domain of this map")
        out: dict = {}
        for cell, coef in v.terms.items():
            p = self.domain.complex.cell_dim(cell)
            col = self.blocks[p][:, self.domain.complex.index(cell)]
            rows = self.codomain.basis(p + self.shift)
            for i, val in enumerate(col):
                if val:
                    out[rows[i]] = out.get(rows[i], 0) + val * coef
        return self.codomain.vector(out)

    __call__ = apply

    def image(self, cell):
        return self.apply(self.domain.basis_vector(cell))

    def _same_shape(self, other: "GradedLinearMap"):
        if (self.domain, self.codomain, self.shift) != (other.domain, other.codomain, other.shift):
            raise DomainError("maps have different domains, codomains or degrees")

    def __add__(self, other):
        self._same_shape(other)
        return GradedLinearMap(self.domain, self.codomain, self.shift,
                               {p: self.blocks[p] + other.blocks[p] for p in self.blocks})

    def __neg__(self):
        return GradedLinearMap(self.domain, self.codomain, self.shift, {p: -b for p, b in self.blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return GradedLinearMap(self.domain, self.codomain, self.shift, {p: b * s for p, b in self.blocks.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        if other.codomain != self.domain:
            raise DomainError("composition of incompatible maps")
        blocks = {}
        for p, b in other.blocks.items():
            q = p + other.shift
            left = self.blocks.get(q)
            if left is None:
                blocks[p] = _zeros(len(self.codomain.basis(q + self.shift)), b.shape[1])
            elif b.shape[0] == 0:
                blocks[p] = _zeros(left.shape[0], b.shape[1])
            else:
                blocks[p] = left.dot(b)
        return GradedLinearMap(other.domain, self.codomain, self.shift + other.shift, blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        if (self.domain, self.codomain, self.shift) != (other.domain, other.codomain, other.shift):
            return False
        return all(_is_zero(self.blocks[p] - other.blocks[p]) for p in self.blocks)

    __hash__ = None

    def is_zero(self) -> bool:
        return all(_is_zero(b) for b in self.blocks.values())

    def first_nonzero(self):
        """First domain basis cell whose image is nonzero, or None."""
        for p in sorted(self.blocks):
            b = self.blocks[p]
            for j, cell in enumerate(self.domain.basis(p)):
                if any(v != 0 for v in b[:, j]):
                    return cell
        return None

    def entry(self, row_cell, col_cell) -> Fraction:
        p = self.domain.complex.cell_dim(col_cell)
        return self.blocks[p][self.codomain.complex.index(row_cell), self.domain.complex.index(col_cell)]

    def __repr__(self) -> str:
        return f"GradedLinearMap({self.domain.side}->{self.codomain.side}, shift={self.shift})"


def dualize_map(f: GradedLinearMap) -> GradedLinearMap:
    """Transpose with respect to the cell pairing."""
    blocks = {p + f.shift: b.T.copy() for p, b in f.blocks.items()}
    return GradedLinearMap(f.codomain.dual(), f.domain.dual(), -f.shift, blocks)


# ---------------------------------------------------------------------------
# deformation retractions

@dataclass(frozen=True)
class DeformationRetraction:
    """Retraction data ``i: A -> B``, ``p: B -> A``, ``a: B -> B`` between (co)chain spaces."""

    small: GradedSpace
    big: GradedSpace
    include: GradedLinearMap
    project: GradedLinearMap
    homotopy: GradedLinearMap

    def __post_init__(self):
        i, p, a = self.include, self.project, self.homotopy
        if (i.domain, i.codomain) != (self.small, self.big) or (p.domain, p.codomain) != (self.big, self.small):
            raise DomainError("inclusion/projection do not match the spaces")
        if (a.domain, a.codomain) != (self.big, self.big) or a.shift != -self.big.differential_shift:
            raise DomainError("homotopy must be an endomorphism of the big space of opposite degree to d")

    @property
    def side(self) -> str:
        return self.big.side

    @classmethod
    def trivial(cls, space: GradedSpace) -> "DeformationRetraction":
        one = space.identity()
        return cls(space, space, one, one, GradedLinearMap.zero(space, space, -space.differential_shift))

    def dual(self) -> "DeformationRetraction":
        return dualize_dr(self)


def dualize_dr(r: DeformationRetraction) -> DeformationRetraction:
    """Chains <-> cochains: the dual inclusion is the transposed projection and vice versa."""
    return DeformationRetraction(r.small.dual(), r.big.dual(), dualize_map(r.project),
                                 dualize_map(r.include), dualize_map(r.homotopy))


def compose_dr(outer: DeformationRetraction, inner: DeformationRetraction) -> DeformationRetraction:
    """Retraction of C onto A from ``outer`` (C onto B) and ``inner`` (B onto A)."""
    if outer.small != inner.big:
        raise DomainError("outer retraction does not land on the big space of the inner one")
    i = outer.include @ inner.include
    p = inner.project @ outer.project
    a = outer.homotopy + outer.include @ inner.homotopy @ outer.project
    return DeformationRetraction(inner.small, outer.big, i, p, a)


DR_IDENTITIES = ("p_i_identity", "homotopy_identity", "a_squared_zero", "a_i_zero", "p_a_zero")


def _counterexample(m: GradedLinearMap, lhs: GradedLinearMap, rhs: GradedLinearMap) -> dict[str, str] | None:
    cell = m.first_nonzero()
    if cell is None:
        return None
    v = m.domain.basis_vector(cell)
    return {"input": f"{format_cell(cell)}{v.hat}", "lhs": str(lhs(v)), "rhs": str(rhs(v))}


@dataclass
class OperatorRetraction:
    """A retraction whose big space is infinite dimensional, checked on probe families.

    ``small_probes`` / ``big_probes`` are finite lists of elements; ``is_zero``
    decides vanishing in each space and ``fmt`` renders an element.
    """

    include: Callable
    project: Callable
    homotopy: Callable
    d_small: Callable
    d_big: Callable
    small_probes: list
    big_probes: list
    small_is_zero: Callable
    big_is_zero: Callable
    fmt: Callable = str


def _operator_checks(r: OperatorRetraction, kind: str) -> list[Check]:
    def first_failure(probes, lhs, rhs, is_zero):
        for x in probes:
            left, right = lhs(x), rhs(x)
            if not is_zero(left - right):
                return {"input": r.fmt(x), "lhs": r.fmt(left), "rhs": r.fmt(right)}
        return None

    i, p, a = r.include, r.project, r.homotopy
    tests = [
        ("p_i_identity", r.small_probes, lambda x: p(i(x)), lambda x: x, r.small_is_zero),
        ("homotopy_identity", r.big_probes, lambda y: r.d_big(a(y)) + a(r.d_big(y)), lambda y: y - i(p(y)),
         r.big_is_zero),
        ("a_squared_zero", r.big_probes, lambda y: a(a(y)), lambda y: a(y) - a(y), r.big_is_zero),
        ("a_i_zero", r.small_probes, lambda x: a(i(x)), lambda x: i(x) - i(x), r.big_is_zero),
        ("p_a_zero", r.big_probes, lambda y: p(a(y)), lambda y: p(y) - p(y), r.small_is_zero),
    ]
    out = []
    for name, probes, lhs, rhs, is_zero in tests:
        cx = first_failure(probes, lhs, rhs, is_zero)
        out.append(make_check(name, cx is None, kind, cx))
    return out


def check_dr(r, kind: str = "theorem", chain_maps: bool = True) -> Report:
    """Evaluate the five special deformation retraction identities exactly.

    (1) p i = 1, (2) D a + a D = 1 - i p, (3) a a = 0, (4) a i = 0, (5) p a = 0,
    plus (for matrix retractions) that i and p commute with the differentials.
    """
    report = Report("check_dr")
    if isinstance(r, OperatorRetraction):
        report.extend(_operator_checks(r, kind))
        return report
    i, p, a = r.include, r.project, r.homotopy
    d_small, d_big = r.small.differential(), r.big.differential()
    one_small, one_big = r.small.identity(), r.big.identity()
    pairs = [
        ("p_i_identity", p @ i, one_small),
        ("homotopy_identity", d_big @ a + a @ d_big, one_big - i @ p),
        ("a_squared_zero", a @ a, GradedLinearMap.zero(r.big, r.big, 2 * a.shift)),
        ("a_i_zero", a @ i, GradedLinearMap.zero(r.small, r.big, a.shift)),
        ("p_a_zero", p @ a, GradedLinearMap.zero(r.big, r.small, a.shift)),
    ]
    if chain_maps:
        pairs += [
            ("i_chain_map", d_big @ i, i @ d_small),
            ("p_chain_map", d_small @ p, p @ d_big),
        ]
    for name, lhs, rhs in pairs:
        diff = lhs - rhs
        report.add(make_check(name, diff.is_zero(), kind, _counterexample(diff, lhs, rhs)))
    return report


def space_of(complex: CellComplex, side: str) -> GradedSpace:
    return GradedSpace(complex, side)
