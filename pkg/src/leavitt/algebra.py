"""Exact arithmetic in the Leavitt path algebra L_Q(E) of a finite graph.

Elements are finite rational combinations of monomials ``alpha beta*``
(``r(alpha) = r(beta)``).  The relations are applied as a rewriting system:

* ``beta* alpha`` collapses by CK-1 to a tail of one path or to zero, so
  every product of two monomials is again a single monomial or zero;
* for each regular vertex ``v`` the *distinguished* edge is the last edge
  of ``s^-1(v)`` in declaration order, and ``... e e* ...`` with ``e``
  distinguished is rewritten by CK-2 as ``v - sum(f f*)`` over the other
  edges ``f`` leaving ``v``.

Monomials with no distinguished ``e e*`` at the junction form a basis, so
the term map of an Element is canonical and equality is map equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .graph import (
    Cycle,
    Graph,
    GraphError,
    Path,
    nonsimple_paths_reach,
    paths_into_cycle,
    simple_paths_into,
)

__all__ = [
    "AlgebraError",
    "Monomial",
    "Element",
    "MatrixUnits",
    "vertex",
    "edge",
    "ghost",
    "path_element",
    "monomial",
    "mono_product",
    "product_into",
    "reduce_monomial",
    "normal_form",
    "element_add",
    "element_scale",
    "element_mul",
    "identity_element",
    "zero",
    "degree_components",
    "adjoint",
    "standard_identity_eval",
    "STANDARD_IDENTITY_CAP",
    "sink_matrix_units",
    "cycle_matrix_units",
    "distinguished_edge",
]

Scalar = Union[int, Fraction]

STANDARD_IDENTITY_CAP = 8


class AlgebraError(ValueError):
    pass


class Monomial(NamedTuple):
    """``alpha beta*``; ``beta`` is stored as a real path."""

    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha.edges) - len(self.beta.edges)

    @property
    def source(self) -> str:
        return self.alpha.start

    @property
    def range(self) -> str:
        return self.beta.start

    def is_vertex(self) -> bool:
        return not self.alpha.edges and not self.beta.edges

    def letters(self) -> list[str]:
        """Printable factors: real edges, then ghosts (with ``^``) in product order."""
        if self.is_vertex():
            return [self.alpha.start]
        return list(self.alpha.edges) + [e + "^" for e in reversed(self.beta.edges)]

    def __str__(self) -> str:
        return "*".join(self.letters())


def distinguished_edge(G: Graph, v: str) -> str | None:
    outs = G.out_edges[v]
    return outs[-1] if outs else None


def _concat(p: Path, tail: tuple[str, ...], end: str) -> Path:
    return Path(p.start, p.edges + tail, end)


def reduce_monomial(G: Graph, alpha: Path, beta: Path, coef: Fraction = Fraction(1),
                    out: dict[Monomial, Fraction] | None = None) -> dict[Monomial, Fraction]:
    """Add ``coef * alpha beta*`` in normal form into ``out``."""
    if out is None:
        out = {}
    outs = G.out_edges
    while alpha.edges and beta.edges and alpha.edges[-1] == beta.edges[-1]:
        e = alpha.edges[-1]
        v = G.s(e)
        if outs[v][-1] != e:
            break
        a1 = Path(alpha.start, alpha.edges[:-1], v)
        b1 = Path(beta.start, beta.edges[:-1], v)
        for f in outs[v][:-1]:
            w = G.r(f)
            m = Monomial(_concat(a1, (f,), w), _concat(b1, (f,), w))
            _accumulate(out, m, -coef)
        alpha, beta = a1, b1
    _accumulate(out, Monomial(alpha, beta), coef)
    return out


def _accumulate(terms: dict, m: Monomial, c: Fraction) -> None:
    nc = terms.get(m, 0) + c
    if nc:
        terms[m] = nc
    else:
        terms.pop(m, None)


def product_into(G: Graph, m1: Monomial, m2: Monomial, coef: Fraction,
                 out: dict[Monomial, Fraction]) -> None:
    """Accumulate ``coef * m1 * m2`` (normalized) into ``out``."""
    b1, a2 = m1.beta, m2.alpha
    if b1.start != a2.start:
        return
    n1, n2 = len(b1.edges), len(a2.edges)
    if n1 <= n2:
        if a2.edges[:n1] != b1.edges:
            return
        alpha = _concat(m1.alpha, a2.edges[n1:], a2.end)
        beta = m2.beta
    else:
        if b1.edges[:n2] != a2.edges:
            return
        alpha = m1.alpha
        beta = _concat(m2.beta, b1.edges[n2:], b1.end)
    reduce_monomial(G, alpha, beta, coef, out)


class Element:
    """An element of L_Q(E) in normal form.  Immutable."""

    __slots__ = ("graph", "_terms", "_hash")

    def __init__(self, graph: Graph, terms: Mapping[Monomial, Fraction] | None = None):
        self.graph = graph
        self._terms = dict(terms) if terms else {}
        self._hash = None

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "Element") -> None:
        if other.graph is not self.graph and other.graph != self.graph:
            raise AlgebraError("elements belong to different graphs")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return element_scale(other, identity_element(self.graph))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return element_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return element_scale(-1, self)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return element_add(self, element_scale(-1, other))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return element_add(other, element_scale(-1, self))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return element_scale(other, self)
        if isinstance(other, Element):
            return element_mul(self.graph, self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return element_scale(other, self)
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise AlgebraError("negative powers are not defined")
        out = identity_element(self.graph)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.graph == other.graph and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        key = monomial_key(self.graph)
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def degree_homogeneous(self) -> int | None:
        degs = {m.degree for m in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(m) if a == 1 else f"{a}*{m}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Element({self})"


def monomial_key(G: Graph):
    """Canonical term order: degree, then |alpha|, then edge declaration order."""
    ei, vi = G.edge_index, G.vertex_index

    def key(m: Monomial) -> tuple:
        return (m.degree, len(m.alpha.edges), [ei[e] for e in m.alpha.edges],
                [ei[e] for e in m.beta.edges], vi[m.alpha.start], vi[m.beta.start])

    return key


# -- constructors ----------------------------------------------------------


def zero(G: Graph) -> Element:
    return Element(G)


def vertex(G: Graph, v: str) -> Element:
    G.check_vertex(v)
    p = Path(v, (), v)
    return Element(G, {Monomial(p, p): Fraction(1)})


def path_element(G: Graph, p: Path) -> Element:
    return Element(G, reduce_monomial(G, p, Path(p.end, (), p.end)))


def edge(G: Graph, e: str) -> Element:
    return path_element(G, G.path((e,)))


def ghost(G: Graph, e: str) -> Element:
    p = G.path((e,))
    return Element(G, reduce_monomial(G, Path(p.end, (), p.end), p))


def monomial(G: Graph, alpha: Iterable[str], beta: Iterable[str] = (), at: str | None = None) -> Element:
    """The element ``alpha beta*`` given edge-name sequences.  ``at`` names the
    common range vertex and is required only when both paths are empty."""
    alpha, beta = tuple(alpha), tuple(beta)
    if not alpha and not beta:
        if at is None:
            raise AlgebraError("the empty monomial needs a vertex")
        return vertex(G, at)
    end = G.r(alpha[-1]) if alpha else G.r(beta[-1])
    pa = G.path(alpha, base=None if alpha else end)
    pb = G.path(beta, base=None if beta else end)
    if pa.end != pb.end:
        raise AlgebraError(f"r({pa}) != r({pb})")
    return Element(G, reduce_monomial(G, pa, pb))


def identity_element(G: Graph) -> Element:
    terms = {}
    for v in G.vertices:
        p = Path(v, (), v)
        terms[Monomial(p, p)] = Fraction(1)
    return Element(G, terms)


# -- arithmetic ------------------------------------------------------------


def mono_product(G: Graph, m1: Monomial, m2: Monomial) -> Element:
    out: dict[Monomial, Fraction] = {}
    product_into(G, m1, m2, Fraction(1), out)
    return Element(G, out)


def _validate_monomial(G: Graph, m: Monomial) -> None:
    try:
        for p in (m.alpha, m.beta):
            q = G.path(p.edges, base=p.start)
            if q != p:
                raise GraphError(f"inconsistent path {p}")
    except GraphError as exc:
        raise AlgebraError(f"malformed path: {exc}") from None
    if m.alpha.end != m.beta.end:
        raise AlgebraError(f"malformed monomial: r({m.alpha}) != r({m.beta})")


def normal_form(G: Graph, terms: Iterable[tuple[Scalar, Monomial]]) -> Element:
    """Normal form of a list of ``(coefficient, monomial)`` pairs whose
    monomials need not be reduced."""
    out: dict[Monomial, Fraction] = {}
    for c, m in terms:
        m = Monomial(Path(*m.alpha), Path(*m.beta))
        _validate_monomial(G, m)
        if c:
            reduce_monomial(G, m.alpha, m.beta, Fraction(c), out)
    return Element(G, out)


def element_add(x: Element, y: Element) -> Element:
    x._check(y)
    if not y._terms:
        return x
    out = dict(x._terms)
    for m, c in y._terms.items():
        _accumulate(out, m, c)
    return Element(x.graph, out)


def element_scale(q: Scalar, x: Element) -> Element:
    q = Fraction(q)
    if not q:
        return Element(x.graph)
    return Element(x.graph, {m: q * c for m, c in x._terms.items()})


def element_mul(G: Graph, x: Element, y: Element) -> Element:
    if (x.graph != G) or (y.graph != G):
        raise AlgebraError("elements belong to different graphs")
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in x._terms.items():
        for m2, c2 in y._terms.items():
            product_into(G, m1, m2, c1 * c2, out)
    return Element(G, out)


def degree_components(x: Element) -> dict[int, Element]:
    parts: dict[int, dict] = {}
    for m, c in x.terms.items():
        parts.setdefault(m.degree, {})[m] = c
    return {d: Element(x.graph, t) for d, t in sorted(parts.items())}


def adjoint(x: Element) -> Element:
    """The involution fixing vertices and swapping each edge with its ghost
    (rational coefficients are left alone)."""
    out: dict[Monomial, Fraction] = {}
    for m, c in x.terms.items():
        reduce_monomial(x.graph, m.beta, m.alpha, c, out)
    return Element(x.graph, out)


def standard_identity_eval(G: Graph, args: Sequence[Element], cap: int = STANDARD_IDENTITY_CAP) -> Element:
    """The standard polynomial ``S_N(args)`` with ``N = len(args)``.

    Expands along the first factor over subsets (``N * 2**(N-1)``
    products) instead of summing ``N!`` signed words; the result is the
    same exact element.
    """
    n = len(args)
    if n < 2:
        raise AlgebraError("the standard polynomial needs at least two arguments")
    if n > cap:
        raise AlgebraError(f"S_{n} exceeds the configured cap of {cap} arguments")
    for a in args:
        if a.graph != G:
            raise AlgebraError("elements belong to different graphs")
    # table[mask] = S evaluated on the arguments in mask, in index order
    table: dict[int, Element] = {0: identity_element(G)}
    for mask in sorted(range(1, 1 << n), key=lambda m: bin(m).count("1")):
        acc: dict[Monomial, Fraction] = {}
        members = [i for i in range(n) if mask >> i & 1]
        for k, i in enumerate(members):
            rest = table[mask & ~(1 << i)]
            sign = -1 if k % 2 else 1
            for m1, c1 in args[i].terms.items():
                for m2, c2 in rest.terms.items():
                    product_into(G, m1, m2, sign * c1 * c2, acc)
        table[mask] = Element(G, acc)
    return table[(1 << n) - 1]


# -- matrix units ----------------------------------------------------------


@dataclass(frozen=True)
class MatrixUnits:
    """A full set of matrix units for one block of the decomposition.

    ``kind`` is ``"K"`` for a sink block and ``"Laurent"`` for a no-exit
    cycle block; Laurent blocks also carry the image of ``x`` and ``x^-1``.
    """

    kind: str
    anchor: str
    paths: tuple[Path, ...]
    units: tuple[tuple[Element, ...], ...]
    shift: Element | None = None
    shift_inverse: Element | None = None

    @property
    def size(self) -> int:
        return len(self.units)

    def identity(self) -> Element:
        out = zero(self.units[0][0].graph)
        for i in range(self.size):
            out = out + self.units[i][i]
        return out


def sink_matrix_units(G: Graph, v: str) -> MatrixUnits:
    """Units ``E_ij = alpha_i alpha_j*`` over the simple paths into sink ``v``."""
    G.check_vertex(v)
    if G.out_edges[v]:
        raise AlgebraError(f"{v} is not a sink")
    if nonsimple_paths_reach(G, [v]):
        raise AlgebraError(f"a cycle reaches sink {v}; the paths into it are unbounded")
    paths = tuple(simple_paths_into(G, v))
    units = tuple(
        tuple(Element(G, reduce_monomial(G, a, b)) for b in paths) for a in paths
    )
    return MatrixUnits("K", v, paths, units)


def cycle_matrix_units(G: Graph, C: Cycle) -> MatrixUnits:
    """Matrix units over Q[x, x^-1] for a cycle without exits.

    Every path ``beta_i`` into the cycle is extended along the cycle to its
    base vertex ``b``, giving ``gamma_i``; then ``E_ij = gamma_i gamma_j*``
    and ``x = sum_i gamma_i c gamma_i*`` with ``c`` the cycle based at ``b``.
    """
    try:
        betas = tuple(paths_into_cycle(G, C))
    except GraphError as exc:
        raise AlgebraError(str(exc)) from None
    b = C.base
    gammas = []
    for p in betas:
        rot = C.rotation_at(G, p.end).edges
        k = next((i for i, e in enumerate(rot) if G.s(e) == b))
        gammas.append(Path(p.start, p.edges + rot[:k], b))
    units = tuple(
        tuple(Element(G, reduce_monomial(G, gi, gj)) for gj in gammas) for gi in gammas
    )
    shift: dict[Monomial, Fraction] = {}
    inverse: dict[Monomial, Fraction] = {}
    for g in gammas:
        reduce_monomial(G, _concat(g, C.edges, b), g, Fraction(1), shift)
        reduce_monomial(G, g, _concat(g, C.edges, b), Fraction(1), inverse)
    return MatrixUnits("Laurent", str(C), betas, units, Element(G, shift), Element(G, inverse))
