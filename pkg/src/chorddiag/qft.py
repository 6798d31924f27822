"""Zero-dimensional partition functions and the vertex-graph correspondence.

The formal Gaussian map turns an action -x^2/(2a) + V(x) into a power series
in hbar: moment n of the Gaussian weight contributes sqrt(a)*(a*hbar)^n*(2n-1)!!
times the x^(2n) coefficient of exp(V(x)/hbar), which is a polynomial in
1/hbar, so every hbar coefficient is a finite exact sum.

The second half realizes the bijection between rooted chord diagrams and
photon-decorated fermion paths: the root chord becomes the external photon,
the remaining chords become internal photons on the path, and a diagram is
2-connected exactly when its graph is one-particle irreducible with no
divergent proper subgraph. The subdivergence scan works entirely on the
graph side (path intervals with at most one photon stub), which makes the
equivalence with the chord-side predicates a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt
from typing import Mapping

from . import gf
from .oracle import ChordDiagram, enumerate_diagrams, is_k_connected
from .series import PowerSeries


@dataclass(frozen=True)
class Action:
    """Quadratic coefficient a > 0 plus the interaction couplings.

    ``couplings`` maps valency k >= 3 to the coupling of the x^k/k! term of
    the potential; only finitely many may be nonzero.
    """

    a: Fraction
    couplings: tuple[tuple[int, Fraction], ...]

    def __init__(self, a, couplings: Mapping[int, Fraction] | None = None):
        object.__setattr__(self, "a", Fraction(a))
        items = []
        for k, lam in sorted((couplings or {}).items()):
            if k < 3:
                raise ValueError(
                    f"coupling at valency {k}: the potential starts at x^3"
                )
            lam = Fraction(lam)
            if lam:
                items.append((int(k), lam))
        object.__setattr__(self, "couplings", tuple(items))
        if self.a <= 0:
            raise ValueError("the quadratic coefficient a must be positive")

    def potential_coefficients(self, degree: int) -> list[Fraction]:
        """Coefficients of V(x) = sum lam_k x^k / k! up to the given degree."""
        coeffs = [Fraction(0)] * (degree + 1)
        for k, lam in self.couplings:
            if k <= degree:
                coeffs[k] = lam / factorial(k)
        return coeffs


PHI3 = Action(1, {3: 1})


def _sqrt_exact(value: Fraction) -> Fraction:
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(
            f"sqrt({value}) is irrational; exact coefficients need a perfect "
            f"square quadratic coefficient (rescale the action)"
        )
    return Fraction(rn, rd)


def _poly_mul(p: list[Fraction], q: list[Fraction], degree: int) -> list[Fraction]:
    out = [Fraction(0)] * (degree + 1)
    for i, a in enumerate(p):
        if a == 0 or i > degree:
            continue
        for j, b in enumerate(q):
            if i + j > degree:
                break
            if b:
                out[i + j] += a * b
    return out


def partition_function(action: Action, order: int) -> PowerSeries:
    """The perturbative partition function as a series in hbar.

    hbar^j collects the Gaussian moments n = j..3j: moment n contributes
    sqrt(a) * a^n * (2n-1)!! * [x^(2n)] V^m / m! at m = n - j (the potential
    starts at x^3, so [x^(2n)] V^m vanishes beyond m = 2n/3). The sqrt(a)
    prefactor must be an exact rational, i.e. a a perfect square.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    root_a = _sqrt_exact(action.a)
    n_max = 3 * order
    degree = 2 * n_max
    v = action.potential_coefficients(degree)
    # power_coeffs[m][2n] while iterating V^m
    coeffs = [Fraction(0)] * (order + 1)
    v_power = [Fraction(0)] * (degree + 1)
    v_power[0] = Fraction(1)
    m_factorial = 1
    for m in range(0, 2 * n_max + 1):
        if m:
            v_power = _poly_mul(v_power, v, degree)
            m_factorial *= m
            if all(c == 0 for c in v_power):
                break
        for n in range(m, n_max + 1):
            j = n - m
            if j > order or 2 * n > degree:
                continue
            contribution = v_power[2 * n]
            if contribution:
                coeffs[j] += (
                    action.a**n
                    * gf.double_factorial_odd(n)
                    * contribution
                    / m_factorial
                )
    return PowerSeries([root_a * c for c in coeffs])


def phi3_coefficient(n: int) -> Fraction:
    """Closed form (6n-1)!! / ((3!)^(2n) * (2n)!) for the cubic theory."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Fraction(gf.double_factorial_odd(3 * n), 6 ** (2 * n) * factorial(2 * n))


# -- graphs ---------------------------------------------------------------------


@dataclass(frozen=True)
class QedGraph:
    """A photon-decorated fermion path with one external photon.

    The fermion path runs through ``path_length`` vertices from leg f1 to
    leg f2; ``photons`` are internal photon edges between path vertices, and
    the external photon attaches at ``root_position``. Every vertex carries
    exactly one photon endpoint.
    """

    path_length: int
    photons: tuple[tuple[int, int], ...]
    root_position: int

    def __init__(self, path_length, photons, root_position):
        photons = tuple(sorted((min(u, v), max(u, v)) for u, v in photons))
        object.__setattr__(self, "path_length", int(path_length))
        object.__setattr__(self, "photons", photons)
        object.__setattr__(self, "root_position", int(root_position))
        covered = [0] * (self.path_length + 1)
        if not 1 <= self.root_position <= self.path_length:
            raise ValueError("the external photon must attach to a path vertex")
        covered[self.root_position] += 1
        for u, v in photons:
            if not 1 <= u < v <= self.path_length:
                raise ValueError(f"photon ({u},{v}) leaves the path")
            covered[u] += 1
            covered[v] += 1
        bad = [i for i in range(1, self.path_length + 1) if covered[i] != 1]
        if bad:
            raise ValueError(
                f"vertices {bad} do not carry exactly one photon endpoint"
            )

    def internal_edge_count(self) -> int:
        return (self.path_length - 1) + len(self.photons)

    def to_text(self) -> str:
        """Dump as "path_length: photon pairs r root_position"."""
        pairs = " ".join(f"{u}-{v}" for u, v in self.photons)
        middle = f" {pairs}" if pairs else ""
        return f"{self.path_length}:{middle} r{self.root_position}"

    @classmethod
    def from_text(cls, text: str) -> "QedGraph":
        head, _, body = text.partition(":")
        tokens = body.split()
        if not tokens or not tokens[-1].startswith("r"):
            raise ValueError("graph text must end with the root marker rK")
        root = int(tokens[-1][1:])
        photons = []
        for token in tokens[:-1]:
            u, _, v = token.partition("-")
            photons.append((int(u), int(v)))
        return cls(int(head), photons, root)


def chord_to_qed(diagram: ChordDiagram) -> QedGraph:
    """Straighten a diagram into its fermion-path graph.

    Positions 2..2n become the path vertices in order; the root chord turns
    into the external photon at the vertex of its right endpoint, and every
    other chord into an internal photon. Inverse of qed_to_chord.
    """
    if diagram.n == 0:
        raise ValueError("the empty diagram has no graph image")
    pairing = diagram.pairing
    root_partner = pairing[0]
    photons = [
        (i - 1, pairing[i - 1] - 1)
        for i in range(2, diagram.size + 1)
        if i < pairing[i - 1]
    ]
    return QedGraph(diagram.size - 1, photons, root_partner - 1)


def qed_to_chord(graph: QedGraph) -> ChordDiagram:
    size = graph.path_length + 1
    pairing = [0] * size
    pairing[0] = graph.root_position + 1
    pairing[graph.root_position] = 1
    for u, v in graph.photons:
        pairing[u] = v + 1
        pairing[v] = u + 1
    return ChordDiagram(pairing)


def loop_number(graph: QedGraph) -> int:
    """Independent cycles from the Euler relation |E| - |V| + 1.

    Equals the internal photon count: the fermion path contributes
    |V| - 1 edges, so each internal photon closes exactly one cycle.
    """
    return graph.internal_edge_count() - graph.path_length + 1


def loop_number_cycle_rank(graph: QedGraph) -> int:
    """Cycle-space rank via spanning-tree growth; oracle for loop_number."""
    parent = list(range(graph.path_length + 1))

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    edges = [(i, i + 1) for i in range(1, graph.path_length)] + list(graph.photons)
    rank = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            rank += 1
        else:
            parent[ru] = rv
    return rank


@dataclass(frozen=True)
class Subdivergence:
    """A divergent proper subgraph on a fermion-path interval."""

    start: int
    end: int
    kind: str  # "propagator" or "vertex"


def _interval_bridgeless(photons, start: int, end: int) -> bool:
    return all(any(u <= i < v for u, v in photons) for i in range(start, end))


def find_subdivergences(graph: QedGraph) -> list[Subdivergence]:
    """Divergent proper 1PI subgraphs, scanned over path intervals.

    Since every vertex lies on the fermion path and fermion loops are absent,
    a divergent one-piece subgraph occupies a contiguous path interval. An
    interval with all photon endpoints internal is a propagator insertion
    (two fermion stubs); one photon stub makes it a vertex insertion, the
    external photon counting as a stub like any other. Candidates need at
    least one internal photon (a loop) and no uncovered fermion edge.
    """
    found = []
    length = graph.path_length
    for start in range(1, length + 1):
        for end in range(start, length + 1):
            if start == 1 and end == length:
                continue  # the whole graph is not a proper subgraph
            internal = [
                (u, v) for u, v in graph.photons if start <= u and v <= end
            ]
            if not internal:
                continue
            stubs = sum(
                1
                for u, v in graph.photons
                if (start <= u <= end) != (start <= v <= end)
            )
            if start <= graph.root_position <= end:
                stubs += 1
            if stubs > 1:
                continue
            if not _interval_bridgeless(internal, start, end):
                continue
            found.append(
                Subdivergence(start, end, "propagator" if stubs == 0 else "vertex")
            )
    return found


def is_one_particle_irreducible(graph: QedGraph) -> bool:
    """No internal-edge bridge: every fermion edge is spanned by a photon."""
    return _interval_bridgeless(graph.photons, 1, graph.path_length)


def is_primitive(graph: QedGraph) -> bool:
    """1PI, at least one loop, and free of subdivergences.

    Tree-level graphs (no internal photon) are the unit of the counting
    series, not counted primitives, hence the loop requirement.
    """
    if not graph.photons:
        return False
    return is_one_particle_irreducible(graph) and not find_subdivergences(graph)


@dataclass(frozen=True)
class BijectionReport:
    n: int
    primitive_count: int
    counterexamples: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_bijection(n: int, cap: int | None = None) -> BijectionReport:
    """Exhaustively check primitivity-of-image against 2-connectivity.

    For every diagram on n chords the graph image must be primitive exactly
    when the diagram is 2-connected; offending diagrams are reported in
    text form.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    primitive = 0
    bad = []
    diagrams = enumerate_diagrams(n) if cap is None else enumerate_diagrams(n, cap=cap)
    for diagram in diagrams:
        image_primitive = is_primitive(chord_to_qed(diagram))
        if image_primitive:
            primitive += 1
        if image_primitive != is_k_connected(diagram, 2):
            bad.append(diagram.to_text())
    return BijectionReport(n, primitive, tuple(bad))
