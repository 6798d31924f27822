"""Partition functions and the diagram-to-graph correspondence."""

from fractions import Fraction
from math import factorial

import pytest

from chorddiag import gf
from chorddiag.oracle import (
    ChordDiagram,
    enumerate_diagrams,
    find_reasons_connectivity1,
    is_connected,
    is_k_connected,
)
from chorddiag.qft import (
    PHI3,
    Action,
    QedGraph,
    chord_to_qed,
    find_subdivergences,
    is_one_particle_irreducible,
    is_primitive,
    loop_number,
    loop_number_cycle_rank,
    partition_function,
    phi3_coefficient,
    qed_to_chord,
    verify_bijection,
)

CROSSING = ChordDiagram([3, 4, 1, 2])
NESTED = ChordDiagram([4, 3, 2, 1])
# connected with a cut chord {3,6} that is not the root
ONE_CUT = ChordDiagram([5, 4, 6, 2, 1, 3])


class TestAction:
    def test_phi3(self):
        assert PHI3.a == 1
        assert PHI3.couplings == ((3, Fraction(1)),)
        assert PHI3.potential_coefficients(4) == [0, 0, 0, Fraction(1, 6), 0]

    def test_low_valency_rejected(self):
        with pytest.raises(ValueError, match="starts at x\\^3"):
            Action(1, {2: 1})

    def test_nonpositive_quadratic_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            Action(0, {3: 1})


class TestPartitionFunction:
    def test_phi3_first_coefficients(self):
        series = partition_function(PHI3, 2)
        assert list(series.coefficients) == [1, Fraction(5, 24), Fraction(385, 1152)]

    def test_phi3_closed_form(self):
        series = partition_function(PHI3, 10)
        for n in range(11):
            assert series[n] == phi3_coefficient(n)
            expected = Fraction(
                gf.double_factorial_odd(3 * n), 6 ** (2 * n) * factorial(2 * n)
            )
            assert series[n] == expected

    def test_zero_potential_is_gaussian_constant(self):
        series = partition_function(Action(1, {}), 5)
        assert list(series.coefficients) == [1, 0, 0, 0, 0, 0]
        assert partition_function(Action(4, {}), 2)[0] == 2

    def test_irrational_normalization_rejected(self):
        with pytest.raises(ValueError, match="perfect"):
            partition_function(Action(2, {}), 1)

    def test_quartic_theory(self):
        # only the figure-eight vacuum graph contributes at first order and
        # its automorphism group has size 8: moment (2*2-1)!! = 3 over 4! = 24
        series = partition_function(Action(1, {4: 1}), 1)
        assert series[1] == Fraction(3, 24) == Fraction(1, 8)


class TestGraphMapping:
    def test_crossing_pair(self):
        graph = chord_to_qed(CROSSING)
        assert graph.path_length == 3
        assert graph.photons == ((1, 3),)
        assert graph.root_position == 2
        assert loop_number(graph) == 1

    def test_text_round_trip(self):
        graph = chord_to_qed(CROSSING)
        assert graph.to_text() == "3: 1-3 r2"
        assert QedGraph.from_text("3: 1-3 r2") == graph
        bare = chord_to_qed(ChordDiagram([2, 1]))
        assert bare.to_text() == "1: r1"
        assert QedGraph.from_text("1: r1") == bare

    def test_round_trip_exhaustive(self):
        for n in range(1, 6):
            for diagram in enumerate_diagrams(n):
                graph = chord_to_qed(diagram)
                assert qed_to_chord(graph) == diagram

    def test_structure_counts(self):
        for n in range(1, 6):
            for diagram in enumerate_diagrams(n):
                graph = chord_to_qed(diagram)
                assert graph.path_length == 2 * n - 1
                assert len(graph.photons) == n - 1
                assert loop_number(graph) == n - 1
                assert loop_number(graph) == loop_number_cycle_rank(graph)

    def test_validation(self):
        with pytest.raises(ValueError, match="exactly one photon"):
            QedGraph(3, [(1, 2)], 2)  # vertex 3 uncovered, vertex 2 doubly used
        with pytest.raises(ValueError, match="leaves the path"):
            QedGraph(3, [(1, 4)], 2)
        with pytest.raises(ValueError, match="path vertex"):
            QedGraph(3, [(1, 3)], 4)


class TestSubdivergences:
    def test_two_connected_image_clean(self):
        assert find_subdivergences(chord_to_qed(CROSSING)) == []

    def test_disconnected_image_has_propagator(self):
        subs = find_subdivergences(chord_to_qed(NESTED))
        assert any(s.kind == "propagator" for s in subs)

    def test_cut_image_has_vertex(self):
        subs = find_subdivergences(chord_to_qed(ONE_CUT))
        assert any(s.kind == "vertex" for s in subs)
        assert all(s.kind == "vertex" for s in subs)

    def test_primitive_examples(self):
        assert is_primitive(chord_to_qed(CROSSING))
        assert not is_primitive(chord_to_qed(NESTED))
        assert not is_primitive(chord_to_qed(ChordDiagram([2, 1])))  # tree level

    def test_primitive_census(self):
        expected = {1: 0, 2: 1, 3: 1, 4: 7, 5: 63}
        for n, want in expected.items():
            got = sum(
                1 for d in enumerate_diagrams(n) if is_primitive(chord_to_qed(d))
            )
            assert got == want


class TestClaimCrossChecks:
    def test_propagator_kind_iff_disconnected(self):
        for n in range(1, 6):
            for diagram in enumerate_diagrams(n):
                subs = find_subdivergences(chord_to_qed(diagram))
                has_propagator = any(s.kind == "propagator" for s in subs)
                assert has_propagator == (not is_connected(diagram))

    def test_vertex_kind_iff_cut_witness(self):
        for n in range(1, 6):
            for diagram in enumerate_diagrams(n):
                if not is_connected(diagram):
                    continue
                subs = find_subdivergences(chord_to_qed(diagram))
                has_vertex = any(s.kind == "vertex" for s in subs)
                assert has_vertex == bool(find_reasons_connectivity1(diagram))

    def test_irreducibility_iff_connected(self):
        for n in range(1, 6):
            for diagram in enumerate_diagrams(n):
                graph = chord_to_qed(diagram)
                if is_connected(diagram):
                    assert is_one_particle_irreducible(graph)


class TestBijection:
    def test_small_n(self):
        for n, expected in ((2, 1), (3, 1), (4, 7), (5, 63)):
            report = verify_bijection(n)
            assert report.passed
            assert report.primitive_count == expected

    def test_matches_two_connectivity_pointwise(self):
        for n in range(1, 5):
            for diagram in enumerate_diagrams(n):
                assert is_primitive(chord_to_qed(diagram)) == is_k_connected(
                    diagram, 2
                )
