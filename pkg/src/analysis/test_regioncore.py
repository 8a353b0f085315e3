"""
Tests de la région détection-débit : P1, P2, grandeurs caractéristiques, tracé, témoins.
"""

import math

import numpy as np
import pytest
from django.test import SimpleTestCase

from region.exceptions import (
    AssignmentStructureError,
    InvalidAssignmentError,
    ParameterError,
    TargetRangeError,
)
from region.netmodel import build_network, diamond_network, path_network, sensing_link_sets
from region.regioncore import (
    FREE_SENSING,
    TRADEOFF,
    RateAssignment,
    approx_free_sensing,
    build_p1,
    build_p2,
    check_validity,
    evaluate_point,
    free_communication,
    free_sensing,
    has_avoiding_path,
    max_sensing,
    max_sensing_at_throughput,
    max_throughput,
    max_throughput_at_sensing,
    reduce_one_direction,
    region_summary,
    sample_region,
    scale_down,
    trace_region,
)

from .factories import random_general_network, random_path_network

EPS_OBJ = 1e-7


def k5_path():
    return path_network([6, 5, 6, 4], [2, 3, 4])


def empty_area_network():
    return build_network(4, [(1, 2, 3), (2, 4, 2), (1, 3, 1), (3, 4, 4)], 1, 4, [])


class ProgramStructureTestCase(SimpleTestCase):
    """Construction de P1 et P2."""

    def test_p1_variables(self):
        lp = build_p1(k5_path(), 3.0)
        comm = [label for label in lp.labels if label[0] == "f"]
        sense = [label for label in lp.labels if label[0] == "s"]
        # (2,1) entre dans Tx, (5,4) sort de Rx : pas de variable
        self.assertNotIn(("f", 2, 1), comm)
        self.assertNotIn(("f", 5, 4), comm)
        self.assertEqual(len(comm), 6)
        self.assertEqual(sense, [("s", 2, 3), ("s", 3, 2), ("s", 3, 4), ("s", 4, 3)])

    def test_p1_rejects_out_of_range_target(self):
        with self.assertRaises(TargetRangeError) as ctx:
            build_p1(k5_path(), 12.0)
        self.assertIn("T_S must be in [0, 11]", str(ctx.exception))
        with self.assertRaises(TargetRangeError):
            build_p1(k5_path(), -0.5)

    def test_p1_clamps_target_within_tolerance(self):
        lp = build_p1(k5_path(), 11.0 + 1e-9)
        self.assertEqual(lp.constraints[-1].rhs, 11.0)

    def test_p2_has_no_sensing_links(self):
        lp = build_p2(diamond_network())
        self.assertEqual(lp.labels, (("f", 1, 2), ("f", 1, 3), ("f", 3, 4)))


class CharacteristicQuantitiesTestCase(SimpleTestCase):
    """f*, s*, f̃, s̃ sur les exemples de référence."""

    def test_k5_values(self):
        net = k5_path()
        self.assertEqual(max_sensing(net), 11.0)
        self.assertAlmostEqual(max_throughput(net), 4.0, delta=EPS_OBJ)
        self.assertAlmostEqual(free_communication(net), 0.0, delta=EPS_OBJ)
        self.assertAlmostEqual(free_sensing(net), 3.0, delta=1e-7)
        self.assertFalse(has_avoiding_path(net))

    def test_k5_sampled_values(self):
        net = k5_path()
        for target, expected in [(0, 4), (3, 4), (5, 3), (7, 2), (11, 0)]:
            value, witness = max_throughput_at_sensing(net, target)
            self.assertAlmostEqual(value, expected, delta=EPS_OBJ)
            self.assertTrue(check_validity(witness, net))

    def test_diamond_values(self):
        net = diamond_network()
        self.assertEqual(max_sensing(net), 10.0)
        self.assertAlmostEqual(max_throughput(net), 20.0, delta=EPS_OBJ)
        self.assertAlmostEqual(free_communication(net), 10.0, delta=EPS_OBJ)
        self.assertAlmostEqual(free_sensing(net), 0.0, delta=1e-7)
        self.assertTrue(has_avoiding_path(net))

    def test_empty_sensing_area(self):
        net = empty_area_network()
        self.assertEqual(max_sensing(net), 0.0)
        self.assertAlmostEqual(max_throughput(net), 3.0, delta=EPS_OBJ)
        self.assertAlmostEqual(free_communication(net), 3.0, delta=EPS_OBJ)
        self.assertTrue(has_avoiding_path(net))
        self.assertEqual(approx_free_sensing(net, 0.01), (0.0, 0))

    def test_max_throughput_at_s_star_equals_free_communication(self):
        for net in (k5_path(), diamond_network()):
            value, _ = max_throughput_at_sensing(net, max_sensing(net))
            self.assertAlmostEqual(value, free_communication(net), delta=EPS_OBJ)

    def test_sensing_slice(self):
        net = k5_path()
        value, witness = max_sensing_at_throughput(net, 2.0)
        self.assertAlmostEqual(value, 7.0, delta=EPS_OBJ)
        point = evaluate_point(witness, net)
        self.assertAlmostEqual(point.throughput, 2.0, delta=EPS_OBJ)
        with self.assertRaises(TargetRangeError):
            max_sensing_at_throughput(net, 5.0)

    def test_zero_capacity_avoiding_path(self):
        net = build_network(3, [(1, 2, 2), (2, 3, 0), (1, 3, 0)], 1, 3, [1, 2])
        self.assertFalse(has_avoiding_path(net))
        self.assertTrue(has_avoiding_path(net, positive_capacity=False))


class FreeSensingBisectionTestCase(SimpleTestCase):
    """Bisection de la détection libre."""

    def test_k5_path(self):
        value, lp_calls = approx_free_sensing(k5_path(), 0.01)
        self.assertGreaterEqual(value, 2.99)
        self.assertLessEqual(value, 3.0 + 1e-6)
        self.assertLessEqual(lp_calls, math.ceil(math.log2(11 / 0.01)) + 1)

    def test_k5_default_precision(self):
        summary = region_summary(k5_path())
        self.assertAlmostEqual(summary.delta, 11e-4)
        self.assertAlmostEqual(summary.s_tilde, 3.0, delta=1e-3)
        self.assertAlmostEqual(summary.f_star, 4.0, delta=EPS_OBJ)
        self.assertAlmostEqual(summary.f_tilde, 0.0, delta=EPS_OBJ)
        self.assertFalse(summary.avoiding_path)

    def test_diamond(self):
        value, _ = approx_free_sensing(diamond_network(), 0.01)
        self.assertEqual(value, 0.0)

    def test_known_f_star_saves_a_call(self):
        net = k5_path()
        _, with_lookup = approx_free_sensing(net, 0.1)
        _, without = approx_free_sensing(net, 0.1, f_star=4.0)
        self.assertEqual(with_lookup, without + 1)

    def test_delta_below_float_resolution(self):
        # s* = 1.1e6 : Δ = 1e-12 est sous l'écart entre flottants voisins
        net = path_network([6e5, 5e5, 6e5, 4e5], [2, 3, 4])
        value, lp_calls = approx_free_sensing(net, 1e-12)
        self.assertLessEqual(lp_calls, math.ceil(math.log2(11e5 / 1e-12)) + 1)
        self.assertAlmostEqual(value, 3e5, delta=1e-3)

    def test_invalid_delta(self):
        with self.assertRaises(ParameterError):
            approx_free_sensing(k5_path(), 0.0)
        with self.assertRaises(ParameterError):
            approx_free_sensing(k5_path(), -1.0)


def sensing_slack(assign, net):
    """Capacité inutilisée sur les liens de U(A), par lien."""
    slack = {}
    for link in sensing_link_sets(net).u_a:
        used = sum(assign.comm.get(e, 0.0) + assign.sense.get(e, 0.0) for e in link.directions)
        slack[link.key] = link.capacity - used
    return slack


class FreeSensingSlackTestCase(SimpleTestCase):
    """Détection libre et capacité laissée libre par un témoin de débit maximal."""

    def test_k5_forward_flow_leaves_slack(self):
        net = k5_path()
        witness = RateAssignment.from_rates(net, {(j, j + 1): 4.0 for j in range(1, 5)})
        self.assertTrue(check_validity(witness, net))
        self.assertAlmostEqual(evaluate_point(witness, net).throughput, max_throughput(net))

        slack = sensing_slack(witness, net)
        self.assertAlmostEqual(slack[(2, 3)], 1.0)
        self.assertAlmostEqual(slack[(3, 4)], 2.0)
        value, _ = approx_free_sensing(net, 1e-3)
        self.assertGreater(value, 1e-3)

    def test_diamond_max_flow_saturates_sensing_link(self):
        net = diamond_network()
        _, witness = max_throughput_at_sensing(net, 0.0)
        self.assertAlmostEqual(sensing_slack(witness, net)[(2, 4)], 0.0, delta=1e-7)
        value, _ = approx_free_sensing(net, 1e-3)
        self.assertEqual(value, 0.0)


class TraceRegionTestCase(SimpleTestCase):
    """Frontière de Pareto par subdivision."""

    def test_k5_single_tradeoff_segment(self):
        boundary = trace_region(k5_path())
        points = [(p.sensing, p.throughput) for p in boundary.breakpoints]
        self.assertEqual(len(points), 3)
        for (s, f), (es, ef) in zip(points, [(11, 0), (3, 4), (0, 4)]):
            self.assertAlmostEqual(s, es, places=6)
            self.assertAlmostEqual(f, ef, places=6)

        tradeoff, edge = boundary.segments
        self.assertEqual(tradeoff.kind, TRADEOFF)
        self.assertAlmostEqual(tradeoff.slope, -2.0, places=6)
        self.assertAlmostEqual(tradeoff.gradient, -0.5, places=6)
        self.assertEqual(tradeoff.k, 2)
        self.assertEqual(edge.kind, FREE_SENSING)
        self.assertEqual(edge.gradient, 0.0)
        self.assertAlmostEqual(boundary.free_sensing_point.sensing, 3.0, places=6)

    def test_diamond_unit_slope(self):
        boundary = trace_region(diamond_network())
        self.assertEqual(len(boundary.segments), 1)
        segment = boundary.segments[0]
        self.assertEqual(segment.k, 1)
        self.assertAlmostEqual(segment.gradient, -1.0, places=6)
        start, end = boundary.breakpoints
        self.assertAlmostEqual(start.sensing, 10.0, places=6)
        self.assertAlmostEqual(start.throughput, 10.0, places=6)
        self.assertAlmostEqual(end.sensing, 0.0, places=6)
        self.assertAlmostEqual(end.throughput, 20.0, places=6)

    def test_empty_area_is_a_single_point(self):
        boundary = trace_region(empty_area_network())
        self.assertEqual(len(boundary.breakpoints), 1)
        self.assertEqual(boundary.segments, ())
        self.assertAlmostEqual(boundary.breakpoints[0].throughput, 3.0, places=6)

    def test_zero_throughput_is_a_flat_segment(self):
        net = build_network(3, [(1, 2, 4), (2, 3, 0)], 1, 3, [1, 2])
        boundary = trace_region(net)
        self.assertEqual(len(boundary.segments), 1)
        self.assertEqual(boundary.segments[0].kind, FREE_SENSING)
        self.assertAlmostEqual(boundary.free_sensing_point.sensing, 4.0, places=6)

    def test_two_tradeoff_segments(self):
        # Chemin via {2,3} (un lien de détection) ou via {2,4},{4,3} (deux liens)
        net = build_network(
            4, [(1, 2, 4), (2, 3, 2), (2, 4, 2), (3, 4, 2)], 1, 3, [2, 3, 4]
        )
        boundary = trace_region(net)
        gradients = sorted(s.gradient for s in boundary.tradeoff_segments)
        self.assertEqual(len(gradients), 2)
        self.assertAlmostEqual(gradients[0], -1.0, places=6)
        self.assertAlmostEqual(gradients[1], -0.5, places=6)
        self.assertEqual(sorted(s.k for s in boundary.tradeoff_segments), [1, 2])

    def test_min_interval_below_float_resolution(self):
        boundary = trace_region(k5_path(), 1e-6, 1e-300)
        points = [(p.sensing, p.throughput) for p in boundary.breakpoints]
        self.assertEqual(len(points), 3)
        for (s, f), (es, ef) in zip(points, [(11, 0), (3, 4), (0, 4)]):
            self.assertAlmostEqual(s, es, delta=1e-6)
            self.assertAlmostEqual(f, ef, delta=1e-6)

    def test_invalid_parameters(self):
        with self.assertRaises(ParameterError):
            trace_region(k5_path(), slope_tol=0.0)
        with self.assertRaises(ParameterError):
            trace_region(k5_path(), min_interval=-1.0)

    def test_sample_region(self):
        points = sample_region(k5_path(), 12)
        self.assertEqual([p.sensing for p in points], [float(i) for i in range(12)])
        for p in points:
            self.assertAlmostEqual(p.throughput, min(4.0, (11 - p.sensing) / 2), delta=EPS_OBJ)
        with self.assertRaises(ParameterError):
            sample_region(k5_path(), 0)
        self.assertEqual(len(sample_region(empty_area_network(), 5)), 1)


class WitnessTestCase(SimpleTestCase):
    """Validité, évaluation et transformations des affectations."""

    def setUp(self):
        self.net = k5_path()

    def forward_assignment(self, flow, sense):
        comm = {(j, j + 1): flow for j in range(1, 5)}
        return RateAssignment.from_rates(self.net, comm, sense)

    def test_hand_built_point(self):
        assign = self.forward_assignment(4.0, {(2, 3): 1.0, (3, 4): 2.0})
        self.assertTrue(check_validity(assign, self.net))
        point = evaluate_point(assign, self.net)
        self.assertEqual((point.sensing, point.throughput), (3.0, 4.0))

    def test_zero_assignment(self):
        assign = RateAssignment.zeros(self.net)
        self.assertTrue(check_validity(assign, self.net))
        point = evaluate_point(assign, self.net)
        self.assertEqual((point.sensing, point.throughput), (0.0, 0.0))

    def test_full_sensing_assignment(self):
        assign = RateAssignment.from_rates(self.net, sense={(2, 3): 5.0, (4, 3): 6.0})
        point = evaluate_point(assign, self.net)
        self.assertEqual((point.sensing, point.throughput), (11.0, 0.0))

    def test_conservation_violation(self):
        comm = {(1, 2): 4.0, (2, 3): 5.0}
        assign = RateAssignment.from_rates(self.net, comm)
        self.assertFalse(check_validity(assign, self.net))
        with self.assertRaises(InvalidAssignmentError):
            evaluate_point(assign, self.net)

    def test_capacity_is_shared_by_both_kinds(self):
        assign = self.forward_assignment(4.0, {(2, 3): 1.0, (3, 2): 0.5})
        self.assertFalse(check_validity(assign, self.net))

    def test_flow_into_source_is_invalid(self):
        assign = RateAssignment.from_rates(self.net, {(2, 1): 1.0, (1, 2): 1.0})
        self.assertFalse(check_validity(assign, self.net))

    def test_negative_rate_is_invalid(self):
        assign = RateAssignment.from_rates(self.net, sense={(2, 3): -1.0})
        self.assertFalse(check_validity(assign, self.net))

    def test_structure_mismatch(self):
        assign = RateAssignment(comm={(1, 2): 1.0}, sense={(1, 2): 0.0})
        with self.assertRaises(AssignmentStructureError):
            check_validity(assign, self.net)

    def test_reduction_keeps_net_flow(self):
        assign = self.forward_assignment(2.0, {(2, 3): 0.5, (3, 2): 0.5})
        assign.comm[(3, 2)] = 1.0
        assign.comm[(2, 3)] = 3.0
        self.assertTrue(check_validity(assign, self.net))
        reduced = reduce_one_direction(assign, self.net)
        self.assertEqual(reduced.comm[(2, 3)], 2.0)
        self.assertEqual(reduced.comm[(3, 2)], 0.0)
        self.assertEqual(reduced.sense[(2, 3)], 1.0)
        self.assertEqual(reduced.sense[(3, 2)], 0.0)
        self.assertEqual(evaluate_point(reduced, self.net), evaluate_point(assign, self.net))

    def test_reduction_of_lp_witnesses_is_exact(self):
        for net in (self.net, diamond_network()):
            for target in np.linspace(0.0, max_sensing(net), 7):
                _, witness = max_throughput_at_sensing(net, float(target))
                reduced = reduce_one_direction(witness, net)
                self.assertTrue(check_validity(reduced, net))
                self.assertEqual(evaluate_point(reduced, net), evaluate_point(witness, net))

    def test_scale_down(self):
        _, witness = max_throughput_at_sensing(self.net, 3.0)
        scaled = scale_down(witness, self.net, sigma=1.0, delta=1.0)
        self.assertTrue(check_validity(scaled, self.net))
        point = evaluate_point(scaled, self.net)
        self.assertAlmostEqual(point.sensing, 2.0, delta=1e-9)
        self.assertAlmostEqual(point.throughput, 3.0, delta=1e-9)

    def test_scale_down_rejects_excess(self):
        _, witness = max_throughput_at_sensing(self.net, 3.0)
        with self.assertRaises(ParameterError):
            scale_down(witness, self.net, sigma=4.0, delta=0.0)


def _monotone_and_concave(test, net, samples=9):
    s_star = max_sensing(net)
    targets = np.linspace(0.0, s_star, samples)
    values = [max_throughput_at_sensing(net, float(t))[0] for t in targets]
    for a, b in zip(values, values[1:]):
        test.assertGreaterEqual(a, b - EPS_OBJ)
    for a, b, c in zip(values, values[1:], values[2:]):
        test.assertGreaterEqual(b, (a + c) / 2 - EPS_OBJ)
    return values


@pytest.mark.slow
class RegionPropertiesTestCase(SimpleTestCase):
    """Propriétés sur des réseaux aléatoires."""

    def test_monotone_and_concave(self):
        rng = np.random.default_rng(11)
        for net in [k5_path(), diamond_network()] + [
            random_general_network(rng, integer=False) for _ in range(30)
        ]:
            _monotone_and_concave(self, net)

    def test_free_communication_equivalence(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            net = random_general_network(rng)
            self.assertEqual(
                free_communication(net) > EPS_OBJ, has_avoiding_path(net), net.name
            )

    def test_free_sensing_bisection_contract(self):
        rng = np.random.default_rng(13)
        for _ in range(40):
            net = random_general_network(rng, max_nodes=6, max_links=9)
            s_star = max_sensing(net)
            if s_star == 0.0:
                continue
            delta = 1e-3 * s_star
            f_star = max_throughput(net)
            value, lp_calls = approx_free_sensing(net, delta)
            reached, _ = max_throughput_at_sensing(net, value)
            self.assertGreaterEqual(reached, f_star - EPS_OBJ)
            self.assertGreaterEqual(value, free_sensing(net) - delta - 1e-7)
            self.assertLessEqual(lp_calls, math.ceil(math.log2(s_star / delta)) + 1)

    def test_witnesses_validity_reduction_and_downward_closure(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            net = random_general_network(rng, max_nodes=6, max_links=10)
            for target in np.linspace(0.0, max_sensing(net), 4):
                value, witness = max_throughput_at_sensing(net, float(target))
                self.assertTrue(check_validity(witness, net))
                point = evaluate_point(witness, net)
                self.assertAlmostEqual(point.throughput, value, delta=1e-7)

                reduced = reduce_one_direction(witness, net)
                self.assertTrue(check_validity(reduced, net))
                self.assertEqual(evaluate_point(reduced, net), point)

                sigma = float(rng.uniform(0.0, point.sensing))
                delta = float(rng.uniform(0.0, point.throughput))
                scaled = scale_down(witness, net, sigma, delta)
                self.assertTrue(check_validity(scaled, net))

    def test_slope_quantization(self):
        rng = np.random.default_rng(23)
        checked = 0
        for _ in range(50):
            net = random_general_network(rng, max_nodes=6, max_links=10)
            u_a = len(sensing_link_sets(net).u_a)
            boundary = trace_region(net)
            for segment in boundary.tradeoff_segments:
                k = round(-1.0 / segment.gradient)
                self.assertTrue(1 <= k <= u_a, f"{net.name}: k={k}")
                self.assertAlmostEqual(segment.gradient, -1.0 / k, delta=1e-5, msg=net.name)
                checked += 1
        self.assertGreater(checked, 0)

    def test_path_witness_structure(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            net = random_path_network(rng)
            value, witness = max_throughput_at_sensing(net, 0.0)
            reduced = reduce_one_direction(witness, net)
            for j in range(1, net.node_count):
                self.assertAlmostEqual(reduced.comm[(j, j + 1)], value, delta=1e-7)

    def test_free_sensing_matches_unused_capacity(self):
        rng = np.random.default_rng(19)
        checked = 0
        for _ in range(60):
            net = random_general_network(rng, max_nodes=6, max_links=9)
            s_star = max_sensing(net)
            if s_star == 0.0:
                continue
            delta = 1e-3 * s_star
            f_star = max_throughput(net)
            exact, witness = max_sensing_at_throughput(net, f_star)
            if 1e-6 < exact < 2 * delta:
                continue
            # Sans détection, le témoin garde f* et libère la capacité de détection
            stripped = RateAssignment.from_rates(net, comm=dict(witness.comm))
            self.assertTrue(check_validity(stripped, net), net.name)
            self.assertAlmostEqual(
                evaluate_point(stripped, net).throughput, f_star, delta=1e-7, msg=net.name
            )
            slack = sum(max(0.0, gap) for gap in sensing_slack(stripped, net).values())
            value, _ = approx_free_sensing(net, delta, f_star=f_star)
            self.assertEqual(value > 0.0, slack > 1e-6, net.name)
            checked += 1
        self.assertGreater(checked, 0)
