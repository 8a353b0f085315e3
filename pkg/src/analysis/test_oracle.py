"""
Tests de l'oracle par énumération exhaustive.
"""

import math

import numpy as np
import pytest
from django.test import SimpleTestCase

from region.exceptions import EnumerationBudgetError, ParameterError, TargetRangeError
from region.netmodel import diamond_network, load_network, path_network
from region.oracle import (
    GridSpec,
    brute_force_boundary,
    brute_force_max_f,
    brute_force_witnesses,
)
from region.regioncore import check_validity, max_sensing, max_throughput_at_sensing

from .factories import fixture_path, random_general_network


def as_pairs(points):
    return [(p.sensing, p.throughput) for p in points]


class OracleTestCase(SimpleTestCase):
    """Petits réseaux à frontière connue."""

    def test_three_node_path(self):
        net = path_network([4, 4], [1, 2, 3])
        boundary = brute_force_boundary(net, GridSpec(1.0))
        self.assertEqual(
            as_pairs(boundary), [(8.0, 0.0), (6.0, 1.0), (4.0, 2.0), (2.0, 3.0), (0.0, 4.0)]
        )
        self.assertTrue(all(p.provenance == "oracle" for p in boundary))

    def test_single_link(self):
        net = load_network(fixture_path("single_link.json"))
        boundary = brute_force_boundary(net, GridSpec(1.0))
        self.assertEqual(as_pairs(boundary), [(5.0 - f, float(f)) for f in range(6)])

    def test_diamond_coarse_grid(self):
        boundary = brute_force_boundary(diamond_network(), GridSpec(2.0))
        self.assertEqual(
            as_pairs(boundary),
            [(10.0, 10.0), (8.0, 12.0), (6.0, 14.0), (4.0, 16.0), (2.0, 18.0), (0.0, 20.0)],
        )

    def test_witnesses_are_valid(self):
        net = diamond_network()
        for point, assign in brute_force_witnesses(net, GridSpec(2.0)):
            self.assertTrue(check_validity(assign, net))
            value, _ = max_throughput_at_sensing(net, point.sensing)
            self.assertLessEqual(point.throughput, value + 1e-7)

    def test_max_f(self):
        net = path_network([4, 4], [1, 2, 3])
        self.assertEqual(brute_force_max_f(net, 2.0, GridSpec(1.0)), 3.0)
        self.assertEqual(brute_force_max_f(net, 0.0, GridSpec(1.0)), 4.0)
        self.assertEqual(brute_force_max_f(net, 8.0, GridSpec(1.0)), 0.0)

    def test_max_f_rounds_down_the_lp_value(self):
        net = path_network([6, 5, 6, 4], [2, 3, 4])
        value, _ = max_throughput_at_sensing(net, 4.0)
        self.assertAlmostEqual(value, 3.5, delta=1e-7)
        self.assertEqual(brute_force_max_f(net, 4.0, GridSpec(1.0)), 3.0)
        self.assertEqual(brute_force_max_f(net, 4.0, GridSpec(0.5)), 3.5)

    def test_max_f_errors(self):
        net = path_network([4, 4], [1, 2, 3])
        with self.assertRaises(ParameterError):
            brute_force_max_f(net, 1.5, GridSpec(1.0))
        with self.assertRaises(ParameterError):
            brute_force_max_f(net, math.inf, GridSpec(1.0))
        with self.assertRaises(TargetRangeError):
            brute_force_max_f(net, 10.0, GridSpec(1.0))

    def test_budget_guards(self):
        net = path_network([4, 4], [1, 2, 3])
        with self.assertRaises(EnumerationBudgetError):
            brute_force_boundary(net, GridSpec(1.0, max_links=1))
        with self.assertRaises(EnumerationBudgetError):
            brute_force_boundary(net, GridSpec(1.0, max_assignments=10))
        with self.assertRaises(EnumerationBudgetError):
            brute_force_boundary(path_network([1] * 6, [1, 2]), GridSpec(1.0))

    def test_invalid_step(self):
        with self.assertRaises(ParameterError):
            GridSpec(0.0)
        with self.assertRaises(ParameterError):
            GridSpec(-1.0)


@pytest.mark.slow
class OracleAgreementTestCase(SimpleTestCase):
    """Sur des réseaux entiers, le meilleur flot entier vaut floor(v(T_S))."""

    def test_random_integer_networks(self):
        # |U| <= 4, capacités entières <= 6, de 3 à 6 noeuds
        rng = np.random.default_rng(41)
        grid = GridSpec(1.0)
        for index in range(300):
            net = random_general_network(
                rng, max_nodes=4 + index % 3, max_links=4, max_capacity=6
            )
            boundary = brute_force_boundary(net, grid)
            s_star = max_sensing(net)
            for target in range(int(s_star) + 1):
                value, witness = max_throughput_at_sensing(net, float(target))
                self.assertTrue(check_validity(witness, net), f"{net.name} T_S={target}")
                brute = max(p.throughput for p in boundary if p.sensing >= target)
                self.assertEqual(brute, math.floor(value + 1e-9), f"{net.name} T_S={target}")

            middle = float(int(s_star) // 2)
            value, _ = max_throughput_at_sensing(net, middle)
            self.assertEqual(brute_force_max_f(net, middle, grid), math.floor(value + 1e-9))
