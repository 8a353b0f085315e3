"""
Solveur de programmes linéaires : simplexe primal en deux phases sur tableau dense.

Forme traitée : maximiser c·x sous contraintes a·x (<=, =, >=) b et x >= 0.
Règle de Dantzig par défaut, règle de Bland après une série de pivots non améliorants.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .config import (
    BLAND_THRESHOLD_FACTOR,
    FEASIBILITY_TOL,
    MAX_SIMPLEX_ITERATIONS,
    PIVOT_TOL,
)
from .exceptions import LinearProgramStructureError, SolverFailure

logger = logging.getLogger(__name__)

# Entrées du tableau ramenées à zéro après chaque pivot
ZERO_TOL = 1e-13


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: np.ndarray
    relation: Relation
    rhs: float


@dataclass
class LinearProgram:
    """
    Programme linéaire à maximiser, variables bornées inférieurement par 0.

    Args:
        variable_count: Nombre de variables
        objective: Coefficients c de la fonction objectif
        constraints: Contraintes (coefficients, relation, second membre)
        labels: Étiquettes optionnelles des variables (décodage des solutions)
    """

    variable_count: int
    objective: np.ndarray
    constraints: List[Constraint] = field(default_factory=list)
    labels: Tuple[Any, ...] = ()

    @classmethod
    def maximize(cls, objective: Sequence[float], labels: Sequence[Any] = ()) -> "LinearProgram":
        objective = np.asarray(objective, dtype=float)
        return cls(variable_count=objective.shape[0], objective=objective, labels=tuple(labels))

    def add_constraint(self, coefficients: Sequence[float], relation: Relation, rhs: float):
        self.constraints.append(
            Constraint(np.asarray(coefficients, dtype=float), Relation(relation), float(rhs))
        )

    def check_structure(self):
        """Vérifie les dimensions avant toute résolution."""
        n = self.variable_count
        if np.ndim(self.objective) != 1 or len(self.objective) != n:
            raise LinearProgramStructureError(
                f"objective has length {len(self.objective)}, expected {n}"
            )
        if not np.all(np.isfinite(self.objective)):
            raise LinearProgramStructureError("objective coefficients must be finite")
        if self.labels and len(self.labels) != n:
            raise LinearProgramStructureError(f"{len(self.labels)} labels for {n} variables")
        for index, constraint in enumerate(self.constraints):
            if np.ndim(constraint.coefficients) != 1 or len(constraint.coefficients) != n:
                raise LinearProgramStructureError(
                    f"constraint {index} has {len(constraint.coefficients)} coefficients, expected {n}"
                )
            if not np.isfinite(constraint.rhs):
                raise LinearProgramStructureError(f"constraint {index} has a non-finite rhs")
            if not np.all(np.isfinite(constraint.coefficients)):
                raise LinearProgramStructureError(f"constraint {index} has non-finite coefficients")

    def as_arrays(self) -> Tuple[np.ndarray, List[Relation], np.ndarray]:
        n = self.variable_count
        if self.constraints:
            matrix = np.vstack([c.coefficients for c in self.constraints]).astype(float)
        else:
            matrix = np.zeros((0, n))
        relations = [c.relation for c in self.constraints]
        rhs = np.array([c.rhs for c in self.constraints], dtype=float)
        return matrix, relations, rhs


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    objective_value: Optional[float] = None
    variable_values: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class SimplexSolver:
    """Simplexe primal en deux phases, déterministe."""

    def __init__(
        self,
        pivot_tol: float = PIVOT_TOL,
        feasibility_tol: float = FEASIBILITY_TOL,
        max_iterations: int = MAX_SIMPLEX_ITERATIONS,
    ):
        self.pivot_tol = pivot_tol
        self.feasibility_tol = feasibility_tol
        self.max_iterations = max_iterations

    def solve(self, lp: LinearProgram) -> LpSolution:
        """
        Résout le programme linéaire.

        Args:
            lp: Programme à maximiser

        Returns:
            LpSolution (Optimal, Infeasible ou Unbounded)
        """
        lp.check_structure()
        matrix, relations, rhs = lp.as_arrays()
        m, n = matrix.shape
        objective = np.asarray(lp.objective, dtype=float)

        # Seconds membres positifs
        relations = list(relations)
        for i in range(m):
            if rhs[i] < 0:
                matrix[i] *= -1.0
                rhs[i] *= -1.0
                if relations[i] is Relation.LE:
                    relations[i] = Relation.GE
                elif relations[i] is Relation.GE:
                    relations[i] = Relation.LE

        slack_count = sum(1 for r in relations if r is not Relation.EQ)
        artificial_count = sum(1 for r in relations if r is not Relation.LE)
        total = n + slack_count + artificial_count

        tableau = np.zeros((m + 1, total + 1))
        tableau[:m, :n] = matrix
        tableau[:m, -1] = rhs
        basis = np.zeros(m, dtype=int)
        artificial = np.zeros(total, dtype=bool)

        slack_col = n
        artificial_col = n + slack_count
        for i, relation in enumerate(relations):
            if relation is Relation.LE:
                tableau[i, slack_col] = 1.0
                basis[i] = slack_col
                slack_col += 1
            else:
                if relation is Relation.GE:
                    tableau[i, slack_col] = -1.0
                    slack_col += 1
                tableau[i, artificial_col] = 1.0
                artificial[artificial_col] = True
                basis[i] = artificial_col
                artificial_col += 1

        iterations = 0
        scale = max(1.0, float(np.max(np.abs(rhs))) if m else 1.0)

        if artificial_count:
            phase_one = np.zeros(total)
            phase_one[artificial] = -1.0
            self._load_objective(tableau, basis, phase_one)
            status, steps = self._iterate(tableau, basis, "phase 1")
            iterations += steps
            if tableau[-1, -1] < -self.feasibility_tol * scale:
                logger.debug(f"LP infeasible: phase 1 optimum {tableau[-1, -1]:.3e}")
                return LpSolution(LpStatus.INFEASIBLE, iterations=iterations)

            tableau, basis = self._drive_out_artificials(tableau, basis, artificial)
            keep = np.append(~artificial, True)
            tableau = tableau[:, keep]
            remap = np.cumsum(~artificial) - 1
            basis = remap[basis]
            total = int((~artificial).sum())

        phase_two = np.zeros(total)
        phase_two[:n] = objective
        self._load_objective(tableau, basis, phase_two)
        status, steps = self._iterate(tableau, basis, "phase 2")
        iterations += steps
        if status is LpStatus.UNBOUNDED:
            return LpSolution(LpStatus.UNBOUNDED, iterations=iterations)

        values = np.zeros(total)
        values[basis] = tableau[:-1, -1]
        x = values[:n]
        x = self._verify(lp, x)
        value = float(objective @ x)
        logger.debug(f"LP optimal: value={value:.12g}, {iterations} pivots, {m}x{n}")
        return LpSolution(LpStatus.OPTIMAL, value, x, iterations)

    def _load_objective(self, tableau: np.ndarray, basis: np.ndarray, costs: np.ndarray):
        # Ligne des coûts réduits d_j = c_B B^-1 A_j - c_j
        tableau[-1, :] = 0.0
        tableau[-1, :-1] = -costs
        for row, column in enumerate(basis):
            if costs[column] != 0.0:
                tableau[-1, :] += costs[column] * tableau[row, :]

    def _pivot(self, tableau: np.ndarray, basis: np.ndarray, row: int, column: int):
        tableau[row, :] /= tableau[row, column]
        factors = tableau[:, column].copy()
        factors[row] = 0.0
        tableau -= np.outer(factors, tableau[row, :])
        tableau[np.abs(tableau) < ZERO_TOL] = 0.0
        basis[row] = column

    def _iterate(
        self, tableau: np.ndarray, basis: np.ndarray, phase: str
    ) -> Tuple[LpStatus, int]:
        m = tableau.shape[0] - 1
        columns = tableau.shape[1] - 1
        threshold = BLAND_THRESHOLD_FACTOR * max(m, 1)
        stalled = 0
        dump = logger.isEnabledFor(logging.DEBUG)

        for step in range(self.max_iterations):
            reduced = tableau[-1, :columns]
            candidates = np.flatnonzero(reduced < -self.feasibility_tol)
            if candidates.size == 0:
                if dump:
                    logger.debug(f"{phase} optimal after {step} pivots\n{tableau}")
                return LpStatus.OPTIMAL, step

            bland = stalled >= threshold
            if bland:
                entering = int(candidates[0])
            else:
                entering = int(candidates[np.argmin(reduced[candidates])])

            column = tableau[:m, entering]
            eligible = np.flatnonzero(column > self.pivot_tol)
            if eligible.size == 0:
                if np.any(column > 0.0):
                    raise SolverFailure(
                        f"{phase}: no pivot above tolerance in column {entering}"
                    )
                logger.debug(f"{phase}: unbounded direction on column {entering}")
                return LpStatus.UNBOUNDED, step

            ratios = tableau[eligible, -1] / column[eligible]
            best = ratios.min()
            ties = eligible[ratios <= best + self.feasibility_tol]
            if bland:
                leaving = int(ties[np.argmin(basis[ties])])
            else:
                leaving = int(ties[np.argmax(column[ties])])

            if dump:
                logger.debug(
                    f"{phase} pivot {step}: enter {entering}, leave row {leaving} "
                    f"(basis {basis[leaving]}), ratio {best:.6g}{' [bland]' if bland else ''}"
                )
            self._pivot(tableau, basis, leaving, entering)
            stalled = stalled + 1 if best <= self.feasibility_tol else 0

        raise SolverFailure(f"{phase}: iteration limit {self.max_iterations} reached")

    def _drive_out_artificials(
        self, tableau: np.ndarray, basis: np.ndarray, artificial: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        columns = tableau.shape[1] - 1
        redundant = []
        for row in range(len(basis)):
            if not artificial[basis[row]]:
                continue
            entries = np.abs(tableau[row, :columns])
            candidates = np.flatnonzero((entries > self.pivot_tol) & ~artificial)
            if candidates.size:
                self._pivot(tableau, basis, row, int(candidates[0]))
            else:
                redundant.append(row)
        if redundant:
            logger.debug(f"Dropping {len(redundant)} redundant constraint rows")
            keep_rows = np.ones(tableau.shape[0], dtype=bool)
            keep_rows[redundant] = False
            tableau = tableau[keep_rows]
            basis = np.delete(basis, redundant)
        return tableau, basis

    def _verify(self, lp: LinearProgram, x: np.ndarray) -> np.ndarray:
        """Contrôle a posteriori : jamais de solution silencieusement fausse."""
        if np.any(x < -self.feasibility_tol):
            raise SolverFailure(f"negative variable in solution ({x.min():.3e})")
        x = np.where(x < 0.0, 0.0, x)
        magnitude = max(1.0, float(np.max(np.abs(x))) if x.size else 1.0)
        for index, constraint in enumerate(lp.constraints):
            activity = float(constraint.coefficients @ x)
            norm = max(1.0, float(np.linalg.norm(constraint.coefficients)))
            tolerance = self.feasibility_tol * norm * magnitude
            gap = activity - constraint.rhs
            violated = (
                (constraint.relation is Relation.LE and gap > tolerance)
                or (constraint.relation is Relation.GE and gap < -tolerance)
                or (constraint.relation is Relation.EQ and abs(gap) > tolerance)
            )
            if violated:
                raise SolverFailure(
                    f"constraint {index} violated by {gap:.3e} after solve (tolerance {tolerance:.1e})"
                )
        return x


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Résout lp avec les tolérances par défaut."""
    return SimplexSolver().solve(lp)
