"""Stationarity checks for solutions of the parameter iteration.

At a solution, conditions (beta_h ||C_h y|| = dbar_h^T C_h y and
gamma_h ||C_h y|| = 1) hold together with the optimality conditions of the concave
subproblem. With the parameters satisfying those two conditions the gradient of the
subproblem objective equals the gradient of the relaxed sum of cosines, so the
projected gradient residual of the sum of cosines at y measures stationarity of the
relaxed problem directly.
"""

from dataclasses import dataclass
import numpy as np
from numpy.typing import NDArray

from ..subproblem import (
    SubproblemInstance,
    project_capped_simplex,
    projected_gradient_residual,
)
from .objective import DPAContext, cosine_gradient
from .dpa import SolveTrace, compute_errors


@dataclass(frozen=True)
class KKTResiduals:
    alignment: NDArray  # beta_h ||C_h y|| - dbar_h^T C_h y
    scale: NDArray  # gamma_h ||C_h y|| - 1
    subproblem: float  # projected gradient residual of the subproblem
    relaxed: float  # projected gradient residual of the sum of cosines

    @property
    def max_condition(self) -> float:
        return float(np.max(np.abs(np.concatenate((self.alignment, self.scale)))))

    def below(self, tol: float) -> bool:
        return self.max_condition < tol and self.subproblem < tol


def kkt_residuals(
    context: DPAContext, y: NDArray, gamma: NDArray, beta: NDArray, k: int
) -> KKTResiduals:
    context = context.solvable()
    delta = compute_errors(y, gamma, beta, context)
    H = context.h_effective
    inst = SubproblemInstance(context.matrices, context.unit_prefs, gamma, beta, k, context.m)
    relaxed_step = project_capped_simplex(y + cosine_gradient(context, y), k)
    return KKTResiduals(
        alignment=delta[:H],
        scale=delta[H:],
        subproblem=projected_gradient_residual(inst, y),
        relaxed=float(np.max(np.abs(y - relaxed_step))),
    )


def trace_residuals(trace: SolveTrace, context: DPAContext, k: int) -> KKTResiduals:
    """Residuals at the final iterate of a trace"""
    final = trace.iterations[trace.best_iteration]
    return kkt_residuals(context, final.y, final.gamma, final.beta, k)


def construction_residuals(trace: SolveTrace, context: DPAContext) -> list[float]:
    """Largest error for l >= 2 when the parameters of iteration l are evaluated at
    the solution of iteration l - 1. The updates are built to make this zero, except
    in dimensions flagged degenerate where the parameters were carried over."""
    context = context.solvable()
    residuals = []
    for previous, current in zip(trace.iterations[:-1], trace.iterations[1:]):
        delta = compute_errors(previous.y, current.gamma, current.beta, context)
        H = context.h_effective
        keep = np.ones(H, dtype=bool)
        keep[current.degenerate] = False
        mask = np.concatenate((keep, keep))
        residuals.append(float(np.max(np.abs(delta[mask]), initial=0.0)))
    return residuals
