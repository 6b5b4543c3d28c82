"""Least-squares objectives on products of unitary groups.

Every objective term has the form ``|sum_s sign_s W_s - T|_F^2`` where each
word ``W_s`` is a product of variables, possibly daggered, transposed or
conjugated. The variables are the handles ``a_i, b_i`` and the punctures
``c_j = k_j D_j k_j^dag``, with ``D_j`` the diagonal class representative.

The optimization point is ``(a_1, b_1, ..., a_g, b_g, k_1, ..., k_l)`` on a
pymanopt product of unitary groups. Commutators and conjugations ignore
scalar phases, so nothing is lost by optimizing over U(n); witnesses are
normalized back into SU(n).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import reduce

import numpy as np
import pymanopt
import scipy.linalg
import scipy.optimize
from pymanopt.manifolds import Product, UnitaryGroup

from ..alcove.types import AlcovePoint
from ..exceptions import GenusUnsupportedError, ValidationError
from ..qham.types import Configuration, SurfaceGroupData
from ..unitary.core import dagger, to_special
from ..unitary.sampling import rng_stream
from ..unitary.spectra import alcove_exp


class Kind(Enum):
    PLAIN = "plain"
    DAGGER = "dagger"
    TRANSPOSE = "transpose"
    CONJ = "conj"


Factor = tuple[int, Kind]


@dataclass(frozen=True)
class Word:
    sign: float
    factors: tuple[Factor, ...]


@dataclass(frozen=True)
class Term:
    """``|sum_s sign_s W_s - constant|_F^2``."""

    name: str
    words: tuple[Word, ...]
    constant: np.ndarray | None


@dataclass(frozen=True)
class Objective:
    """A sum of terms over ``2g`` handles followed by ``l`` punctures."""

    handles: int
    terms: tuple[Term, ...]
    n: int


def _apply(kind: Kind, x: np.ndarray) -> np.ndarray:
    match kind:
        case Kind.PLAIN:
            return x
        case Kind.DAGGER:
            return dagger(x)
        case Kind.TRANSPOSE:
            return x.T
        case Kind.CONJ:
            return np.conj(x)


def build_objective(data: SurfaceGroupData, target: AlcovePoint | None, symmetric: bool = False) -> Objective:
    """Objective ``|moment - exp(target)|^2`` plus the fixed-point penalty.

    Variables are ordered ``a_1, b_1, ..., a_g, b_g, c_1, ..., c_l``.
    With ``symmetric=True`` one term ``|beta(c)_j - c_j|^2`` is added per
    puncture, written as the word ``P_j^T c_j^T conj(P_j)`` minus ``c_j``.
    """
    g, l, n = data.genus, data.l, data.n
    if symmetric and g != 0:
        raise GenusUnsupportedError("The fixed-point penalty needs genus 0", genus=g)

    moment_factors: list[Factor] = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        moment_factors += [(a, Kind.PLAIN), (b, Kind.PLAIN), (a, Kind.DAGGER), (b, Kind.DAGGER)]
    moment_factors += [(2 * g + j, Kind.PLAIN) for j in range(l)]
    constant = alcove_exp(target) if target is not None else np.eye(n, dtype=complex)
    terms = [Term("moment", (Word(1.0, tuple(moment_factors)),), constant)]

    if symmetric:
        for j in range(l):
            tail = range(j + 1, l)
            factors: list[Factor] = [(2 * g + k, Kind.TRANSPOSE) for k in reversed(tail)]
            factors.append((2 * g + j, Kind.TRANSPOSE))
            factors += [(2 * g + k, Kind.CONJ) for k in tail]
            words = (Word(1.0, tuple(factors)), Word(-1.0, ((2 * g + j, Kind.PLAIN),)))
            terms.append(Term(f"beta_{j + 1}", words, None))

    return Objective(2 * g, tuple(terms), n)


def _word_value(word: Word, variables: Sequence[np.ndarray], n: int) -> np.ndarray:
    mats = [_apply(kind, variables[v]) for v, kind in word.factors]
    return reduce(np.matmul, mats, np.eye(n, dtype=complex))


def _term_residual(term: Term, variables: Sequence[np.ndarray], n: int) -> np.ndarray:
    value = sum(w.sign * _word_value(w, variables, n) for w in term.words)
    if term.constant is not None:
        value = value - term.constant
    return value


def term_values(objective: Objective, variables: Sequence[np.ndarray]) -> dict[str, float]:
    """Squared Frobenius norm of every term, keyed by term name."""
    return {
        t.name: float(np.linalg.norm(_term_residual(t, variables, objective.n)) ** 2) for t in objective.terms
    }


def evaluate(objective: Objective, variables: Sequence[np.ndarray]) -> float:
    return float(sum(term_values(objective, variables).values()))


def euclidean_gradient(objective: Objective, variables: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Euclidean gradient with respect to each matrix variable.

    For an occurrence ``L K(X) R`` inside a word of sign ``s`` in a term
    with residual ``F``, let ``Q = s R F^dag L`` and ``Q'`` be ``Q``,
    ``Q^dag``, ``Q^T`` or ``conj(Q)`` for the kinds plain, dagger,
    transpose and conj. The first variation is ``2 Re tr(Q' dX)``, so the
    gradient for ``<A, B> = Re tr(A^dag B)`` is ``2 Q'^dag`` summed over
    occurrences.
    """
    n = objective.n
    eye = np.eye(n, dtype=complex)
    accum = [np.zeros((n, n), dtype=complex) for _ in variables]

    for term in objective.terms:
        residual_dag = dagger(_term_residual(term, variables, n))
        for word in term.words:
            mats = [_apply(kind, variables[v]) for v, kind in word.factors]
            prefixes = [eye]
            for m in mats:
                prefixes.append(prefixes[-1] @ m)
            suffix = eye
            for pos in range(len(mats) - 1, -1, -1):
                var, kind = word.factors[pos]
                q = word.sign * (suffix @ residual_dag @ prefixes[pos])
                accum[var] += _apply(kind, q)
                suffix = mats[pos] @ suffix

    return [2 * dagger(q) for q in accum]


def frames_from_punctures(punctures: Sequence[np.ndarray], diagonals: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Unitaries ``k_j`` with ``k_j D_j k_j^dag = c_j``.

    Columns of the complex Schur basis of ``c_j`` are matched to the
    diagonal entries of ``D_j`` by a minimum-cost assignment.
    """
    frames = []
    for c, d in zip(punctures, diagonals, strict=True):
        schur_form, vectors = scipy.linalg.schur(np.asarray(c, dtype=complex), output="complex")
        cost = np.abs(np.diagonal(schur_form)[:, None] - np.diagonal(d)[None, :])
        rows, cols = scipy.optimize.linear_sum_assignment(cost)
        frame = np.empty_like(vectors)
        frame[:, cols] = vectors[:, rows]
        frames.append(frame)
    return frames


class FiberProblem:
    """A fiber objective as a pymanopt problem.

    Parameters
    ----------
    data : SurfaceGroupData
        Rank, genus and puncture classes
    target : AlcovePoint or None
        Fiber value ``exp(target)``; None means the identity
    symmetric : bool, default False
        Add the fixed-point penalty of the involution
    """

    def __init__(self, data: SurfaceGroupData, target: AlcovePoint | None, symmetric: bool = False):
        self.data = data
        self.objective = build_objective(data, target, symmetric)
        self.diagonals = [spec.representative() for spec in data.classes]
        self.group = UnitaryGroup(data.n)
        self.manifold = Product([self.group] * (2 * data.genus + data.l))

        @pymanopt.function.numpy(self.manifold)
        def cost(*point):
            return evaluate(self.objective, self.variables(point))

        @pymanopt.function.numpy(self.manifold)
        def gradient(*point):
            return self._chain_rule(point, euclidean_gradient(self.objective, self.variables(point)))

        self.problem = pymanopt.Problem(self.manifold, cost, euclidean_gradient=gradient)

    @property
    def handles(self) -> int:
        return self.objective.handles

    def variables(self, point: Sequence[np.ndarray]) -> list[np.ndarray]:
        """Handles followed by the punctures ``k_j D_j k_j^dag``."""
        g2 = self.handles
        punctures = [k @ d @ dagger(k) for k, d in zip(point[g2:], self.diagonals, strict=True)]
        return [*point[:g2], *punctures]

    def _chain_rule(self, point: Sequence[np.ndarray], gradients: list[np.ndarray]) -> list[np.ndarray]:
        # d(k D k^dag) = dk D k^dag + k D dk^dag.
        g2 = self.handles
        frames = [
            e @ k @ dagger(d) + dagger(e) @ k @ d
            for e, k, d in zip(gradients[g2:], point[g2:], self.diagonals, strict=True)
        ]
        return [*gradients[:g2], *frames]

    def terms(self, point: Sequence[np.ndarray]) -> dict[str, float]:
        return term_values(self.objective, self.variables(point))

    def point_of(self, cfg: Configuration) -> list[np.ndarray]:
        """Optimization point whose variables reproduce ``cfg``."""
        handles = [np.array(m, dtype=complex) for m in cfg.handles]
        return handles + frames_from_punctures(cfg.punctures, self.diagonals)

    def configuration(self, point: Sequence[np.ndarray]) -> Configuration:
        """Witness configuration with handles normalized into SU(n)."""
        g2 = self.handles
        variables = self.variables(point)
        handles = tuple(to_special(h) for h in variables[:g2])
        return Configuration(self.data, handles, tuple(variables[g2:]))


def objective_value_and_gradient(
    data: SurfaceGroupData, target: AlcovePoint, cfg: Configuration, symmetric: bool = False
) -> tuple[float, list[np.ndarray]]:
    """Objective value and the Riemannian gradient, one skew-Hermitian block per factor."""
    fiber = FiberProblem(data, target, symmetric)
    point = fiber.point_of(cfg)
    return float(fiber.problem.cost(point)), list(fiber.problem.riemannian_gradient(point))


def _random_skew(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z - dagger(z)) / 2


def gradient_check(
    data: SurfaceGroupData,
    target: AlcovePoint,
    cfg: Configuration,
    eps: float = 1e-6,
    directions: int = 8,
    seed: int = 0,
    symmetric: bool = False,
) -> float:
    """Compare the analytic gradient with central finite differences.

    For random unit directions ``H`` (one skew-Hermitian block per factor)
    the cost is evaluated at ``x exp(+-eps H)``. Returns the largest
    ``|finite difference - <grad, H>|`` divided by ``max(1, |<grad, H>|)``.

    Raises
    ------
    ValidationError
        If ``eps`` is outside ``(1e-8, 1e-3)``
    """
    if not 1e-8 < eps < 1e-3:
        raise ValidationError("eps must lie in (1e-8, 1e-3)", field="eps", value=eps)

    fiber = FiberProblem(data, target, symmetric)
    group, cost = fiber.group, fiber.problem.cost
    point = fiber.point_of(cfg)
    gradient = list(fiber.problem.riemannian_gradient(point))
    rng = rng_stream(seed, 11)

    worst = 0.0
    for _ in range(directions):
        direction = [_random_skew(data.n, rng) for _ in point]
        norm = np.sqrt(sum(group.norm(x, h) ** 2 for x, h in zip(point, direction, strict=True)))
        direction = [h / norm for h in direction]

        analytic = sum(group.inner_product(x, g, h) for x, g, h in zip(point, gradient, direction, strict=True))
        plus = [group.exp(x, eps * h) for x, h in zip(point, direction, strict=True)]
        minus = [group.exp(x, -eps * h) for x, h in zip(point, direction, strict=True)]
        numeric = (cost(plus) - cost(minus)) / (2 * eps)

        worst = max(worst, abs(numeric - analytic) / max(1.0, abs(analytic)))
    return float(worst)
