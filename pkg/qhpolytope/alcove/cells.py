"""Cells of the closed Weyl alcove and stabilizer dimensions."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..exceptions import InconsistentToleranceError, ValidationError
from ..logger import get_logger
from .types import AlcovePoint, CellSignature, RootIndex

logger = get_logger("alcove.cells")


def positive_roots(n: int) -> list[RootIndex]:
    """All positive roots of SU(n), ordered lexicographically."""
    if n < 2:
        raise ValidationError("SU(n) needs n >= 2", field="n", value=n)
    return [RootIndex(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def simple_roots(n: int) -> list[RootIndex]:
    return [RootIndex(i, i + 1) for i in range(1, n)]


def highest_root(n: int) -> RootIndex:
    # For n = 2 this is also the only simple root; the alcove wall is alpha = 1.
    return RootIndex(1, n)


def classify(x: AlcovePoint | Sequence[float], tol: float = 1e-8) -> CellSignature:
    """Return the cell signature of an alcove point.

    Roots within ``tol`` of 0 go to Z0 and roots within ``tol`` of 1 go to
    Z1. Near-equalities are closed transitively before the sets are built,
    so the result always satisfies the additive closure rules.

    Parameters
    ----------
    x : AlcovePoint or sequence of float
        Point to classify; raw sequences are validated at ``tol``
    tol : float, default 1e-8
        Snap tolerance

    Returns
    -------
    CellSignature

    Raises
    ------
    InconsistentToleranceError
        If a root value is within ``tol`` of both 0 and 1
    """
    point = x if isinstance(x, AlcovePoint) else AlcovePoint(tuple(x), tol=tol)
    coords = point.array
    n = point.n

    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for root in positive_roots(n):
        value = root.value(coords)
        near_zero = abs(value) <= tol
        near_one = abs(value - 1.0) <= tol
        if near_zero and near_one:
            raise InconsistentToleranceError(
                f"Root value {value} is within {tol} of both 0 and 1",
                root=(root.i, root.j),
                value=value,
                tol=tol,
            )
        if near_zero or near_one:
            parent[find(root.j - 1)] = find(root.i - 1)

    # Inside one coincidence class the coordinates sit near v or v - 1;
    # a gap above 1/2 between consecutive members starts the lower level.
    level = [0] * n
    classes: dict[int, list[int]] = {}
    for k in range(n):
        classes.setdefault(find(k), []).append(k)
    for members in classes.values():
        for prev, cur in zip(members, members[1:], strict=False):
            level[cur] = level[prev] + (1 if coords[prev] - coords[cur] > 0.5 else 0)

    z0: set[RootIndex] = set()
    z1: set[RootIndex] = set()
    for members in classes.values():
        for a_pos, a in enumerate(members):
            for b in members[a_pos + 1 :]:
                root = RootIndex(a + 1, b + 1)
                match level[b] - level[a]:
                    case 0:
                        z0.add(root)
                    case 1:
                        z1.add(root)
                    case _:
                        raise InconsistentToleranceError(
                            f"Snapping at tol={tol} merges coordinates more than one unit apart",
                            root=(root.i, root.j),
                            value=root.value(coords),
                            tol=tol,
                        )

    signature = CellSignature(frozenset(z0), frozenset(z1))
    logger.debug(f"classify n={n}: |Z0|={len(z0)}, |Z1|={len(z1)}")
    return signature


def stabilizer_dim(sig: CellSignature, n: int) -> int:
    """Dimension of the centralizer in SU(n) of any point of the cell.

    Parameters
    ----------
    sig : CellSignature
        Cell label
    n : int
        Matrix size

    Returns
    -------
    int
        ``(n - 1) + 2 * |Z0 u Z1|``
    """
    if n < 2:
        raise ValidationError("SU(n) needs n >= 2", field="n", value=n)
    return (n - 1) + 2 * len(sig.degenerate_roots)


def orbit_dim(sig: CellSignature, n: int) -> int:
    """Dimension of the conjugacy class labelled by the cell."""
    return (n * n - 1) - stabilizer_dim(sig, n)


def stabilizer_dim_from_blocks(blocks: Sequence[Sequence[int]]) -> int:
    """``sum m_k^2 - 1`` for the block type S(U(m_1) x ... x U(m_k))."""
    return int(np.sum([len(b) ** 2 for b in blocks])) - 1
