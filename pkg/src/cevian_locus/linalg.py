"""Small exact linear algebra over :class:`Scalar` (vectors are tuples, matrices tuples of rows)."""
from __future__ import annotations

from typing import Sequence

from .field import ONE, ZERO, Scalar

Vec = tuple
Mat = tuple


def vec(*xs) -> Vec:
    return tuple(Scalar.of(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(tuple(Scalar.of(x) for x in row) for row in rows)


def dot(u: Sequence, v: Sequence) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def cross(u: Sequence, v: Sequence) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def is_zero(v: Sequence) -> bool:
    return not any(v)


def scale(c, v: Sequence) -> Vec:
    return tuple(c * x for x in v)


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def identity(n: int = 3) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def mat_vec(m: Mat, v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_scale(c, m: Mat) -> Mat:
    return tuple(tuple(c * x for x in row) for row in m)


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def det3(m: Mat) -> Scalar:
    return dot(m[0], cross(m[1], m[2]))


def adj3(m: Mat) -> Mat:
    """Adjugate: ``adj3(m) @ m == det3(m) * I``."""
    c0, c1, c2 = cross(m[1], m[2]), cross(m[2], m[0]), cross(m[0], m[1])
    # columns of the adjugate are these cross products
    return transpose((c0, c1, c2))


def inv3(m: Mat) -> Mat:
    det = det3(m)
    if not det:
        raise ZeroDivisionError("singular matrix")
    return mat_scale(ONE / det, adj3(m))


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of the right null space, by exact Gauss-Jordan elimination."""
    m = [list(map(Scalar.of, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis


def solve(m: Mat, b: Sequence) -> Vec:
    """Solve the square system ``m x = b`` (3x3 only)."""
    return mat_vec(inv3(m), b)
