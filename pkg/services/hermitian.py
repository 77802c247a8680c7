"""Unitary geometry over GF(q^2) for the two small groups PSU_3(3) and PSU_4(2).

The Hermitian form is h(x, y) = sum x_i * y_i^q (identity Gram matrix).
Matrices act on column vectors; the permutation of a matrix product BA
(A applied first) is perm(A) * perm(B).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Sequence

from loguru import logger

from errors.errors import ErrBadRequest, ErrGeneration
from models.field import QuadraticField, build_field
from models.incidence import IncidenceStructure
from models.permutation import PermGroup, Permutation
from services.catalog import psu_order
from services.permgroup import StabilizerChain

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

SUPPORTED_POINTS = {(3, 2), (3, 3), (4, 2)}
SUPPORTED_GROUPS = {(3, 3), (4, 2)}


def _check(n: int, q: int, allowed: set[tuple[int, int]]) -> None:
    if (n, q) not in allowed:
        raise ErrBadRequest(f"unsupported unitary geometry (n={n}, q={q})")


@lru_cache
def field(q: int) -> QuadraticField:
    return build_field(q)


def hermitian_product(f: QuadraticField, x: Vector, y: Vector) -> int:
    total = 0
    for a, b in zip(x, y):
        total = f.add(total, f.mul(a, f.conj(b)))
    return total


def hermitian_norm(f: QuadraticField, x: Vector) -> int:
    return hermitian_product(f, x, x)


def normalize(f: QuadraticField, x: Vector) -> Vector:
    lead = next((c for c in x if c), None)
    if lead is None:
        raise ErrBadRequest("the zero vector is not a projective point")
    scale = f.inv(lead)
    return tuple(f.mul(scale, c) for c in x)


def projective_points(f: QuadraticField, n: int) -> list[Vector]:
    points = []
    for x in product(f.elements, repeat=n):
        if any(x) and next(c for c in x if c) == 1:
            points.append(tuple(x))
    return points


def point_orbits(n: int, q: int) -> tuple[list[Vector], list[Vector]]:
    _check(n, q, SUPPORTED_POINTS)
    f = field(q)
    isotropic, nonisotropic = [], []
    for x in projective_points(f, n):
        (isotropic if hermitian_norm(f, x) == 0 else nonisotropic).append(x)
    return isotropic, nonisotropic


def apply_matrix(f: QuadraticField, m: Matrix, x: Vector) -> Vector:
    result = []
    for row in m:
        total = 0
        for a, b in zip(row, x):
            total = f.add(total, f.mul(a, b))
        result.append(total)
    return tuple(result)


def determinant(f: QuadraticField, m: Matrix) -> int:
    rows = [list(r) for r in m]
    n = len(rows)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = f.neg(det)
        det = f.mul(det, rows[col][col])
        inv = f.inv(rows[col][col])
        for r in range(col + 1, n):
            factor = f.mul(rows[r][col], inv)
            if factor:
                rows[r] = [f.sub(rows[r][c], f.mul(factor, rows[col][c])) for c in range(n)]
    return det


def preserves_form(f: QuadraticField, m: Matrix) -> bool:
    n = len(m)
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    images = [apply_matrix(f, m, e) for e in basis]
    return all(
        hermitian_product(f, images[i], images[j]) == hermitian_product(f, basis[i], basis[j])
        for i in range(n)
        for j in range(n)
    )


def transvection(f: QuadraticField, v: Vector, c: int) -> Matrix:
    """x -> x + c*h(x, v)*v; unitary when v is isotropic and c has trace 0."""
    n = len(v)
    return tuple(
        tuple(f.add(int(i == j), f.mul(c, f.mul(v[i], f.conj(v[j])))) for j in range(n))
        for i in range(n)
    )


def _fallback_matrices(f: QuadraticField, n: int) -> list[Matrix]:
    extra = []
    minus_one = f.neg(1)
    for i, j in combinations(range(n), 2):
        rows = [[int(r == s) for s in range(n)] for r in range(n)]
        rows[i][i] = rows[j][j] = 0
        rows[j][i] = 1
        rows[i][j] = minus_one
        extra.append(tuple(tuple(r) for r in rows))
    for lam in f.elements:
        if lam and f.norm(lam) == 1 and lam != 1:
            rows = [[int(r == s) for s in range(n)] for r in range(n)]
            rows[0][0] = lam
            rows[1][1] = f.inv(lam)
            extra.append(tuple(tuple(r) for r in rows))
    return extra


def matrix_permutation(f: QuadraticField, m: Matrix, points: Sequence[Vector]) -> Permutation:
    index = {x: i for i, x in enumerate(points)}
    return Permutation(tuple(index[normalize(f, apply_matrix(f, m, x))] for x in points))


@lru_cache
def su_generators(n: int, q: int) -> tuple[Matrix, ...]:
    """Transvections added greedily until their image on isotropic points has order |PSU_n(q)|."""
    _check(n, q, SUPPORTED_GROUPS)
    f = field(q)
    target = psu_order(n, q)
    isotropic, _ = point_orbits(n, q)
    trace_zero = [c for c in f.elements if c and f.trace(c) == 0]
    candidates = [transvection(f, v, c) for v in isotropic for c in trace_zero]
    candidates += _fallback_matrices(f, n)
    chain = StabilizerChain(len(isotropic), order_limit=target)
    chosen: list[Matrix] = []
    for m in candidates:
        if determinant(f, m) != 1 or not preserves_form(f, m):
            continue
        if chain.add_generator(matrix_permutation(f, m, isotropic).images):
            chosen.append(m)
        if chain.order() == target:
            logger.debug(
                "PSU_{}({}) - Service - {} generators reach order {}", n, q, len(chosen), target
            )
            return tuple(chosen)
    raise ErrGeneration(
        f"generators of PSU_{n}({q}) reach order {chain.order()}, expected {target}",
        achieved_order=chain.order(),
    )


def group_name(n: int, q: int) -> str:
    return f"PSU_{n}({q})"


def _matrix_group(n: int, q: int, objects: Sequence, act) -> PermGroup:
    f = field(q)
    gens = su_generators(n, q)
    index = {obj: i for i, obj in enumerate(objects)}
    images = tuple(
        Permutation(tuple(index[act(f, m, obj)] for obj in objects)) for m in gens
    )
    return PermGroup(len(objects), images, group_name(n, q))


def _act_on_point(f: QuadraticField, m: Matrix, x: Vector) -> Vector:
    return normalize(f, apply_matrix(f, m, x))


def _act_on_frame(f: QuadraticField, m: Matrix, frame: tuple[Vector, ...]) -> tuple[Vector, ...]:
    return tuple(sorted(_act_on_point(f, m, x) for x in frame))


def _conjugate_point(f: QuadraticField, x: Vector) -> Vector:
    return normalize(f, tuple(f.conj(c) for c in x))


def _conjugate_frame(f: QuadraticField, frame: tuple[Vector, ...]) -> tuple[Vector, ...]:
    return tuple(sorted(_conjugate_point(f, x) for x in frame))


def natural_actions(n: int, q: int) -> list[tuple[int, PermGroup]]:
    isotropic, nonisotropic = point_orbits(n, q)
    return [
        (len(isotropic), _matrix_group(n, q, isotropic, _act_on_point)),
        (len(nonisotropic), _matrix_group(n, q, nonisotropic, _act_on_point)),
    ]


def frames(n: int, q: int) -> list[tuple[Vector, ...]]:
    """Unordered sets of n mutually orthogonal nonisotropic points."""
    f = field(q)
    _, nonisotropic = point_orbits(n, q)
    found = set()

    def extend(chosen: list[Vector], start: int) -> None:
        if len(chosen) == n:
            found.add(tuple(sorted(chosen)))
            return
        for i in range(start, len(nonisotropic)):
            x = nonisotropic[i]
            if all(hermitian_product(f, x, y) == 0 for y in chosen):
                extend(chosen + [x], i + 1)

    extend([], 0)
    return sorted(found)


def frame_action(n: int, q: int) -> tuple[int, PermGroup]:
    objects = frames(n, q)
    return len(objects), _matrix_group(n, q, objects, _act_on_frame)


def _domain(n: int, q: int, kind: str) -> tuple[list, Callable, Callable]:
    isotropic, nonisotropic = point_orbits(n, q)
    match kind:
        case "isotropic":
            return isotropic, _act_on_point, _conjugate_point
        case "nonisotropic":
            return nonisotropic, _act_on_point, _conjugate_point
        case "frames":
            return frames(n, q), _act_on_frame, _conjugate_frame
    raise ErrBadRequest(f"unknown unitary domain {kind!r}")


def field_automorphism(n: int, q: int, kind: str) -> Permutation:
    """x -> x^q coordinatewise; it maps the form to its q-th power, so it permutes each domain."""
    objects, _, conjugate = _domain(n, q, kind)
    f = field(q)
    index = {obj: i for i, obj in enumerate(objects)}
    return Permutation(tuple(index[conjugate(f, obj)] for obj in objects))


def extended_action(n: int, q: int, kind: str) -> PermGroup:
    """PSU_n(q):2 on one domain, labelled as in natural_actions and frame_action."""
    objects, act, _ = _domain(n, q, kind)
    g = _matrix_group(n, q, objects, act)
    sigma = field_automorphism(n, q, kind)
    return PermGroup(g.degree, g.generators + (sigma,), f"{g.name}:2")


def combined_action(n: int, q: int) -> tuple[int, PermGroup]:
    """Nonisotropic points (first) and frames (after) as one permutation domain."""
    _, nonisotropic = point_orbits(n, q)
    objects: list = [("point", x) for x in nonisotropic] + [("frame", fr) for fr in frames(n, q)]

    def act(f: QuadraticField, m: Matrix, obj):
        kind, value = obj
        if kind == "point":
            return kind, _act_on_point(f, m, value)
        return kind, _act_on_frame(f, m, value)

    return len(nonisotropic), _matrix_group(n, q, objects, act)


def pg3_design(q: int = 3) -> IncidenceStructure:
    """Points and hyperplanes of PG(3, q), q prime, incidence by containment."""
    if q != 3:
        raise ErrBadRequest("only PG(3,3) is supported")
    points = [
        x for x in product(range(q), repeat=4) if any(x) and next(c for c in x if c) == 1
    ]
    blocks = [
        [i for i, x in enumerate(points) if sum(a * b for a, b in zip(h, x)) % q == 0]
        for h in points
    ]
    return IncidenceStructure.from_blocks(len(points), blocks)
