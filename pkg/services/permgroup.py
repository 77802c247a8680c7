"""Permutation-group engine: stabilizer chains, orbits, primitivity, coset actions.

Internally permutations are plain tuples of 0-based images and `a * b` means
"apply a, then b". `models.permutation.Permutation` wraps them at the edges.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Hashable, Iterable, Sequence

from loguru import logger

from configs.Environment import get_environment_variables
from errors.errors import (
    ErrBadRequest,
    ErrNotSubgroup,
    ErrResourceGuard,
    ErrSubgroupNotFound,
)
from models.permutation import ActionHomomorphism, PermGroup, Permutation

Perm = tuple[int, ...]

RANDOM_PHASE_ROUNDS = 24
REPLACEMENT_SLOTS = 10
SCRAMBLE_STEPS = 60


def _mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def _inv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def _identity(degree: int) -> Perm:
    return tuple(range(degree))


def _is_identity(p: Perm) -> bool:
    return all(i == image for i, image in enumerate(p))


class StabilizerChain:
    """One level of a stabilizer chain; `stab` is the chain of the point stabilizer.

    Every call to `add_generator` leaves the chain complete for the group
    generated so far: new strong generators trigger a full sweep of their
    Schreier generators into the next level.
    """

    def __init__(self, degree: int, order_limit: int, base: Sequence[int] = ()):
        self.degree = degree
        self.order_limit = order_limit
        self.basepoint: int | None = None
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {}
        self.inverse_transversal: dict[int, Perm] = {}
        self.stab: StabilizerChain | None = None
        if base:
            self._open_level(base[0], base[1:])

    def _open_level(self, point: int, rest: Sequence[int] = ()) -> None:
        self.basepoint = point
        identity = _identity(self.degree)
        self.transversal = {point: identity}
        self.inverse_transversal = {point: identity}
        self.stab = StabilizerChain(self.degree, self.order_limit, rest)

    @property
    def base(self) -> list[int]:
        level, base = self, []
        while level is not None and level.basepoint is not None:
            base.append(level.basepoint)
            level = level.stab
        return base

    def generators(self) -> list[Perm]:
        if self.stab is None:
            return list(self.gens)
        return self.stab.generators() + self.gens

    def order(self) -> int:
        if self.basepoint is None or self.stab is None:
            return 1
        return len(self.transversal) * self.stab.order()

    def orbit_lengths(self) -> list[int]:
        level, lengths = self, []
        while level is not None and level.basepoint is not None:
            lengths.append(len(level.transversal))
            level = level.stab
        return lengths

    def sift(self, p: Perm) -> Perm:
        level = self
        while level.basepoint is not None and level.stab is not None:
            beta = p[level.basepoint]
            if beta not in level.transversal:
                return p
            p = _mul(p, level.inverse_transversal[beta])
            level = level.stab
        return p

    def contains(self, p: Perm) -> bool:
        return _is_identity(self.sift(p))

    def add_generator(self, p: Perm) -> bool:
        """Extend the group by p; returns False when p was already a member."""
        residue = self.sift(p)
        if _is_identity(residue):
            return False
        self._add_nonmember(residue)
        return True

    def _add_nonmember(self, p: Perm) -> None:
        if self.basepoint is None:
            moved = next((i for i, image in enumerate(p) if i != image), None)
            if moved is None:
                return
            self._open_level(moved)
        if p[self.basepoint] == self.basepoint:
            self.stab._add_nonmember(p)
        else:
            self.gens.append(p)
        self._rebuild_transversal()
        if self.order() > self.order_limit:
            raise ErrResourceGuard(
                f"group order exceeds the limit {self.order_limit}"
            )
        self._add_schreier_generators()

    def _rebuild_transversal(self) -> None:
        gens = self.generators()
        identity = _identity(self.degree)
        transversal = {self.basepoint: identity}
        queue = deque([self.basepoint])
        while queue:
            beta = queue.popleft()
            u = transversal[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in transversal:
                    transversal[gamma] = _mul(u, s)
                    queue.append(gamma)
        self.transversal = transversal
        self.inverse_transversal = {beta: _inv(u) for beta, u in transversal.items()}

    def _add_schreier_generators(self) -> None:
        for s in self.generators():
            for beta in sorted(self.transversal):
                u = self.transversal[beta]
                schreier = _mul(_mul(u, s), self.inverse_transversal[s[beta]])
                if not _is_identity(schreier):
                    self.stab.add_generator(schreier)


class ProductReplacement:
    """Approximately uniform random elements by the rattle variant of product replacement."""

    def __init__(self, generators: Sequence[Perm], rng: random.Random):
        degree = len(generators[0])
        self.rng = rng
        self.reservoir: list[Perm] = [_identity(degree)] + list(generators)
        while len(self.reservoir) < REPLACEMENT_SLOTS:
            self.reservoir.append(generators[len(self.reservoir) % len(generators)])
        self.accumulator = _identity(degree)
        for _ in range(SCRAMBLE_STEPS):
            self.sample()

    def sample(self) -> Perm:
        i = self.rng.randrange(1, len(self.reservoir))
        j = self.rng.randrange(1, len(self.reservoir))
        p = self.reservoir[i]
        if self.rng.randrange(2):
            p = _inv(p)
        self.reservoir[0] = c = _mul(self.reservoir[0], p)
        if self.rng.randrange(2):
            c = _inv(c)
        if i != j:
            self.reservoir[j] = _mul(self.reservoir[j], c)
        self.accumulator = _mul(self.accumulator, self.reservoir[j])
        return self.accumulator


def _raw_generators(g: PermGroup) -> list[Perm]:
    gens = [p.images for p in g.nontrivial_generators]
    return gens or [_identity(g.degree)]


def build_chain(
    g: PermGroup,
    base: Sequence[int] = (),
    *,
    order_limit: int | None = None,
    seed: int = 0,
) -> StabilizerChain:
    """Random sifting phase followed by a deterministic pass over the generators."""
    settings = get_environment_variables()
    if g.degree > settings.DEGREE_LIMIT:
        raise ErrResourceGuard(f"degree {g.degree} exceeds {settings.DEGREE_LIMIT}")
    limit = order_limit if order_limit is not None else settings.ORDER_LIMIT
    chain = StabilizerChain(g.degree, limit, base)
    gens = _raw_generators(g)
    if any(not _is_identity(s) for s in gens):
        sampler = ProductReplacement(gens, random.Random(seed))
        stationary = 0
        while stationary < RANDOM_PHASE_ROUNDS:
            stationary = 0 if chain.add_generator(sampler.sample()) else stationary + 1
    for s in gens:
        chain.add_generator(s)
    logger.debug(
        "{} - Service - chain built: base {} orbit lengths {}",
        g.name or "group",
        chain.base,
        chain.orbit_lengths(),
    )
    return chain


def stabilizer_chain(g: PermGroup, *, seed: int = 0) -> StabilizerChain:
    if g.chain is None:
        chain = build_chain(g, seed=seed)
        g.attach_chain(chain, chain.order())
    return g.chain


def order(g: PermGroup) -> int:
    return stabilizer_chain(g).order()


def contains(g: PermGroup, p: Permutation) -> bool:
    if p.degree != g.degree:
        return False
    return stabilizer_chain(g).contains(p.images)


def orbit(g: PermGroup, point: int) -> set[int]:
    if not 0 <= point < g.degree:
        raise ErrBadRequest(f"point {point} outside 0..{g.degree - 1}")
    gens = _raw_generators(g)
    seen = {point}
    queue = deque([point])
    while queue:
        beta = queue.popleft()
        for s in gens:
            if s[beta] not in seen:
                seen.add(s[beta])
                queue.append(s[beta])
    return seen


def orbits(g: PermGroup) -> list[list[int]]:
    remaining = set(range(g.degree))
    partition = []
    while remaining:
        block = orbit(g, min(remaining))
        remaining -= block
        partition.append(sorted(block))
    return partition


def is_transitive(g: PermGroup) -> bool:
    return len(orbit(g, 0)) == g.degree


def _group_from_chain(chain: StabilizerChain, degree: int, name: str) -> PermGroup:
    gens = chain.generators()
    if not gens:
        group = PermGroup.trivial(degree, name)
    else:
        group = PermGroup(degree, tuple(Permutation(s) for s in gens), name)
    group.attach_chain(chain, chain.order())
    return group


def stabilizer(g: PermGroup, point: int) -> PermGroup:
    full = stabilizer_chain(g)
    chain = build_chain(g, base=[point], order_limit=full.order_limit)
    if chain.order() != full.order():
        raise ErrResourceGuard("stabilizer chain rebuild disagrees with the group order")
    name = f"{g.name}_{point}" if g.name else ""
    return _group_from_chain(chain.stab, g.degree, name)


def suborbits(g: PermGroup, point: int) -> list[tuple[int, int]]:
    if not is_transitive(g):
        raise ErrBadRequest("suborbits need a transitive group")
    h = stabilizer(g, point)
    return sorted(((block[0], len(block)) for block in orbits(h)), key=lambda x: (x[1], x[0]))


def minimal_block(g: PermGroup, alpha: int, beta: int) -> list[int]:
    """Finest invariant partition joining alpha and beta; returns the block of alpha."""
    gens = _raw_generators(g)
    parent = list(range(g.degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(beta)] = find(alpha)
    pending = [(alpha, beta)]
    while pending:
        a, b = pending.pop()
        for s in gens:
            x, y = find(s[a]), find(s[b])
            if x != y:
                parent[y] = x
                pending.append((x, y))
    root = find(alpha)
    return [x for x in range(g.degree) if find(x) == root]


def is_primitive(g: PermGroup) -> bool:
    if not is_transitive(g):
        raise ErrBadRequest("primitivity is only defined for transitive groups")
    if g.degree <= 2:
        return True
    # one representative per suborbit is enough
    candidates = [rep for rep, _ in suborbits(g, 0) if rep != 0]
    for beta in candidates:
        if len(minimal_block(g, 0, beta)) < g.degree:
            logger.debug("{} - Service - block through 0 and {} found", g.name, beta)
            return False
    return True


def action_on(
    g: PermGroup, objects: Sequence[Hashable], act
) -> ActionHomomorphism:
    """Action induced on a finite invariant list of objects by `act(object, perm)`."""
    index = {obj: i for i, obj in enumerate(objects)}
    images = []
    for gen in g.generators:
        try:
            images.append(Permutation(tuple(index[act(obj, gen)] for obj in objects)))
        except KeyError as e:
            raise ErrBadRequest("object set is not invariant under the group") from e
    return ActionHomomorphism(g, len(objects), tuple(images), tuple(objects))


def restrict(g: PermGroup, points: Iterable[int]) -> ActionHomomorphism:
    points = sorted(points)
    return action_on(g, points, lambda x, perm: perm(x))


def coset_action(g: PermGroup, h: PermGroup) -> ActionHomomorphism:
    """Action of g by right multiplication on the right cosets of h."""
    settings = get_environment_variables()
    if h.degree != g.degree:
        raise ErrNotSubgroup("subgroup acts on a different number of points")
    for gen in h.nontrivial_generators:
        if not contains(g, gen):
            raise ErrNotSubgroup(f"generator of {h.name or 'h'} is not in {g.name or 'g'}")
    index, remainder = divmod(order(g), order(h))
    if remainder:
        raise ErrNotSubgroup("subgroup order does not divide the group order")
    if index > settings.COSET_INDEX_LIMIT:
        raise ErrResourceGuard(f"coset index {index} exceeds {settings.COSET_INDEX_LIMIT}")
    h_chain = stabilizer_chain(h)
    reps: list[Perm] = [_identity(g.degree)]
    rep_inverses: list[Perm] = [reps[0]]
    gens = [gen.images for gen in g.generators]
    images = [[-1] * index for _ in gens]

    def locate(y: Perm) -> int:
        for j, r_inv in enumerate(rep_inverses):
            if h_chain.contains(_mul(y, r_inv)):
                return j
        return -1

    i = 0
    while i < len(reps):
        for gi, s in enumerate(gens):
            y = _mul(reps[i], s)
            j = locate(y)
            if j < 0:
                if len(reps) >= index:
                    raise ErrNotSubgroup("more cosets than the index allows")
                reps.append(y)
                rep_inverses.append(_inv(y))
                j = len(reps) - 1
            images[gi][i] = j
        i += 1
    if len(reps) != index:
        raise ErrNotSubgroup(f"found {len(reps)} cosets, expected {index}")
    hom = ActionHomomorphism(
        g,
        index,
        tuple(Permutation(tuple(row)) for row in images),
        tuple(Permutation(r) for r in reps),
    )
    image_order = order(hom.image)
    if order(g) % image_order:
        raise ErrNotSubgroup("coset action image order does not divide the group order")
    logger.debug(
        "{} - Service - coset action of degree {} with image order {}",
        g.name,
        index,
        image_order,
    )
    return hom


def enumerate_elements(g: PermGroup, limit: int = 10**6) -> list[Permutation]:
    gens = _raw_generators(g)
    identity = _identity(g.degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for s in gens:
            q = _mul(p, s)
            if q not in seen:
                seen.add(q)
                if len(seen) > limit:
                    raise ErrResourceGuard(f"more than {limit} elements")
                queue.append(q)
    return [Permutation(p) for p in sorted(seen)]


def element_order(p: Permutation) -> int:
    return p.order()


def spectrum(g: PermGroup) -> set[int]:
    return {p.order() for p in enumerate_elements(g)}


def random_elements(g: PermGroup, rng: random.Random, count: int) -> list[Permutation]:
    sampler = ProductReplacement(_raw_generators(g), rng)
    return [Permutation(sampler.sample()) for _ in range(count)]


def find_subgroup(
    g: PermGroup,
    target_order: int,
    spectrum_hint: set[int] | None = None,
    seed: int = 0,
    attempts: int | None = None,
) -> PermGroup:
    """Search two-generated subgroups of the requested order.

    Best effort: ErrSubgroupNotFound after the attempt budget says nothing
    about existence.
    """
    settings = get_environment_variables()
    attempts = attempts if attempts is not None else settings.SUBGROUP_ATTEMPTS
    group_order = order(g)
    if group_order % target_order:
        raise ErrBadRequest(f"{target_order} does not divide {group_order}")
    if target_order == group_order:
        return g
    rng = random.Random(seed)
    sampler = ProductReplacement(_raw_generators(g), rng)
    allowed = set(spectrum_hint or ()) - {1}

    def draw() -> Perm:
        while True:
            x = sampler.sample()
            if not allowed or Permutation(x).order() in allowed:
                return x

    for attempt in range(attempts):
        x, y = draw(), draw()
        candidate = PermGroup(g.degree, (Permutation(x), Permutation(y)), f"{g.name}<{target_order}>")
        try:
            chain = build_chain(candidate, order_limit=target_order, seed=seed + attempt)
        except ErrResourceGuard:
            continue
        if chain.order() != target_order:
            continue
        candidate.attach_chain(chain, target_order)
        if spectrum_hint is not None and spectrum(candidate) != set(spectrum_hint):
            continue
        logger.debug(
            "{} - Service - subgroup of order {} found after {} attempts",
            g.name,
            target_order,
            attempt + 1,
        )
        return candidate
    raise ErrSubgroupNotFound(
        f"no subgroup of order {target_order} in {g.name or 'group'} after {attempts} attempts"
    )
