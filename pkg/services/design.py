"""Symmetric designs: verification, orbit construction, flag-transitivity, isomorphism."""
from __future__ import annotations

import hashlib
from collections import Counter, defaultdict, deque
from itertools import combinations
from typing import Hashable, Iterable

import networkx as nx
from loguru import logger

from configs.Environment import get_environment_variables
from errors.errors import ErrResourceGuard, ErrVerification
from models.incidence import IncidenceStructure
from models.permutation import PermGroup
from schemas.design import DesignParams
from services.permgroup import orbits

Block = tuple[int, ...]


def verify_symmetric(d: IncidenceStructure) -> DesignParams:
    """(v, k, lambda) of `d`, or ErrVerification naming the first broken axiom.

    Witnesses use 1-based points and 0-based block indices.
    """
    v = d.v
    if d.b != v:
        raise ErrVerification(f"{d.b} blocks on {v} points", witness={"blocks": d.b})
    if v < 2 or not d.blocks:
        raise ErrVerification("degenerate structure", witness={"v": v})
    k = len(d.blocks[0])
    for index, block in enumerate(d.blocks):
        if len(block) != k:
            raise ErrVerification(
                f"block {index} has size {len(block)}, expected {k}",
                witness={"block": index, "size": len(block)},
            )
    for point, r in enumerate(d.replication()):
        if r != k:
            raise ErrVerification(
                f"point {point + 1} lies on {r} blocks, expected {k}",
                witness={"point": point + 1, "replication": r},
            )
    coverage = Counter(pair for block in d.blocks for pair in combinations(block, 2))
    lam = coverage.get((0, 1), 0)
    for x, y in combinations(range(v), 2):
        if coverage.get((x, y), 0) != lam:
            raise ErrVerification(
                f"points {x + 1},{y + 1} lie on {coverage.get((x, y), 0)} blocks, expected {lam}",
                witness={"pair": [x + 1, y + 1], "count": coverage.get((x, y), 0)},
            )
    sets = d.block_sets()
    for i, j in combinations(range(v), 2):
        meet = len(sets[i] & sets[j])
        if meet != lam:
            raise ErrVerification(
                f"blocks {i},{j} meet in {meet} points, expected {lam}",
                witness={"blocks": [i, j], "intersection": meet},
            )
    if lam < 1:
        raise ErrVerification("lambda must be positive", witness={"lambda": lam})
    return DesignParams(v=v, k=k, lam=lam)


def complement(d: IncidenceStructure) -> IncidenceStructure:
    points = set(range(d.v))
    return IncidenceStructure.from_blocks(d.v, (points - set(block) for block in d.blocks))


def dual(d: IncidenceStructure) -> IncidenceStructure:
    """Blocks become points; point x becomes the block of blocks through x."""
    through: list[list[int]] = [[] for _ in range(d.v)]
    for index, block in enumerate(d.blocks):
        for point in block:
            through[point].append(index)
    return IncidenceStructure.from_blocks(d.b, through)


def canonical_blocks(d: IncidenceStructure) -> tuple[Block, ...]:
    return tuple(sorted(d.blocks))


def _image(block: Iterable[int], perm: tuple[int, ...]) -> Block:
    return tuple(sorted(perm[x] for x in block))


def _block_orbit(action: PermGroup, block: Block, limit: int) -> list[Block] | None:
    gens = [g.images for g in action.nontrivial_generators]
    seen = {block}
    order = [block]
    queue = deque([block])
    while queue:
        current = queue.popleft()
        for s in gens:
            image = _image(current, s)
            if image not in seen:
                if len(seen) >= limit:
                    return None
                seen.add(image)
                order.append(image)
                queue.append(image)
    return order


def from_base_block(action: PermGroup, block: Iterable[int]) -> IncidenceStructure:
    base = tuple(sorted(set(block)))
    orbit = _block_orbit(action, base, action.degree)
    if orbit is None or len(orbit) != action.degree:
        length = len(orbit) if orbit is not None else f"more than {action.degree}"
        raise ErrVerification(
            f"block orbit has length {length}, expected {action.degree}",
            witness={"base_block": [x + 1 for x in base]},
        )
    return IncidenceStructure(action.degree, tuple(sorted(orbit)))


def _orbit_unions(orbits: list[list[int]], k: int) -> Iterable[Block]:
    def extend(index: int, chosen: list[int], size: int):
        if size == k:
            yield tuple(sorted(chosen))
            return
        if index == len(orbits) or size > k:
            return
        yield from extend(index + 1, chosen + orbits[index], size + len(orbits[index]))
        yield from extend(index + 1, chosen, size)

    yield from extend(0, [], 0)


def find_base_blocks(action: PermGroup, helper: PermGroup, k: int) -> list[IncidenceStructure]:
    """Designs whose blocks form one orbit and whose base block is a union of helper orbits."""
    v = action.degree
    if not 2 < k < v - 1:
        return []
    found: dict[tuple[Block, ...], IncidenceStructure] = {}
    helper_orbits = orbits(helper)
    for base in _orbit_unions(helper_orbits, k):
        orbit = _block_orbit(action, base, v)
        if orbit is None or len(orbit) != v:
            continue
        d = IncidenceStructure(v, tuple(sorted(orbit)))
        try:
            verify_symmetric(d)
        except ErrVerification:
            continue
        found.setdefault(d.blocks, d)
    logger.debug(
        "{} - Service - {} helper orbits, {} designs with k={}",
        action.name or "action",
        len(helper_orbits),
        len(found),
        k,
    )
    return list(found.values())


def _block_indices(d: IncidenceStructure) -> dict[Block, int]:
    return {block: i for i, block in enumerate(d.blocks)}


def block_permutation(d: IncidenceStructure, perm: tuple[int, ...]) -> list[int]:
    index = _block_indices(d)
    images = []
    for i, block in enumerate(d.blocks):
        image = _image(block, perm)
        if image not in index:
            raise ErrVerification(
                f"block {i} is not mapped to a block",
                witness={"block": i, "image": [x + 1 for x in image]},
            )
        images.append(index[image])
    return images


def flag_transitive(d: IncidenceStructure, g: PermGroup) -> bool:
    if g.degree != d.v:
        raise ErrVerification(
            f"group acts on {g.degree} points, design has {d.v}", witness={"degree": g.degree}
        )
    moves = []
    for number, gen in enumerate(g.generators):
        try:
            moves.append((gen.images, block_permutation(d, gen.images)))
        except ErrVerification as e:
            raise ErrVerification(f"generator {number} is not an automorphism: {e}", e.witness) from e
    flags = {(x, i) for i, block in enumerate(d.blocks) for x in block}
    if not flags:
        return False
    start = min(flags)
    seen = {start}
    queue = deque([start])
    while queue:
        x, i = queue.popleft()
        for points, blocks in moves:
            image = (points[x], blocks[i])
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen) == len(flags)


def acting_group(d: IncidenceStructure, *groups: PermGroup | None) -> PermGroup | None:
    """The first of `groups` that acts flag-transitively on `d`; None entries are skipped."""
    for g in groups:
        if g is None:
            continue
        try:
            if flag_transitive(d, g):
                return g
        except ErrVerification:
            logger.debug("Design - Service - {} does not preserve the design", g.name)
    return None


def block_fingerprint(d: IncidenceStructure) -> str:
    """Digest of the multiset of triple block intersections."""
    sets = d.block_sets()
    counts = Counter(len(a & b & c) for a, b, c in combinations(sets, 3))
    text = ",".join(f"{size}:{counts[size]}" for size in sorted(counts))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _node_labels(d: IncidenceStructure) -> tuple[list[tuple], list[tuple]]:
    sets = d.block_sets()
    block_labels = []
    for i, a in enumerate(sets):
        counts = Counter(len(a & b & c) for b, c in combinations(sets[:i] + sets[i + 1 :], 2))
        block_labels.append(tuple(sorted(counts.items())))
    through = dual(d).block_sets()
    point_labels = []
    for x, a in enumerate(through):
        counts = Counter(len(a & b & c) for b, c in combinations(through[:x] + through[x + 1 :], 2))
        point_labels.append(tuple(sorted(counts.items())))
    return point_labels, block_labels


def incidence_graph(d: IncidenceStructure) -> nx.Graph:
    point_labels, block_labels = _node_labels(d)
    graph = nx.Graph()
    graph.add_nodes_from((("p", x), {"label": ("p", point_labels[x])}) for x in range(d.v))
    graph.add_nodes_from((("b", i), {"label": ("b", block_labels[i])}) for i in range(d.b))
    graph.add_edges_from((("p", x), ("b", i)) for i, block in enumerate(d.blocks) for x in block)
    return graph


Colouring = dict[Hashable, int]


def _rank(signatures: list[dict[Hashable, Hashable]]) -> list[Colouring]:
    """Renames signatures to integers shared by every graph in the list."""
    ranks = {s: i for i, s in enumerate(sorted({s for sig in signatures for s in sig.values()}))}
    return [{node: ranks[s] for node, s in sig.items()} for sig in signatures]


def refine(graphs: list[nx.Graph], colourings: list[Colouring]) -> list[Colouring]:
    """Joint colour refinement until the partition of all nodes is stable."""
    count = len({c for colouring in colourings for c in colouring.values()})
    while True:
        refined = _rank(
            [
                {node: (col[node], tuple(sorted(col[n] for n in g.adj[node]))) for node in g}
                for g, col in zip(graphs, colourings)
            ]
        )
        new_count = len({c for colouring in refined for c in colouring.values()})
        if new_count == count:
            return refined
        colourings, count = refined, new_count


class IndividualizationSearch:
    """Isomorphism by individualization and refinement, giving up after `budget` nodes."""

    def __init__(self, g1: nx.Graph, g2: nx.Graph, budget: int):
        self.g1 = g1
        self.g2 = g2
        self.budget = budget
        self.visited = 0
        self._edges = list(g1.edges)

    def run(self) -> dict | None:
        if self.g1.number_of_edges() != self.g2.number_of_edges():
            return None
        c1, c2 = _rank([dict(g.nodes(data="label")) for g in (self.g1, self.g2)])
        return self._search(c1, c2)

    def _search(self, c1: Colouring, c2: Colouring) -> dict | None:
        self.visited += 1
        if self.visited > self.budget:
            raise ErrResourceGuard(f"isomorphism search exceeded {self.budget} nodes")
        c1, c2 = refine([self.g1, self.g2], [c1, c2])
        if Counter(c1.values()) != Counter(c2.values()):
            return None
        cells: dict[int, list] = defaultdict(list)
        for node in sorted(c1):
            cells[c1[node]].append(node)
        open_cells = [cell for cell in cells.values() if len(cell) > 1]
        if not open_cells:
            target = {colour: node for node, colour in c2.items()}
            mapping = {node: target[colour] for node, colour in c1.items()}
            if all(self.g2.has_edge(mapping[a], mapping[b]) for a, b in self._edges):
                return mapping
            return None
        u = min(open_cells, key=len)[0]
        fresh = len(cells)
        for w in sorted(node for node, colour in c2.items() if colour == c1[u]):
            found = self._search({**c1, u: fresh}, {**c2, w: fresh})
            if found is not None:
                return found
        return None


def isomorphic(
    d1: IncidenceStructure,
    d2: IncidenceStructure,
    budget: int | None = None,
) -> tuple[bool, list[int] | None]:
    """Returns (True, point map d1 -> d2) or (False, None)."""
    if d1.v != d2.v or d1.b != d2.b or d1.block_sizes != d2.block_sizes:
        return False, None
    if canonical_blocks(d1) == canonical_blocks(d2):
        return True, list(range(d1.v))
    if block_fingerprint(d1) != block_fingerprint(d2):
        return False, None
    budget = budget or get_environment_variables().ISOMORPHISM_NODE_BUDGET
    search = IndividualizationSearch(incidence_graph(d1), incidence_graph(d2), budget)
    mapping = search.run()
    logger.debug("Design - Service - isomorphism search visited {} nodes", search.visited)
    if mapping is None:
        return False, None
    witness = [0] * d1.v
    for (kind, a), (_, b) in mapping.items():
        if kind == "p":
            witness[a] = b
    return True, witness
