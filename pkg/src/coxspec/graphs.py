"""Finite simple graphs: ingestion, bipartition, spectra, index and
principal eigenvector, Dynkin/extended-Dynkin recognition, star shapes.

Graphs are immutable after construction.  Vertex order is first-appearance
order from the input and is never silently reordered; the bipartition
object carries the odd-block-first view needed by the reflection calculus.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import jacobi_eigenvalues, power_iteration
from .errors import (
    ConvergenceError,
    DomainError,
    InternalConsistencyError,
    NotBipartiteError,
    NotStarShapedError,
)
from .rho import canonical_branches

__all__ = [
    "Bipartition",
    "Graph",
    "SmithClass",
    "SpectralResult",
    "TAG_DYNKIN",
    "TAG_EXTENDED",
    "TAG_OTHER",
    "ade_names",
    "bipartition",
    "dynkin",
    "full_spectrum",
    "index_and_principal",
    "make_cycle",
    "make_path",
    "make_star",
    "parse_graph",
    "smith_classify",
    "star_branches",
]


def _check_label(label) -> str:
    if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
        raise DomainError(f"vertex labels must be nonempty tokens without whitespace, got {label!r}")
    return label


class Graph:
    """Finite simple undirected graph with labeled vertices.

    No loops, no multiple edges; adjacency is symmetric 0/1 with zero
    diagonal.  Instances are immutable and safe to share across threads.
    """

    __slots__ = ("vertices", "edges", "_index", "_neighbors", "_adjacency")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]]):
        vs = tuple(_check_label(v) for v in vertices)
        if not vs:
            raise DomainError("graph needs at least one vertex")
        index = {}
        for v in vs:
            if v in index:
                raise DomainError(f"duplicate vertex label {v!r}")
            index[v] = len(index)
        edge_set = set()
        for e in edges:
            u, w = e
            if u not in index or w not in index:
                raise DomainError(f"edge ({u!r}, {w!r}) uses an unknown vertex")
            if u == w:
                raise DomainError(f"loop edge at {u!r} not allowed")
            i, j = index[u], index[w]
            edge_set.add((min(i, j), max(i, j)))
        nbrs = [[] for _ in vs]
        for i, j in sorted(edge_set):
            nbrs[i].append(j)
            nbrs[j].append(i)
        self.vertices = vs
        self.edges = tuple((vs[i], vs[j]) for i, j in sorted(edge_set))
        self._index = index
        self._neighbors = tuple(tuple(sorted(ns)) for ns in nbrs)
        self._adjacency = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown vertex {label!r}") from None

    def neighbor_indices(self, i: int) -> tuple:
        return self._neighbors[i]

    def neighbors(self, label: str) -> tuple:
        return tuple(self.vertices[j] for j in self._neighbors[self.index(label)])

    def degree(self, label: str) -> int:
        return len(self._neighbors[self.index(label)])

    def adjacency(self) -> np.ndarray:
        """Symmetric 0/1 adjacency matrix in vertex order (read-only view)."""
        if self._adjacency is None:
            a = np.zeros((self.n, self.n), dtype=float)
            for i, ns in enumerate(self._neighbors):
                for j in ns:
                    a[i, j] = 1.0
            a.setflags(write=False)
            self._adjacency = a
        return self._adjacency

    def is_connected(self) -> bool:
        return len(self.component_of(0)) == self.n

    def component_of(self, start: int) -> list:
        seen = [False] * self.n
        seen[start] = True
        queue = deque([start])
        out = []
        while queue:
            i = queue.popleft()
            out.append(i)
            for j in self._neighbors[i]:
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
        return out

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == self.n - 1

    # -- serialization -----------------------------------------------------

    def to_edge_text(self) -> str:
        # label-lexicographic order: stable under a parse/emit round trip,
        # which renumbers vertices by first appearance
        pairs = sorted(tuple(sorted(e)) for e in self.edges)
        return "".join(f"{u} {w}\n" for u, w in pairs)

    def to_json_obj(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, w] for u, w in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Graph":
        if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
            raise DomainError('graph JSON must be {"vertices": [...], "edges": [[u, v], ...]}')
        edges = obj["edges"]
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise DomainError(f"malformed edge entry {e!r}")
        return cls(obj["vertices"], edges)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from None
        return cls.from_json_obj(obj)


def parse_graph(text: str) -> Graph:
    """Edge-list document: one "u v" pair per line, '#' starts a comment,
    blank lines ignored, duplicate edges collapsed.  Vertices appear in
    first-appearance order."""
    vertices: list = []
    seen = set()
    edges = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise DomainError(f"line {ln}: expected two vertex tokens, got {raw!r}")
        u, w = tokens
        if u == w:
            raise DomainError(f"line {ln}: loop edge {u!r} not allowed")
        for t in (u, w):
            if t not in seen:
                seen.add(t)
                vertices.append(t)
        edges.append((u, w))
    if not vertices:
        raise DomainError("empty graph document")
    return Graph(vertices, edges)


# --------------------------------------------------------------------------
# Builders


def make_star(branches: Sequence[int]) -> Graph:
    """Star-shaped tree: one center joined to chains of the given lengths.

    Branch vertex labels are "b<k>.<i>" with i = 1 at the leaf end; the
    center is labeled "c" and listed last, so a branch vector (1,1,1,1)
    yields the 5-vertex star with the center in final position.  With one
    or two branches the result degenerates to a path.
    """
    v = canonical_branches(branches)
    vertices = [f"b{k}.{i}" for k, n in enumerate(v, start=1) for i in range(1, n + 1)]
    vertices.append("c")
    edges = []
    for k, n in enumerate(v, start=1):
        for i in range(1, n):
            edges.append((f"b{k}.{i}", f"b{k}.{i + 1}"))
        edges.append((f"b{k}.{n}", "c"))
    return Graph(vertices, edges)


def make_path(n: int) -> Graph:
    if n < 1:
        raise DomainError("path needs at least one vertex")
    vertices = [f"p{i}" for i in range(1, n + 1)]
    return Graph(vertices, [(vertices[i], vertices[i + 1]) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs at least three vertices")
    vertices = [f"c{i}" for i in range(1, n + 1)]
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    return Graph(vertices, edges)


def _make_double_fork(n: int) -> Graph:
    """Tree with two degree-3 vertices: a central path with two pendant
    leaves at each end.  n is the subscript; the graph has n + 1 vertices."""
    mid = n - 3  # central path length, >= 1 for n >= 4; n == 4 handled by the star
    path = [f"p{i}" for i in range(1, mid + 1)]
    vertices = ["a1", "a2"] + path + ["z1", "z2"]
    edges = [("a1", path[0]), ("a2", path[0]), ("z1", path[-1]), ("z2", path[-1])]
    edges += [(path[i], path[i + 1]) for i in range(mid - 1)]
    return Graph(vertices, edges)


def dynkin(name: str) -> Graph:
    """Build an ADE or extended ADE graph by name: "A5", "D6", "E7", and
    the extended variants "~A3", "~D4", "~E8"."""
    if not isinstance(name, str) or len(name) < 2:
        raise DomainError(f"unknown graph name {name!r}")
    extended = name.startswith("~")
    body = name[1:] if extended else name
    family, digits = body[0], body[1:]
    if family not in "ADE" or not digits.isdigit():
        raise DomainError(f"unknown graph name {name!r}")
    k = int(digits)
    if not extended:
        if family == "A" and k >= 1:
            return make_path(k)
        if family == "D" and k >= 4:
            return make_star((1, 1, k - 3))
        if family == "E" and k in (6, 7, 8):
            return make_star({6: (1, 2, 2), 7: (1, 2, 3), 8: (1, 2, 4)}[k])
    else:
        if family == "A" and k >= 2:
            return make_cycle(k + 1)
        if family == "D" and k == 4:
            return make_star((1, 1, 1, 1))
        if family == "D" and k >= 5:
            return _make_double_fork(k)
        if family == "E" and k in (6, 7, 8):
            return make_star({6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[k])
    raise DomainError(f"unknown graph name {name!r}")


def ade_names(max_vertices: int) -> list:
    """All ADE and extended-ADE names with at most max_vertices vertices."""
    names = []
    names += [f"A{k}" for k in range(1, max_vertices + 1)]
    names += [f"D{k}" for k in range(4, max_vertices + 1)]
    names += [f"E{k}" for k in (6, 7, 8) if k <= max_vertices]
    names += [f"~A{k}" for k in range(2, max_vertices)]
    names += [f"~D{k}" for k in range(4, max_vertices)]
    names += [f"~E{k}" for k in (6, 7, 8) if k + 1 <= max_vertices]
    return names


# --------------------------------------------------------------------------
# Bipartition


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring of a connected bipartite graph.

    parity maps each vertex label to "odd" or "even"; odd and even list the
    classes in vertex order, odd class first in the induced ordering.
    """

    parity: dict
    odd: tuple
    even: tuple

    def parity_of(self, label: str) -> str:
        return self.parity[label]

    def ordered_vertices(self) -> tuple:
        return self.odd + self.even


def bipartition(g: Graph, odd_root: str | None = None) -> Bipartition:
    """Breadth-first two-coloring; the first vertex (or odd_root) is odd.

    Raises NotBipartiteError naming an odd cycle when one exists, and
    DomainError for disconnected input.
    """
    root = 0 if odd_root is None else g.index(odd_root)
    color = [-1] * g.n
    parent = [-1] * g.n
    color[root] = 0
    queue = deque([root])
    order = []
    while queue:
        i = queue.popleft()
        order.append(i)
        for j in g.neighbor_indices(i):
            if color[j] == -1:
                color[j] = 1 - color[i]
                parent[j] = i
                queue.append(j)
            elif color[j] == color[i]:
                raise NotBipartiteError(_odd_cycle(g, parent, i, j))
    if len(order) != g.n:
        raise DomainError("graph is disconnected")
    parity = {
        g.vertices[i]: ("odd" if color[i] == 0 else "even") for i in range(g.n)
    }
    odd = tuple(v for v in g.vertices if parity[v] == "odd")
    even = tuple(v for v in g.vertices if parity[v] == "even")
    return Bipartition(parity=parity, odd=odd, even=even)


def _odd_cycle(g: Graph, parent: list, i: int, j: int) -> list:
    path_i = [i]
    while parent[path_i[-1]] != -1:
        path_i.append(parent[path_i[-1]])
    path_j = [j]
    while parent[path_j[-1]] != -1:
        path_j.append(parent[path_j[-1]])
    set_i = {v: k for k, v in enumerate(path_i)}
    for k, v in enumerate(path_j):
        if v in set_i:
            cycle = path_i[: set_i[v]] + list(reversed(path_j[: k + 1]))
            return [g.vertices[x] for x in cycle]
    return [g.vertices[x] for x in (i, j)]  # unreachable for tree search


def check_bipartition(g: Graph, b: Bipartition) -> None:
    """Validate that b is a consistent two-coloring of g."""
    if set(b.parity) != set(g.vertices):
        raise DomainError("bipartition does not cover the vertex set")
    for u, w in g.edges:
        if b.parity[u] == b.parity[w]:
            raise DomainError(f"bipartition is inconsistent on edge ({u}, {w})")


# --------------------------------------------------------------------------
# Spectra


@dataclass(frozen=True)
class SpectralResult:
    index: float
    principal: np.ndarray  # unit 2-norm, strictly positive entries
    iterations: int
    residual: float  # max-norm of A y - index * y


def index_and_principal(g: Graph, tol: float = 1e-13, max_iter: int = 10**6) -> SpectralResult:
    """Dominant eigenpair by power iteration on A + I.

    The shift makes the dominant eigenvalue strictly largest in magnitude
    even for bipartite graphs (whose adjacency spectrum is symmetric), so
    the iteration converges unconditionally for connected input.
    Convergence: Rayleigh-quotient change <= tol and residual <= 10 tol
    ||A||_inf.
    """
    if not g.is_connected():
        raise DomainError("index_and_principal requires a connected graph")
    if g.n < 2:
        raise DomainError("index_and_principal requires at least two vertices")
    a = g.adjacency()
    m = a + np.eye(g.n)
    norm_inf = float(np.max(np.sum(a, axis=1)))
    res_threshold = 10.0 * tol * norm_inf
    mu, x, iterations, residual, converged = power_iteration(m, tol, max_iter, res_threshold)
    if not converged:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations "
            f"(last residual {residual:.3e})",
            residual=residual,
        )
    if np.any(x <= 0):
        raise InternalConsistencyError(
            "principal eigenvector has non-positive entries on connected input"
        )
    x = np.array(x, dtype=float)
    x /= float(np.linalg.norm(x))
    x.setflags(write=False)
    return SpectralResult(index=mu - 1.0, principal=x, iterations=iterations, residual=residual)


def full_spectrum(g: Graph, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """All adjacency eigenvalues, ascending, by cyclic Jacobi rotations.

    Works for disconnected graphs as well; the multiset size equals the
    number of vertices.
    """
    values, converged = jacobi_eigenvalues(g.adjacency(), tol, max_sweeps)
    if not converged:
        raise ConvergenceError(f"Jacobi sweep did not reach threshold {tol}")
    return values


# --------------------------------------------------------------------------
# Star decomposition and ADE recognition


def star_branches(g: Graph) -> tuple:
    """Branch sizes of a star-shaped tree as a canonical vector.

    A tree with one branching point (degree >= 3) decomposes into the
    center plus its chains; a bare path with n vertices maps to (n) (no
    branching point, single branch holding every vertex).
    """
    if not g.is_tree():
        raise NotStarShapedError("not a tree")
    centers = [v for v in g.vertices if g.degree(v) >= 3]
    if len(centers) > 1:
        raise NotStarShapedError(f"more than one branching point: {', '.join(centers)}")
    if not centers:
        return (g.n,)
    c = g.index(centers[0])
    sizes = []
    seen = {c}
    for start in g.neighbor_indices(c):
        if start in seen:
            continue
        size = 0
        stack = [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            size += 1
            for j in g.neighbor_indices(i):
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        sizes.append(size)
    return canonical_branches(sizes)


_STAR_NAMES = {
    (1, 2, 2): "E6",
    (1, 2, 3): "E7",
    (1, 2, 4): "E8",
    (2, 2, 2): "~E6",
    (1, 3, 3): "~E7",
    (1, 2, 5): "~E8",
    (1, 1, 1, 1): "~D4",
}


def _recognize_ade(g: Graph) -> str | None:
    """Structural match against the ADE / extended-ADE shape catalog.

    Purely combinatorial (degrees and branch profiles); independent of any
    eigenvalue computation.
    """
    degrees = [g.degree(v) for v in g.vertices]
    max_deg = max(degrees)
    is_tree = g.is_tree()
    if max_deg <= 2:
        if is_tree:
            return f"A{g.n}"
        if g.is_connected() and len(g.edges) == g.n and all(d == 2 for d in degrees):
            return f"~A{g.n - 1}"
        return None
    if not is_tree or max_deg > 4:
        return None
    deg3plus = [v for v in g.vertices if g.degree(v) >= 3]
    if len(deg3plus) == 1:
        branches = star_branches(g)
        if max_deg == 4:
            return "~D4" if branches == (1, 1, 1, 1) else None
        if len(branches) != 3:
            return None
        if branches[:2] == (1, 1):
            return f"D{branches[2] + 3}"
        return _STAR_NAMES.get(branches)
    if len(deg3plus) == 2 and max_deg == 3:
        # double fork: every leaf hangs directly off a degree-3 vertex
        forks = set(deg3plus)
        for v in g.vertices:
            if g.degree(v) == 1 and not (set(g.neighbors(v)) & forks):
                return None
        return f"~D{g.n - 1}"
    return None


TAG_DYNKIN = "dynkin"
TAG_EXTENDED = "extended"
TAG_OTHER = "other"

_DYNKIN_FAMILIES = ("A", "D", "E")


@dataclass(frozen=True)
class SmithClass:
    tag: str
    name: str | None
    index: float


def smith_classify(g: Graph, tol: float = 1e-9, spectral_tol: float = 1e-13) -> SmithClass:
    """Classify a connected graph by its index against the value 2.

    index < 2 - tol tags "dynkin", |index - 2| <= tol tags "extended",
    anything above is "other".  Independently, the structural recognizer
    matches against the ADE shape catalog; the two verdicts must agree or
    an InternalConsistencyError is raised (never silently resolved).
    """
    if not g.is_connected():
        raise DomainError("smith_classify requires a connected graph")
    if g.n == 1:
        return SmithClass(tag=TAG_DYNKIN, name="A1", index=0.0)
    index = index_and_principal(g, tol=spectral_tol).index
    if index < 2.0 - tol:
        tag = TAG_DYNKIN
    elif abs(index - 2.0) <= tol:
        tag = TAG_EXTENDED
    else:
        tag = TAG_OTHER
    name = _recognize_ade(g)
    if name is None:
        expected = TAG_OTHER
    elif name.startswith("~"):
        expected = TAG_EXTENDED
    else:
        expected = TAG_DYNKIN
    if expected != tag:
        raise InternalConsistencyError(
            f"structural recognizer ({name or 'no match'}) disagrees with "
            f"index-based tag ({tag}, index={index!r})"
        )
    return SmithClass(tag=tag, name=name, index=index)
