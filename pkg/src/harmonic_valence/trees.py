"""Conjugation-symmetric Hubbard trees with simple critical vertices.

Every vertex has local degree 2, the induced map is complex conjugation and
angles between adjacent edges are 1/3 or 2/3 of a turn. The part of such a tree
in the upper half plane is a plane binary tree, which is how trees are encoded
here:

* even degree ``n = 2m + 2``: one real vertex ``r0`` at the origin, the upper
  binary tree (``m`` vertices) hangs off it at 1/6 turn;
* odd degree ``n = 2m + 1`` without real vertices: the root of the binary tree
  (``m`` vertices) sits at ``i`` and is joined to its mirror image at ``-i``;
* odd degree with two real vertices ``r0 < r1``: the left and right subtrees of
  the binary tree hang off ``r0`` and ``r1``. The root itself becomes the real
  edge, so the same binary tree also encodes the partner tree without real
  vertices.

Edge directions are stored as integers modulo 12 (units of 1/12 turn) so all
angle arithmetic is exact.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import EmbeddingOverlap, InvalidTree, TooLarge, WrongParity

MAX_BINARY_VERTICES = 14
MAX_COUNT_DEGREE = 20
TURN = 12
THIRD = 4

# ---------------------------------------------------------------------------
# plane binary trees


@dataclass(frozen=True, slots=True)
class Node:
    left: "Node | None" = None
    right: "Node | None" = None


BinaryTree = "Node | None"


def vertex_count(t: Node | None) -> int:
    if t is None:
        return 0
    return 1 + vertex_count(t.left) + vertex_count(t.right)


def depth(t: Node | None) -> int:
    if t is None:
        return 0
    return 1 + max(depth(t.left), depth(t.right))


def encode(t: Node | None) -> str:
    """Balanced-parenthesis code: ``"(" left ")" right``; the empty tree is ``""``."""
    if t is None:
        return ""
    return "(" + encode(t.left) + ")" + encode(t.right)


def decode(code: str) -> Node | None:
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(code) or code[pos] == ")":
            return None
        if code[pos] != "(":
            raise ValueError(f"bad tree code {code!r}")
        pos += 1
        left = parse()
        if pos >= len(code) or code[pos] != ")":
            raise ValueError(f"bad tree code {code!r}")
        pos += 1
        return Node(left, parse())

    t = parse()
    if pos != len(code):
        raise ValueError(f"bad tree code {code!r}")
    return t


def mirror(t: Node | None) -> Node | None:
    if t is None:
        return None
    return Node(mirror(t.right), mirror(t.left))


def left_chain(m: int) -> Node | None:
    t = None
    for _ in range(m):
        t = Node(t, None)
    return t


def catalan(m: int) -> int:
    if m < 0:
        raise ValueError("m must be non-negative")
    return math.comb(2 * m, m) // (m + 1)


@lru_cache(maxsize=None)
def _binary_trees(m: int) -> tuple:
    if m == 0:
        return (None,)
    out = []
    for k in range(m):
        for left in _binary_trees(k):
            for right in _binary_trees(m - 1 - k):
                out.append(Node(left, right))
    return tuple(out)


def enumerate_binary_trees(m: int) -> list:
    """Every plane binary tree with ``m`` vertices (``catalan(m)`` of them)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > MAX_BINARY_VERTICES:
        raise TooLarge(f"{catalan(m)} binary trees with {m} vertices exceeds the cap "
                       f"(m <= {MAX_BINARY_VERTICES})")
    return list(_binary_trees(m))


def mirror_fixed_count(m: int) -> int:
    return sum(1 for t in enumerate_binary_trees(m) if mirror(t) == t)


# ---------------------------------------------------------------------------
# Hubbard trees


@dataclass(frozen=True)
class Vertex:
    key: str
    conj: str
    real: bool
    local_degree: int
    edges: tuple[tuple[str, int], ...]  # (neighbour, direction mod 12), ccw order

    @property
    def angles(self) -> tuple[int, ...]:
        """Angles between ccw-successive edges, in units of 1/12 turn."""
        d = [e[1] for e in self.edges]
        if len(d) < 2:
            return ()
        return tuple((d[(k + 1) % len(d)] - d[k]) % TURN for k in range(len(d)))


@dataclass(frozen=True)
class HubbardTree:
    degree: int
    upper: Node | None
    real_vertex_count: int
    vertices: tuple[Vertex, ...] = field(compare=False, repr=False)
    root_direction: int = 2

    @property
    def code(self) -> str:
        return encode(self.upper)

    @property
    def vertex(self) -> dict[str, Vertex]:
        return {v.key: v for v in self.vertices}

    @property
    def edges(self) -> list[tuple[str, str]]:
        seen = []
        for v in self.vertices:
            for w, _ in v.edges:
                if v.key < w:
                    seen.append((v.key, w))
        return seen

    @property
    def angle_data(self) -> dict[str, tuple[int, ...]]:
        """Angles between successive edges at each vertex, in thirds of a turn."""
        return {v.key: tuple(a // THIRD if a % THIRD == 0 else a / THIRD for a in v.angles)
                for v in self.vertices}

    @property
    def label(self) -> str:
        return f"n{self.degree}-r{self.real_vertex_count}-{self.code or 'e'}"


def _conj_key(key: str) -> str:
    if key.startswith("u"):
        return "l" + key[1:]
    if key.startswith("l"):
        return "u" + key[1:]
    return key


def _grow(node: Node, key: str, incoming: int, parent: str, adj: dict):
    """Attach binary-tree ``node`` reached along direction ``incoming``."""
    adj.setdefault(key, []).append((parent, (incoming + 6) % TURN))
    adj.setdefault(parent, []).append((key, incoming % TURN))
    if node.left is not None:
        _grow(node.left, key + "L", incoming + 2, key, adj)
    if node.right is not None:
        _grow(node.right, key + "R", incoming - 2, key, adj)


def hubbard_tree(n: int, upper: Node | None, real_vertex_count: int,
                 root_direction: int = 2) -> HubbardTree:
    """Build the symmetric tree of degree ``n`` encoded by ``upper``.

    ``root_direction`` only matters for even degree (2 = 1/6 turn, the fixed
    orientation; 4 = 1/3 turn, its image under ``z -> -z``).
    """
    m = vertex_count(upper)
    adj: dict[str, list] = {}
    if n % 2 == 0:
        if real_vertex_count != 1 or n != 2 * m + 2:
            raise InvalidTree(f"even degree {n} needs one real vertex and {(n - 2) // 2} upper vertices")
        adj["r0"] = []
        if upper is not None:
            _grow(upper, "u", root_direction, "r0", adj)
    else:
        if n != 2 * m + 1 or real_vertex_count not in (0, 2) or m == 0:
            raise InvalidTree(f"odd degree {n} needs {(n - 1) // 2} upper vertices and 0 or 2 real ones")
        if real_vertex_count == 0:
            adj["u"] = []
            if upper.left is not None:
                _grow(upper.left, "uL", 5, "u", adj)
            if upper.right is not None:
                _grow(upper.right, "uR", 1, "u", adj)
            adj["u"].append(("l", 9))
        else:
            adj["r0"] = [("r1", 0)]
            adj["r1"] = [("r0", 6)]
            if upper.left is not None:
                _grow(upper.left, "uL", 4, "r0", adj)
            if upper.right is not None:
                _grow(upper.right, "uR", 2, "r1", adj)
    # lower half plane by conjugation: direction d -> -d
    for key in [k for k in adj if k.startswith("u")]:
        lk = _conj_key(key)
        for w, d in adj[key]:
            entry = (_conj_key(w), (-d) % TURN)
            if entry not in adj.setdefault(lk, []):
                adj[lk].append(entry)
    for key in [k for k in adj if k.startswith("r")]:
        for w, d in list(adj[key]):
            if w.startswith("u"):
                adj[key].append((_conj_key(w), (-d) % TURN))
    vertices = tuple(
        Vertex(key, _conj_key(key), key.startswith("r"), 2,
               tuple(sorted(set(adj[key]), key=lambda e: e[1])))
        for key in sorted(adj))
    return HubbardTree(n, upper, real_vertex_count, vertices, root_direction)


def build_hubbard_trees(n: int) -> list[HubbardTree]:
    """All trees of degree ``n`` (even: orientation fixed; odd: 0- and 2-real variants)."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    if n % 2 == 0:
        return [hubbard_tree(n, b, 1) for b in enumerate_binary_trees((n - 2) // 2)]
    out = []
    for b in enumerate_binary_trees((n - 1) // 2):
        out.append(hubbard_tree(n, b, 0))
        out.append(hubbard_tree(n, b, 2))
    return out


# ---------------------------------------------------------------------------
# reading structure back from the explicit graph


def _read_subtree(tree: dict[str, Vertex], key: str, incoming: int) -> Node:
    dirs = dict((d, w) for w, d in tree[key].edges)
    left = dirs.get((incoming + 2) % TURN)
    right = dirs.get((incoming - 2) % TURN)
    return Node(_read_subtree(tree, left, (incoming + 2) % TURN) if left else None,
                _read_subtree(tree, right, (incoming - 2) % TURN) if right else None)


def _upper_edge(v: Vertex):
    ups = [(w, d) for w, d in v.edges if 0 < d < 6]
    return ups[0] if ups else None


def read_structure(t: HubbardTree) -> tuple[int, Node | None, Node | None]:
    """Recover ``(real count, left part, right part)`` from the vertex/edge data.

    For odd trees the parts are the subtrees on either side of the edge
    crossing the real line (or hanging off the two real vertices); for even
    trees the first part is the whole upper tree. Only the explicit graph is
    consulted, never ``t.upper``.
    """
    g = t.vertex
    reals = [v for v in t.vertices if v.real]
    if len(reals) == 1:
        up = _upper_edge(reals[0])
        return 1, (_read_subtree(g, up[0], up[1]) if up else None), None
    if len(reals) == 2:
        left = next(v for v in reals if any(d == 0 for _, d in v.edges))
        right = next(v for v in reals if v is not left)
        parts = []
        for v in (left, right):
            up = _upper_edge(v)
            parts.append(_read_subtree(g, up[0], up[1]) if up else None)
        return 2, parts[0], parts[1]
    top = next(v for v in t.vertices if any(w == v.conj for w, _ in v.edges) and v.key.startswith("u"))
    incoming = next((d + 6) % TURN for w, d in top.edges if w == top.conj)
    sub = _read_subtree(g, top.key, incoming)
    return 0, sub.left, sub.right


def is_isomorphic(a: HubbardTree, b: HubbardTree) -> bool:
    """Same embedded symmetric tree, compared through the explicit graphs."""
    return a.degree == b.degree and read_structure(a) == read_structure(b)


def real_vertex_bijection(t: HubbardTree) -> HubbardTree:
    """Swap the edge crossing the real line for a real edge, or back.

    Two real vertices ``c1 < c2`` with upper subtrees ``T1``, ``T2`` become a
    vertical edge ``[-i, i]`` with ``T1`` attached left and ``T2`` right of
    ``i`` (all angles 1/3), and conversely.
    """
    if t.degree % 2 == 0:
        raise WrongParity("the real-vertex correspondence only exists in odd degree")
    count, left, right = read_structure(t)
    if count not in (0, 2):
        raise WrongParity(f"odd-degree tree with {count} real vertices")
    return hubbard_tree(t.degree, Node(left, right), 2 - count)


def mirror_tree(t: HubbardTree) -> HubbardTree:
    """Image under ``z -> -z`` (reflection in the imaginary axis)."""
    if t.degree % 2 == 0:
        return hubbard_tree(t.degree, mirror(t.upper), 1, 6 - t.root_direction)
    return hubbard_tree(t.degree, mirror(t.upper), t.real_vertex_count)


def rotate_quarter(t: HubbardTree) -> HubbardTree | None:
    """The tree turned by 90 degrees, if that is again conjugation-symmetric.

    This happens exactly for odd-degree trees symmetric under ``z -> -z``; the
    turn exchanges the 0- and 2-real-vertex forms. Returns None otherwise.
    """
    if t.degree % 2 == 0 or mirror(t.upper) != t.upper:
        return None
    return hubbard_tree(t.degree, Node(t.upper.right, t.upper.left), 2 - t.real_vertex_count)


def canonical(t: HubbardTree) -> HubbardTree:
    """Class representative: smallest code over the ``z -> -z`` orbit."""
    if t.degree % 2 == 0:
        if t.root_direction == 2:
            return t
        return hubbard_tree(t.degree, mirror(t.upper), 1, 2)
    m = mirror(t.upper)
    if encode(m) < t.code:
        return hubbard_tree(t.degree, m, t.real_vertex_count)
    return t


def class_key(t: HubbardTree) -> tuple[int, str]:
    c = canonical(t)
    return c.real_vertex_count, c.code


# ---------------------------------------------------------------------------
# validation


class TreeValidation(NamedTuple):
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def validate_tree(t: HubbardTree) -> TreeValidation:
    """Check the abstract Hubbard tree axioms for this family of trees."""
    bad: list[str] = []
    g = {v.key: v for v in t.vertices}
    if len(g) != len(t.vertices):
        bad.append("duplicate vertex keys")

    for v in t.vertices:
        if v.local_degree != 2:
            bad.append(f"{v.key}: local degree {v.local_degree} != 2")
    if t.degree != 1 + sum(v.local_degree - 1 for v in t.vertices):
        bad.append(f"degree {t.degree} != 1 + sum(delta - 1)")

    reals = [v for v in t.vertices if v.real]
    if len(reals) != t.real_vertex_count:
        bad.append(f"{len(reals)} real vertices but real_vertex_count = {t.real_vertex_count}")
    if t.degree % 2 == 0 and len(reals) != 1:
        bad.append("even degree needs exactly one real vertex")
    if t.degree % 2 == 1 and len(reals) not in (0, 2):
        bad.append("odd degree needs 0 or 2 real vertices")

    # tree shape and edge consistency
    edge_count = 0
    for v in t.vertices:
        dirs = [d for _, d in v.edges]
        if len(set(dirs)) != len(dirs):
            bad.append(f"{v.key}: two edges leave in the same direction")
        for w, d in v.edges:
            edge_count += 1
            if w not in g:
                bad.append(f"{v.key}: edge to unknown vertex {w}")
                continue
            if (v.key, (d + 6) % TURN) not in g[w].edges:
                bad.append(f"edge {v.key}-{w} is not straight")
    edge_count //= 2
    if edge_count != len(g) - 1:
        bad.append(f"{edge_count} edges for {len(g)} vertices: not a tree")
    elif g:
        start = next(iter(g))
        seen, queue = {start}, deque([start])
        while queue:
            for w, _ in g[queue.popleft()].edges:
                if w in g and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(g):
            bad.append("graph is disconnected")

    # angles: 1/3 or 2/3 between adjacent edges
    for v in t.vertices:
        for a in v.angles:
            if a not in (THIRD, 2 * THIRD):
                bad.append(f"{v.key}: angle {a}/12 turn is not 1/3 or 2/3")

    # symmetry under conjugation, with F = conj as the vertex map
    for v in t.vertices:
        fv = g.get(v.conj)
        if fv is None or fv.conj != v.key:
            bad.append(f"{v.key}: conjugation is not an involution here")
            continue
        if (v.conj == v.key) != v.real:
            bad.append(f"{v.key}: fixed by conjugation iff real fails")
        for w, d in v.edges:
            if w in g and (g[w].conj, (-d) % TURN) not in fv.edges:
                bad.append(f"{v.key}: edge to {w} has no conjugate edge")
        for w, _ in v.edges:
            if w in g and g[w].conj == fv.key:
                bad.append(f"{v.key}: adjacent vertices {v.key}, {w} have the same image")
        # delta(v) * alpha(l1, l2) == alpha(F l1, F l2)  (mod 1)
        fdir = {g[w].conj: d for w, d in fv.edges if w in g}
        es = [(w, d) for w, d in v.edges if w in g]
        if len(es) < 2:
            continue
        for (w1, d1), (w2, d2) in zip(es, es[1:] + es[:1]):
            if w1 not in fdir or w2 not in fdir:
                continue
            a = (d2 - d1) % TURN
            fa = (fdir[w2] - fdir[w1]) % TURN
            if (v.local_degree * a - fa) % TURN != 0:
                bad.append(f"{v.key}: angle functional equation fails")

    # every vertex is periodic and critical, so there are no Julia vertices and
    # the expansion condition holds vacuously
    for v in t.vertices:
        fv = g.get(v.conj)
        if fv is not None and fv.conj == v.key and v.local_degree < 2:
            bad.append(f"{v.key}: Julia vertex present")

    return TreeValidation(not bad, bad)


# ---------------------------------------------------------------------------
# counting


class CountReport(NamedTuple):
    degree: int
    enumerated_conjugacy: int | None
    enumerated_equivalence: int | None
    closed_form_Q: int
    closed_form_E: int
    trees: list

    @property
    def matches(self) -> bool:
        return (self.enumerated_conjugacy == self.closed_form_Q
                and self.enumerated_equivalence == self.closed_form_E)


def closed_form_E(n: int) -> int:
    return catalan((n - 1) // 2)


def closed_form_Q(n: int) -> int:
    e = closed_form_E(n)
    return e + catalan((n - 3) // 4) if n % 4 == 3 else e


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def classes(self):
        return len({self.find(x) for x in self.parent})


def equivalence_partner(t: HubbardTree) -> HubbardTree | None:
    """A different conjugacy class equivalent to ``t``, if one exists (n = 4k + 3)."""
    if t.degree % 4 != 3 or t.real_vertex_count != 0:
        return None
    return rotate_quarter(t)


def count_classes(n: int) -> CountReport:
    """Brute-force conjugacy and equivalence class counts next to the closed forms."""
    if not 2 <= n <= MAX_COUNT_DEGREE:
        raise ValueError(f"degree must be in [2, {MAX_COUNT_DEGREE}]")
    reps: dict[tuple, HubbardTree] = {}
    for t in build_hubbard_trees(n):
        key = class_key(t)
        if key not in reps:
            reps[key] = canonical(t)
    uf = _UnionFind(reps)
    for key, t in reps.items():
        partner = equivalence_partner(t)
        if partner is not None:
            uf.union(key, class_key(partner))
    trees = [reps[k] for k in sorted(reps)]
    return CountReport(n, len(reps), uf.classes(), closed_form_Q(n), closed_form_E(n), trees)


# ---------------------------------------------------------------------------
# embedding


def _unit(d: int) -> complex:
    return complex(np.exp(1j * math.pi * d / 6))


def _segments_cross(a, b, c, d, eps=1e-12) -> bool:
    def orient(p, q, r):
        return (q - p).real * (r - p).imag - (q - p).imag * (r - p).real

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < -eps and o3 * o4 < -eps:
        return True

    def on_segment(p, q, r):
        return abs(orient(p, q, r)) <= eps and min(p.real, q.real) - eps <= r.real <= max(p.real, q.real) + eps \
            and min(p.imag, q.imag) - eps <= r.imag <= max(p.imag, q.imag) + eps

    return on_segment(a, b, c) or on_segment(a, b, d) or on_segment(c, d, a) or on_segment(c, d, b)


def _place(t: HubbardTree, shrink: float, crossing_half: float):
    g = t.vertex
    pos: dict[str, complex] = {}
    lengths = []

    def walk(key, incoming, depth_):
        # children of a binary vertex at depth d sit at distance shrink**(d+1)
        v = g[key]
        for w, d in v.edges:
            if w in pos or not w.startswith("u"):
                continue
            ell = shrink ** (depth_ + 1)
            pos[w] = pos[key] + ell * _unit(d)
            lengths.append(ell)
            walk(w, d, depth_ + 1)

    reals = [v for v in t.vertices if v.real]
    if len(reals) == 1:
        pos["r0"] = 0j
        up = _upper_edge(g["r0"])
        if up:
            pos[up[0]] = _unit(up[1])
            lengths.append(1.0)
            walk(up[0], up[1], 0)
    elif len(reals) == 2:
        pos["r0"], pos["r1"] = -0.5 + 0j, 0.5 + 0j
        lengths.append(1.0)
        walk("r0", 0, 0)
        walk("r1", 0, 0)
    else:
        pos["u"] = 1j * crossing_half
        lengths.append(2 * crossing_half)
        walk("u", 3, 0)
    for key in list(pos):
        if key.startswith("u"):
            pos[_conj_key(key)] = pos[key].conjugate()
    return pos, min(lengths, default=1.0)


def _embedding_ok(t: HubbardTree, pos: dict, min_edge: float) -> bool:
    pts = np.array(list(pos.values()))
    if pts.size > 1:
        dist = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(dist, np.inf)
        if dist.min() < 0.1 * min_edge:
            return False
    edges = t.edges
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if {a, b} & {c, d}:
                continue
            if _segments_cross(pos[a], pos[b], pos[c], pos[d]):
                return False
    return True


def embed_tree(t: HubbardTree, crossing_half: float = 1.0, max_retries: int = 10,
               shrink: float | None = None) -> list[tuple[str, complex]]:
    """Planar coordinates realising the stored edge directions.

    The first attempt uses unit edges; each retry shrinks edge lengths by a
    further factor 0.8 per depth level until no two edges cross and no two
    vertices are closer than a tenth of the shortest edge.
    """
    factors = [shrink] if shrink is not None else [0.8 ** k for k in range(max_retries + 1)]
    for f in factors:
        pos, min_edge = _place(t, f, crossing_half)
        if _embedding_ok(t, pos, min_edge):
            return sorted(pos.items())
    raise EmbeddingOverlap(f"could not embed {t.label} without overlaps")
