"""Connected uni-trivalent diagrams modulo AS and IHX, graded by grope degree.

A diagram is a connected graph with vertices of degree 1 or 3 and a cyclic
ordering (rotation) at each trivalent vertex; it generates a rational
vector space graded either by Vassiliev degree (half the vertex count) or
by grope degree (Vassiliev degree plus the first Betti number).  For a
connected diagram with at least one univalent vertex the grope degree
equals the number of trivalent vertices plus one, which keeps exhaustive
enumeration small.

Relations: reversing one rotation negates a diagram (AS), and the Jacobi
identity ties the three ways of reconnecting an internal edge (IHX).  In
the half-edge picture, with the rotations at the ends of edge e written
as (a, b, e) and (c, d, e'), the IHX instance is the cyclic sum

    D(a,b | c,d) + D(b,c | a,d) + D(c,a | b,d) = 0,

the diagram counterpart of the structure-constant identity
f_abe f_ecd + f_bce f_ead + f_cae f_ebd = 0.

Diagrams with a tadpole (an edge closing on its own vertex) are rationally
zero by AS and are excluded from generation by default; a toggle keeps
them for consistency checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceededError, PreconditionError

GROPE_BUDGET = 7
VASSILIEV_BUDGET = 4


class UniTrivalentGraph:
    """Half-edge structure: vertex rotation lists plus an edge involution."""

    __slots__ = ("vertices", "pairing")

    def __init__(self, vertices: Sequence[Sequence[int]], pairing: Sequence[int],
                 allow_tadpoles: bool = False):
        vertices = tuple(tuple(v) for v in vertices)
        pairing = tuple(pairing)
        n_half = sum(len(v) for v in vertices)
        seen = sorted(h for v in vertices for h in v)
        if seen != list(range(n_half)) or len(pairing) != n_half:
            raise ValueError("half-edge ids must be 0..n-1, each used once")
        for h, p in enumerate(pairing):
            if p == h or pairing[p] != h:
                raise ValueError("pairing must be a fixed-point-free involution")
        for v in vertices:
            if len(v) not in (1, 3):
                raise ValueError("vertex degrees must be 1 or 3")
        if not any(len(v) == 1 for v in vertices):
            raise ValueError("need at least one univalent vertex")
        owner = {}
        for i, v in enumerate(vertices):
            for h in v:
                owner[h] = i
        if not allow_tadpoles:
            for h, p in enumerate(pairing):
                if owner[h] == owner[p]:
                    raise ValueError("tadpole edge")
        # connectivity
        if vertices:
            stack = [0]
            seen_v = {0}
            while stack:
                i = stack.pop()
                for h in vertices[i]:
                    j = owner[pairing[h]]
                    if j not in seen_v:
                        seen_v.add(j)
                        stack.append(j)
            if len(seen_v) != len(vertices):
                raise ValueError("diagram is not connected")
        self.vertices = vertices
        self.pairing = pairing

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.pairing) // 2

    def owner_map(self) -> dict:
        return {h: i for i, v in enumerate(self.vertices) for h in v}

    def has_tadpole(self) -> bool:
        owner = self.owner_map()
        return any(owner[h] == owner[p] for h, p in enumerate(self.pairing))

    def univalent_count(self) -> int:
        return sum(1 for v in self.vertices if len(v) == 1)

    def trivalent_count(self) -> int:
        return sum(1 for v in self.vertices if len(v) == 3)

    def with_rotation_reversed(self, vertex_index: int) -> "UniTrivalentGraph":
        vs = list(self.vertices)
        vs[vertex_index] = tuple(reversed(vs[vertex_index]))
        return UniTrivalentGraph(vs, self.pairing, allow_tadpoles=True)

    def edges(self) -> list:
        return [(h, self.pairing[h]) for h in range(len(self.pairing))
                if h < self.pairing[h]]

    def __repr__(self):
        return (f"UniTrivalentGraph(vertices={self.vertices!r}, "
                f"pairing={self.pairing!r})")


def vassiliev_degree(d: UniTrivalentGraph) -> int:
    """Half the number of vertices."""
    n = d.n_vertices
    assert n % 2 == 0
    return n // 2


def grope_degree(d: UniTrivalentGraph) -> int:
    """Vassiliev degree plus the first Betti number of the graph."""
    b1 = d.n_edges - d.n_vertices + 1
    return vassiliev_degree(d) + b1


# ---------------------------------------------------------------------------
# canonical form


def canonical_form(d: UniTrivalentGraph) -> tuple:
    """Canonical key and AS sign of a diagram.

    Diagrams that differ by a rotation-respecting isomorphism and an even
    number of rotation reversals share (key, sign); an odd number of
    reversals negates the sign.  The key is the lexicographic minimum over
    BFS codes of all traversals starting at a univalent vertex, minimizing
    over the two rotation directions of each trivalent vertex; the sign is
    the reversal parity of the minimizing traversal.  Diagrams admitting
    minimal traversals of both parities are isomorphic to their own
    negative (any vertex with two interchangeable legs, for instance);
    they get sign +1 so that their AS rows degenerate to 2*D = 0, which is
    exactly what kills them rationally.
    """
    verts = d.vertices
    pairing = d.pairing
    owner = [0] * len(pairing)
    for i, v in enumerate(verts):
        for h in v:
            owner[h] = i
    succ = []
    for v in verts:
        if len(v) == 3:
            fwd = {v[0]: v[1], v[1]: v[2], v[2]: v[0]}
            rev = {v[0]: v[2], v[2]: v[1], v[1]: v[0]}
        else:
            fwd = rev = {v[0]: v[0]}
        succ.append((fwd, rev))

    best: Optional[list] = None
    best_par: set = set()
    ids: dict = {}
    entry: dict = {}
    orient: dict = {}
    code: list = []
    queue: list = []

    def dfs(qi: int, flips: int, decided: bool) -> None:
        nonlocal best, best_par
        base_code = len(code)
        added = []
        pruned = False

        def push(tok) -> bool:
            nonlocal decided, pruned
            code.append(tok)
            if not decided and best is not None:
                k = len(code) - 1
                if code[k] > best[k]:
                    pruned = True
                    return False
                if code[k] < best[k]:
                    decided = True
            return True

        while qi < len(queue):
            h = queue[qi]
            qi += 1
            p = pairing[h]
            w = owner[p]
            if w in ids:
                tbl = succ[w][orient[w]]
                slot = 0
                x = entry[w]
                while x != p:
                    x = tbl[x]
                    slot += 1
                if not (push(1) and push(ids[w]) and push(slot)):
                    break
                continue
            if len(verts[w]) == 1:
                ids[w] = len(ids)
                entry[w] = p
                orient[w] = 0
                added.append(w)
                if not (push(0) and push(1)):
                    break
                continue
            # trivalent discovery: branch over the two rotation directions
            if push(0) and push(3):
                new_id = len(ids)
                for ori in (0, 1):
                    ids[w] = new_id
                    entry[w] = p
                    orient[w] = ori
                    tbl = succ[w][ori]
                    h1 = tbl[p]
                    h2 = tbl[h1]
                    queue.append(h1)
                    queue.append(h2)
                    dfs(qi, flips + ori, decided)
                    queue.pop()
                    queue.pop()
                    del ids[w], entry[w], orient[w]
            del code[base_code:]
            for wv in added:
                del ids[wv], entry[wv], orient[wv]
            return

        if not pruned:
            if best is None or code < best:
                best = list(code)
                best_par = {flips & 1}
            elif code == best:
                best_par.add(flips & 1)
        del code[base_code:]
        for wv in added:
            del ids[wv], entry[wv], orient[wv]

    for sv, v in enumerate(verts):
        if len(v) != 1:
            continue
        ids.clear()
        entry.clear()
        orient.clear()
        code.clear()
        queue.clear()
        ids[sv] = 0
        entry[sv] = v[0]
        orient[sv] = 0
        queue.append(v[0])
        dfs(0, 0, False)

    assert best is not None
    key = ".".join(str(x) for x in best)
    sign = -1 if best_par == {1} else 1
    return key, sign


def canonical_key(d: UniTrivalentGraph) -> str:
    return canonical_form(d)[0]


# ---------------------------------------------------------------------------
# enumeration


def _connected_labeled_multigraphs(t: int, n_edges: int, allow_loops: bool):
    """Yield multiplicity dicts {(i, j): m} (i <= j) of connected loopless
    (or loop-allowing) multigraphs on t labeled nodes, max degree 3."""
    pairs = [(i, j) for i in range(t) for j in range(i, t)
             if (i < j or allow_loops)]
    deg = [0] * t
    chosen = {}
    out = []

    def rec(idx: int, remaining: int):
        if remaining == 0:
            if _is_connected(t, chosen):
                out.append(dict(chosen))
            return
        if idx >= len(pairs):
            return
        # prune: remaining capacity
        cap = sum(3 - d for d in deg) // 2
        if cap < remaining:
            return
        i, j = pairs[idx]
        unit = 2 if i == j else 1
        max_m = 3
        for m in range(0, max_m + 1):
            di = deg[i] + m * unit if i == j else deg[i] + m
            dj = deg[j] + m if i != j else di
            if i == j:
                if di > 3:
                    break
            else:
                if di > 3 or dj > 3:
                    break
            if m > remaining:
                break
            if m:
                chosen[(i, j)] = m
                if i == j:
                    deg[i] += 2 * m
                else:
                    deg[i] += m
                    deg[j] += m
            rec(idx + 1, remaining - m)
            if m:
                del chosen[(i, j)]
                if i == j:
                    deg[i] -= 2 * m
                else:
                    deg[i] -= m
                    deg[j] -= m

    rec(0, n_edges)
    return out


def _is_connected(t: int, mult: dict) -> bool:
    if t == 1:
        return True
    parent = list(range(t))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j) in mult:
        if i != j:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(t)}) == 1


def _canon_multigraph(t: int, mult: dict) -> tuple:
    """Canonical form of a labeled multigraph under node permutations."""
    deg = [0] * t
    for (i, j), m in mult.items():
        if i == j:
            deg[i] += 2 * m
        else:
            deg[i] += m
            deg[j] += m

    best = None
    # only degree-preserving permutations can map the graph to itself
    nodes_by_deg: dict = {}
    for i, dv in enumerate(deg):
        nodes_by_deg.setdefault(dv, []).append(i)
    groups = [nodes_by_deg[k] for k in sorted(nodes_by_deg)]

    for perm_parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = {}
        for orig, image in zip(groups, perm_parts):
            for a, b in zip(orig, image):
                perm[a] = b
        key = []
        for (i, j), m in mult.items():
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
            key.append((a, b, m))
        key.sort()
        key = tuple(key)
        if best is None or key < best:
            best = key
    return best


def _diagram_from_multigraph(t: int, mult_key: tuple, rotations: Sequence[int],
                             allow_tadpoles: bool) -> UniTrivalentGraph:
    """Assemble a uni-trivalent diagram: internal nodes filled to degree 3
    with legs, rotation direction per internal node from `rotations`."""
    incident: list = [[] for _ in range(t)]
    half = 0
    pairing_pairs = []
    for (i, j, m) in mult_key:
        for _ in range(m):
            h1, h2 = half, half + 1
            half += 2
            incident[i].append(h1)
            incident[j].append(h2)
            pairing_pairs.append((h1, h2))
    vertices = []
    leg_vertices = []
    for i in range(t):
        hs = list(incident[i])
        while len(hs) < 3:
            h_node, h_leg = half, half + 1
            half += 2
            hs.append(h_node)
            leg_vertices.append((h_leg,))
            pairing_pairs.append((h_node, h_leg))
        if rotations[i]:
            hs = [hs[0]] + list(reversed(hs[1:]))
        vertices.append(tuple(hs))
    vertices.extend(leg_vertices)
    pairing = [0] * half
    for a, b in pairing_pairs:
        pairing[a] = b
        pairing[b] = a
    return UniTrivalentGraph(vertices, pairing, allow_tadpoles=allow_tadpoles)


def _strut() -> UniTrivalentGraph:
    return UniTrivalentGraph(((0,), (1,)), (1, 0))


def _generators_for_counts(t: int, n_edges: int,
                           allow_tadpoles: bool) -> list:
    """One stored representative per canonical class with t internal nodes
    and the given internal edge count."""
    if t == 0:
        return [("strut", _strut())] if n_edges == 0 else []
    seen_graphs = set()
    found: dict = {}
    for mult in _connected_labeled_multigraphs(t, n_edges, allow_tadpoles):
        gkey = _canon_multigraph(t, mult)
        if gkey in seen_graphs:
            continue
        seen_graphs.add(gkey)
        deg = [0] * t
        for (i, j, m) in gkey:
            if i == j:
                deg[i] += 2 * m
            else:
                deg[i] += m
                deg[j] += m
        # rotation choice is only material at nodes with at most one leg
        free_nodes = [i for i in range(t) if 3 - deg[i] <= 1]
        for bits in range(1 << len(free_nodes)):
            rot = [0] * t
            for k, node in enumerate(free_nodes):
                rot[node] = (bits >> k) & 1
            diag = _diagram_from_multigraph(t, gkey, rot, allow_tadpoles)
            if not allow_tadpoles and diag.has_tadpole():
                continue
            key, _sign = canonical_form(diag)
            if key not in found:
                found[key] = diag
    return sorted(found.items())


def enumerate_diagrams(i: int, grading: str = "grope",
                       allow_tadpoles: bool = False,
                       include_strut: bool = True) -> list:
    """Canonical diagram representatives of the given degree, sorted by key.

    grading="grope": degree i needs exactly i - 1 trivalent vertices.
    grading="vassiliev": degree n ranges over all internal vertex counts
    t <= 2n - 1; the degree-1 strut is included per `include_strut`.
    """
    out = []
    if grading == "grope":
        if i < 2:
            raise PreconditionError("below grading range")
        t = i - 1
        min_e = t - 1
        max_e = (3 * t - 1) // 2
        for n_edges in range(min_e, max_e + 1):
            u = 3 * t - 2 * n_edges
            if u < 1:
                continue
            out.extend(_generators_for_counts(t, n_edges, allow_tadpoles))
    elif grading == "vassiliev":
        if i < 0:
            raise PreconditionError("below grading range")
        for t in range(0, 2 * i):
            u = 2 * i - t
            if u < 1:
                continue
            if (3 * t - u) % 2:
                continue
            n_edges = (3 * t - u) // 2
            if t == 0:
                if u == 2 and i == 1 and include_strut:
                    out.extend(_generators_for_counts(0, 0, allow_tadpoles))
                continue
            if n_edges < t - 1:
                continue
            out.extend(_generators_for_counts(t, n_edges, allow_tadpoles))
    else:
        raise ValueError(f"unknown grading {grading!r}")
    out.sort()
    return out


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class DiagramVector:
    """Sparse rational combination of canonical diagrams, homogeneous in
    the chosen grading."""

    coefficients: tuple  # ((key, Fraction), ...) sorted by key
    degree: int

    @classmethod
    def from_dict(cls, d: dict, degree: int) -> "DiagramVector":
        items = tuple(sorted((k, v) for k, v in d.items() if v != 0))
        return cls(items, degree)

    def is_zero(self) -> bool:
        return not self.coefficients


@dataclass
class RelationMatrix:
    """AS and IHX relation instances over a fixed generator basis."""

    columns: tuple        # canonical keys, sorted
    rows: list            # list of {column_index: int coefficient}
    row_kinds: list       # parallel list of "AS" / "IHX"
    row_degrees: list     # grading degree of every nonzero term in the row

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def _rotate_at(d: UniTrivalentGraph, vertex_index: int) -> UniTrivalentGraph:
    return d.with_rotation_reversed(vertex_index)


def _ihx_terms(d: UniTrivalentGraph, h: int) -> list:
    """The two reconnections of the internal edge through half-edge h."""
    owner = d.owner_map()
    p = d.pairing[h]
    v1, v2 = owner[h], owner[p]
    rot1 = list(d.vertices[v1])
    rot2 = list(d.vertices[v2])
    # cyclic-normalize so the shared edge comes last: (a, b, h), (c, d, p)
    while rot1[2] != h:
        rot1 = rot1[1:] + rot1[:1]
    while rot2[2] != p:
        rot2 = rot2[1:] + rot2[:1]
    a, b = rot1[0], rot1[1]
    c, d_ = rot2[0], rot2[1]
    out = []
    for x, y, z, w in (((b, c, a, d_)), ((c, a, b, d_))):
        vs = list(d.vertices)
        vs[v1] = (x, y, h)
        vs[v2] = (z, w, p)
        out.append(UniTrivalentGraph(vs, d.pairing, allow_tadpoles=True))
    return out


def relation_matrix(i: int, grading: str = "grope",
                    allow_tadpoles: bool = False,
                    include_strut: bool = True,
                    generators: Optional[list] = None) -> RelationMatrix:
    """All AS rows (per diagram, per trivalent vertex) and IHX rows (per
    diagram, per internal edge) over the canonical generators of degree i."""
    gens = (enumerate_diagrams(i, grading, allow_tadpoles, include_strut)
            if generators is None else generators)
    columns = tuple(k for k, _ in gens)
    col_index = {k: j for j, k in enumerate(columns)}
    degree_of = vassiliev_degree if grading == "vassiliev" else grope_degree

    rows = []
    kinds = []
    degrees = []

    def term_vector(terms) -> Optional[dict]:
        vec: dict = {}
        degs = set()
        for diag, coeff in terms:
            if not allow_tadpoles and diag.has_tadpole():
                continue  # rationally zero, dropped
            key, sign = canonical_form(diag)
            j = col_index.get(key)
            assert j is not None, "relation term escapes the generator basis"
            vec[j] = vec.get(j, 0) + coeff * sign
            degs.add(degree_of(diag))
        vec = {k: v for k, v in vec.items() if v}
        assert len(degs) <= 1, "relation row mixes degrees"
        return vec

    for key, diag in gens:
        tri = [idx for idx, v in enumerate(diag.vertices) if len(v) == 3]
        for vi in tri:
            vec = term_vector([(diag, 1), (_rotate_at(diag, vi), 1)])
            rows.append(vec)
            kinds.append("AS")
            degrees.append(degree_of(diag))
        owner = diag.owner_map()
        for h, p in diag.edges():
            if len(diag.vertices[owner[h]]) != 3 or len(diag.vertices[owner[p]]) != 3:
                continue
            if owner[h] == owner[p]:
                continue  # tadpole edge (toggle mode only); IHX degenerate
            t2, t3 = _ihx_terms(diag, h)
            vec = term_vector([(diag, 1), (t2, 1), (t3, 1)])
            rows.append(vec)
            kinds.append("IHX")
            degrees.append(degree_of(diag))
    return RelationMatrix(columns, rows, kinds, degrees)


def rank_over_q(rows: Iterable[dict]) -> int:
    """Rank of sparse integer rows by exact fraction elimination."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            c = min(r)
            if c in pivots:
                f = r.pop(c)
                for cc, vv in pivots[c].items():
                    if cc == c:
                        continue
                    nv = r.get(cc, Fraction(0)) - f * vv
                    if nv:
                        r[cc] = nv
                    elif cc in r:
                        del r[cc]
            else:
                f = r[c]
                pivots[c] = {cc: vv / f for cc, vv in r.items()}
                rank += 1
                break
    return rank


def dim_graded_piece(i: int, grading: str = "grope",
                     allow_tadpoles: bool = False,
                     include_strut: bool = True,
                     budget: Optional[int] = None) -> dict:
    """Number of generators, relations, and the rational dimension at one
    degree of the chosen grading."""
    if budget is None:
        budget = GROPE_BUDGET if grading == "grope" else VASSILIEV_BUDGET
    if grading == "grope" and i < 2:
        raise PreconditionError("below grading range")
    if i > budget:
        raise BudgetExceededError(
            f"degree {i} exceeds the configured budget {budget}")
    gens = enumerate_diagrams(i, grading, allow_tadpoles, include_strut)
    rel = relation_matrix(i, grading, allow_tadpoles, include_strut,
                          generators=gens)
    rank = rank_over_q(rel.rows)
    return {
        "grading": grading,
        "degree": i,
        "num_diagrams": len(gens),
        "num_relations": rel.n_rows,
        "dimension": len(gens) - rank,
    }


def dim_Bg(i: int, budget: Optional[int] = None,
           allow_tadpoles: bool = False) -> int:
    """Rational dimension of the grope-degree-i piece of the diagram algebra."""
    return dim_graded_piece(i, "grope", allow_tadpoles, budget=budget)["dimension"]


def dim_B_by_vassiliev(n: int, include_strut: bool = True,
                       budget: Optional[int] = None) -> int:
    """Cross-check grading: dimension of the Vassiliev-degree-n piece."""
    if n < 0:
        raise PreconditionError("below grading range")
    if n == 0:
        return 0
    return dim_graded_piece(n, "vassiliev", include_strut=include_strut,
                            budget=budget)["dimension"]


def dump_diagram(key: str, d: UniTrivalentGraph) -> str:
    """One-line dump: canonical key, rotations, and the edge list."""
    rots = ";".join("(" + ",".join(str(h) for h in v) + ")"
                    for v in d.vertices)
    edges = ";".join(f"{a}-{b}" for a, b in d.edges())
    return f"{key} | rotations {rots} | edges {edges}"
