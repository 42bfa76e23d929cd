"""Lollipop trees and the combinatorics of their small colorings.

A lollipop tree of genus g with s boundary points is a uni-trivalent banded
graph with exactly g loop edges whose complement is a tree T; when s > 0 a
single trunk edge separates the loop-carrying subtree from the subtree with
all univalent vertices.  Edge colors: loops a_i + b_i, sticks 2a_i, trunk
2e, ordinary edges c_j, subject to p-admissibility at every vertex and the
smallness conditions 0 <= a_i <= d-1, 0 <= b_i <= d-1-a_i.

Everything here is exact integer combinatorics: enumeration of the small
colorings (the index set of all bases), the rescaling exponents of the
lattice basis and its dual, the index-counting identity, the oddity of a
coloring, and trunk grafting with its exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .recoupling import admissible

__all__ = [
    "LollipopTree",
    "SmallColoring",
    "standard_tree",
    "enumerate_small_colorings",
    "dim_even_loop_oracle",
    "exponent_b",
    "exponent_bsharp",
    "index_identity",
    "oddity",
    "tensor_rescale_exponent",
    "graft",
    "grafting_exponent",
    "verlinde_genus2",
]


@dataclass(frozen=True)
class Edge:
    name: str
    kind: str  # "loop" | "stick" | "trunk" | "ordinary" | "leaf"
    u: int
    v: int


@dataclass
class LollipopTree:
    g: int
    boundary_colors: list
    edges: list = field(default_factory=list)
    # rotation[vertex] lists incident edge names in planar order
    rotation: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    # -- structure ----------------------------------------------------------

    @property
    def s(self):
        return len(self.boundary_colors)

    def edges_of_kind(self, kind):
        return [e for e in self.edges if e.kind == kind]

    def validate(self):
        loops = self.edges_of_kind("loop")
        if len(loops) != self.g:
            raise ValueError("number of loop edges must equal the genus")
        for e in loops:
            if e.u != e.v:
                raise ValueError("loop edges must attach at a single vertex")
        if self.s and sum(self.boundary_colors) % 2:
            raise ValueError("boundary colors of a component must have even sum")
        # the complement of the loops must be a tree (when nonempty)
        tree_edges = [e for e in self.edges if e.kind != "loop"]
        verts = {e.u for e in tree_edges} | {e.v for e in tree_edges}
        if tree_edges:
            if len(tree_edges) != len(verts) - 1:
                raise ValueError("complement of loop edges is not a tree")
            adj = {v: [] for v in verts}
            for e in tree_edges:
                adj[e.u].append(e.v)
                adj[e.v].append(e.u)
            seen = set()
            stack = [tree_edges[0].u]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(adj[v])
            if seen != verts:
                raise ValueError("complement of loop edges is disconnected")
        # sticks must touch loop vertices
        loop_verts = {e.u for e in loops}
        for e in self.edges_of_kind("stick"):
            if e.u not in loop_verts and e.v not in loop_verts:
                raise ValueError("stick edge not incident with a loop edge")
        trunks = self.edges_of_kind("trunk")
        if self.s > 0 and self.g > 0 and len(trunks) != 1:
            raise ValueError("a tree with boundary points needs one trunk edge")
        if self.s == 0 and trunks:
            raise ValueError("no trunk edge allowed without boundary points")
        if self.g == 2 and self.s == 0:
            if len(self.edges_of_kind("stick")) != 1:
                raise ValueError("genus 2 without points has exactly one stick")
        return self

    def leaf_edges(self):
        return self.edges_of_kind("leaf")

    def vertices(self):
        out = set()
        for e in self.edges:
            out.add(e.u)
            out.add(e.v)
        return out

    def internal_vertices(self):
        """Vertices where an admissibility condition applies, with their
        incident edge names (loop edges listed once but counted twice)."""
        inc = {}
        for e in self.edges:
            if e.kind == "loop":
                inc.setdefault(e.u, []).extend([e.name, e.name])
            else:
                inc.setdefault(e.u, []).append(e.name)
                inc.setdefault(e.v, []).append(e.name)
        leaves = {e.v for e in self.leaf_edges()}
        return {v: names for v, names in inc.items()
                if v not in leaves and len(names) > 1}


@dataclass(frozen=True)
class SmallColoring:
    a: tuple
    b: tuple
    c: tuple  # ordinary/trunk colors in a fixed edge order
    e: int    # trunk half-color (0 when there is no trunk)

    def loop_colors(self):
        return tuple(x + y for x, y in zip(self.a, self.b))

    def sum_a(self):
        return sum(self.a)

    def sum_b(self):
        return sum(self.b)


def standard_tree(g, boundary_colors=()):
    """The caterpillar-shaped preset: loops in a row, boundary comb below.

    Reproduces the usual drawn shape: sticks hang off a spine, the trunk
    (when there are boundary points) separates the spine from a comb of
    leaves.
    """
    boundary_colors = list(boundary_colors)
    s = len(boundary_colors)
    edges = []
    vid = [0]

    def nv():
        vid[0] += 1
        return vid[0]

    if g == 0:
        if s == 0:
            return LollipopTree(0, [], [])
        if s == 1:
            return LollipopTree(0, boundary_colors, [])
        if s == 2:
            w = nv()
            return LollipopTree(0, boundary_colors,
                                [Edge("leaf0", "leaf", w, nv()),
                                 Edge("leaf1", "leaf", w, nv())])
        if s == 3:
            w = nv()
            return LollipopTree(0, boundary_colors,
                                [Edge(f"leaf{i}", "leaf", w, nv())
                                 for i in range(3)])
        comb = [nv() for _ in range(s - 2)]
        edges = [Edge("leaf0", "leaf", comb[0], nv()),
                 Edge("leaf1", "leaf", comb[0], nv())]
        for j in range(1, s - 2):
            edges.append(Edge(f"comb{j - 1}", "ordinary", comb[j - 1], comb[j]))
            edges.append(Edge(f"leaf{j + 1}", "leaf", comb[j], nv()))
        edges.append(Edge(f"leaf{s - 1}", "leaf", comb[-1], nv()))
        return LollipopTree(0, boundary_colors, edges)

    loop_verts = [nv() for _ in range(g)]
    for i, v in enumerate(loop_verts):
        edges.append(Edge(f"loop{i}", "loop", v, v))

    trunk_top = None
    if g == 1:
        trunk_top = loop_verts[0]
    elif g == 2:
        if s == 0:
            edges.append(Edge("stick0", "stick", loop_verts[0], loop_verts[1]))
            return LollipopTree(2, [], edges)
        mid = nv()
        edges.append(Edge("stick0", "stick", loop_verts[0], mid))
        edges.append(Edge("stick1", "stick", loop_verts[1], mid))
        trunk_top = mid
    elif g >= 3:
        spine = [nv() for _ in range(g - 2)]
        edges.append(Edge("stick0", "stick", loop_verts[0], spine[0]))
        edges.append(Edge("stick1", "stick", loop_verts[1], spine[0]))
        for j in range(1, g - 2):
            edges.append(Edge(f"ord{j - 1}", "ordinary", spine[j - 1], spine[j]))
            edges.append(Edge(f"stick{j + 1}", "stick", loop_verts[j + 1], spine[j]))
        if s == 0:
            edges.append(Edge(f"stick{g - 1}", "stick", loop_verts[g - 1], spine[-1]))
            return LollipopTree(g, [], edges)
        tail = nv()
        edges.append(Edge(f"ord{g - 3}", "ordinary", spine[-1], tail))
        edges.append(Edge(f"stick{g - 1}", "stick", loop_verts[g - 1], tail))
        trunk_top = tail

    if g == 1 and s == 0:
        return LollipopTree(1, [], edges)

    # boundary comb below the trunk
    if s == 0:
        raise AssertionError("unreachable")
    bot = nv()
    edges.append(Edge("trunk", "trunk", trunk_top, bot))
    if g == 1:
        # the trunk doubles as the single stick
        pass
    if s == 1:
        leaf = nv()
        # the trunk runs straight into the single point: model the point as
        # a leaf edge of color boundary_colors[0] equal to the trunk color
        edges.append(Edge("leaf0", "leaf", bot, leaf))
    elif s == 2:
        for i in range(2):
            leaf = nv()
            edges.append(Edge(f"leaf{i}", "leaf", bot, leaf))
    else:
        comb = [bot] + [nv() for _ in range(s - 2)]
        for j in range(1, len(comb)):
            edges.append(Edge(f"comb{j - 1}", "ordinary", comb[j - 1], comb[j]))
        edges.append(Edge("leaf0", "leaf", comb[0], nv()))
        for j in range(1, len(comb) - 1):
            edges.append(Edge(f"leaf{j}", "leaf", comb[j], nv()))
        edges.append(Edge(f"leaf{s - 2}", "leaf", comb[-1], nv()))
        edges.append(Edge(f"leaf{s - 1}", "leaf", comb[-1], nv()))
    return LollipopTree(g, boundary_colors, edges)


def _tree_colorings(tree, ctx, loop_color_options):
    """Assign colors to the non-loop edges and loops; generator of dicts.

    ``loop_color_options(a_i)`` yields the loop colors allowed over a stick
    half-color a_i; for small colorings this is range(a_i, d), for the
    even-loop oracle the even colors admissible at the lollipop vertex.
    """
    p = ctx.p
    sticks = tree.edges_of_kind("stick")
    trunks = tree.edges_of_kind("trunk")
    ords = tree.edges_of_kind("ordinary")
    leaves = tree.leaf_edges()
    fixed = {}
    for e, col in zip(leaves, tree.boundary_colors):
        fixed[e.name] = col

    free = []
    for e in sticks:
        free.append((e.name, [2 * a for a in range(ctx.d)]))
    for e in trunks:
        free.append((e.name, [2 * k for k in range(p - 1) if 2 * k <= p - 2]))
    for e in ords:
        free.append((e.name, list(range(p - 1))))

    internal = tree.internal_vertices()

    # special degenerate cases
    if tree.g == 0 and tree.s == 0:
        yield {}
        return
    if tree.g == 0 and tree.s == 1:
        if tree.boundary_colors[0] == 0:
            yield dict(fixed)
        return

    def vertex_ok(assign, names):
        cols = []
        for nm in names:
            if nm in assign:
                cols.append(assign[nm])
            else:
                return True  # not fully assigned yet
        if len(cols) == 1:
            return cols[0] == 0
        if len(cols) == 2:
            return cols[0] == cols[1]
        return admissible(p, *cols[:3]) and len(cols) == 3

    def rec(i, assign):
        if i == len(free):
            for v, names in internal.items():
                if any(nm.startswith("loop") for nm in names):
                    continue  # loop vertices handled by the caller
                if not vertex_ok(assign, names):
                    return
            yield dict(assign)
            return
        name, options = free[i]
        for col in options:
            assign[name] = col
            ok = True
            for v, names in internal.items():
                if any(nm.startswith("loop") for nm in names):
                    continue
                if all(nm in assign for nm in names):
                    if not vertex_ok(assign, names):
                        ok = False
                        break
            if ok:
                yield from rec(i + 1, assign)
        assign.pop(name, None)

    yield from rec(0, dict(fixed))


def enumerate_small_colorings(tree, ctx):
    """All small colorings of a lollipop tree, in a canonical order."""
    d = ctx.d
    sticks = tree.edges_of_kind("stick")
    g = tree.g
    ord_names = sorted(e.name for e in tree.edges_of_kind("ordinary"))
    trunk = tree.edges_of_kind("trunk")
    out = []
    for assign in _tree_colorings(tree, ctx, None):
        if g == 0:
            c = tuple(assign.get(nm, 0) for nm in ord_names)
            out.append(SmallColoring((), (), c, 0))
            continue
        # stick half-colors per loop index
        a = []
        if g == 2 and tree.s == 0:
            half = assign["stick0"] // 2
            a = [half, half]
        elif g == 1 and tree.s == 0:
            a = [0]
        elif g == 1:
            a = [assign["trunk"] // 2]
        else:
            a = [assign[f"stick{i}"] // 2 for i in range(g)]
        e = assign["trunk"] // 2 if trunk else 0
        c = tuple(assign.get(nm, 0) for nm in ord_names)
        ranges = [range(0, d - ai) for ai in a]
        idx = [0] * g
        while True:
            b = tuple(r[i] for r, i in zip(ranges, idx))
            out.append(SmallColoring(tuple(a), b, c, e))
            j = g - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < len(ranges[j]):
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                break
    out.sort(key=lambda sc: (sc.a, sc.c, sc.e, sc.b))
    return out


def dim_even_loop_oracle(tree, ctx):
    """Count p-admissible colorings with even loop colors (the other basis).

    Independent of the small enumeration; the two counts must agree since
    both index bases of the same space.
    """
    p, d = ctx.p, ctx.d
    g = tree.g
    total = 0
    for assign in _tree_colorings(tree, ctx, None):
        if g == 0:
            total += 1
            continue
        if g == 2 and tree.s == 0:
            aa = [assign["stick0"] // 2] * 2
        elif g == 1 and tree.s == 0:
            aa = [0]
        elif g == 1:
            aa = [assign["trunk"] // 2]
        else:
            aa = [assign[f"stick{i}"] // 2 for i in range(g)]
        cnt = 1
        for ai in aa:
            # even loop colors n with (n, n, 2 a_i) admissible
            opts = [n for n in range(0, p - 1, 2) if admissible(p, n, n, 2 * ai)]
            cnt *= len(opts)
        total += cnt
    return total


# -- exponents, oddity, index identity ---------------------------------------


def exponent_b(col):
    """Power of h scaled out of the lattice basis vector at this coloring."""
    return sum(col.b) + (-col.e + sum(col.a)) // 2


def exponent_bsharp(col):
    """Power of h scaled out of the dual-basis vector at this coloring."""
    return sum(col.b) + -((-(col.e + sum(col.a))) // 2)


def index_identity(tree, ctx):
    """N + N' against g(d-1) dim: the index-counting identity."""
    cols = enumerate_small_colorings(tree, ctx)
    N = sum(exponent_b(c) for c in cols)
    Np = sum(exponent_bsharp(c) for c in cols)
    rhs = tree.g * (ctx.d - 1) * len(cols)
    return {"N": N, "N_sharp": Np, "rhs": rhs, "dim": len(cols),
            "holds": N + Np == rhs}


def oddity(col, ctx):
    """1 when the trunk half-color is d-1 and sum(a) - e is odd, else 0."""
    if col.e == ctx.d - 1 and (sum(col.a) - col.e) % 2 == 1:
        return 1
    return 0


def tensor_rescale_exponent(cols, ctx):
    """Union rescaling: floor of half the total oddity of the components."""
    return sum(oddity(c, ctx) for c in cols) // 2


def verlinde_genus2(ctx):
    d = ctx.d
    return d * (d + 1) * (2 * d + 1) // 6


# -- grafting ------------------------------------------------------------------


def graft(trees):
    """Join lollipop trees along their trunks (the disjoint-union spine).

    The result is a single lollipop tree whose genus is the total genus and
    whose boundary points are the concatenation of the inputs'.
    """
    if len(trees) < 2:
        raise ValueError("grafting needs at least two trees")
    g = sum(t.g for t in trees)
    boundary = [c for t in trees for c in t.boundary_colors]
    return standard_tree(g, boundary)


def grafting_exponent(col, parts, ctx):
    """The power of h relating a grafted basis vector to the tensor factors.

    ``col`` is the coloring of the grafted tree, ``parts`` the colorings of
    the pieces; requires matching trunk colors across the graft (else the
    glued vector is zero and None is returned).
    """
    n = len(parts)
    d = ctx.d
    A_total = sum(col.a)
    if A_total != sum(sum(pc.a) for pc in parts):
        return None
    E = (n - 1) * (d - 1) - (A_total - col.e) // 2
    for pc in parts:
        E += (sum(pc.a) - pc.e) // 2
    return E
