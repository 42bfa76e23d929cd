"""Coordinates in the TQFT space, the integral bases, and their pairings.

Vectors are exact coordinate tables over the small graph basis of a lollipop
tree.  The lattice basis vectors are

    b(a,b,c)  = h^(-sum b_i - floor((-e+sum a_i)/2)) (2+z_1)^b_1 ... g(a,0,c)
    b#(a,b,c) = h^(-sum b_i - ceil(( e+sum a_i)/2)) (2+z_1)^b_1 ... g(a,0,c)

with z_i the curve around the i-th hole acting by the color-shift rule
(loop color n -> n-1 and n+1, inadmissible branches dropping out).

The hermitian form pairs vectors through the diagonal Gram matrix of the
small graph basis, whose entries are computed honestly by the surgery
engine: the doubled handlebody is surgery on a 0-framed unlink with one
omega-colored component per handle, with the two graphs threaded through.
The second argument of the form is the conjugated one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import invariants as inv_mod
from .invariants import SurgeryPresentation, eval_surgery
from .lollipop import (SmallColoring, enumerate_small_colorings, exponent_b,
                       exponent_bsharp, standard_tree)
from .planar import Prog, bracket_program, DEFAULT_WIDTH_CAP
from .recoupling import RecouplingTable

__all__ = [
    "HandlebodyVector",
    "vacuum",
    "z_multiply",
    "torus_z_matrix",
    "basis_b",
    "basis_bsharp",
    "graph_gram",
    "gram_matrix",
    "dual_pairing_matrix",
    "torsion_report",
    "vgraph_sample",
    "eyeglass_expansion_check",
]


@dataclass
class HandlebodyVector:
    tree: object
    coords: dict  # SmallColoring -> CycloElem

    def scaled(self, factor):
        return HandlebodyVector(
            self.tree, {k: v * factor for k, v in self.coords.items()})

    def add(self, other):
        out = dict(self.coords)
        for k, v in other.coords.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return HandlebodyVector(self.tree, out)

    def coefficient(self, col, ctx):
        return self.coords.get(col, ctx.zero)


def vacuum(tree, ctx, coloring):
    return HandlebodyVector(tree, {coloring: ctx.one})


def z_multiply(vec, hole, ctx):
    """Multiply by the curve around the given hole (color-shift rule).

    Sends loop color n to the sum of the colorings with loop colors n +- 1;
    the branch down to n-1 < a_i is inadmissible at the lollipop vertex and
    drops, and a branch up to loop color d would leave the small range (it
    never occurs inside the basis construction; the general torus operator
    is defined by the pairing solve in torus_z_matrix).
    """
    d = ctx.d
    out = {}

    def bump(col, coeff):
        if col in out:
            s = out[col] + coeff
            if s.is_zero():
                del out[col]
            else:
                out[col] = s
        else:
            out[col] = coeff

    for col, coeff in vec.coords.items():
        b = list(col.b)
        if b[hole] > 0:
            down = list(b)
            down[hole] -= 1
            bump(SmallColoring(col.a, tuple(down), col.c, col.e), coeff)
        if col.a[hole] + b[hole] + 1 <= d - 1:
            up = list(b)
            up[hole] += 1
            bump(SmallColoring(col.a, tuple(up), col.c, col.e), coeff)
        else:
            raise ValueError(
                "z-multiplication left the small color range; use the "
                "pairing-solve operator for the torus")
    return HandlebodyVector(vec.tree, out)


def basis_b(tree, ctx):
    """The integral-lattice basis as coordinate vectors, in canonical order."""
    return _basis(tree, ctx, exponent_b)


def basis_bsharp(tree, ctx):
    """The dual-lattice basis as coordinate vectors, in canonical order."""
    return _basis(tree, ctx, exponent_bsharp)


def _basis(tree, ctx, exponent):
    cols = enumerate_small_colorings(tree, ctx)
    hinv = ctx.h.inverse()
    out = []
    for col in cols:
        base = SmallColoring(col.a, tuple(0 for _ in col.b), col.c, col.e)
        vec = vacuum(tree, ctx, base)
        for hole, b_i in enumerate(col.b):
            for _ in range(b_i):
                vec = vec.scaled(ctx.coerce(2)).add(z_multiply(vec, hole, ctx))
        out.append(vec.scaled(hinv ** exponent(col)))
    return cols, out


# ---------------------------------------------------------------------------
# doubled-handlebody diagrams
# ---------------------------------------------------------------------------


def doubled_g1(ctx, m, n, c, extra=(), width_cap=DEFAULT_WIDTH_CAP):
    """Bracket of the doubled solid torus with the belt ring colored c.

    Concentric circles, outside in: the mirror-side loop (n), the extra
    cargo strands, the loop (m); the 0-framed belt ring (c) encircles one
    arc of each.
    """
    widths = [n] + list(extra) + [m]
    pr = Prog()
    ofs = 0
    for w in widths:
        pr.cup_block(ofs, w)
        pr.jw(ofs, w)
        ofs += w
    total = sum(widths)
    inv_mod._ring_around(pr, total, c, total, +1)
    # close inside out: innermost pair sits at [total - w_last, total + w_last)
    rem = list(widths)
    while rem:
        w = rem.pop()
        pos = sum(rem)
        pr.cap_block(pos, w)
    if pr.max_width > width_cap:
        raise inv_mod.planar.WidthCapError("doubled torus exceeds width cap")
    return bracket_program(ctx, pr.events, width_cap)


def doubled_g2(ctx, sig, tau, cs, oval=0, width_cap=DEFAULT_WIDTH_CAP):
    """Bracket of the doubled genus-2 handlebody (no boundary points).

    ``sig`` and ``tau`` are (loop1, loop2, stick) color triples of the two
    graphs; ``cs`` the two belt-ring colors; ``oval`` an optional extra
    cargo strand threading both belts alongside (the curve around both
    holes, drawn on the sig side).
    """
    m1, m2, sa = sig
    n1, n2, ta = tau
    c1, c2 = cs
    zw = oval
    pr = Prog()
    # the oval's return strand runs along the bottom of everything
    if zw:
        pr.cup_block(0, zw)   # [Zf, Zr]
        pr.jw(0, zw)
    # handle 1: sigma loop above, tau loop below, forward strand between
    pr.cup_block(0, m1)
    pr.jw(0, m1)
    # wires now [s1t, s1b, Zf, Zr] (or [s1t, s1b] without the oval)
    pr.cup_block(2 * m1 + zw, n1)
    pr.jw(2 * m1 + zw, n1)
    # [s1t, s1b, Zf, t1t, t1b, Zr]
    inv_mod._ring_around(pr, m1, c1, m1 + zw + n1, +1)
    # vertices of handle 1
    pr.vertex_merge(0, m1, m1, sa)
    # [stick_s, Zf, t1t, t1b, Zr]
    pr.vertex_merge(sa + zw, n1, n1, ta)
    # [stick_s, Zf, stick_t, Zr]
    pr.vertex_split(0, sa, m2, m2)
    # [s2t, s2b, Zf, stick_t, Zr]
    pr.vertex_split(2 * m2 + zw, ta, n2, n2)
    # [s2t, s2b, Zf, t2t, t2b, Zr]
    inv_mod._ring_around(pr, m2, c2, m2 + zw + n2, +1)
    pr.cap_block(0, m2)
    # [Zf, t2t, t2b, Zr]
    pr.cap_block(zw, n2)
    # [Zf, Zr]
    if zw:
        pr.cap_block(0, zw)
    if pr.max_width > width_cap:
        raise inv_mod.planar.WidthCapError("doubled handlebody exceeds width cap")
    return bracket_program(ctx, pr.events, width_cap)


def _surgery_value(ctx, table, genus, bracket_of_colors, width_cap):
    """Normalized invariant for the 0-framed unlink presentation."""
    fm = [[0] * genus for _ in range(genus)]
    pres = SurgeryPresentation(fm, bracket_of_colors)
    return eval_surgery(pres, ctx, table).value


def graph_gram(tree, ctx, table=None, width_cap=DEFAULT_WIDTH_CAP,
               off_diagonal=True):
    """Gram matrix of the small graph basis under the hermitian form.

    Each entry is the normalized invariant of the doubled handlebody with
    the two colored graphs inside (an exact surgery computation); the basis
    is orthogonal, so off-diagonal entries vanish (verified when
    ``off_diagonal`` is set; skipped entries are returned as exact zeros).
    """
    if table is None:
        table = RecouplingTable(ctx)
    cols = enumerate_small_colorings(tree, ctx)
    g = tree.g
    if g not in (1, 2) or tree.s != 0:
        raise ValueError("graph_gram supports genus 1 and 2 without points")
    n = len(cols)
    out = [[ctx.zero] * n for _ in range(n)]
    for i, sig in enumerate(cols):
        for j, tau in enumerate(cols):
            if i != j and not off_diagonal:
                continue
            if g == 1:
                def fn(colors, _s=sig, _t=tau):
                    return doubled_g1(ctx, _s.loop_colors()[0],
                                      _t.loop_colors()[0], colors[0],
                                      width_cap=width_cap)
            else:
                def fn(colors, _s=sig, _t=tau):
                    return doubled_g2(
                        ctx,
                        (_s.loop_colors()[0], _s.loop_colors()[1], 2 * _s.a[0]),
                        (_t.loop_colors()[0], _t.loop_colors()[1], 2 * _t.a[0]),
                        colors, width_cap=width_cap)
            out[i][j] = _surgery_value(ctx, table, g, fn, width_cap)
    return cols, out


def gram_matrix(cols, gram_g, xs, ys, ctx):
    """Hermitian pairing matrix of coordinate vectors (second conjugated)."""
    index = {c: k for k, c in enumerate(cols)}
    n = len(xs)
    m = len(ys)
    out = [[ctx.zero] * m for _ in range(n)]
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            acc = ctx.zero
            for col, xc in x.coords.items():
                yc = y.coords.get(col)
                if yc is None:
                    continue
                k = index[col]
                acc = acc + xc * yc.conj() * gram_g[k][k]
            out[i][j] = acc
    return out


def dual_pairing_matrix(tree, ctx, table=None, width_cap=DEFAULT_WIDTH_CAP):
    """Pairings of the lattice basis against the dual basis."""
    cols, gram_g = graph_gram(tree, ctx, table, width_cap, off_diagonal=False)
    _, bs = basis_b(tree, ctx)
    _, bsh = basis_bsharp(tree, ctx)
    return cols, gram_matrix(cols, gram_g, bs, bsh, ctx)


def det_matrix(mat, ctx):
    """Exact determinant of a matrix of field elements (fraction-free-ish)."""
    n = len(mat)
    a = [row[:] for row in mat]
    det = ctx.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return ctx.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def torsion_report(tree, ctx, table=None, width_cap=DEFAULT_WIDTH_CAP):
    """The mod-h residue forms: radical, quotient, and their symmetry.

    For a surface without colored points: the reduction of the lattice Gram
    matrix mod h is a symmetric F_p-form whose radical is spanned by the
    basis vectors with odd stick half-color sum; h times the dual-basis
    Gram reduces to a skew-symmetric non-degenerate form on that span.
    """
    if tree.s != 0:
        raise ValueError("torsion report needs a surface without points")
    cols, gram_g = graph_gram(tree, ctx, table, width_cap, off_diagonal=False)
    _, bs = basis_b(tree, ctx)
    _, bsh = basis_bsharp(tree, ctx)
    gram_b = gram_matrix(cols, gram_g, bs, bs, ctx)
    n = len(cols)
    p = ctx.p
    red = [[ctx.reduce_mod_h(gram_b[i][j]) for j in range(n)] for i in range(n)]
    symmetric = all(red[i][j] == red[j][i] for i in range(n) for j in range(n))
    # radical of the mod-h form
    rad_dim = n - _fp_rank(red, p)
    odd = [i for i, c in enumerate(cols) if sum(c.a) % 2 == 1]
    # radical is spanned by the images of the odd basis vectors
    odd_in_radical = all(
        all(red[i][j] == 0 for j in range(n)) for i in odd)
    # h-scaled form on the dual basis, restricted to the odd span
    gram_sharp = gram_matrix(cols, gram_g, bsh, bsh, ctx)
    h = ctx.h
    hmat = [[ctx.reduce_mod_h(h * gram_sharp[i][j]) for j in odd] for i in odd]
    skew = all(hmat[i][j] == (-hmat[j][i]) % p
               for i in range(len(odd)) for j in range(len(odd)))
    nondeg = _fp_rank(hmat, p) == len(odd)
    return {
        "dim": n,
        "radical_dim": rad_dim,
        "odd_count": len(odd),
        "quotient_dim": n - rad_dim,
        "form_symmetric": symmetric,
        "odd_span_in_radical": odd_in_radical,
        "skew_form_skew_symmetric": skew,
        "skew_form_nondegenerate": nondeg,
    }


def _fp_rank(mat, p):
    if not mat:
        return 0
    m = [row[:] for row in mat]
    rows = len(m)
    colsn = len(m[0])
    rank = 0
    for col in range(colsn):
        piv = next((r for r in range(rank, rows) if m[r][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] % p:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# the torus operator and v-graph probes
# ---------------------------------------------------------------------------


def torus_z_matrix(ctx, table=None, width_cap=DEFAULT_WIDTH_CAP):
    """Matrix of multiplication by the core curve on the torus space.

    Defined by the pairing solve: the column over e_j solves the linear
    system of Hopf pairings of (z . e_j) against the small basis, where the
    pairings are honest surgery evaluations of the doubled torus with an
    extra parallel strand.  The result extends the color-shift rule across
    the top of the small range (the fold of the out-of-range color).
    """
    if table is None:
        table = RecouplingTable(ctx)
    d = ctx.d
    cols_mat = []
    for j in range(d):
        pairings = []
        for i in range(d):
            def fn(colors, _i=i, _j=j):
                return doubled_g1(ctx, _j, _i, colors[0], extra=(1,),
                                  width_cap=width_cap)
            pairings.append(_surgery_value(ctx, table, 1, fn, width_cap))
        # gram of the torus basis is D * identity, so divide by D
        cols_mat.append([x / ctx.D for x in pairings])
    return [[cols_mat[j][i] for j in range(d)] for i in range(d)]


def vgraph_sample(tree, ctx, seed=7, count=8, table=None,
                  width_cap=DEFAULT_WIDTH_CAP):
    """Pseudorandom lattice generators represented by v-graphs.

    Products of the single-hole elements v_i = h^-1 (2 + z_i) applied to
    graph-basis vectors, together with (for genus two) elements built from
    the curve around both holes.  These are integral lattice vectors, used
    as integrality probes against the dual basis.
    """
    import random as random_mod
    rng = random_mod.Random(seed)
    cols = enumerate_small_colorings(tree, ctx)
    base_cols = [c for c in cols if all(b == 0 for b in c.b)]
    hinv = ctx.h.inverse()
    out = []
    z12 = None
    for _ in range(count):
        col = rng.choice(base_cols)
        vec = vacuum(tree, ctx, col)
        for hole in range(tree.g):
            for _ in range(rng.randrange(0, ctx.d - col.a[hole])):
                vec = vec.scaled(ctx.coerce(2)).add(z_multiply(vec, hole, ctx))
                vec = vec.scaled(hinv)
        if tree.g == 2 and tree.s == 0 and rng.random() < 0.5:
            if z12 is None:
                z12 = curve12_matrix(tree, ctx, table, width_cap)
            vec = _v12_apply(ctx, cols, z12, vec, hinv)
        out.append(vec)
    return out


def _apply_matrix(ctx, cols, mat, vec):
    index = {c: k for k, c in enumerate(cols)}
    coords = [ctx.zero] * len(cols)
    for col, v in vec.coords.items():
        k = index[col]
        for i in range(len(cols)):
            if not mat[i][k].is_zero():
                coords[i] = coords[i] + mat[i][k] * v
    return HandlebodyVector(vec.tree, {
        cols[i]: coords[i] for i in range(len(cols)) if not coords[i].is_zero()})


def _v12_apply(ctx, cols, z12, vec, hinv):
    """v_{12} x = h^-1 (2 x + z_{12} x)."""
    zx = _apply_matrix(ctx, cols, z12, vec)
    return vec.scaled(ctx.coerce(2)).add(zx).scaled(hinv)


def curve12_matrix(tree, ctx, table=None, width_cap=DEFAULT_WIDTH_CAP):
    """Multiplication by the curve around both holes (genus 2, no points).

    Computed by the pairing solve against the graph basis, with the curve
    realized as an extra strand threading both belts of the doubled
    handlebody.
    """
    if table is None:
        table = RecouplingTable(ctx)
    cols, gram_g = graph_gram(tree, ctx, table, width_cap, off_diagonal=False)
    n = len(cols)
    mat = [[ctx.zero] * n for _ in range(n)]
    for j, sig in enumerate(cols):
        for i, tau in enumerate(cols):
            def fn(colors, _s=sig, _t=tau):
                return doubled_g2(
                    ctx,
                    (_s.loop_colors()[0], _s.loop_colors()[1], 2 * _s.a[0]),
                    (_t.loop_colors()[0], _t.loop_colors()[1], 2 * _t.a[0]),
                    colors, oval=1, width_cap=width_cap)
            pairing = _surgery_value(ctx, table, 2, fn, width_cap)
            mat[i][j] = pairing / gram_g[i][i]
    return mat


def eyeglass_expansion_check(ctx, width_cap=DEFAULT_WIDTH_CAP):
    """The two-loop graph vector expanded over v-elements, as vectors.

    g((1,1),(0,0)) = h v12 + [2]^-1 (h^2 v1 v2 - 2h v1 - 2h v2
                                     - 2 zeta^-1 h^2) applied to the vacuum.
    """
    tree = standard_tree(2)
    cols = enumerate_small_colorings(tree, ctx)
    table = RecouplingTable(ctx)
    h = ctx.h
    hinv = h.inverse()
    vac = vacuum(tree, ctx, next(c for c in cols
                                 if c.a == (0, 0) and c.b == (0, 0)))

    def v_op(vec, hole):
        return vec.scaled(ctx.coerce(2)).add(z_multiply(vec, hole, ctx)).scaled(hinv)

    z12 = curve12_matrix(tree, ctx, table, width_cap)
    v12_vac = _v12_apply(ctx, cols, z12, vac, hinv)
    q2 = ctx.quantum_int(2)
    rhs = v12_vac.scaled(h)
    t = v_op(v_op(vac, 0), 1).scaled(h * h)
    t = t.add(v_op(vac, 0).scaled(-2 * h))
    t = t.add(v_op(vac, 1).scaled(-2 * h))
    t = t.add(vac.scaled(-2 * (ctx.zeta_p ** -1) * h * h))
    rhs = rhs.add(t.scaled(q2.inverse()))
    lhs = vacuum(tree, ctx, next(c for c in cols
                                 if c.a == (1, 1) and c.b == (0, 0)))
    diff = lhs.add(rhs.scaled(-ctx.one))
    return {c: v for c, v in diff.coords.items() if not v.is_zero()} == {}
