"""Exact Kauffman-bracket evaluation by a left-to-right transfer sweep.

A diagram is a *program*: a list of local events acting on a horizontal list
of open wires (sweep goes left to right, wire 0 on top).  Events:

    ("cup", i)        two new wires at positions i, i+1, joined by an arc
    ("cap", i)        wires i and i+1 are joined and closed
    ("cross", i, s)   wires i, i+1 cross; s=+1 expands as A*id + A^-1*e_i
                      (a kink built from s=+1 multiplies by -A^3)
    ("jw", i, n)      the Jones-Wenzl idempotent f_n on wires i..i+n-1

The sweep state is a linear combination of crossingless perfect matchings of
the open wires with exact cyclotomic coefficients; closed loops contribute
delta = -A^2 - A^-2.  The bracket of the empty diagram is 1.

``Prog`` provides cable-level helpers (nested cup/cap blocks, cable
crossings, diagrammatic ribbon kinks, trivalent-vertex splits and merges)
from which the standard closed nets (unknot, curl, theta, tetrahedron, Hopf
link) are built.  These nets are the ground truth that the closed-form
recoupling tables are checked against.
"""

from __future__ import annotations

DEFAULT_WIDTH_CAP = 20


class WidthCapError(RuntimeError):
    """The sweep needed more simultaneous open wires than the configured cap."""


# ---------------------------------------------------------------------------
# matching surgery
# ---------------------------------------------------------------------------


def _cup(m, i):
    out = []
    for k in range(len(m) + 2):
        if k == i:
            out.append(i + 1)
        elif k == i + 1:
            out.append(i)
        else:
            old = k if k < i else k - 2
            p = m[old]
            out.append(p if p < i else p + 2)
    return tuple(out)


def _cap(m, i):
    """Close wires i, i+1.  Returns (new_matching, closed_loop?)."""
    p, q = m[i], m[i + 1]
    loop = p == i + 1
    out = []
    for k in range(len(m)):
        if k == i or k == i + 1:
            continue
        pk = m[k]
        if pk == i:
            pk = q
        elif pk == i + 1:
            pk = p
        out.append(pk if pk < i else pk - 2)
    return tuple(out), loop


def _ei(m, i):
    """Temperley-Lieb generator on wires i, i+1.  Returns (matching, loop?)."""
    p, q = m[i], m[i + 1]
    if p == i + 1:
        return m, True
    out = list(m)
    out[p] = q
    out[q] = p
    out[i] = i + 1
    out[i + 1] = i
    return tuple(out), False


def apply_tangle(m, i, n_in, n_out, pairing):
    """Glue a crossingless (n_in -> n_out) tangle onto wires i..i+n_in-1.

    ``pairing`` is a partner-index tuple on n_in + n_out points, inputs
    first.  Returns (new_matching, n_loops).
    """
    w = len(m)
    seg_end = i + n_in

    # adjacency of the glued 1-complex
    def state_edge(k):
        return ("s", m[k])

    def tl_edge(x):
        return ("t", pairing[x])

    def glue(node):
        kind, idx = node
        if kind == "s" and i <= idx < seg_end:
            return ("t", idx - i)
        if kind == "t" and idx < n_in:
            return ("s", idx + i)
        return None

    def is_terminal(node):
        return glue(node) is None

    def new_index(node):
        kind, idx = node
        if kind == "s":
            return idx if idx < i else idx - n_in + n_out
        return i + (idx - n_in)

    terminals = [("s", k) for k in range(w) if not (i <= k < seg_end)]
    terminals += [("t", j) for j in range(n_in, n_in + n_out)]

    out = [None] * (w - n_in + n_out)
    visited = set()
    for t in terminals:
        if t in visited:
            continue
        visited.add(t)
        # step across the matching edge, then alternate glue/matching
        node = state_edge(t[1]) if t[0] == "s" else tl_edge(t[1])
        visited.add(node)
        while not is_terminal(node):
            node = glue(node)
            visited.add(node)
            node = state_edge(node[1]) if node[0] == "s" else tl_edge(node[1])
            visited.add(node)
        a, b = new_index(t), new_index(node)
        out[a] = b
        out[b] = a
    loops = 0
    for k in range(i, seg_end):
        node = ("s", k)
        if node in visited:
            continue
        loops += 1
        while node not in visited:
            visited.add(node)
            nxt = state_edge(node[1]) if node[0] == "s" else tl_edge(node[1])
            visited.add(nxt)
            node = glue(nxt)
    if any(v is None for v in out):
        raise AssertionError("tangle gluing failed to pair all endpoints")
    return tuple(out), loops


# ---------------------------------------------------------------------------
# Temperley-Lieb elements and the Jones-Wenzl idempotents
# ---------------------------------------------------------------------------


def _tl_identity(n):
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _tl_e(n, k):
    pair = list(_tl_identity(n))
    pair[k] = k + 1
    pair[k + 1] = k
    pair[n + k] = n + k + 1
    pair[n + k + 1] = n + k
    return tuple(pair)


def _tl_compose(p1, p2, n):
    """p1 followed by p2 (p1's outputs glued to p2's inputs)."""
    # nodes: ("a", x) on p1, ("b", y) on p2
    def glue(node):
        kind, idx = node
        if kind == "a" and idx >= n:
            return ("b", idx - n)
        if kind == "b" and idx < n:
            return ("a", idx + n)
        return None

    def edge(node):
        kind, idx = node
        return (kind, (p1 if kind == "a" else p2)[idx])

    terminals = [("a", x) for x in range(n)] + [("b", y) for y in range(n, 2 * n)]

    def new_index(node):
        kind, idx = node
        return idx if kind == "a" else idx

    out = [None] * (2 * n)
    visited = set()
    for t in terminals:
        if t in visited:
            continue
        visited.add(t)
        node = edge(t)
        visited.add(node)
        while glue(node) is not None:
            node = glue(node)
            visited.add(node)
            node = edge(node)
            visited.add(node)
        out[new_index(t)] = new_index(node)
        out[new_index(node)] = new_index(t)
    loops = 0
    for x in range(n, 2 * n):
        node = ("a", x)
        if node in visited:
            continue
        loops += 1
        while node not in visited:
            visited.add(node)
            nxt = edge(node)
            visited.add(nxt)
            node = glue(nxt)
    return tuple(out), loops


def tl_mult(ctx, X, Y, n):
    out = {}
    delta = ctx.delta
    for p1, c1 in X.items():
        for p2, c2 in Y.items():
            pairing, loops = _tl_compose(p1, p2, n)
            c = c1 * c2
            for _ in range(loops):
                c = c * delta
            if pairing in out:
                out[pairing] = out[pairing] + c
            else:
                out[pairing] = c
    return {p: c for p, c in out.items() if not c.is_zero()}


def jw_element(ctx, n):
    """The Jones-Wenzl idempotent f_n as {pairing: coefficient} in TL_n.

    Wenzl's recursion f_n = f_{n-1} - ([n-1]/[n]) f_{n-1} e_{n-1} f_{n-1}
    (with f_{n-1} extended by a strand).  Denominators are quantum integers
    [k], k <= n, which are invertible in O for n <= p-2.
    """
    if not 0 <= n <= ctx.p - 2:
        raise ValueError(f"Jones-Wenzl projector f_{n} is undefined for p={ctx.p}")
    cache = ctx.caches.setdefault("jw", {})
    if n in cache:
        return cache[n]
    if n == 0:
        out = {(): ctx.one}
    elif n == 1:
        out = {(1, 0): ctx.one}
    else:
        prev = jw_element(ctx, n - 1)
        emb = {}
        for p, c in prev.items():
            q = [None] * (2 * n)
            for x in range(2 * (n - 1)):
                px = p[x]
                nx = x if x < n - 1 else x + 1
                npx = px if px < n - 1 else px + 1
                q[nx] = npx
            q[n - 1] = 2 * n - 1
            q[2 * n - 1] = n - 1
            emb[tuple(q)] = c
        # f_n = emb - (Delta_{n-2}/Delta_{n-1}) emb e_{n-1} emb, and with
        # Delta_k = (-1)^k [k+1] the ratio is -[n-1]/[n]
        e = {_tl_e(n, n - 2): ctx.one}
        mid = tl_mult(ctx, emb, tl_mult(ctx, e, emb, n), n)
        coeff = ctx.quantum_int(n - 1) / ctx.quantum_int(n)
        out = dict(emb)
        for p, c in mid.items():
            c = c * coeff
            if p in out:
                v = out[p] + c
                if v.is_zero():
                    del out[p]
                else:
                    out[p] = v
            else:
                out[p] = c
    cache[n] = out
    return out


# ---------------------------------------------------------------------------
# the sweep engine
# ---------------------------------------------------------------------------


def run_program(ctx, events, width_cap=DEFAULT_WIDTH_CAP):
    """Run an event program; return the final {matching: coefficient} state."""
    return _EventDriver(ctx, width_cap).run({(): ctx.one}, events)


def bracket_program(ctx, events, width_cap=DEFAULT_WIDTH_CAP):
    """Bracket of a closed program, normalized to 1 on the empty diagram."""
    states = run_program(ctx, events, width_cap)
    if not states:
        return ctx.zero
    if list(states) != [()]:
        raise ValueError("program is not closed (open wires remain)")
    return states[()]


# ---------------------------------------------------------------------------
# program builder with cable-level helpers
# ---------------------------------------------------------------------------


class Prog:
    """Accumulates events; all block helpers keep wire bookkeeping explicit."""

    def __init__(self):
        self.events = []
        self.width = 0
        self.max_width = 0

    def _grow(self, k):
        self.width += k
        if self.width > self.max_width:
            self.max_width = self.width

    def cup(self, i):
        self.events.append(("cup", i))
        self._grow(2)

    def cap(self, i):
        self.events.append(("cap", i))
        self._grow(-2)

    def cross(self, i, sign):
        self.events.append(("cross", i, sign))

    def jw(self, i, n):
        if n > 1:
            self.events.append(("jw", i, n))

    def scale(self, factor):
        self.events.append(("scale", factor))

    def cup_block(self, i, k):
        """k nested arcs; legs at i..i+2k-1, leg i+j paired with i+2k-1-j."""
        for j in range(k):
            self.cup(i + j)

    def cap_block(self, i, k):
        """Close wires i..i+2k-1, joining i+j with i+2k-1-j (nested)."""
        for j in range(k - 1, -1, -1):
            self.cap(i + j)

    def cross_cables(self, i, m, n, sign):
        """Cable of m wires at i crosses the cable of n wires at i+m.

        The m-cable ends up at i+n.  ``sign`` is the elementary crossing sign
        used for every strand pair (consistent over/under for the cables).
        """
        for a in range(m - 1, -1, -1):
            # move strand i+a rightwards past the n-cable
            for b in range(n):
                self.cross(i + a + b, sign)

    def kink(self, i, n, sign):
        """Diagrammatic ribbon twist (one full kink) on the n-cable at i."""
        self.cup_block(i + n, n)
        self.cross_cables(i, n, n, sign)
        self.cap_block(i + n, n)

    def vertex_split(self, pos, Z, X, Y, project=True):
        """Trivalent vertex: cable Z at pos splits into X (top) and Y."""
        t = (X + Y - Z) // 2
        if t < 0 or (X + Y + Z) % 2 or Z - X + t < 0 or Z - Y + t < 0:
            raise ValueError(f"inadmissible vertex ({X},{Y},{Z})")
        self.cup_block(pos + (X - t), t)
        if project:
            self.jw(pos, X)
            self.jw(pos + X, Y)

    def vertex_merge(self, pos, X, Y, Z, project=True):
        """Trivalent vertex: adjacent cables X (top) and Y merge into Z."""
        t = (X + Y - Z) // 2
        if t < 0 or (X + Y + Z) % 2 or Z - X + t < 0 or Z - Y + t < 0:
            raise ValueError(f"inadmissible vertex ({X},{Y},{Z})")
        self.cap_block(pos + (X - t), t)
        if project:
            self.jw(pos, Z)


# ---------------------------------------------------------------------------
# standard closed nets
# ---------------------------------------------------------------------------


def unknot_net(ctx, n, kinks=0, kink_sign=1):
    """0-framed unknot colored n, with optional diagrammatic kinks."""
    pr = Prog()
    pr.cup_block(0, n)
    pr.jw(0, n)
    for _ in range(abs(kinks)):
        pr.kink(0, n, kink_sign if kinks > 0 else -kink_sign)
    pr.cap_block(0, n)
    return pr


def theta_net(ctx, a, b, c):
    pr = Prog()
    pr.cup_block(0, c)
    pr.jw(0, c)
    pr.vertex_split(0, c, a, b)
    pr.vertex_merge(0, a, b, c, project=False)
    pr.cap_block(0, c)
    return pr


def tet_net(ctx, A, B, C, D, E, F):
    """Tetrahedral net with vertices (A,B,E), (C,D,E), (A,C,F), (B,D,F)."""
    pr = Prog()
    pr.cup_block(0, F)
    pr.jw(0, F)
    pr.vertex_split(0, F, A, C)          # vertex (A, C, F)
    pr.vertex_split(0, A, B, E)          # vertex (A, B, E)
    pr.vertex_merge(B, E, C, D)          # vertex (C, D, E) -> D below B
    pr.vertex_merge(0, B, D, F, project=False)   # vertex (B, D, F)
    pr.cap_block(0, F)
    return pr


def hopf_net(ctx, i, j, sign=1):
    """0-framed Hopf link colored (i, j)."""
    pr = Prog()
    pr.cup_block(0, i)
    pr.jw(0, i)
    pr.cup_block(i, j)
    pr.jw(i, j)
    pr.cross_cables(0, i, j, sign)
    pr.cross_cables(j + i, j, i, sign)
    pr.cap_block(j, i)
    pr.cap_block(0, j)
    return pr


# ---------------------------------------------------------------------------
# relative four-point diagrams (boundary cables P0..P3, top to bottom)
# ---------------------------------------------------------------------------
#
# All builders below leave the four boundary cables open, in the order
# (P0, P1, P2, P3) from top to bottom, so their final states are directly
# comparable linear combinations of crossingless matchings.


def _two_inputs(pr, a, b):
    """Boundary cables P0 (color a), P1 (color b) with inner halves open.

    Leaves wires [P0(a), P1(b), inB(b), inA(a)] where inA continues P0's
    strand and inB continues P1's.
    """
    pr.cup_block(0, a)
    pr.jw(0, a)
    pr.cup_block(a, b)
    pr.jw(a, b)


def bridge_v(ctx, a, b, c, d, f):
    """Tree in the channel {P0,P1 | P2,P3} with middle edge colored f."""
    pr = Prog()
    _two_inputs(pr, a, b)
    pr.vertex_merge(a + b, b, a, f)
    pr.vertex_split(a + b, f, c, d)
    return pr


def bridge_h(ctx, a, b, c, d, e):
    """Tree in the channel {P1,P2 | P3,P0} with middle edge colored e."""
    pr = Prog()
    _two_inputs(pr, a, b)
    pr.vertex_split(a + b, b, c, e)
    pr.vertex_merge(a + b + c, e, a, d)
    return pr


def arcs_adjacent(ctx, a, b):
    """Arcs P0-P1 (color a) and P2-P3 (color b)."""
    pr = Prog()
    pr.cup_block(0, a)
    pr.jw(0, a)
    pr.cup_block(2 * a, b)
    pr.jw(2 * a, b)
    return pr


def arcs_nested(ctx, a, b):
    """Arcs P0-P3 (color a) and P1-P2 (color b), nested."""
    pr = Prog()
    pr.cup_block(0, a)
    pr.jw(0, a)
    pr.cup_block(a, b)
    pr.jw(a, b)
    return pr


def cross_pair(ctx, a, b, sign):
    """Strands P0-P2 (color a) and P1-P3 (color b) with one cable crossing."""
    pr = Prog()
    _two_inputs(pr, a, b)
    pr.cross_cables(a + b, b, a, sign)
    return pr


def states_add(ctx, *weighted):
    """Linear combination of relative states: [(coeff, state), ...]."""
    out = {}
    for coeff, st in weighted:
        for m, c in st.items():
            v = coeff * c
            if m in out:
                out[m] = out[m] + v
            else:
                out[m] = v
    return {m: c for m, c in out.items() if not c.is_zero()}


def close_with_program(ctx, state, events, width_cap=DEFAULT_WIDTH_CAP):
    """Run further events on an existing relative state and close it."""
    states = run_program_from(ctx, dict(state), events, width_cap)
    if not states:
        return ctx.zero
    if list(states) != [()]:
        raise ValueError("closure did not close all wires")
    return states[()]


def run_program_from(ctx, states, events, width_cap=DEFAULT_WIDTH_CAP):
    """Like run_program but starting from a given state dictionary."""
    if not states:
        return {}
    return _EventDriver(ctx, width_cap).run(states, events)


class _EventDriver:
    def __init__(self, ctx, width_cap):
        self.ctx = ctx
        self.width_cap = width_cap

    def run(self, states, events):
        ctx = self.ctx
        A = ctx.A
        Ainv = A ** (2 * ctx.p - 1)
        delta = ctx.delta
        for ev in events:
            if not states:
                return {}
            op = ev[0]
            width = len(next(iter(states)))
            if op == "cup":
                if width + 2 > self.width_cap:
                    raise WidthCapError(
                        f"sweep width {width + 2} exceeds cap {self.width_cap}")
                states = {_cup(m, ev[1]): c for m, c in states.items()}
            elif op == "cap":
                out = {}
                for m, c in states.items():
                    nm, loop = _cap(m, ev[1])
                    if loop:
                        c = c * delta
                    if nm in out:
                        out[nm] = out[nm] + c
                    else:
                        out[nm] = c
                states = {m: c for m, c in out.items() if not c.is_zero()}
            elif op == "cross":
                i, s = ev[1], ev[2]
                a, b = (A, Ainv) if s > 0 else (Ainv, A)
                out = {}
                for m, c in states.items():
                    ca = c * a
                    if m in out:
                        out[m] = out[m] + ca
                    else:
                        out[m] = ca
                    em, loop = _ei(m, i)
                    cb = c * b
                    if loop:
                        cb = cb * delta
                    if em in out:
                        out[em] = out[em] + cb
                    else:
                        out[em] = cb
                states = {m: c for m, c in out.items() if not c.is_zero()}
            elif op == "jw":
                i, n = ev[1], ev[2]
                if n <= 1:
                    continue
                f = jw_element(ctx, n)
                out = {}
                for m, c in states.items():
                    for pairing, fc in f.items():
                        nm, loops = apply_tangle(m, i, n, n, pairing)
                        v = c * fc
                        for _ in range(loops):
                            v = v * delta
                        if nm in out:
                            out[nm] = out[nm] + v
                        else:
                            out[nm] = v
                states = {m: c for m, c in out.items() if not c.is_zero()}
            elif op == "scale":
                states = {m: c * ev[1] for m, c in states.items()}
            else:
                raise ValueError(f"unknown event {ev!r}")
        return states
