"""PD-coded link diagrams: parsing, orientation data, and evaluation.

File format (one statement per line, '#' comments):

    component <name> color=<int> twists=<int> [role=<word>] arcs=<a1,a2,...>
    crossing <a> <b> <c> <d>

A crossing lists its four arc labels counterclockwise starting from the
incoming under-strand (the convention of the usual PD calculus); each arc
label appears exactly twice overall.  A component's ``arcs`` list is its
traversal order, which orients it.  ``color`` is the cabling color (the
component is replaced by that many parallel strands through a Jones-Wenzl
idempotent), and ``twists`` adds diagrammatic ribbon kinks on top of the
blackboard framing.

Evaluation goes through a straight-line planar embedding of the diagram
(via the rotation system the PD code carries) and a left-to-right sweep
compiled into planar-engine events.  A brute-force Kauffman state sum over
all smoothings is kept alongside as an independent oracle for uncabled
diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from . import planar
from .planar import Prog, WidthCapError

# The A-smoothing of a crossing (a, b, c, d) joins a-b and c-d; with the
# counterclockwise slot convention this reproduces the textbook bracket of
# the standard trefoil codes (pinned by tests against published values).
_A_JOINS_AB = True


@dataclass
class Component:
    name: str
    arcs: list
    color: int = 1
    twists: int = 0
    role: str = ""


@dataclass
class ColoredDiagram:
    crossings: list = field(default_factory=list)
    components: list = field(default_factory=list)

    # -- bookkeeping -------------------------------------------------------

    def validate(self):
        seen = {}
        for x in self.crossings:
            if len(x) != 4:
                raise ValueError(f"crossing {x} is not a quadruple")
            for a in x:
                seen[a] = seen.get(a, 0) + 1
        comp_arcs = [a for comp in self.components for a in comp.arcs]
        if len(set(comp_arcs)) != len(comp_arcs):
            raise ValueError("components share arc labels")
        for a, cnt in seen.items():
            if cnt != 2:
                raise ValueError(f"arc {a} appears {cnt} times in crossings")
        crossing_arcs = set(seen)
        declared = set(comp_arcs)
        if not crossing_arcs <= declared:
            raise ValueError("crossing arcs missing from component lists")
        return self

    def component_of(self):
        out = {}
        for idx, comp in enumerate(self.components):
            for a in comp.arcs:
                out[a] = idx
        return out

    def succ(self):
        """Next arc along each component's traversal."""
        out = {}
        for comp in self.components:
            n = len(comp.arcs)
            for i, a in enumerate(comp.arcs):
                out[a] = comp.arcs[(i + 1) % n]
        return out

    def arc_flow(self):
        """For each arc, its (out-crossing-slot, in-crossing-slot).

        The under-strand convention (in at slot 0, out at slot 2) seeds the
        orientation flow; over-slot directions follow from each arc having
        exactly one outgoing and one incoming endpoint.
        """
        in_slot = {}
        out_slot = {}
        undecided = []
        for k, x in enumerate(self.crossings):
            a, b, c, d = x
            in_slot[a] = (k, 0)
            out_slot[c] = (k, 2)
            undecided.append(k)
        changed = True
        while undecided and changed:
            changed = False
            rest = []
            for k in undecided:
                a, b, c, d = self.crossings[k]
                b_in = b in in_slot
                b_out = b in out_slot
                d_in = d in in_slot
                d_out = d in out_slot
                if b_in or d_out:
                    # b terminates elsewhere (or d starts elsewhere): the
                    # over-strand runs d -> b here
                    in_slot.setdefault(d, (k, 3))
                    out_slot.setdefault(b, (k, 1))
                    changed = True
                elif d_in or b_out:
                    # over-strand runs b -> d
                    in_slot.setdefault(b, (k, 1))
                    out_slot.setdefault(d, (k, 3))
                    changed = True
                else:
                    rest.append(k)
            undecided = rest
        if undecided:
            # isolated over-components; orient them arbitrarily
            for k in undecided:
                a, b, c, d = self.crossings[k]
                if b not in in_slot and d not in out_slot:
                    in_slot[b] = (k, 1)
                    out_slot[d] = (k, 3)
        return in_slot, out_slot

    def crossing_sign(self, x):
        """Oriented sign: +1 when the over-strand runs slot d -> slot b.

        With the counterclockwise slot convention the under-strand moves
        from slot 0 towards slot 2, and det(over direction, under direction)
        is positive exactly for over running d -> b.
        """
        a, b, c, d = x
        in_slot, out_slot = self.arc_flow()
        k = self.crossings.index(x)
        if in_slot.get(b) == (k, 1):
            return -1
        if in_slot.get(d) == (k, 3):
            return 1
        raise ValueError(f"crossing {x}: cannot orient over-strand")

    def writhe(self, comp_idx=None):
        comp_of = self.component_of()
        w = 0
        for x in self.crossings:
            a, b, c, d = x
            cu, co = comp_of[a], comp_of[b]
            if comp_idx is None or (cu == comp_idx and co == comp_idx):
                if comp_idx is None or cu == co:
                    w += self.crossing_sign(x)
        return w

    def linking(self, i, j):
        comp_of = self.component_of()
        acc = 0
        for x in self.crossings:
            a, b, c, d = x
            cu, co = comp_of[a], comp_of[b]
            if {cu, co} == {i, j} and cu != co:
                acc += self.crossing_sign(x)
        if acc % 2:
            raise ValueError("odd mixed crossing sign sum; bad component data")
        return acc // 2

    def framing_matrix(self):
        """Symmetric integer matrix: blackboard writhe + twists on the
        diagonal, linking numbers off it."""
        n = len(self.components)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = self.writhe(i) + self.components[i].twists
            for j in range(i + 1, n):
                out[i][j] = out[j][i] = self.linking(i, j)
        return out

    def with_colors(self, colors, twists=None):
        comps = []
        for comp in self.components:
            c = colors.get(comp.name, comp.color)
            t = comp.twists if twists is None else twists.get(comp.name, comp.twists)
            comps.append(Component(comp.name, list(comp.arcs), c, t, comp.role))
        return ColoredDiagram(list(self.crossings), comps)

    # -- io ------------------------------------------------------------------

    @classmethod
    def from_text(cls, text):
        diag = cls()
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "crossing":
                diag.crossings.append(tuple(int(p) for p in parts[1:5]))
            elif parts[0] == "component":
                name = parts[1]
                kw = {"color": 1, "twists": 0, "role": "", "arcs": []}
                for p in parts[2:]:
                    k, v = p.split("=", 1)
                    if k == "arcs":
                        kw["arcs"] = [int(t) for t in v.split(",") if t]
                    elif k in ("color", "twists"):
                        kw[k] = int(v)
                    elif k == "role":
                        kw["role"] = v
                diag.components.append(Component(name, **kw))
            else:
                raise ValueError(f"unrecognized line: {raw!r}")
        return diag.validate()

    def to_text(self):
        lines = []
        for comp in self.components:
            arcs = ",".join(str(a) for a in comp.arcs)
            role = f" role={comp.role}" if comp.role else ""
            lines.append(
                f"component {comp.name} color={comp.color} "
                f"twists={comp.twists}{role} arcs={arcs}"
            )
        for x in self.crossings:
            lines.append("crossing %d %d %d %d" % tuple(x))
        return "\n".join(lines) + "\n"


def parse_pd(text):
    return ColoredDiagram.from_text(text)


# ---------------------------------------------------------------------------
# brute-force state sum (oracle for uncabled diagrams)
# ---------------------------------------------------------------------------


def bracket_statesum(ctx, diagram):
    """Kauffman bracket by summing over all 2^n smoothings.

    Components must be colored 1 and twist-free; exponential in the number
    of crossings, usable as an independent oracle for small diagrams.
    """
    for comp in diagram.components:
        if comp.color != 1 or comp.twists:
            raise ValueError("state sum supports color-1, untwisted diagrams")
    xs = diagram.crossings
    n = len(xs)
    arcs = sorted({a for x in xs for a in x})
    free = [c for c in diagram.components if not any(a in set(arcs) for a in c.arcs)]
    A = ctx.A
    Ainv = A ** (2 * ctx.p - 1)
    delta = ctx.delta
    total = ctx.zero
    for mask in range(1 << n):
        parent = {a: a for a in arcs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        exp = 0
        for k, (a, b, c, d) in enumerate(xs):
            if (mask >> k) & 1:
                exp += 1
                pairs = ((a, b), (c, d)) if _A_JOINS_AB else ((a, d), (b, c))
            else:
                exp -= 1
                pairs = ((a, d), (b, c)) if _A_JOINS_AB else ((a, b), (c, d))
            for u, v in pairs:
                union(u, v)
        loops = len({find(a) for a in arcs})
        coeff = (A if exp >= 0 else Ainv) ** abs(exp)
        term = coeff
        for _ in range(loops):
            term = term * delta
        total = total + term
    for _ in free:
        total = total * delta
    return total


# ---------------------------------------------------------------------------
# planar embedding and sweep compilation
# ---------------------------------------------------------------------------


def _build_embedding(diagram):
    """Planar embedding with two subdivision nodes per arc.

    Nodes: ("x", k) for crossings, ("a", arc, 0/1) for arc interiors.
    The rotation at a crossing is its PD slot order (counterclockwise).
    Returns (embedding, adjacency-in-rotation-order).
    """
    # endpoints of each arc: (crossing index, slot) pairs in traversal order
    ends = {}
    for k, x in enumerate(diagram.crossings):
        for slot, a in enumerate(x):
            ends.setdefault(a, []).append((k, slot))
    rot = {}
    for k, x in enumerate(diagram.crossings):
        rot[("x", k)] = [("a", a, _end_index(ends, a, k, slot)) for slot, a in enumerate(x)]
    for a, es in ends.items():
        if len(es) != 2:
            raise ValueError(f"arc {a} has {len(es)} crossing endpoints")
        (k0, s0), (k1, s1) = es
        rot[("a", a, 0)] = [("x", k0), ("a", a, 1)]
        rot[("a", a, 1)] = [("a", a, 0), ("x", k1)]
    emb = nx.PlanarEmbedding()
    # networkx realizes the insertion order clockwise in its straight-line
    # drawing; feed rotations reversed so the drawn picture is the PD's
    # counterclockwise convention (verified by the leg-slope tests)
    for v, nbrs in rot.items():
        prev = None
        for w in reversed(nbrs):
            if prev is None:
                emb.add_half_edge(v, w)
            else:
                emb.add_half_edge(v, w, ccw=prev)
            prev = w
    emb.check_structure()
    return emb, rot


def _end_index(ends, arc, k, slot):
    """0 for the first listed endpoint of the arc, 1 for the second."""
    return 0 if ends[arc][0] == (k, slot) else 1


def _positions(emb):
    pos = nx.combinatorial_embedding_to_pos(emb)
    ys = [abs(p[1]) for p in pos.values()] or [0]
    eps = Fraction(1, 2 * (max(ys) + 1))
    return {
        v: (Fraction(x) + Fraction(y) * eps, Fraction(y)) for v, (x, y) in pos.items()
    }


class _Lane:
    """An open cable along one edge, from a processed to an unprocessed node."""

    __slots__ = ("arc", "width", "src", "dst", "p0", "p1")

    def __init__(self, arc, width, src, dst, pos):
        self.arc = arc
        self.width = width
        self.src = src  # processed node
        self.dst = dst  # unprocessed node
        self.p0 = pos[src]
        self.p1 = pos[dst]

    def y_at(self, x):
        (x0, y0), (x1, y1) = self.p0, self.p1
        if x1 == x0:
            return y0
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def compile_events(ctx, diagram, jw_arcs=None):
    """Compile a PD diagram to planar-engine events.

    ``jw_arcs`` optionally maps component index -> arc on which to insert
    the component's idempotent (defaults to its first arc).  Returns the
    Prog.  Zero-colored components are dropped; crossing-free components
    contribute plain cabled circles.
    """
    comp_of = diagram.component_of()
    succ = diagram.succ()
    colors = {i: comp.color for i, comp in enumerate(diagram.components)}
    twists = {i: comp.twists for i, comp in enumerate(diagram.components)}
    if jw_arcs is None:
        jw_arcs = {}
    for i, comp in enumerate(diagram.components):
        arcs_in_crossings = [a for a in comp.arcs if any(a in x for x in diagram.crossings)]
        jw_arcs.setdefault(i, arcs_in_crossings[0] if arcs_in_crossings else None)

    pr = Prog()

    # crossing-free components first (disjoint circles)
    for i, comp in enumerate(diagram.components):
        if any(any(a in x for x in diagram.crossings) for a in comp.arcs):
            continue
        m = colors[i]
        if m == 0:
            continue
        pr.cup_block(0, m)
        pr.jw(0, m)
        for _ in range(abs(twists[i])):
            pr.kink(0, m, 1 if twists[i] > 0 else -1)
        pr.cap_block(0, m)

    if not diagram.crossings:
        return pr

    emb, rot = _build_embedding(diagram)
    pos = _positions(emb)

    # handle disconnected diagrams piecewise
    und = nx.Graph(emb)
    for piece in nx.connected_components(und):
        _compile_piece(ctx, diagram, pr, rot, pos, piece, comp_of, colors,
                       twists, jw_arcs)
    return pr


def _compile_piece(ctx, diagram, pr, rot, pos, piece, comp_of, colors, twists,
                   jw_arcs):
    nodes = sorted((n for n in piece), key=lambda n: pos[n][0])
    lanes = []  # list of _Lane, top (index 0) to bottom

    def lane_wire_start(idx):
        return sum(l.width for l in lanes[:idx])

    def emit_component_extras(arc, wire_pos, width):
        comp = comp_of[arc]
        if jw_arcs.get(comp) == arc:
            pr.jw(wire_pos, width)
            t = twists[comp]
            for _ in range(abs(t)):
                pr.kink(wire_pos, width, 1 if t > 0 else -1)
            jw_arcs[comp] = ("done",)

    for node in nodes:
        kind = node[0]
        nbrs = rot[node]
        if kind == "a":
            arc = node[1]
            my_in = [i for i, l in enumerate(lanes) if l.dst == node]
            k = len(my_in)
            width = colors[comp_of[arc]]
            if k == 1:
                i = my_in[0]
                out = [w for w in nbrs if lanes[i].src != w]
                lanes[i] = _Lane(arc, width, node, out[0], pos)
                if width:
                    emit_component_extras(arc, lane_wire_start(i), width)
            elif k == 2:
                i, j = sorted(my_in)
                if j != i + 1:
                    raise AssertionError("cap lanes not adjacent")
                if width:
                    emit_component_extras(arc, lane_wire_start(i), width)
                    pr.cap_block(lane_wire_start(i), width)
                del lanes[j]
                del lanes[i]
            elif k == 0:
                out = [w for w in nbrs if pos[w][0] > pos[node][0]]
                if len(out) != 2:
                    raise AssertionError("isolated subdivision node")
                idx = insert_index_for_node(lanes, pos, node)
                # two new lanes toward both neighbors; upper one is the one
                # with the larger slope
                o_sorted = sorted(
                    out, key=lambda w: _slope(pos[node], pos[w]), reverse=True
                )
                lanes.insert(idx, _Lane(arc, width, node, o_sorted[1], pos))
                lanes.insert(idx, _Lane(arc, width, node, o_sorted[0], pos))
                if width:
                    pr.cup_block(lane_wire_start(idx), width)
                    emit_component_extras(arc, lane_wire_start(idx), width)
        else:
            _compile_crossing(ctx, diagram, pr, node, rot, pos, lanes,
                              lane_wire_start, comp_of, colors,
                              emit_component_extras)


def _slope(p, q):
    (x0, y0), (x1, y1) = p, q
    if x1 == x0:
        return Fraction(10 ** 9) if y1 > y0 else Fraction(-10 ** 9)
    return (y1 - y0) / (x1 - x0)


# sign rule: the emitted elementary crossing sign when the OVER strand
# enters on the upper lane (pinned by the trefoil tests)
_SIGN_OVER_UPPER = 1


def _compile_crossing(ctx, diagram, pr, node, rot, pos, lanes, lane_wire_start,
                      comp_of, colors, emit_extras):
    k_idx = node[1]
    nbrs = rot[node]  # slot order, counterclockwise; slots 0,2 = under strand
    x_node = pos[node][0]
    is_in = [pos[w][0] < x_node for w in nbrs]
    kin = sum(is_in)
    slots_in = [s for s in range(4) if is_in[s]]

    # find the contiguous CCW block of in-slots and its start r
    def block_start(slots):
        if not slots:
            return None
        if len(slots) == 4:
            return None  # resolved from lane order below
        for r in slots:
            if all(((r + t) % 4) in slots for t in range(len(slots))):
                if ((r - 1) % 4) not in slots:
                    return r
        raise AssertionError("in-slots not contiguous in rotation")

    r = block_start(slots_in)

    def lane_of_slot(s):
        w = nbrs[s]
        for i, l in enumerate(lanes):
            if l.dst == node and l.src == w:
                return i
        raise AssertionError("lane for in-slot not open")

    def width_of_slot(s):
        return colors[comp_of[nbrs[s][1]]]

    def outgoing(s):
        # replacement lane for out-slot s
        w = nbrs[s]
        return _Lane(w[1], width_of_slot(s), node, w, pos)

    def over_slot_parity(s):
        # slots 1 and 3 carry the over strand
        return s % 2 == 1

    def cross_sign(upper_slot):
        return _SIGN_OVER_UPPER if over_slot_parity(upper_slot) else -_SIGN_OVER_UPPER

    def cable_cross(pos_w, m, n, sign):
        if m and n:
            pr.cross_cables(pos_w, m, n, sign)

    if kin == 2:
        top_slot, bot_slot = r, (r + 1) % 4
        i_top = lane_of_slot(top_slot)
        i_bot = lane_of_slot(bot_slot)
        if i_bot != i_top + 1:
            raise AssertionError("crossing in-lanes not adjacent")
        m, n = lanes[i_top].width, lanes[i_bot].width
        wstart = lane_wire_start(i_top)
        cable_cross(wstart, m, n, cross_sign(top_slot))
        # out slots: (r+2) continues top_slot's strand and exits bottom;
        # (r+3) exits top
        out_top, out_bot = (r + 3) % 4, (r + 2) % 4
        lanes[i_top] = outgoing(out_top)
        lanes[i_bot] = outgoing(out_bot)
        for s, i in ((out_top, i_top), (out_bot, i_bot)):
            if colors[comp_of[nbrs[s][1]]]:
                emit_extras(nbrs[s][1], lane_wire_start(i), lanes[i].width)
    elif kin == 4:
        idxs = None
        for r0 in range(4):
            cand = [lane_of_slot((r0 + t) % 4) for t in range(4)]
            if cand == list(range(cand[0], cand[0] + 4)):
                r, idxs = r0, cand
                break
        if idxs is None:
            raise AssertionError("crossing in-lanes not adjacent")
        i0 = idxs[0]
        w1, w2 = lanes[i0 + 1].width, lanes[i0 + 2].width
        cable_cross(lane_wire_start(i0 + 1), w1, w2, cross_sign((r + 1) % 4))
        # after the crossing, cap (slot r with slot r+2) then (r+1 with r+3)
        top_w = lanes[i0].width
        if top_w:
            pr.cap_block(lane_wire_start(i0), top_w)
        mid_w = lanes[i0 + 1].width
        if mid_w:
            pr.cap_block(lane_wire_start(i0), mid_w)
        del lanes[i0 + 3]
        del lanes[i0 + 2]
        del lanes[i0 + 1]
        del lanes[i0]
    elif kin == 1:
        iW = lane_of_slot(r)
        m = lanes[iW].width
        arc_top, arc_mid, arc_bot = nbrs[(r + 3) % 4], nbrs[(r + 2) % 4], nbrs[(r + 1) % 4]
        n = colors[comp_of[arc_top[1]]]
        wstart = lane_wire_start(iW)
        if n:
            pr.cup_block(wstart, n)
        cable_cross(wstart + n, n, m, cross_sign_for_k1(r))
        lanes[iW] = outgoing((r + 2) % 4)
        lanes.insert(iW, _Lane(arc_top[1], n, node, arc_top, pos))
        lanes.insert(iW + 2, _Lane(arc_bot[1], n, node, arc_bot, pos))
        for off in (0, 1, 2):
            l = lanes[iW + off]
            if l.width:
                emit_extras(l.arc, lane_wire_start(iW + off), l.width)
    elif kin == 3:
        idxs = [lane_of_slot((r + t) % 4) for t in range(3)]
        if idxs != [idxs[0], idxs[0] + 1, idxs[0] + 2]:
            raise AssertionError("crossing in-lanes not adjacent")
        i0 = idxs[0]
        m_top = lanes[i0].width
        m_mid = lanes[i0 + 1].width
        cable_cross(lane_wire_start(i0), m_top, m_mid, cross_sign(r))
        # now (old top) sits below (old mid); cap old-top against old-bottom
        if m_top:
            pr.cap_block(lane_wire_start(i0) + m_mid, m_top)
        out = outgoing((r + 3) % 4)
        del lanes[i0 + 2]
        del lanes[i0 + 1]
        lanes[i0] = out
        if out.width:
            emit_extras(out.arc, lane_wire_start(i0), out.width)
    else:  # kin == 0
        idx = insert_index_for_node(lanes, pos, node)
        # out order top->bottom: slots r+3, r+2, r+1, r (ccw block reversed);
        # with no in-block, recover r from the geometrically topmost leg
        slopes = {s: _slope(pos[node], pos[nbrs[s]]) for s in range(4)}
        s_top = max(slopes, key=lambda s: slopes[s])
        r = (s_top + 1) % 4
        s3, s2, s1, s0 = (r + 3) % 4, (r + 2) % 4, (r + 1) % 4, r
        wP = colors[comp_of[nbrs[s3][1]]]
        wR = colors[comp_of[nbrs[s2][1]]]
        base = sum(l.width for l in lanes[:idx])
        if wP:
            pr.cup_block(base, wP)
        if wR:
            pr.cup_block(base + wP, wR)
        # cross the inner legs: (S = partner of R) past (Q = partner of P)
        cable_cross(base + wP + wR, wR, wP, cross_sign_for_k0(r))
        new = [
            _Lane(nbrs[s3][1], wP, node, nbrs[s3], pos),
            _Lane(nbrs[s2][1], wR, node, nbrs[s2], pos),
            _Lane(nbrs[s1][1], wP, node, nbrs[s1], pos),
            _Lane(nbrs[s0][1], wR, node, nbrs[s0], pos),
        ]
        for off, l in enumerate(new):
            lanes.insert(idx + off, l)
        for off in range(4):
            l = lanes[idx + off]
            if l.width:
                emit_extras(l.arc, lane_wire_start(idx + off), l.width)


def insert_index_for_node(lanes, pos, node):
    x, y = pos[node]
    idx = 0
    for l in lanes:
        if l.y_at(x) > y:
            idx += 1
        else:
            break
    return idx


def cross_sign_for_k1(r):
    # the emitted crossing's upper strand is the new arc (slots r+1/r+3,
    # over iff r even)
    over_upper = (r % 2) == 0
    return _SIGN_OVER_UPPER if over_upper else -_SIGN_OVER_UPPER


def cross_sign_for_k0(r):
    # upper-in of the emitted crossing is the (r, r+2)-strand: over iff r odd
    over_upper = (r % 2) == 1
    return _SIGN_OVER_UPPER if over_upper else -_SIGN_OVER_UPPER


def bracket(ctx, diagram, width_cap=planar.DEFAULT_WIDTH_CAP):
    """Exact Kauffman bracket of a closed colored PD diagram."""
    diagram.validate()
    pr = compile_events(ctx, diagram)
    return planar.bracket_program(ctx, pr.events, width_cap)


# ---------------------------------------------------------------------------
# braid closures (also used to generate shipped data files)
# ---------------------------------------------------------------------------


def braid_closure(word, n_strands, axis=False, names=None):
    """PD diagram of a braid closure, optionally with the braid axis.

    ``word`` is a list of nonzero ints: generator +k crosses the strand in
    position k over the strand in position k+1 (1-indexed positions, top to
    bottom); -k is the inverse.  With ``axis=True`` an unknotted circle
    encircling all the strands is added before the first letter (a meridian
    ring of the cable: under the strands on its left arc, over on its
    right).
    """
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0]

    start = [new() for _ in range(n_strands)]
    cur = list(start)
    crossings = []
    succ_pairs = []
    axis_arcs = []

    if axis:
        x = [new() for _ in range(2 * n_strands)]
        # left column: axis runs downward, under every strand
        for i in range(n_strands):
            s_in = cur[i]
            s_out = new()
            a_in = x[i]
            a_out = x[i + 1] if i + 1 < 2 * n_strands else x[0]
            crossings.append((a_in, s_in, a_out, s_out))
            succ_pairs.append((s_in, s_out))
            cur[i] = s_out
        # right column: axis runs upward, over every strand
        for i in range(n_strands - 1, -1, -1):
            s_in = cur[i]
            s_out = new()
            a_in = x[n_strands + (n_strands - 1 - i)]
            a_out = x[(n_strands + (n_strands - 1 - i) + 1) % (2 * n_strands)]
            crossings.append((s_in, a_in, s_out, a_out))
            succ_pairs.append((s_in, s_out))
            cur[i] = s_out
        axis_arcs = list(x)

    for g in word:
        k = abs(g) - 1
        u, l = cur[k], cur[k + 1]
        nu, nl = new(), new()
        if g > 0:
            # upper strand over: the lower strand is the under-strand
            crossings.append((l, nl, nu, u))
        else:
            crossings.append((u, l, nl, nu))
        succ_pairs.append((u, nl))
        succ_pairs.append((l, nu))
        cur[k], cur[k + 1] = nu, nl

    # closure: merge the final arc at each position with the starting arc
    rename = {cur[i]: start[i] for i in range(n_strands) if cur[i] != start[i]}

    def rn(a):
        return rename.get(a, a)

    crossings = [tuple(rn(a) for a in xx) for xx in crossings]
    succ = {rn(a): rn(b) for a, b in succ_pairs}
    comps = []
    seen = set()
    for s in start:
        if s in seen:
            continue
        arcs = [s]
        seen.add(s)
        nxt = succ.get(s)
        while nxt is not None and nxt not in seen:
            arcs.append(nxt)
            seen.add(nxt)
            nxt = succ.get(nxt)
        comps.append(arcs)
    if names is None:
        names = [f"K{i}" for i in range(len(comps))]
    components = [Component(names[i], arcs) for i, arcs in enumerate(comps)]
    if axis:
        components.append(Component("axis", axis_arcs, role="axis"))
    return ColoredDiagram(crossings, components).validate()
