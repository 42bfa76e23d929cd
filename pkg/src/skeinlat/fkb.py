"""The embedding-obstruction ideal of a knot exterior in the solid torus.

For a 3-manifold N with torus boundary, presented as k-framed surgery on a
knot K in the complement of an unknotted axis J, the obstruction ideal is
generated by finitely many invariants: the pairings of N against the
integral basis {1, v, ..., v^(d-1)} of the complementary solid torus.
Concretely, generator m is

    h^(-m) * sum_c  [coefficient of the c-colored core in (2+z)^m]
           * I(surgery on K, axis colored c)

all computed exactly.  A closed manifold M embeds N only if its invariant
lies in the ideal; in particular 1 must lie in it for N to embed in the
3-sphere.

For p = 1 (mod 4) the refined ideal lives in the smaller ring O+ =
Z[zeta_p]: each generator lands in O+ or i*O+ and is rotated into O+ by i
when needed (the two ideals generate each other over O).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import pd as pd_mod
from .invariants import eval_surgery, presentation_from_diagram
from .planar import DEFAULT_WIDTH_CAP
from .recoupling import RecouplingTable

__all__ = [
    "KnotInSolidTorus",
    "axis_link_diagram",
    "fkb_generators",
    "fkb_ideal",
    "embedding_obstruction",
    "DATA_DIR",
]

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@dataclass
class KnotInSolidTorus:
    """A 2-component diagram: the surgery knot and the unknotted axis."""

    diagram: object  # ColoredDiagram with roles "surgery" and "axis"
    framing: int

    def prepared(self):
        """The diagram with the surgery framing folded into twist counts."""
        d = self.diagram
        surgery = next(c for c in d.components if c.role == "surgery")
        k_idx = d.components.index(surgery)
        w = d.writhe(k_idx)
        return d.with_colors({}, twists={surgery.name: self.framing - w})


def axis_link_diagram(path=None):
    """The shipped two-component link: a knotted component and its axis."""
    if path is None:
        path = os.path.join(DATA_DIR, "torus_knot_axis.pd")
    with open(path) as fh:
        return pd_mod.parse_pd(fh.read())


def _core_power_in_colors(m):
    """Coefficients of (2+z)^m over the colored cores e_0, e_1, ...

    z e_c = e_{c+1} + e_{c-1} (with e_{-1} = 0), so powers of (2+z) expand
    with nonnegative integer coefficients.
    """
    coeffs = {0: 1}
    for _ in range(m):
        nxt = {}
        for c, v in coeffs.items():
            nxt[c] = nxt.get(c, 0) + 2 * v
            nxt[c + 1] = nxt.get(c + 1, 0) + v
            if c > 0:
                nxt[c - 1] = nxt.get(c - 1, 0) + v
        coeffs = nxt
    return coeffs


def fkb_generators(knot, ctx, table=None, width_cap=DEFAULT_WIDTH_CAP):
    """The finite generator set of the obstruction ideal.

    One generator per element of the basis {v^m, m < d} of the
    complementary solid torus; each is an exact element of O.
    """
    if table is None:
        table = RecouplingTable(ctx)
    d = ctx.d
    diagram = knot.prepared()
    axis = next(c for c in diagram.components if c.role == "axis")
    max_color = d - 1  # core colors reached by (2+z)^m, m <= d-1
    invariants = {}
    for c in range(max_color + 1):
        colored = diagram.with_colors({axis.name: c})
        pres = presentation_from_diagram(ctx, colored, width_cap)
        invariants[c] = eval_surgery(pres, ctx, table).value
    hinv = ctx.h.inverse()
    gens = []
    for m in range(d):
        acc = ctx.zero
        for c, coeff in _core_power_in_colors(m).items():
            acc = acc + coeff * invariants[c]
        gens.append(acc * hinv ** m)
    for g in gens:
        if not ctx.is_in_O(g):
            raise ArithmeticError("ideal generator fell outside the ring")
    return gens


def fkb_ideal(knot, ctx, plus=False, table=None, width_cap=DEFAULT_WIDTH_CAP):
    """The obstruction ideal as an HNF lattice (in O, or in O+ if ``plus``).

    With ``plus`` each generator is checked to lie in O+ or i*O+ and is
    rotated by i into O+ when needed; the resulting O+-ideal generates the
    full ideal over O.
    """
    gens = fkb_generators(knot, ctx, table, width_cap)
    if not plus:
        return ctx.ideal_from_generators(gens, "O")
    if ctx.p % 4 == 3:
        return ctx.ideal_from_generators(gens, "O+")
    rotated = []
    for g in gens:
        if ctx.is_in_Oplus(g):
            rotated.append(g)
            continue
        gi = ctx.i_unit * g
        if not ctx.is_in_Oplus(gi):
            raise ArithmeticError(
                "generator lies in neither O+ nor i O+; normalization bug")
        rotated.append(gi)
    return ctx.ideal_from_generators(rotated, "O+")


def embedding_obstruction(ideal, value):
    """True when a manifold with this invariant value cannot contain N."""
    return not ideal.contains(value)
