"""Closed-form recoupling data at A = -zeta_p^{d+1}.

Loop values, theta and tetrahedron coefficients, 6j symbols, twist
coefficients, the colored Hopf matrix, encirclement eigenvalues, and the
surgery element omega.  Every table entry has an independent definition as
the bracket of a small closed net, and the test suite checks the two against
each other (exhaustively at p = 5).

Conventions: Delta_n = (-1)^n [n+1]; theta and Tet carry the matching signs;
the tetrahedron has vertex triples (A,B,E), (C,D,E), (A,C,F), (B,D,F).
"""

from __future__ import annotations

from .planar import (
    Prog,
    bracket_program,
    hopf_net,
    tet_net,
    theta_net,
    unknot_net,
    DEFAULT_WIDTH_CAP,
)

__all__ = ["RecouplingTable", "admissible", "admissible_triples"]


def admissible(p, a, b, c):
    """p-admissibility of a vertex triple: parity, triangle, color ceiling."""
    if (a + b + c) % 2:
        return False
    if not (abs(a - b) <= c <= a + b):
        return False
    if a + b + c > 2 * p - 4:
        return False
    return all(0 <= x <= p - 2 for x in (a, b, c))


def admissible_triples(p):
    for a in range(p - 1):
        for b in range(p - 1):
            for c in range(p - 1):
                if admissible(p, a, b, c):
                    yield (a, b, c)


class RecouplingTable:
    """Memoized closed-form recoupling data for one prime context."""

    def __init__(self, ctx):
        self.ctx = ctx
        self._theta = {}
        self._tet = {}
        self._sixj = {}
        self._hopf = None
        self._omega = None
        self._u = {}

    # -- scalars -----------------------------------------------------------

    def loop_value(self, n):
        """Bracket of the 0-framed unknot colored n."""
        ctx = self.ctx
        if not 0 <= n <= ctx.p - 2:
            raise ValueError(f"color {n} out of range for p={ctx.p}")
        return (-1) ** n * ctx.quantum_int(n + 1)

    def twist(self, n):
        """Curl coefficient mu_n on an n-colored strand: (-1)^n A^(n^2+2n)."""
        ctx = self.ctx
        if not 0 <= n <= ctx.p - 2:
            raise ValueError(f"color {n} out of range for p={ctx.p}")
        return (-1) ** n * ctx.A ** (n * n + 2 * n)

    def theta(self, a, b, c):
        key = (a, b, c)
        if key in self._theta:
            return self._theta[key]
        ctx = self.ctx
        if not admissible(ctx.p, a, b, c):
            val = ctx.zero
        else:
            i = (a + b - c) // 2
            j = (b + c - a) // 2
            k = (c + a - b) // 2
            val = (
                (-1) ** (i + j + k)
                * ctx.quantum_fact(i + j + k + 1)
                * ctx.quantum_fact(i)
                * ctx.quantum_fact(j)
                * ctx.quantum_fact(k)
                / (
                    ctx.quantum_fact(i + j)
                    * ctx.quantum_fact(j + k)
                    * ctx.quantum_fact(k + i)
                )
            )
        self._theta[key] = val
        return val

    def tet(self, A, B, C, D, E, F):
        """Tetrahedral net with vertices (A,B,E), (C,D,E), (A,C,F), (B,D,F)."""
        key = (A, B, C, D, E, F)
        if key in self._tet:
            return self._tet[key]
        ctx = self.ctx
        p = ctx.p
        if not (
            admissible(p, A, B, E)
            and admissible(p, C, D, E)
            and admissible(p, A, C, F)
            and admissible(p, B, D, F)
        ):
            self._tet[key] = ctx.zero
            return ctx.zero
        av = [
            (A + B + E) // 2,
            (C + D + E) // 2,
            (A + C + F) // 2,
            (B + D + F) // 2,
        ]
        bv = [
            (B + C + E + F) // 2,
            (A + D + E + F) // 2,
            (A + B + C + D) // 2,
        ]
        interior = ctx.one
        for bj in bv:
            for ai in av:
                interior = interior * ctx.quantum_fact(bj - ai)
        exterior = ctx.one
        for e in (A, B, C, D, E, F):
            exterior = exterior * ctx.quantum_fact(e)
        total = ctx.zero
        for s in range(max(av), min(bv) + 1):
            term = (-1) ** s * ctx.quantum_fact(s + 1)
            denom = ctx.one
            for ai in av:
                denom = denom * ctx.quantum_fact(s - ai)
            for bj in bv:
                denom = denom * ctx.quantum_fact(bj - s)
            total = total + term / denom
        val = interior / exterior * total
        self._tet[key] = val
        return val

    def sixj(self, a, b, c, d, e, f):
        """Recoupling coefficient between the two channels of a 4-point space.

        Boundary colors (a, b, c, d) in order; the e-channel tree fuses
        {b,c} against {a,d}, the f-channel tree fuses {a,b} against {c,d}.
        The e-tree expands over the f-trees with these coefficients,
        as an identity of the quotient theory (negligible channels, where a
        theta vanishes at the root of unity, are dropped).  Composing the
        move back is inverse to it on the admissible channels.
        """
        key = (a, b, c, d, e, f)
        if key in self._sixj:
            return self._sixj[key]
        ctx = self.ctx
        p = ctx.p
        if not (admissible(p, b, c, e) and admissible(p, a, d, e)
                and admissible(p, a, b, f) and admissible(p, c, d, f)):
            self._sixj[key] = ctx.zero
            return ctx.zero
        th1 = self.theta(a, b, f)
        th2 = self.theta(c, d, f)
        val = self.tet(b, c, a, d, e, f) * self.loop_value(f) / (th1 * th2)
        self._sixj[key] = val
        return val

    # -- Hopf matrix and omega ------------------------------------------------

    def hopf_matrix(self):
        """S_{ij} = bracket of the 0-framed Hopf link colored (i, j)."""
        if self._hopf is None:
            ctx = self.ctx
            d = ctx.d
            self._hopf = [
                [
                    (-1) ** (i + j) * ctx.quantum_int((i + 1) * (j + 1))
                    for j in range(d)
                ]
                for i in range(d)
            ]
        return self._hopf

    def encircle_eigenvalue(self, c, j):
        """Scalar by which a c-colored loop around a j-strand evaluates."""
        ctx = self.ctx
        if not (0 <= c <= ctx.p - 2 and 0 <= j <= ctx.p - 2):
            raise ValueError("color out of range")
        s_cj = (-1) ** (c + j) * ctx.quantum_int((c + 1) * (j + 1))
        return s_cj / self.loop_value(j)

    def omega(self):
        """Coordinates of omega over the small torus basis e_0..e_{d-1}.

        Defined by the linear system (Hopf pairing of omega with e_j) =
        D * delta_{0j}; encircling by omega then kills every nonzero color
        and contributes a factor D on color 0.
        """
        if self._omega is None:
            from .cyclo import _solve_fraction  # exact field solve below
            ctx = self.ctx
            d = ctx.d
            S = self.hopf_matrix()
            # solve S c = D e_0 by Gaussian elimination over the field
            rows = [[S[i][j] for j in range(d)] + [ctx.D if i == 0 else ctx.zero]
                    for i in range(d)]
            for col in range(d):
                piv = next(r for r in range(col, d) if not rows[r][col].is_zero())
                rows[col], rows[piv] = rows[piv], rows[col]
                inv = rows[col][col].inverse()
                rows[col] = [x * inv for x in rows[col]]
                for r in range(d):
                    if r != col and not rows[r][col].is_zero():
                        f = rows[r][col]
                        rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
            self._omega = [rows[i][d] for i in range(d)]
        return self._omega

    def u_eval(self, sign):
        """Bracket of the (+1 or -1)-framed unknot colored omega."""
        if sign not in self._u:
            ctx = self.ctx
            om = self.omega()
            acc = ctx.zero
            for c, wc in enumerate(om):
                tw = self.twist(c) if sign > 0 else self.twist(c).inverse()
                acc = acc + wc * tw * self.loop_value(c)
            self._u[sign] = acc
        return self._u[sign]

    # -- oracle diagrams ----------------------------------------------------

    def oracle_loop_value(self, n, width_cap=DEFAULT_WIDTH_CAP):
        return bracket_program(self.ctx, unknot_net(self.ctx, n).events, width_cap)

    def oracle_theta(self, a, b, c, width_cap=DEFAULT_WIDTH_CAP):
        if not admissible(self.ctx.p, a, b, c):
            return self.ctx.zero
        return bracket_program(self.ctx, theta_net(self.ctx, a, b, c).events, width_cap)

    def oracle_tet(self, A, B, C, D, E, F, width_cap=DEFAULT_WIDTH_CAP):
        p = self.ctx.p
        if not (
            admissible(p, A, B, E)
            and admissible(p, C, D, E)
            and admissible(p, A, C, F)
            and admissible(p, B, D, F)
        ):
            return self.ctx.zero
        return bracket_program(
            self.ctx, tet_net(self.ctx, A, B, C, D, E, F).events, width_cap
        )

    def oracle_twist(self, n, width_cap=DEFAULT_WIDTH_CAP):
        num = bracket_program(
            self.ctx, unknot_net(self.ctx, n, kinks=1).events, width_cap
        )
        return num / self.oracle_loop_value(n)

    def oracle_hopf(self, i, j, width_cap=DEFAULT_WIDTH_CAP):
        return bracket_program(self.ctx, hopf_net(self.ctx, i, j).events, width_cap)

    def dump(self):
        """The full table as a plain structure for regression diffing."""
        ctx = self.ctx
        p = ctx.p
        out = {
            "p": p,
            "loop": [self.loop_value(n).to_dict() for n in range(p - 1)],
            "twist": [self.twist(n).to_dict() for n in range(p - 1)],
            "theta": {},
            "hopf": [[x.to_dict() for x in row] for row in self.hopf_matrix()],
            "omega": [x.to_dict() for x in self.omega()],
        }
        for (a, b, c) in admissible_triples(p):
            if a <= b <= c:
                out["theta"][f"{a},{b},{c}"] = self.theta(a, b, c).to_dict()
        return out
