"""Exact arithmetic in the cyclotomic coefficient ring of the theory.

For an odd prime p >= 5 the ring of coefficients is

    O = Z[zeta_p]        if p = 3 (mod 4),
    O = Z[zeta_{4p}]     if p = 1 (mod 4),

and O+ denotes Z[zeta_p] in both cases.  All elements are represented over
the power basis of the ambient field Q(zeta_{4p}) regardless of p mod 4, so
that i = zeta_{4p}^p is always available (the bracket engine needs it) and a
single representation serves both parities.  Membership in the subrings O and
O+ is decided exactly by linear algebra over Q.

Everything here is integer/Fraction arithmetic; no floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .kernel import vec_add, vec_sub, vec_scale, vec_mul, vec_content

__all__ = [
    "PrimeContext",
    "CycloElem",
    "IdealLattice",
    "make_context",
    "is_prime",
]


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CycloElem:
    """An element of Q(zeta_{4p}), stored as integer vector / denominator.

    The vector gives coordinates over the power basis {zeta_{4p}^k} of length
    2(p-1); den > 0 and gcd(den, content(num)) = 1.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=1, _normalized=False):
        self.ctx = ctx
        if _normalized:
            self.num = num
            self.den = den
            return
        if den < 0:
            num = tuple(-x for x in num)
            den = -den
        if den != 1:
            g = vec_content(num, den)
            if g > 1:
                num = tuple(x // g for x in num)
                den //= g
        self.num = tuple(num)
        self.den = den

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        other = self.ctx.coerce(other)
        if self.den == other.den:
            return CycloElem(self.ctx, vec_add(self.num, other.num), self.den)
        a = vec_scale(self.num, other.den)
        b = vec_scale(other.num, self.den)
        return CycloElem(self.ctx, vec_add(a, b), self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ctx.coerce(other)
        if self.den == other.den:
            return CycloElem(self.ctx, vec_sub(self.num, other.num), self.den)
        a = vec_scale(self.num, other.den)
        b = vec_scale(other.num, self.den)
        return CycloElem(self.ctx, vec_sub(a, b), self.den * other.den)

    def __rsub__(self, other):
        return self.ctx.coerce(other) - self

    def __neg__(self):
        return CycloElem(self.ctx, tuple(-x for x in self.num), self.den, _normalized=True)

    def __mul__(self, other):
        other = self.ctx.coerce(other)
        num = vec_mul(self.num, other.num, self.ctx.red_table)
        return CycloElem(self.ctx, num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.ctx.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ctx.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        inv = self.ctx._field_inverse(self)
        return inv

    def conj(self):
        """Galois conjugation zeta -> zeta^{-1} (sends i to -i)."""
        deg = self.ctx.amb_degree
        acc = (0,) * deg
        for k, c in enumerate(self.num):
            if c:
                acc = vec_add(acc, vec_scale(self.ctx._conj_basis[k], c))
        return CycloElem(self.ctx, acc, self.den)

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num == self.ctx.one.num

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def is_rational(self):
        return not any(self.num[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    # -- io ---------------------------------------------------------------

    def to_dict(self):
        return {
            "basis": "zeta4p-power-basis",
            "degree": self.ctx.amb_degree,
            "num": list(self.num),
            "den": self.den,
        }

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            return f"({body})/{self.den}"
        return body


class PrimeContext:
    """All precomputed data for exact arithmetic at one odd prime p."""

    def __init__(self, p):
        if not is_prime(p) or p < 5:
            raise ValueError(f"p must be a prime >= 5, got {p}")
        self.p = p
        self.d = (p - 1) // 2
        self.ring_kind = "Zzeta4p" if p % 4 == 1 else "Zzetap"
        self.amb_degree = 2 * (p - 1)
        self.degree = self.amb_degree if p % 4 == 1 else p - 1

        deg = self.amb_degree
        # Phi_{4p}(x) = Phi_p(-x^2) = sum_k (-1)^k x^{2k}, so
        # x^{2p-2} = sum_{k<p-1} (-1)^{k+1} x^{2k}.  Build the reduction
        # table for x^{deg+j}, j = 0 .. deg-2, by repeated shifting.
        base = [0] * deg
        for k in range(p - 1):
            base[2 * k] = 1 if k % 2 else -1
        red = [tuple(base)]
        cur = list(base)
        for _ in range(deg - 2):
            shifted = [0] + cur[:-1]
            if cur[-1]:
                top = cur[-1]
                shifted = [s + top * r for s, r in zip(shifted, red[0])]
            red.append(tuple(shifted))
            cur = shifted
        self.red_table = tuple(red)

        self.zero = CycloElem(self, (0,) * deg, 1, _normalized=True)
        one = [0] * deg
        one[0] = 1
        self.one = CycloElem(self, tuple(one), 1, _normalized=True)

        # zeta^k for 0 <= k < 4p, as plain vectors
        pw = []
        cur_el = self.one
        zeta_vec = [0] * deg
        zeta_vec[1] = 1
        zeta = CycloElem(self, tuple(zeta_vec), 1, _normalized=True)
        for _ in range(4 * p):
            pw.append(cur_el)
            cur_el = cur_el * zeta
        self._zeta_pow = pw
        self.zeta = zeta
        self._conj_basis = tuple(pw[(4 * p - k) % (4 * p)].num for k in range(deg))

        self.zeta_p = pw[4]          # primitive p-th root
        self.i_unit = pw[p]          # zeta^p = i
        self.h = self.one - self.zeta_p
        self.A = -self.zeta_p ** (self.d + 1)
        self.delta = -(self.A ** 2) - self.A ** -2

        # subfield Q(zeta_p): solver data for membership and coordinates
        self._sub_basis = [self.zeta_p ** k for k in range(p - 1)]
        self._sub_solver = _ColumnSolver([e.num for e in self._sub_basis], deg)

        self._qint = {}
        self._qdenom_inv = (self.zeta_p - self.zeta_power(-4)).inverse()
        self.D = self._make_D()
        self.caches = {}  # scratch space for higher layers (JW tables etc.)

    # -- element constructors --------------------------------------------

    def coerce(self, x):
        if isinstance(x, CycloElem):
            if x.ctx is not self:
                raise ValueError("mixing elements from different prime contexts")
            return x
        if isinstance(x, int):
            num = [0] * self.amb_degree
            num[0] = x
            return CycloElem(self, tuple(num), 1, _normalized=True)
        if isinstance(x, Fraction):
            num = [0] * self.amb_degree
            num[0] = x.numerator
            return CycloElem(self, tuple(num), x.denominator)
        raise TypeError(f"cannot coerce {x!r} into cyclotomic field")

    def from_vec(self, num, den=1):
        num = tuple(num)
        if len(num) != self.amb_degree:
            raise ValueError("coefficient vector has wrong length")
        return CycloElem(self, num, den)

    def from_dict(self, d):
        if d.get("basis") != "zeta4p-power-basis" or d.get("degree") != self.amb_degree:
            raise ValueError("serialized element does not match this context")
        return self.from_vec(d["num"], d["den"])

    def zeta_power(self, k):
        return self._zeta_pow[k % (4 * self.p)]

    def quantum_int(self, n):
        """[n] = (zeta_p^n - zeta_p^{-n}) / (zeta_p - zeta_p^{-1})."""
        if n in self._qint:
            return self._qint[n]
        val = (self.zeta_power(4 * n) - self.zeta_power(-4 * n)) * self._qdenom_inv
        self._qint[n] = val
        return val

    def quantum_fact(self, n):
        out = self.one
        for k in range(2, n + 1):
            out = out * self.quantum_int(k)
        return out

    def _make_D(self):
        # Gauss sum g = sum_t zeta_p^{t^2} satisfies g^2 = (-1)^d p, which
        # gives an explicit square root of -p/(zeta_p - zeta_p^{-1})^2 inside
        # the ambient field (times i when p = 1 mod 4).  The sign is pinned by
        # requiring the top nonzero power-basis coefficient to be positive.
        g = self.zero
        for t in range(self.p):
            g = g + self.zeta_p ** (t * t)
        num = g if self.p % 4 == 3 else self.i_unit * g
        D = num / (self.zeta_p - self.zeta_p ** -1)
        for c in reversed(D.num):
            if c:
                if c < 0:
                    D = -D
                break
        return D

    # -- field internals ---------------------------------------------------

    def _mult_matrix(self, x):
        """Columns are coordinates of x * zeta^k (integer matrix, den of x)."""
        deg = self.amb_degree
        cols = []
        cur = x.num
        cols.append(cur)
        for _ in range(deg - 1):
            nxt = [0] * deg
            for idx in range(deg - 1):
                nxt[idx + 1] = cur[idx]
            top = cur[deg - 1]
            if top:
                nxt = [a + top * r for a, r in zip(nxt, self.red_table[0])]
            cur = tuple(nxt)
            cols.append(cur)
        return [[cols[j][i] for j in range(deg)] for i in range(deg)]

    def _field_inverse(self, x):
        deg = self.amb_degree
        m = self._mult_matrix(x)
        rhs = [Fraction(0)] * deg
        rhs[0] = Fraction(x.den)
        sol = _solve_fraction(m, rhs)
        if sol is None:
            raise ZeroDivisionError("element is a zero divisor (should not happen)")
        den = 1
        for f in sol:
            den = den * f.denominator // math.gcd(den, f.denominator)
        num = [f.numerator * (den // f.denominator) for f in sol]
        return CycloElem(self, tuple(num), den)

    def field_norm(self, x):
        """Norm from Q(zeta_{4p}) down to Q, as an exact Fraction."""
        m = self._mult_matrix(x)
        det = _det_bareiss(m)
        return Fraction(det, x.den ** self.amb_degree)

    # -- the ring O and its relatives ---------------------------------------

    def in_subfield_coords(self, x):
        """Coordinates of x over the Z[zeta_p]-power-basis, or None."""
        sol = self._sub_solver.solve(x.num)
        if sol is None:
            return None
        return [Fraction(s, x.den) for s in sol]

    def is_in_O(self, x):
        x = self.coerce(x)
        if self.p % 4 == 1:
            return x.den == 1
        return x.den == 1 and self._sub_solver.solve(x.num) is not None

    def is_in_Oplus(self, x):
        x = self.coerce(x)
        return x.den == 1 and self._sub_solver.solve(x.num) is not None

    def h_valuation(self, x):
        """Largest k with x / h^k still in O (math.inf for x = 0)."""
        x = self.coerce(x)
        if not self.is_in_O(x):
            raise ValueError("h_valuation is defined for elements of O only")
        if x.is_zero():
            return math.inf
        hinv = self.h.inverse()
        k = 0
        while True:
            x = x * hinv
            if not self.is_in_O(x):
                return k
            k += 1

    def is_unit(self, x):
        x = self.coerce(x)
        if not self.is_in_O(x):
            raise ValueError("is_unit is defined for elements of O only")
        return abs(self.field_norm(x)) == 1

    def ring_basis(self, ring="O"):
        if ring == "O" and self.p % 4 == 1:
            return [self.zeta_power(k) for k in range(self.amb_degree)]
        if ring in ("O", "O+"):
            return list(self._sub_basis)
        raise ValueError(f"unknown ring {ring!r}")

    def ring_coords(self, x, ring="O"):
        """Integer coordinates of x over the ring's Z-basis, or None."""
        x = self.coerce(x)
        if x.den != 1:
            return None
        if ring == "O" and self.p % 4 == 1:
            return list(x.num)
        if ring in ("O", "O+"):
            return self._sub_solver.solve(x.num)
        raise ValueError(f"unknown ring {ring!r}")

    def elem_from_ring_coords(self, coords, ring="O"):
        basis = self.ring_basis(ring)
        acc = self.zero
        for c, b in zip(coords, basis):
            if c:
                acc = acc + c * b
        return acc

    def ideal_from_generators(self, gens, ring="O"):
        return IdealLattice.from_generators(self, gens, ring)

    def reduce_mod_h(self, x):
        """Image of x in O/hO = F_p (or F_p[i]); returns an int for F_p.

        Under zeta_p -> 1 an element of Z[zeta_p] maps to the sum of its
        subfield coordinates mod p.  Only the O+ / p=3(mod 4) case is needed
        (the torsion forms of the theory), so x must lie in Z[zeta_p].
        """
        coords = self.ring_coords(x, "O+")
        if coords is None:
            raise ValueError("reduce_mod_h needs an element of Z[zeta_p]")
        return sum(coords) % self.p

    def __repr__(self):
        return f"PrimeContext(p={self.p}, ring={self.ring_kind}, d={self.d})"


def make_context(p):
    """Context for an odd prime p >= 5 (the p = 3 theory is trivial)."""
    return PrimeContext(p)


# ---------------------------------------------------------------------------
# exact linear algebra helpers (Fractions / big ints)
# ---------------------------------------------------------------------------


def _solve_fraction(m, rhs):
    """Solve m x = rhs over Q; m square, returns None if singular."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _det_bareiss(m):
    """Determinant of an integer matrix by the Bareiss algorithm."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = None
            for r in range(k + 1, n):
                if a[r][k]:
                    piv = r
                    break
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class _ColumnSolver:
    """Decides membership in the Q-span of fixed integer columns.

    Precomputes an invertible row-selection so each query is one small
    matrix-vector product plus a consistency check.
    """

    def __init__(self, columns, nrows):
        self.cols = [tuple(c) for c in columns]
        self.ncols = len(columns)
        self.nrows = nrows
        m = [[Fraction(self.cols[j][i]) for j in range(self.ncols)] for i in range(nrows)]
        # Gaussian elimination to find pivot rows
        work = [row[:] for row in m]
        pivot_rows = []
        used = [False] * nrows
        for col in range(self.ncols):
            piv = None
            for r in range(nrows):
                if not used[r] and work[r][col]:
                    piv = r
                    break
            if piv is None:
                raise ValueError("columns are not independent")
            used[piv] = True
            pivot_rows.append(piv)
            pv = work[piv][col]
            work[piv] = [x / pv for x in work[piv]]
            for r in range(nrows):
                if r != piv and work[r][col]:
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], work[piv])]
        self.pivot_rows = pivot_rows
        square = [[m[r][j] for j in range(self.ncols)] for r in pivot_rows]
        self.square_inv = _invert_fraction(square)

    def solve(self, vec):
        """Integer solution x with cols . x = vec, or None."""
        rhs = [Fraction(vec[r]) for r in self.pivot_rows]
        sol = [sum(row[j] * rhs[j] for j in range(self.ncols)) for row in self.square_inv]
        out = []
        for s in sol:
            if s.denominator != 1:
                # not an integer combination; might still be rational span,
                # but every caller wants Z-coordinates of integral elements
                return None
            out.append(s.numerator)
        # consistency on the remaining rows
        for i in range(self.nrows):
            acc = 0
            for j in range(self.ncols):
                cj = self.cols[j][i]
                if cj:
                    acc += cj * out[j]
            if acc != vec[i]:
                return None
        return out


def _invert_fraction(m):
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def hnf(rows, width):
    """Row-style Hermite normal form of the integer row span.

    Returns a tuple of tuples: pivots positive, zeros below pivots, entries
    above a pivot reduced into [0, pivot).  This is the canonical form used
    for ideal equality.
    """
    mat = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while mat and col < width:
        piv_idx = None
        for i, r in enumerate(mat):
            if r[col]:
                if piv_idx is None or abs(r[col]) < abs(mat[piv_idx][col]):
                    piv_idx = i
        if piv_idx is None:
            col += 1
            continue
        piv = mat.pop(piv_idx)
        changed = True
        while changed:
            changed = False
            rest = []
            for r in mat:
                if r[col]:
                    q = r[col] // piv[col]
                    r = [x - q * y for x, y in zip(r, piv)]
                    if r[col]:
                        piv, r = r, piv
                        changed = True
                if any(r):
                    rest.append(r)
            mat = rest
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        col += 1
    # reduce entries above pivots, in increasing pivot-column order (later
    # rows have zeros in all earlier pivot columns, so reduced columns stay
    # reduced)
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    for i in range(len(out)):
        pcol = next(j for j, x in enumerate(out[i]) if x)
        pval = out[i][pcol]
        for k in range(i):
            q = out[k][pcol] // pval
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return tuple(tuple(r) for r in out)


class IdealLattice:
    """An ideal of O or O+ as the HNF of its Z-lattice in the ring basis."""

    __slots__ = ("ctx", "ring", "hnf")

    def __init__(self, ctx, ring, hnf_rows):
        self.ctx = ctx
        self.ring = ring
        self.hnf = hnf_rows

    @classmethod
    def from_generators(cls, ctx, gens, ring="O"):
        basis = ctx.ring_basis(ring)
        rows = []
        for g in gens:
            g = ctx.coerce(g)
            if ctx.ring_coords(g, ring) is None:
                raise ValueError(f"generator {g!r} is not in {ring}")
            for b in basis:
                coords = ctx.ring_coords(g * b, ring)
                rows.append(coords)
        return cls(ctx, ring, hnf(rows, len(basis)))

    @property
    def rank(self):
        return len(self.hnf)

    def is_zero(self):
        return self.rank == 0

    def z_index(self):
        """Index of the lattice in the full ring (0 if not full rank)."""
        n = len(self.ctx.ring_basis(self.ring))
        if self.rank < n:
            return 0
        out = 1
        for row in self.hnf:
            pcol = next(i for i, x in enumerate(row) if x)
            out *= row[pcol]
        return out

    def is_unit_ideal(self):
        n = len(self.ctx.ring_basis(self.ring))
        return self.rank == n and self.z_index() == 1

    def contains(self, x):
        coords = self.ctx.ring_coords(self.ctx.coerce(x), self.ring)
        if coords is None:
            return False
        v = list(coords)
        for row in self.hnf:
            pcol = next(i for i, y in enumerate(row) if y)
            q = v[pcol] // row[pcol]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def verify_closed_under_ring(self):
        """Check the lattice is an ideal: stable under every basis generator."""
        basis = self.ctx.ring_basis(self.ring)
        for row in self.hnf:
            el = self.ctx.elem_from_ring_coords(row, self.ring)
            for b in basis:
                if not self.contains(el * b):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, IdealLattice):
            return NotImplemented
        return self.ring == other.ring and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.ring, self.hnf))

    def to_dict(self):
        return {"ring": self.ring, "hnf": [list(r) for r in self.hnf]}

    def __repr__(self):
        if self.is_zero():
            return f"IdealLattice({self.ring}, zero)"
        if self.is_unit_ideal():
            return f"IdealLattice({self.ring}, unit)"
        return f"IdealLattice({self.ring}, index={self.z_index()})"
