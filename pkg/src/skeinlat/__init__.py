"""skeinlat: exact integral-lattice computations for SO(3) quantum invariants.

Subpackages by topic:

- ``cyclo``       exact cyclotomic arithmetic, h-adic valuations, ideal HNF
- ``planar``      Kauffman-bracket evaluation of colored planar diagrams
- ``recoupling``  closed-form loop/theta/tet/6j/twist/Hopf data and omega
- ``lollipop``    lollipop trees, small colorings, exponent combinatorics
- ``lattice``     bases of the integral lattice and its dual, Gram matrices
- ``invariants``  quantum invariants of surgery presentations, cut bounds
- ``fkb``         the embedding-obstruction ideal and its finite generators
- ``cli``         command-line front end
"""

from .cyclo import make_context, PrimeContext, CycloElem, IdealLattice
from .kernel import KERNEL_KIND

__version__ = "0.1.0"

__all__ = [
    "make_context",
    "PrimeContext",
    "CycloElem",
    "IdealLattice",
    "KERNEL_KIND",
    "__version__",
]
