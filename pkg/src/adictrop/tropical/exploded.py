"""
Exploded fibration data and extended tropicalization over projective space.

The exploded tropicalization records, over every cell of a (possibly
refined) tropical hypersurface, the canonical initial form that is constant
on the cell's relative interior. Extended tropicalization walks the torus
orbits of P^n and tropicalizes the restriction of a homogeneous polynomial
to each of them.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from adictrop.algebra.polynomial import LaurentPolynomial, ResiduePolynomial, ValuedCoefficient
from adictrop.core.exactnum import QVector, RatLike
from adictrop.errors import ConstancyError, HomogeneityError
from adictrop.polyhedra.complexes import PolyhedralComplex, restrict_complex
from adictrop.polyhedra.polyhedron import Polyhedron
from adictrop.tropical.hypersurface import TropicalHypersurface, initial_form_at, tropicalize

logger = logging.getLogger(__name__)


def interior_samples(cell: Polyhedron) -> Tuple[QVector, QVector]:
    """Two points of the relative interior, distinct unless the cell is a point."""
    bary = cell.barycenter()
    if cell.rays:
        return bary, bary + tuple(cell.rays[0])
    if len(cell.vertices) > 1:
        return bary, (bary.scale(2) + cell.vertices[0]).scale(Fraction(1, 3))
    if cell.lineality:
        return bary, bary + tuple(cell.lineality[0])
    return bary, bary


@dataclass
class ExplodedFibrationData:
    """Cell-indexed initial degenerations over a tropical hypersurface.

    Attributes:
        hypersurface: The corner locus of f
        base: The complex the fibers are indexed by (the corner locus or a refinement)
        fibers: Cell index in ``base`` -> canonical initial form on its relative interior
        samples: Cell index -> the two interior points the fiber was evaluated at
    """

    hypersurface: TropicalHypersurface
    base: PolyhedralComplex
    fibers: Dict[int, ResiduePolynomial] = field(default_factory=dict)
    samples: Dict[int, Tuple[QVector, QVector]] = field(default_factory=dict)

    def fiber_at(self, v: Sequence[RatLike]) -> Optional[ResiduePolynomial]:
        """Fiber of the cell whose relative interior contains v, if any."""
        index = self.base.cell_containing_in_relative_interior(v)
        return None if index is None else self.fibers[index]

    def rows(self) -> List[Tuple[int, Polyhedron, ResiduePolynomial]]:
        return [(i, self.base.cells[i], self.fibers[i]) for i in sorted(self.fibers)]


def _fiber_of_cell(f: LaurentPolynomial, cell: Polyhedron) -> Tuple[ResiduePolynomial, Tuple[QVector, QVector]]:
    first, second = interior_samples(cell)
    fiber = initial_form_at(f, first)
    other = initial_form_at(f, second)
    if fiber != other:
        raise ConstancyError(
            f"initial forms {fiber} at {first} and {other} at {second} differ on one cell"
        )
    return fiber, (first, second)


def exploded_fibration(
    f: LaurentPolynomial,
    refinement: Optional[PolyhedralComplex] = None,
    workers: int = 1,
) -> ExplodedFibrationData:
    """Canonical initial form over every cell of Trop(f) or of a refinement.

    Args:
        f: The polynomial
        refinement: Complex whose restriction to Trop(f) is used as the base
        workers: Thread count for the per-cell computation; results keep cell order

    Raises:
        RefinementError: If the refinement does not cover the corner locus
        ConstancyError: If a fiber differs at the two interior samples of a cell
    """
    hypersurface = tropicalize(f)
    base = hypersurface.complex
    if refinement is not None and not hypersurface.is_empty():
        base = restrict_complex(refinement, hypersurface.complex)

    cells = list(base.cells)
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _fiber_of_cell(f, c), cells))
    else:
        results = [_fiber_of_cell(f, c) for c in cells]

    data = ExplodedFibrationData(hypersurface, base)
    for i, (fiber, samples) in enumerate(results):
        data.fibers[i] = fiber
        data.samples[i] = samples
    logger.info(f"Exploded fibration over {len(cells)} cells")
    return data


class OrbitStatus(str, Enum):
    """What the restriction of F looks like on one torus orbit."""

    HYPERSURFACE = "hypersurface"
    EMPTY = "empty"
    FULL = "full"


@dataclass
class OrbitStratum:
    """Tropicalization of V(F) on the torus orbit where ``zero_variables`` vanish.

    Attributes:
        zero_variables: Homogeneous coordinates vanishing on the orbit
        torus_variables: Coordinates of the orbit torus after dehomogenizing
        status: hypersurface, empty (no zeros on the orbit) or full (F vanishes on it)
        restriction: Dehomogenized restriction of F, when the orbit is not a point
        hypersurface: Its tropicalization, when the orbit is not a point
    """

    zero_variables: Tuple[str, ...]
    torus_variables: Tuple[str, ...]
    status: OrbitStatus
    restriction: Optional[LaurentPolynomial] = None
    hypersurface: Optional[TropicalHypersurface] = None

    @property
    def orbit_dim(self) -> int:
        return len(self.torus_variables)


def _check_homogeneous(F: LaurentPolynomial) -> int:
    degrees = set()
    for exp, _ in F.items():
        if min(exp) < 0:
            raise HomogeneityError(f"exponent {exp} has a negative entry")
        degrees.add(sum(exp))
    if len(degrees) > 1:
        raise HomogeneityError(f"terms of degrees {sorted(degrees)} in one polynomial")
    return degrees.pop() if degrees else 0


def extended_tropicalize(F: LaurentPolynomial) -> List[OrbitStratum]:
    """Tropicalize a homogeneous F on every torus orbit of P^n.

    Orbits are listed by the set of vanishing coordinates, smallest first
    (the dense torus comes first).

    Raises:
        HomogeneityError: If F is not homogeneous with nonnegative exponents
    """
    degree = _check_homogeneous(F)
    names = F.variables
    count = len(names)
    if count < 2:
        raise HomogeneityError("P^n needs at least two homogeneous coordinates")
    strata = []
    for size in range(count):
        for zero in combinations(range(count), size):
            remaining = [i for i in range(count) if i not in zero]
            terms = [(e, c) for e, c in F.items() if all(e[i] == 0 for i in zero)]
            zero_names = tuple(names[i] for i in zero)
            torus = tuple(names[i] for i in remaining[1:])
            if not terms:
                strata.append(OrbitStratum(zero_names, torus, OrbitStatus.FULL))
                continue
            if not torus:
                strata.append(OrbitStratum(zero_names, torus, OrbitStatus.EMPTY))
                continue
            restricted = LaurentPolynomial(
                torus,
                {tuple(e[i] for i in remaining[1:]): ValuedCoefficient(c.valuation, c.residue) for e, c in terms},
                F.profile,
            )
            trop = tropicalize(restricted)
            status = OrbitStatus.EMPTY if trop.is_empty() else OrbitStatus.HYPERSURFACE
            strata.append(OrbitStratum(zero_names, torus, status, restricted, trop))
    logger.info(f"Extended tropicalization of a degree {degree} form over {len(strata)} orbits")
    return strata
