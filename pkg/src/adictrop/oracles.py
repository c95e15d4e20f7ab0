"""
Built-in oracle suites.

Each suite draws its cases from ``random.Random(seed)`` and checks one
family of facts against an independent computation: the tropical line, the
charts of the interval model of P1, the surface classifier against the
self-intersection sequence, the bubbling tower, the initial-form criterion for
membership, the box oracle for Hilbert bases, duality and balancing, and
refinement invariance of the exploded fibration. ``adictrop check`` runs them
all and the acceptance tests call them one by one.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from adictrop.algebra.field import FieldProfile, ResidueField
from adictrop.algebra.parser import parse_poly
from adictrop.algebra.polynomial import LaurentPolynomial, ValuedCoefficient
from adictrop.core.exactnum import QVector, ValueGroup, integral_direction, is_gamma_rational
from adictrop.degeneration.dual_complex import (
    classify_by_self_intersections,
    classify_surface_fan,
    special_fiber,
)
from adictrop.degeneration.tower import LIMIT_BOUNDARY, tower_simulate
from adictrop.polyhedra.complexes import Fan, PolyhedralComplex, fan_over_complex
from adictrop.polyhedra.cone import Cone
from adictrop.polyhedra.polyhedron import AdmissibleCone, Polyhedron
from adictrop.tilted.semigroup import (
    binomial_relations,
    generator_names,
    render_generators,
    tilted_semigroup,
    verify_hilbert_basis,
)
from adictrop.tropical.exploded import exploded_fibration
from adictrop.tropical.hypersurface import TropicalHypersurface, initial_form, tropicalize

logger = logging.getLogger(__name__)

SAMPLE_GAMMA = 6
VALUATIONS = (0, 1, 2)
RESIDUES = (1, 2, 3, -1, -2)


@dataclass
class SuiteResult:
    """Outcome of one oracle suite.

    Attributes:
        name: Suite name as used by ``check --suite``
        cases: Number of checked cases
        failures: One line per failed case
    """

    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message)


@dataclass(frozen=True)
class OracleSizes:
    """Case counts for the randomized suites."""

    polynomials: int = 20
    points: int = 200
    max_terms: int = 8
    cones: int = 50
    insertions: int = 8
    transforms: int = 5


# Fixtures


def tropical_line() -> LaurentPolynomial:
    return parse_poly("x + y + 1")


def expected_line_rays() -> List[Polyhedron]:
    """The three rays of trop(x + y + 1) in the min convention."""
    origin = [(0, 0)]
    return [
        Polyhedron.from_points(origin, rays=[(1, 0)]),
        Polyhedron.from_points(origin, rays=[(0, 1)]),
        Polyhedron.from_points(origin, rays=[(-1, -1)]),
    ]


def interval_complex() -> PolyhedralComplex:
    """(-inf, 0], [0, 1] and [1, inf): the decomposition behind the Z_p model of P1."""
    return PolyhedralComplex(
        [
            Polyhedron.from_points([(0,)], rays=[(-1,)]),
            Polyhedron.from_points([(0,), (1,)]),
            Polyhedron.from_points([(1,)], rays=[(1,)]),
        ],
        ambient_dim=1,
    )


def interval_charts() -> Dict[str, AdmissibleCone]:
    """Cones over the three cells of the interval complex, as extended generators (v, c)."""
    return {
        "left": AdmissibleCone.from_generators([(-1, 0), (0, 1)]),
        "middle": AdmissibleCone.from_generators([(0, 1), (1, 1)]),
        "right": AdmissibleCone.from_generators([(1, 1), (1, 0)]),
    }


EXPECTED_CHART_GENERATORS = {
    "left": {"t^-1"},
    "middle": {"t", "p*t^-1"},
    "right": {"p^-1*t"},
}


def p2_degeneration_complex() -> PolyhedralComplex:
    """Unit square with unbounded cells whose recession fan is the fan of P2.

    The four vertices carry stars of types P1xP1 at (0, 0), P2 at (1, 1) and
    Hirzebruch(1) at (1, 0) and (0, 1).
    """
    return PolyhedralComplex(
        [
            Polyhedron.from_points([(0, 0), (1, 0), (1, 1), (0, 1)]),
            Polyhedron.from_points([(0, 0), (1, 0)], rays=[(0, -1)]),
            Polyhedron.from_points([(1, 0)], rays=[(0, -1), (1, 1)]),
            Polyhedron.from_points([(1, 0), (1, 1)], rays=[(1, 1)]),
            Polyhedron.from_points([(1, 1), (0, 1)], rays=[(1, 1)]),
            Polyhedron.from_points([(0, 1)], rays=[(1, 1), (-1, 0)]),
            Polyhedron.from_points([(0, 1), (0, 0)], rays=[(-1, 0)]),
            Polyhedron.from_points([(0, 0)], rays=[(-1, 0), (0, -1)]),
        ],
        ambient_dim=2,
    )


EXPECTED_P2_KINDS = ["Hirzebruch(1)", "Hirzebruch(1)", "P1xP1", "P2"]


def planar_fan(rays: Sequence[Tuple[int, int]]) -> Fan:
    """Complete planar fan from rays listed in cyclic order."""
    m = len(rays)
    cones = [Cone.from_generators([rays[i], rays[(i + 1) % m]], ambient_dim=2) for i in range(m)]
    return Fan(cones, ambient_dim=2)


def surface_fans() -> Dict[str, List[Tuple[int, int]]]:
    fans = {
        "P2": [(1, 0), (0, 1), (-1, -1)],
        "P1xP1": [(1, 0), (0, 1), (-1, 0), (0, -1)],
    }
    for a in range(1, 5):
        fans[f"Hirzebruch({a})"] = [(1, 0), (0, 1), (-1, 0), (a, -1)]
    return fans


_UNIMODULAR_STEPS = (((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, -1), (1, 0)), ((0, 1), (1, 0)))


def random_unimodular(rng: random.Random, steps: int = 4) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    m = ((1, 0), (0, 1))
    for _ in range(steps):
        s = rng.choice(_UNIMODULAR_STEPS)
        m = (
            (s[0][0] * m[0][0] + s[0][1] * m[1][0], s[0][0] * m[0][1] + s[0][1] * m[1][1]),
            (s[1][0] * m[0][0] + s[1][1] * m[1][0], s[1][0] * m[0][1] + s[1][1] * m[1][1]),
        )
    return m


def _apply(m, r: Tuple[int, int]) -> Tuple[int, int]:
    return m[0][0] * r[0] + m[0][1] * r[1], m[1][0] * r[0] + m[1][1] * r[1]


def random_polynomial(
    rng: random.Random, profile: FieldProfile, max_terms: int = 8, max_exponent: int = 3
) -> LaurentPolynomial:
    """Two-variable polynomial with distinct exponents in [0, max_exponent]^2."""
    exponents = [(a, b) for a in range(max_exponent + 1) for b in range(max_exponent + 1)]
    chosen = rng.sample(exponents, rng.randint(1, max_terms))
    terms = {
        e: ValuedCoefficient(Fraction(rng.choice(VALUATIONS)), rng.choice(RESIDUES)) for e in chosen
    }
    return LaurentPolynomial(("x", "y"), terms, profile)


def sample_profile() -> FieldProfile:
    return FieldProfile(ResidueField(0), ValueGroup(SAMPLE_GAMMA), "t")


def random_polynomials(rng: random.Random, sizes: OracleSizes) -> List[LaurentPolynomial]:
    profile = sample_profile()
    return [random_polynomial(rng, profile, sizes.max_terms) for _ in range(sizes.polynomials)]


def _grid_point(rng: random.Random, d: int, bound: int = 3) -> QVector:
    return QVector(tuple(Fraction(rng.randint(-bound * d, bound * d), d) for _ in range(2)))


def _point_on_cell(rng: random.Random, cell: Polyhedron, group: ValueGroup) -> Optional[QVector]:
    """A Gamma-rational point on a 1-cell, stepping from a Gamma-rational vertex."""
    d = group.denominator
    base = next((v for v in cell.vertices if is_gamma_rational(v, group)), None)
    if base is None:
        return None
    if cell.lineality:
        direction = tuple(cell.lineality[0])
        steps = rng.randint(-2 * d, 2 * d)
    elif cell.rays:
        direction = tuple(cell.rays[0])
        steps = rng.randint(0, 2 * d)
    else:
        other = next(v for v in cell.vertices if v != base)
        direction = integral_direction(list(other - base))
        k = next(i for i, x in enumerate(direction) if x != 0)
        steps = rng.randint(0, int((other[k] - base[k]) / direction[k] * d))
    return base + tuple(Fraction(steps, d) * x for x in direction)


def sample_points(
    rng: random.Random, trop: TropicalHypersurface, group: ValueGroup, count: int
) -> List[QVector]:
    """Gamma-rational vertices, points on the edges and random grid points, ``count`` in all."""
    d = group.denominator
    points = [v for v in trop.complex.vertices if is_gamma_rational(v, group)][:count]
    edges = [c for c in trop.complex.cells if c.dim == 1]
    while len(points) < count:
        p = None
        if edges and rng.random() < 0.5:
            p = _point_on_cell(rng, rng.choice(edges), group)
        points.append(p if p is not None else _grid_point(rng, d))
    return points


def random_admissible_cone(rng: random.Random, n: int, group: ValueGroup) -> AdmissibleCone:
    """Cone generated by 1 to n + 2 random extended vectors with small entries."""
    target = rng.randint(1, n + 2)
    gens: List[Tuple[int, ...]] = []
    while len(gens) < target:
        g = tuple(rng.randint(-2, 2) for _ in range(n)) + (rng.randint(0, 2),)
        if any(g):
            gens.append(g)
    return AdmissibleCone.from_generators(gens, ambient_dim=n)


def quadrant_grid(a: Fraction, b: Fraction) -> PolyhedralComplex:
    """The four closed quadrants cut out by x = a and y = b."""
    corner = [(a, b)]
    return PolyhedralComplex(
        [
            Polyhedron.from_points(corner, rays=[(1, 0), (0, 1)]),
            Polyhedron.from_points(corner, rays=[(0, 1), (-1, 0)]),
            Polyhedron.from_points(corner, rays=[(-1, 0), (0, -1)]),
            Polyhedron.from_points(corner, rays=[(0, -1), (1, 0)]),
        ],
        ambient_dim=2,
    )


def bubbling_insertions(k: int) -> List[Fraction]:
    return [Fraction(1, 2**i) for i in range(1, k + 1)]


# Suites


def check_tropical_line(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("tropical_line")
    trop = tropicalize(tropical_line())
    found = set(trop.complex.maximal_cells)
    expected = set(expected_line_rays())
    result.record(found == expected, f"maximal cells {sorted(found)} != three rays")
    vertices = trop.complex.vertices
    result.record(vertices == [QVector.of(0, 0)], f"vertices {vertices} != [(0, 0)]")
    for i in trop.complex.indices_of_dim(1):
        w = trop.dual_lattice_length(i)
        result.record(w == 1, f"ray {i} has weight {w}")
    return result


def check_chart_p1(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("chart_p1")
    group = ValueGroup(1)
    for name, cone in interval_charts().items():
        semigroup = tilted_semigroup(cone, group)
        gens = set(render_generators(semigroup, ("t",), "p"))
        result.record(
            gens == EXPECTED_CHART_GENERATORS[name],
            f"{name}: generators {sorted(gens)} != {sorted(EXPECTED_CHART_GENERATORS[name])}",
        )
        names = generator_names(semigroup, "p")
        relations = [r.render(names) for r in binomial_relations(semigroup)]
        expected = ["x*y = p"] if name == "middle" else []
        result.record(relations == expected, f"{name}: relations {relations} != {expected}")
    dual = special_fiber(fan_over_complex(interval_complex(), group))
    result.record(
        len(dual.components) == 2 and len(dual.edges) == 1,
        f"special fiber has {len(dual.components)} components and {len(dual.edges)} nodes",
    )
    result.record(dual.kinds() == ["P1", "P1"], f"component kinds {dual.kinds()}")
    return result


def check_surface_classification(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("surface_classification")
    for expected, rays in surface_fans().items():
        variants = [rays] + [
            [_apply(m, r) for r in rays]
            for m in (random_unimodular(rng) for _ in range(sizes.transforms))
        ]
        for variant in variants:
            fan = planar_fan(variant)
            direct = str(classify_surface_fan(fan))
            oracle = str(classify_by_self_intersections(fan))
            result.record(
                direct == expected and oracle == expected,
                f"rays {variant}: classifier {direct}, oracle {oracle}, expected {expected}",
            )

    dual = special_fiber(fan_over_complex(p2_degeneration_complex()))
    kinds = sorted(dual.kinds())
    result.record(kinds == EXPECTED_P2_KINDS, f"P2 degeneration kinds {kinds}")
    result.record(kinds.count("P2") == 1, f"{kinds.count('P2')} components of type P2")
    for comp in dual.components:
        oracle = str(classify_by_self_intersections(comp.star))
        result.record(oracle == comp.kind, f"component at {comp.vertex}: {comp.kind} vs {oracle}")
    return result


def check_tower(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("tower")
    base = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])], ambient_dim=1)
    tower = tower_simulate(base, bubbling_insertions(sizes.insertions))
    counts = tower.component_counts()
    expected = list(range(2, sizes.insertions + 3))
    result.record(counts == expected, f"component counts {counts} != {expected}")
    result.record(tower.monotone(), "component count not strictly increasing")
    result.record(tower.star_fixed(), "star fan of v changed along the tower")
    classification = tower.trace.classification if tower.trace else None
    result.record(classification == LIMIT_BOUNDARY, f"trace point is {classification}")
    last = len(tower.stages) - 1
    composed, direct = tower.compose_maps(0, last), tower.direct_map(0, last)
    result.record(composed == direct, "composed component maps differ from the direct map")
    return result


def check_fundamental(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("fundamental")
    for f in random_polynomials(rng, sizes):
        trop = tropicalize(f)
        for v in sample_points(rng, trop, f.profile.value_group, sizes.points):
            terms = len(initial_form(f, v))
            member = trop.contains(v)
            result.record(
                (terms >= 2) == member,
                f"{f.to_text()} at {v}: initial form has {terms} terms, membership {member}",
            )
    return result


def check_hilbert_basis(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("hilbert_basis")
    drawn = 0
    while drawn < sizes.cones:
        n = rng.choice((1, 2))
        group = ValueGroup(rng.choice((1, 2)))
        cone = random_admissible_cone(rng, n, group)
        if not cone.is_admissible(group):
            continue
        drawn += 1
        report = verify_hilbert_basis(tilted_semigroup(cone, group))
        result.record(
            report.passed,
            f"{cone} over {group}: {len(report.undecomposed)} undecomposed, "
            f"dispensable {report.dispensable}",
        )
    return result


def check_duality_balancing(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("duality_balancing")
    for f in random_polynomials(rng, sizes):
        trop = tropicalize(f)
        for i, cell in enumerate(trop.complex.cells):
            if i not in trop.dual_cells:
                result.record(False, f"{f.to_text()}: cell {i} has no dual face")
                continue
            total = cell.dim + trop.dual_face(i).dim
            result.record(total == f.n, f"{f.to_text()}: cell {i} dimensions add to {total}")
        for i in trop.complex.indices_of_dim(0):
            defect = trop.balancing_defect(i)
            result.record(not any(defect), f"{f.to_text()}: vertex {i} unbalanced by {defect}")
    return result


def check_refinement_invariance(rng: random.Random, sizes: OracleSizes) -> SuiteResult:
    result = SuiteResult("refinement_invariance")
    d = SAMPLE_GAMMA
    for f in random_polynomials(rng, sizes):
        a, b = (Fraction(rng.randint(-2 * d, 2 * d), d) for _ in range(2))
        coarse = exploded_fibration(f)
        fine = exploded_fibration(f, quadrant_grid(a, b))
        for data, other in ((fine, coarse), (coarse, fine)):
            for i, samples in data.samples.items():
                for s in samples:
                    there = other.fiber_at(s)
                    result.record(
                        there == data.fibers[i],
                        f"{f.to_text()} cut at ({a}, {b}): fibers {data.fibers[i]} and {there} at {s}",
                    )
    return result


SUITES: Dict[str, Callable[[random.Random, OracleSizes], SuiteResult]] = {
    "tropical_line": check_tropical_line,
    "chart_p1": check_chart_p1,
    "surface_classification": check_surface_classification,
    "tower": check_tower,
    "fundamental": check_fundamental,
    "hilbert_basis": check_hilbert_basis,
    "duality_balancing": check_duality_balancing,
    "refinement_invariance": check_refinement_invariance,
}


def run_suite(name: str, seed: int = 0, sizes: Optional[OracleSizes] = None) -> SuiteResult:
    """Run one suite with its own ``random.Random(seed)``.

    Raises:
        KeyError: If the suite name is unknown
    """
    suite = SUITES[name]
    result = suite(random.Random(seed), sizes or OracleSizes())
    status = "passed" if result.passed else f"FAILED ({len(result.failures)})"
    logger.info(f"Suite {name}: {result.cases} cases, {status}")
    return result


def run_suites(
    seed: int = 0, names: Optional[Sequence[str]] = None, sizes: Optional[OracleSizes] = None
) -> List[SuiteResult]:
    """Run the named suites (all when omitted) in registry order."""
    selected = list(SUITES) if not names else [n for n in SUITES if n in set(names)]
    unknown = set(names or ()) - set(SUITES)
    if unknown:
        raise KeyError(f"unknown suite(s): {sorted(unknown)}")
    return [run_suite(name, seed, sizes) for name in selected]
