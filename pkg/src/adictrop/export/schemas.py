"""
Pydantic models for every JSON artifact adictrop reads or writes.

All artifacts carry ``"schema": "adictrop/1"``. Rationals are written as
strings ("1/2"), lattice vectors as integer lists, and every list is in the
deterministic order of the objects it was built from.
"""

from typing import Any, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from adictrop.algebra.field import FieldProfile
from adictrop.algebra.polynomial import LaurentPolynomial, ResiduePolynomial
from adictrop.core.exactnum import format_rat, parse_rat
from adictrop.degeneration.dual_complex import DualComplex
from adictrop.degeneration.metrized import CellCount, MetrizedComplex
from adictrop.degeneration.tower import RefinementTower
from adictrop.errors import ParseError
from adictrop.polyhedra.complexes import PolyhedralComplex
from adictrop.polyhedra.polyhedron import AdmissibleCone, Polyhedron
from adictrop.tilted.semigroup import (
    BinomialRelation,
    BoxOracleReport,
    SemigroupElement,
    TiltedSemigroup,
    generator_names,
    render_generators,
)
from adictrop.tropical.exploded import ExplodedFibrationData, OrbitStratum
from adictrop.tropical.hypersurface import TropicalHypersurface

SCHEMA = "adictrop/1"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class Artifact(_Strict):
    """Base of all top-level documents; ``schema`` is checked on input."""

    schema_: str = Field(default=SCHEMA, alias="schema")

    @field_validator("schema_")
    @classmethod
    def _known_schema(cls, value: str) -> str:
        if value != SCHEMA:
            raise ValueError(f"unsupported schema {value!r}, expected {SCHEMA!r}")
        return value

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")


class ProfileModel(_Strict):
    field: str = "Q"
    gamma: int = 1
    uniformizer: str = "t"

    @classmethod
    def from_profile(cls, profile: FieldProfile) -> "ProfileModel":
        return cls(
            field=profile.residue.descriptor,
            gamma=profile.value_group.denominator,
            uniformizer=profile.uniformizer,
        )


class HalfspaceModel(_Strict):
    """<normal, v> + offset >= 0 (or = 0 for equalities)."""

    normal: List[int]
    offset: str


class PolyhedronModel(_Strict):
    """A cell given by its points and rays, by halfspaces, or both.

    On input the V-description wins when ``vertices`` is nonempty.
    """

    dim: Optional[int] = None
    vertices: List[List[str]] = Field(default_factory=list)
    rays: List[List[int]] = Field(default_factory=list)
    lineality: List[List[int]] = Field(default_factory=list)
    halfspaces: List[HalfspaceModel] = Field(default_factory=list)
    equalities: List[HalfspaceModel] = Field(default_factory=list)

    @classmethod
    def from_polyhedron(cls, cell: Polyhedron) -> "PolyhedronModel":
        return cls(
            dim=cell.dim,
            vertices=[list(v.to_strings()) for v in cell.vertices],
            rays=[list(r) for r in cell.rays],
            lineality=[list(line) for line in cell.lineality],
            halfspaces=[_halfspace(h) for h in cell.halfspaces],
            equalities=[_halfspace(h) for h in cell.equalities],
        )

    def to_polyhedron(self, ambient_dim: int) -> Polyhedron:
        """Build the cell.

        Raises:
            ParseError: If a coordinate is not a rational literal
            EmptyPolyhedronError: If the halfspaces have no common point
        """
        if self.vertices:
            return Polyhedron.from_points(
                [[parse_rat(x) for x in v] for v in self.vertices],
                self.rays,
                self.lineality,
                ambient_dim=ambient_dim,
            )
        return Polyhedron.from_halfspaces(
            [(h.normal, parse_rat(h.offset)) for h in self.halfspaces],
            [(h.normal, parse_rat(h.offset)) for h in self.equalities],
            ambient_dim=ambient_dim,
        )


def _halfspace(h) -> HalfspaceModel:
    normal, offset = h.to_strings()
    return HalfspaceModel(normal=list(normal), offset=offset)


class ComplexModel(Artifact):
    """A polyhedral complex in Q^ambient_dim, listed by (maximal or all) cells."""

    kind: Literal["complex"] = "complex"
    ambient_dim: int = Field(ge=1)
    cells: List[PolyhedronModel] = Field(default_factory=list)

    @classmethod
    def from_complex(cls, complex_: PolyhedralComplex, maximal_only: bool = True) -> "ComplexModel":
        cells = complex_.maximal_cells if maximal_only else complex_.cells
        return cls(
            ambient_dim=complex_.ambient_dim,
            cells=[PolyhedronModel.from_polyhedron(c) for c in cells],
        )

    def to_complex(self, validate: bool = True) -> PolyhedralComplex:
        return PolyhedralComplex(
            [c.to_polyhedron(self.ambient_dim) for c in self.cells], self.ambient_dim, validate
        )


class AdmissibleConeModel(Artifact):
    """A cone in N_Q x Q_{>=0}: extended generators (v, c) or halfspaces <u, v> + gamma c >= 0."""

    kind: Literal["cone"] = "cone"
    ambient_dim: int = Field(ge=1)
    rays: List[List[int]] = Field(default_factory=list)
    lineality: List[List[int]] = Field(default_factory=list)
    halfspaces: List[HalfspaceModel] = Field(default_factory=list)
    equalities: List[HalfspaceModel] = Field(default_factory=list)

    @classmethod
    def from_cone(cls, cone: AdmissibleCone) -> "AdmissibleConeModel":
        return cls(
            ambient_dim=cone.ambient_dim,
            rays=[list(g) for g in cone.generators],
            lineality=[list(line) for line in cone.lineality],
            halfspaces=[_halfspace(h) for h in cone.halfspaces],
            equalities=[_halfspace(h) for h in cone.equalities],
        )

    def to_cone(self) -> AdmissibleCone:
        if self.rays or self.lineality:
            return AdmissibleCone.from_generators(self.rays, self.lineality, self.ambient_dim)
        return AdmissibleCone.from_halfspaces(
            [(h.normal, parse_rat(h.offset)) for h in self.halfspaces],
            [(h.normal, parse_rat(h.offset)) for h in self.equalities],
            ambient_dim=self.ambient_dim,
        )


class TermModel(_Strict):
    exp: List[int]
    val: Optional[str] = None
    res: str


class PolynomialModel(_Strict):
    """Laurent polynomial over K (terms carry ``val``) or over k (they do not)."""

    vars: List[str]
    terms: List[TermModel]
    text: str

    @classmethod
    def from_polynomial(cls, f: LaurentPolynomial) -> "PolynomialModel":
        data = f.to_dict()
        return cls(vars=data["vars"], terms=data["terms"], text=f.to_text())

    @classmethod
    def from_residue(cls, g: ResiduePolynomial) -> "PolynomialModel":
        data = g.to_dict()
        return cls(vars=data["vars"], terms=data["terms"], text=g.to_text())

    def to_polynomial(self, profile: FieldProfile) -> LaurentPolynomial:
        if any(t.val is None for t in self.terms):
            raise ParseError("every term of a polynomial over K needs a valuation")
        return LaurentPolynomial.from_dict(
            {"vars": self.vars, "terms": [t.model_dump() for t in self.terms]}, profile
        )


class TropCellModel(_Strict):
    index: int
    dim: int
    cell: PolyhedronModel
    dual_terms: List[List[int]] = Field(default_factory=list)
    weight: Optional[int] = None


class TropArtifact(Artifact):
    kind: Literal["trop"] = "trop"
    profile: ProfileModel
    polynomial: PolynomialModel
    ambient_dim: int
    cells: List[TropCellModel] = Field(default_factory=list)
    subdivision: List[List[List[int]]] = Field(default_factory=list)

    @classmethod
    def build(cls, trop: TropicalHypersurface) -> "TropArtifact":
        f = trop.polynomial
        codim_one = f.n - 1
        cells = []
        for i, cell in enumerate(trop.complex.cells):
            terms = trop.dual_cells.get(i, ())
            cells.append(
                TropCellModel(
                    index=i,
                    dim=cell.dim,
                    cell=PolyhedronModel.from_polyhedron(cell),
                    dual_terms=[list(e) for e in terms],
                    weight=trop.dual_lattice_length(i) if cell.dim == codim_one and terms else None,
                )
            )
        return cls(
            profile=ProfileModel.from_profile(f.profile),
            polynomial=PolynomialModel.from_polynomial(f),
            ambient_dim=f.n,
            cells=cells,
            subdivision=[[list(e) for e in face] for face in trop.subdivision],
        )


class InitialArtifact(Artifact):
    kind: Literal["initial"] = "initial"
    profile: ProfileModel
    polynomial: PolynomialModel
    point: List[str]
    value: Optional[str] = None
    initial_form: PolynomialModel
    in_tropicalization: bool


class FiberCellModel(_Strict):
    index: int
    dim: int
    cell: PolyhedronModel
    fiber: PolynomialModel
    samples: List[List[str]] = Field(default_factory=list)
    components: Optional[int] = None
    status: Optional[str] = None


class ExplodeArtifact(Artifact):
    kind: Literal["explode"] = "explode"
    profile: ProfileModel
    polynomial: PolynomialModel
    cells: List[FiberCellModel] = Field(default_factory=list)

    @classmethod
    def build(cls, data: ExplodedFibrationData) -> "ExplodeArtifact":
        f = data.hypersurface.polynomial
        cells = [
            FiberCellModel(
                index=i,
                dim=cell.dim,
                cell=PolyhedronModel.from_polyhedron(cell),
                fiber=PolynomialModel.from_residue(fiber),
                samples=[list(s.to_strings()) for s in data.samples[i]],
            )
            for i, cell, fiber in data.rows()
        ]
        return cls(
            profile=ProfileModel.from_profile(f.profile),
            polynomial=PolynomialModel.from_polynomial(f),
            cells=cells,
        )


class ElementModel(_Strict):
    u: List[int]
    n: str
    text: str

    @classmethod
    def from_element(cls, h: SemigroupElement, variables, uniformizer: str) -> "ElementModel":
        return cls(u=list(h.u), n=format_rat(h.n), text=h.render(variables, uniformizer))


class OracleModel(_Strict):
    radius: int
    points_checked: int
    undecomposed: List[List[int]] = Field(default_factory=list)
    dispensable: List[int] = Field(default_factory=list)
    passed: bool

    @classmethod
    def from_report(cls, report: BoxOracleReport) -> "OracleModel":
        return cls(
            radius=report.radius,
            points_checked=report.points_checked,
            undecomposed=[list(z) for z in report.undecomposed],
            dispensable=list(report.dispensable),
            passed=report.passed,
        )


class ChartArtifact(Artifact):
    kind: Literal["chart"] = "chart"
    gamma: int
    uniformizer: str
    cone: AdmissibleConeModel
    hilbert_basis: List[ElementModel] = Field(default_factory=list)
    units: List[ElementModel] = Field(default_factory=list)
    generators: List[str] = Field(default_factory=list)
    names: List[str] = Field(default_factory=list)
    relations: List[str] = Field(default_factory=list)
    oracle: Optional[OracleModel] = None

    @classmethod
    def build(
        cls,
        semigroup: TiltedSemigroup,
        relations: List[BinomialRelation],
        variables,
        uniformizer: str,
        report: Optional[BoxOracleReport] = None,
    ) -> "ChartArtifact":
        names = generator_names(semigroup, uniformizer)
        return cls(
            gamma=semigroup.value_group.denominator,
            uniformizer=uniformizer,
            cone=AdmissibleConeModel.from_cone(semigroup.cone),
            hilbert_basis=[
                ElementModel.from_element(h, variables, uniformizer) for h in semigroup.hilbert_basis
            ],
            units=[ElementModel.from_element(h, variables, uniformizer) for h in semigroup.units],
            generators=render_generators(semigroup, variables, uniformizer),
            names=names,
            relations=[r.render(names) for r in relations],
            oracle=OracleModel.from_report(report) if report is not None else None,
        )


class ComponentModel(_Strict):
    index: int
    cell: int
    vertex: List[str]
    kind: str
    star_rays: List[List[int]] = Field(default_factory=list)


class NodeModel(_Strict):
    components: List[int]
    cell: int


class ModelArtifact(Artifact):
    kind: Literal["model"] = "model"
    gamma: int
    partial: bool
    components: List[ComponentModel] = Field(default_factory=list)
    edges: List[NodeModel] = Field(default_factory=list)
    faces: List[NodeModel] = Field(default_factory=list)

    @classmethod
    def build(cls, dual: DualComplex) -> "ModelArtifact":
        return cls(
            gamma=dual.fan.value_group.denominator,
            partial=dual.partial,
            components=[
                ComponentModel(
                    index=i,
                    cell=c.cell_index,
                    vertex=list(c.vertex.to_strings()),
                    kind=c.kind,
                    star_rays=[list(r) for r in c.star.rays],
                )
                for i, c in enumerate(dual.components)
            ],
            edges=[NodeModel(components=[a, b], cell=cell) for a, b, cell in dual.edges],
            faces=[NodeModel(components=list(members), cell=cell) for members, cell in dual.faces],
        )


class MetrizedVertexModel(_Strict):
    index: int
    point: List[str]
    decoration: PolynomialModel


class MetrizedEdgeModel(_Strict):
    source: int
    target: Optional[int] = None
    length: Optional[str] = None
    direction: List[int]
    cell: int
    fiber: PolynomialModel
    components: Optional[int] = None


class CellCountModel(_Strict):
    index: int
    dim: int
    fiber: str
    components: Optional[int] = None
    status: str

    @classmethod
    def from_count(cls, row: CellCount) -> "CellCountModel":
        return cls(
            index=row.index,
            dim=row.dim,
            fiber=row.fiber.to_text(),
            components=row.components,
            status=row.status,
        )


class MetrizedArtifact(Artifact):
    kind: Literal["metrized"] = "metrized"
    profile: ProfileModel
    polynomial: PolynomialModel
    schon: bool = False
    vertices: List[MetrizedVertexModel] = Field(default_factory=list)
    edges: List[MetrizedEdgeModel] = Field(default_factory=list)
    total_length: str = "0"
    counts: List[CellCountModel] = Field(default_factory=list)

    @classmethod
    def build(cls, mc: MetrizedComplex, counts: Optional[List[CellCount]] = None) -> "MetrizedArtifact":
        f = mc.polynomial
        return cls(
            profile=ProfileModel.from_profile(f.profile),
            polynomial=PolynomialModel.from_polynomial(f),
            schon=mc.schon,
            vertices=[
                MetrizedVertexModel(
                    index=i, point=list(v.to_strings()), decoration=PolynomialModel.from_residue(d)
                )
                for i, (v, d) in enumerate(zip(mc.vertices, mc.decorations))
            ],
            edges=[
                MetrizedEdgeModel(
                    source=e.source,
                    target=e.target,
                    length=None if e.length is None else format_rat(e.length),
                    direction=list(e.direction),
                    cell=e.cell_index,
                    fiber=PolynomialModel.from_residue(e.fiber),
                    components=mc.edge_components(e),
                )
                for e in mc.edges
            ],
            total_length=format_rat(mc.total_length()),
            counts=[CellCountModel.from_count(row) for row in counts or []],
        )


class StageModel(_Strict):
    index: int
    vertices: List[str]
    kinds: List[str]
    component_count: int
    p1_count: int
    node: Optional[str] = None


class TraceModel(_Strict):
    vertex: str
    direction: int
    nodes: List[Optional[str]]
    chain_cells: List[int]
    classification: str


class TowerArtifact(Artifact):
    kind: Literal["tower"] = "tower"
    gamma: int
    vertex: str
    stages: List[StageModel] = Field(default_factory=list)
    monotone: bool
    star_fixed: bool
    trace: Optional[TraceModel] = None

    @classmethod
    def build(cls, tower: RefinementTower) -> "TowerArtifact":
        trace = tower.trace
        return cls(
            gamma=tower.value_group.denominator,
            vertex=format_rat(tower.vertex[0]),
            stages=[
                StageModel(
                    index=s.index,
                    vertices=[format_rat(c.vertex[0]) for c in s.dual.components],
                    kinds=s.dual.kinds(),
                    component_count=s.component_count,
                    p1_count=s.p1_count,
                    node=None if s.node is None else format_rat(s.node[0]),
                )
                for s in tower.stages
            ],
            monotone=tower.monotone(),
            star_fixed=tower.star_fixed(),
            trace=None
            if trace is None
            else TraceModel(
                vertex=format_rat(trace.vertex[0]),
                direction=trace.direction,
                nodes=[None if x is None else format_rat(x[0]) for x in trace.nodes],
                chain_cells=trace.chain_cells,
                classification=trace.classification,
            ),
        )


class OrbitModel(_Strict):
    zero_variables: List[str]
    torus_variables: List[str]
    status: str
    restriction: Optional[str] = None
    cells: List[PolyhedronModel] = Field(default_factory=list)

    @classmethod
    def from_stratum(cls, stratum: OrbitStratum) -> "OrbitModel":
        cells = []
        if stratum.hypersurface is not None:
            cells = [PolyhedronModel.from_polyhedron(c) for c in stratum.hypersurface.complex.maximal_cells]
        return cls(
            zero_variables=list(stratum.zero_variables),
            torus_variables=list(stratum.torus_variables),
            status=stratum.status.value,
            restriction=None if stratum.restriction is None else stratum.restriction.to_text(),
            cells=cells,
        )


class ExtendedArtifact(Artifact):
    kind: Literal["extended"] = "extended"
    profile: ProfileModel
    polynomial: PolynomialModel
    orbits: List[OrbitModel] = Field(default_factory=list)


class SuiteModel(_Strict):
    name: str
    cases: int
    passed: bool
    failures: List[str] = Field(default_factory=list)


class CheckArtifact(Artifact):
    kind: Literal["check"] = "check"
    seed: int
    suites: List[SuiteModel] = Field(default_factory=list)
    passed: bool


class ErrorArtifact(Artifact):
    """The single JSON object the CLI writes to stderr on failure."""

    error: str
    message: str
    position: Optional[int] = None

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True)
