"""
Job runner for adictrop subcommands.

A JobRunner turns one subcommand plus its inputs into a RunResult: the
computed object, its JSON artifact and any DOT, SVG or text renderings.
Nothing here parses command lines or prints; the CLI does that, and tests
drive the runner directly.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from adictrop.algebra.field import FieldProfile
from adictrop.algebra.parser import parse_poly
from adictrop.algebra.polynomial import LaurentPolynomial, default_variables
from adictrop.core.exactnum import QVector, ValueGroup, format_rat, parse_rat
from adictrop.degeneration.dual_complex import special_fiber
from adictrop.degeneration.metrized import adic_point_count, build_metrized_complex, fiber_components
from adictrop.degeneration.tower import tower_simulate
from adictrop.errors import ConfigError, ParseError
from adictrop.export.dot import dual_complex_to_dot, metrized_to_dot
from adictrop.export.schemas import (
    AdmissibleConeModel,
    Artifact,
    ChartArtifact,
    CheckArtifact,
    ComplexModel,
    ExplodeArtifact,
    ExtendedArtifact,
    InitialArtifact,
    MetrizedArtifact,
    ModelArtifact,
    OrbitModel,
    PolynomialModel,
    ProfileModel,
    SuiteModel,
    TowerArtifact,
    TropArtifact,
)
from adictrop.export.svg import complex_to_svg, metrized_to_svg, tropical_to_svg
from adictrop.models.config import JobConfig
from adictrop.oracles import run_suites
from adictrop.polyhedra.complexes import PolyhedralComplex, fan_over_cells, fan_over_complex
from adictrop.polyhedra.polyhedron import Polyhedron
from adictrop.tilted.semigroup import binomial_relations, tilted_semigroup, verify_hilbert_basis
from adictrop.tropical.exploded import exploded_fibration, extended_tropicalize
from adictrop.tropical.hypersurface import initial_form, trop_value, tropicalize

logger = logging.getLogger(__name__)

COMMANDS = ("trop", "initial", "explode", "chart", "model", "metrized", "tower", "extended", "check")


@dataclass
class RunResult:
    """Everything one subcommand produced.

    Attributes:
        command: Subcommand name
        artifact: The JSON document
        renderings: Format name -> text for the non-JSON outputs (dot, svg, text)
        exit_code: 0 on success; 1 when ``check`` has failing suites
        payload: The computed object, for callers that want more than the artifact
    """

    command: str
    artifact: Artifact
    renderings: Dict[str, str] = field(default_factory=dict)
    exit_code: int = 0
    payload: Any = None

    def formats(self) -> List[str]:
        return ["json"] + sorted(self.renderings)

    def render(self, output_format: str) -> str:
        """Text of one output format.

        Raises:
            ConfigError: If this command has no output in that format
        """
        if output_format == "json":
            return self.artifact.to_json() + "\n"
        if output_format not in self.renderings:
            raise ConfigError(
                f"{self.command} has no {output_format} output; available: {', '.join(self.formats())}"
            )
        return self.renderings[output_format]

    def write(self, output_dir: str) -> List[Path]:
        """Write every format to ``<output_dir>/<command>.<ext>``, in sorted order."""
        directory = Path(output_dir)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for fmt in self.formats():
            suffix = "txt" if fmt == "text" else fmt
            path = directory / f"{self.command}.{suffix}"
            path.write_text(self.render(fmt), encoding="utf-8")
            written.append(path)
        logger.info(f"Wrote {len(written)} artifact(s) to {directory}")
        return written


def load_polynomial(source: str, profile: FieldProfile) -> LaurentPolynomial:
    """Polynomial from inline text, inline JSON or a .json file.

    Raises:
        ParseError: If the text or JSON is malformed
        FileNotFoundError: If a .json path does not exist
    """
    text = source
    if source.strip().endswith(".json") and not source.strip().startswith("{"):
        text = Path(source.strip()).read_text(encoding="utf-8")
    if text.strip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"polynomial JSON: {exc.msg}", exc.pos) from None
        return LaurentPolynomial.from_dict(data, profile)
    return parse_poly(text, profile)


def load_complex(path: str) -> PolyhedralComplex:
    return ComplexModel.model_validate_json(Path(path).read_text(encoding="utf-8")).to_complex()


def parse_point_list(text: str) -> List[Fraction]:
    """Comma-separated rationals such as "1/2,1/4,1/8"."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError(f"empty list: {text!r}")
    return [parse_rat(p) for p in parts]


def unit_interval() -> PolyhedralComplex:
    return PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])], ambient_dim=1)


def _box(title: str, rows: Sequence[str]) -> str:
    bar = "=" * 60
    return "\n".join([bar, title, bar, *rows, bar]) + "\n"


class JobRunner:
    """Runs subcommands against one validated JobConfig."""

    def __init__(self, config: Optional[JobConfig] = None):
        self.config = config or JobConfig()
        self.profile = self.config.field_profile()
        self._handlers: Dict[str, Callable[..., RunResult]] = {
            "trop": self.trop,
            "initial": self.initial,
            "explode": self.explode,
            "chart": self.chart,
            "model": self.model,
            "metrized": self.metrized,
            "tower": self.tower,
            "extended": self.extended,
            "check": self.check,
        }

    def run(self, command: str, **options: Any) -> RunResult:
        """Dispatch one subcommand.

        Raises:
            ConfigError: If the command is unknown
        """
        handler = self._handlers.get(command)
        if handler is None:
            raise ConfigError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
        logger.info(f"Running {command} over {self.profile}")
        result = handler(**options)
        logger.info(f"{command} finished with exit code {result.exit_code}")
        return result

    def _polynomial(self, source: str) -> LaurentPolynomial:
        return load_polynomial(source, self.profile)

    def trop(self, poly: str) -> RunResult:
        f = self._polynomial(poly)
        trop = tropicalize(f)
        artifact = TropArtifact.build(trop)
        rows = [f"Polynomial: {f.to_text()}", f"Cells: {len(trop.complex.cells)}"]
        for cell in trop.complex.maximal_cells:
            rows.append(f"  {cell}")
        renderings = {"text": _box("TROPICAL HYPERSURFACE", rows)}
        if f.n <= 2:
            renderings["svg"] = tropical_to_svg(trop)
        return RunResult("trop", artifact, renderings, payload=trop)

    def initial(self, poly: str, at: str) -> RunResult:
        f = self._polynomial(poly)
        point = QVector.parse(at)
        form = initial_form(f, point)
        artifact = InitialArtifact(
            profile=ProfileModel.from_profile(f.profile),
            polynomial=PolynomialModel.from_polynomial(f),
            point=list(point.to_strings()),
            value=format_rat(trop_value(f, point)),
            initial_form=PolynomialModel.from_residue(form),
            in_tropicalization=len(form) >= 2,
        )
        return RunResult("initial", artifact, {"text": form.to_text() + "\n"}, payload=form)

    def explode(self, poly: str, refine: Optional[str] = None) -> RunResult:
        f = self._polynomial(poly)
        refinement = load_complex(refine) if refine else None
        data = exploded_fibration(f, refinement, workers=self.config.workers)
        artifact = ExplodeArtifact.build(data)
        for row in artifact.cells:
            row.components = fiber_components(data.fibers[row.index])
            row.status = "unfactored" if row.components is None else "factored"
        rows = [f"{i}\tdim {cell.dim}\t{fiber.to_text()}" for i, cell, fiber in data.rows()]
        return RunResult("explode", artifact, {"text": _box("EXPLODED FIBRATION", rows)}, payload=data)

    def chart(self, cone: str, oracle: bool = True) -> RunResult:
        model = AdmissibleConeModel.model_validate_json(Path(cone).read_text(encoding="utf-8"))
        delta = model.to_cone()
        group = ValueGroup(self.config.gamma)
        semigroup = tilted_semigroup(delta, group)
        relations = binomial_relations(semigroup, self.config.degree_bound)
        variables = default_variables(semigroup.n)
        report = verify_hilbert_basis(semigroup) if oracle else None
        artifact = ChartArtifact.build(
            semigroup, relations, variables, self.config.uniformizer, report
        )
        rows = [
            f"Hilbert basis: {', '.join(e.text for e in artifact.hilbert_basis)}",
            f"Generators: {', '.join(artifact.generators) or '(none)'}",
            f"Units: {', '.join(e.text for e in artifact.units) or '(none)'}",
            "Relations:",
            *[f"  {r}" for r in artifact.relations],
        ]
        return RunResult("chart", artifact, {"text": _box("TILTED CHART", rows)}, payload=semigroup)

    def model(self, complex_path: str, partial: bool = False) -> RunResult:
        complex_ = load_complex(complex_path)
        group = ValueGroup(self.config.gamma)
        if partial:
            fan = fan_over_cells(complex_, group)
        else:
            fan = fan_over_complex(complex_, group, assume_complete=self.config.assume_complete)
        dual = special_fiber(fan)
        artifact = ModelArtifact.build(dual)
        rows = [f"{i}\t{c.vertex}\t{c.kind}" for i, c in enumerate(dual.components)]
        rows.append(f"Nodes: {len(dual.edges)}")
        if dual.partial:
            rows.append("Partial: support is not full")
        renderings = {"text": _box("SPECIAL FIBER", rows), "dot": dual_complex_to_dot(dual)}
        if complex_.ambient_dim <= 2:
            labels = {c.cell_index: c.kind for c in dual.components}
            renderings["svg"] = complex_to_svg(dual.complex, labels)
        return RunResult("model", artifact, renderings, payload=dual)

    def metrized(self, poly: str, refine: Optional[str] = None, schon: bool = False) -> RunResult:
        f = self._polynomial(poly)
        refinement = load_complex(refine) if refine else None
        mc = build_metrized_complex(f, refinement, schon=schon)
        counts = adic_point_count(f, refinement)
        artifact = MetrizedArtifact.build(mc, counts)
        rows = [f"{v}\t{d.to_text()}" for v, d in zip(mc.vertices, mc.decorations)]
        rows.append(f"Total edge length: {format_rat(mc.total_length())}")
        renderings = {
            "text": _box("METRIZED COMPLEX", rows),
            "dot": metrized_to_dot(mc),
            "svg": metrized_to_svg(mc),
        }
        return RunResult("metrized", artifact, renderings, payload=mc)

    def tower(
        self,
        insert: str,
        complex_path: Optional[str] = None,
        vertex: Optional[str] = None,
    ) -> RunResult:
        base = load_complex(complex_path) if complex_path else unit_interval()
        points = parse_point_list(insert)
        v = parse_rat(vertex) if vertex is not None else None
        coords = [w[0] for w in base.vertices] + points + ([v] if v is not None else [])
        group = ValueGroup(self.config.gamma).join(ValueGroup.generated_by(coords))
        tower = tower_simulate(base, points, v, group)
        artifact = TowerArtifact.build(tower)
        rows = [
            f"{s.index}\t{s.component_count} components\t{s.p1_count} P1\tnode {s.node}"
            for s in tower.stages
        ]
        if tower.trace is not None:
            rows.append(f"Trace point: {tower.trace.classification}")
        renderings = {
            "text": _box("REFINEMENT TOWER", rows),
            "dot": dual_complex_to_dot(tower.stages[-1].dual),
        }
        return RunResult("tower", artifact, renderings, payload=tower)

    def extended(self, poly: str) -> RunResult:
        F = self._polynomial(poly)
        strata = extended_tropicalize(F)
        artifact = ExtendedArtifact(
            profile=ProfileModel.from_profile(F.profile),
            polynomial=PolynomialModel.from_polynomial(F),
            orbits=[OrbitModel.from_stratum(s) for s in strata],
        )
        rows = [
            f"{{{', '.join(s.zero_variables)}}} = 0\t{s.status.value}"
            + (f"\t{s.restriction.to_text()}" if s.restriction is not None else "")
            for s in strata
        ]
        renderings = {"text": _box("EXTENDED TROPICALIZATION", rows)}
        return RunResult("extended", artifact, renderings, payload=strata)

    def check(self, suites: Optional[Sequence[str]] = None) -> RunResult:
        try:
            results = run_suites(self.config.seed, suites)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None
        passed = all(r.passed for r in results)
        artifact = CheckArtifact(
            seed=self.config.seed,
            suites=[
                SuiteModel(name=r.name, cases=r.cases, passed=r.passed, failures=r.failures)
                for r in results
            ],
            passed=passed,
        )
        rows = [f"{r.name:<24}{r.cases:>8}  {'PASS' if r.passed else 'FAIL'}" for r in results]
        rows.append(f"Seed: {self.config.seed}")
        return RunResult(
            "check",
            artifact,
            {"text": _box("ORACLE SUITES", rows)},
            exit_code=0 if passed else 1,
            payload=results,
        )


def run(command: str, config: Optional[JobConfig] = None, **options: Any) -> RunResult:
    """Run one subcommand with a fresh JobRunner."""
    return JobRunner(config).run(command, **options)
