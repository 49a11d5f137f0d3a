"""Relation diagrams on tuples of linear forms.

A relation from L_i to L_j is the polynomial identity
``c_to * L_j - c_from * L_i = r`` with positive integers ``c_from, c_to, r``.
A diagram stores one relation per pair i < j; it is consistent when every
form carries a single coefficient across all of its edges.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .arith import ExponentPattern, exponent_pattern, pattern_function
from .forms import FormTuple, OrderError, is_admissible

FUNCTION_ALIASES = {"ω": "omega", "Ω": "Omega", "w": "omega", "W": "Omega"}


def canonical_function_name(name: str) -> str:
    name = FUNCTION_ALIASES.get(name, name)
    pattern_function(name)
    return name


class DiagramError(ValueError):
    """A diagram whose edges do not satisfy their polynomial identities."""


@dataclass(frozen=True)
class Relation:
    from_index: int
    to_index: int
    c_from: int
    c_to: int
    r: int

    def violation(self, forms: FormTuple) -> str | None:
        """Why this edge fails its identity on ``forms``, or None when it holds."""
        Li, Lj = forms[self.from_index], forms[self.to_index]
        if min(self.c_from, self.c_to, self.r) <= 0:
            return "coefficients and value must be positive"
        if self.c_to * Lj.a != self.c_from * Li.a:
            return f"linear parts differ: {self.c_to}*{Lj.a} != {self.c_from}*{Li.a}"
        if self.c_to * Lj.b - self.c_from * Li.b != self.r:
            return f"constant parts give {self.c_to * Lj.b - self.c_from * Li.b}, not r = {self.r}"
        return None

    def to_json(self) -> dict:
        return {
            "i": self.from_index,
            "j": self.to_index,
            "c_i": str(self.c_from),
            "c_j": str(self.c_to),
            "r": str(self.r),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Relation":
        return cls(int(obj["i"]), int(obj["j"]), int(obj["c_i"]), int(obj["c_j"]), int(obj["r"]))


@dataclass(frozen=True)
class RelationDiagram:
    """A simple relation diagram; edges keyed by (i, j) with i < j (0-based)."""

    forms: FormTuple
    edges: dict[tuple[int, int], Relation] = field(hash=False)

    @property
    def k(self) -> int:
        return self.forms.k

    def edge(self, i: int, j: int) -> Relation:
        return self.edges[(i, j)]

    def is_complete(self) -> bool:
        return set(self.edges) == set(itertools.combinations(range(self.k), 2))

    def coefficients(self) -> list[int] | None:
        """Per-form coefficients when the diagram is complete and consistent."""
        if not self.is_complete():
            return None
        coeffs: list[int | None] = [None] * self.k
        for (i, j), rel in self.edges.items():
            for idx, c in ((i, rel.c_from), (j, rel.c_to)):
                if coeffs[idx] is None:
                    coeffs[idx] = c
                elif coeffs[idx] != c:
                    return None
        if self.k == 1:
            return None
        return coeffs  # type: ignore[return-value]

    def values(self) -> list[int]:
        return [rel.r for rel in self.edges.values()]

    def realize(self, m: int) -> list[int]:
        """The integers c_i * L_i(m); consecutive differences are relation values."""
        coeffs = self.coefficients()
        if coeffs is None:
            raise DiagramError("realize needs a consistent diagram")
        return [c * f(m) for c, f in zip(coeffs, self.forms)]

    def to_json(self) -> dict:
        return {
            "tuple": self.forms.to_json(),
            "edges": [self.edges[key].to_json() for key in sorted(self.edges)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RelationDiagram":
        forms = FormTuple.from_json(obj["tuple"])
        rels = [Relation.from_json(e) for e in obj["edges"]]
        return cls(forms, {(r.from_index, r.to_index): r for r in rels})

    def to_dot(self) -> str:
        coeffs = self.coefficients()
        lines = ["digraph relations {", "  rankdir=LR;"]
        for i, f in enumerate(self.forms):
            label = f"{f}" + (f" ({coeffs[i]})" if coeffs else "")
            lines.append(f'  L{i} [label="{label}"];')
        for (i, j) in sorted(self.edges):
            rel = self.edges[(i, j)]
            lines.append(
                f'  L{i} -> L{j} [label="{rel.r}", taillabel="({rel.c_from})", headlabel="({rel.c_to})"];'
            )
        lines.append("}")
        return "\n".join(lines)

    def to_text(self) -> str:
        lines = []
        for (i, j) in sorted(self.edges):
            rel = self.edges[(i, j)]
            lines.append(
                f"{self.forms[i]} ({rel.c_from}) |--{rel.r}--> ({rel.c_to}) {self.forms[j]}"
            )
        return "\n".join(lines)


def diagram_from_coefficients(forms: FormTuple, coeffs: list[int]) -> RelationDiagram:
    """Consistent diagram with the given per-form coefficients (values derived)."""
    edges = {}
    for i, j in itertools.combinations(range(forms.k), 2):
        r = coeffs[j] * forms[j].b - coeffs[i] * forms[i].b
        edges[(i, j)] = Relation(i, j, coeffs[i], coeffs[j], r)
    return RelationDiagram(forms, edges)


def canonical_diagram(forms: FormTuple) -> RelationDiagram:
    """The consistent diagram with c_i = lcm(a_1..a_k) / a_i."""
    if not forms.is_sorted:
        raise OrderError(f"canonical_diagram needs a tuple sorted by b/a; got {forms}")
    v = math.lcm(*(f.a for f in forms))
    return diagram_from_coefficients(forms, [v // f.a for f in forms])


@dataclass(frozen=True)
class CompatibilityReport:
    consistent: bool
    coefficients: list[int] | None
    compatible_for: dict[str, bool]
    common_value: dict[str, int]
    r_min: int | None
    r_max: int | None

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "coefficients": [str(c) for c in self.coefficients] if self.coefficients else None,
            "compatible_for": self.compatible_for,
            "common_value": {k: str(v) for k, v in self.common_value.items()},
            "r_min": self.r_min,
            "r_max": self.r_max,
        }


def check(diagram: RelationDiagram, functions=("d", "omega", "Omega", "h")) -> CompatibilityReport:
    """Verify every edge, then report consistency and f-compatibility.

    A single form with no edges counts as (vacuously) consistent.
    """
    names = [canonical_function_name(f) for f in functions]
    for key in sorted(diagram.edges):
        rel = diagram.edges[key]
        if key != (rel.from_index, rel.to_index) or not rel.from_index < rel.to_index < diagram.k:
            raise DiagramError(f"edge {key} is mislabelled")
        problem = rel.violation(diagram.forms)
        if problem:
            raise DiagramError(f"edge {key[0]}->{key[1]} violates its identity: {problem}")
    values = diagram.values()
    r_min = min(values) if values else None
    r_max = max(values) if values else None
    if diagram.k == 1 and not diagram.edges:
        return CompatibilityReport(True, None, {f: True for f in names}, {}, None, None)
    coeffs = diagram.coefficients()
    if coeffs is None:
        return CompatibilityReport(False, None, {f: False for f in names}, {}, r_min, r_max)
    compatible, common = {}, {}
    patterns = [exponent_pattern(c) for c in coeffs]
    for name in names:
        fn = pattern_function(name)
        vals = {fn(p) for p in patterns}
        compatible[name] = len(vals) == 1
        if compatible[name]:
            common[name] = vals.pop()
    return CompatibilityReport(True, coeffs, compatible, common, r_min, r_max)


class HypothesisError(ValueError):
    """The hypotheses for the shift conclusion are not met."""


@dataclass(frozen=True)
class ShiftConclusion:
    """f(x) = f(x+a) = f(x+b) = value for some r_min <= a < b <= r_max."""

    function: str
    r_min: int
    r_max: int
    value: int
    pattern: ExponentPattern | None  # shared exponent pattern of x, x+a, x+b when determined

    def to_json(self) -> dict:
        return {
            "function": self.function,
            "a_b_bounds": [self.r_min, self.r_max],
            "value": str(self.value),
            "pattern": list(self.pattern.exponents) if self.pattern else None,
        }


SHIFT_K_THRESHOLD = 10
SHIFT_K_THRESHOLD_EH = 5


def shift_conclusion(diagram: RelationDiagram, f: str, eh: bool = False) -> ShiftConclusion:
    """Common value of f at x, x+a, x+b guaranteed by an f-compatible diagram.

    Each x is c_i * L_i(m) with L_i(m) a product of two primes exceeding every
    coefficient, so its exponent pattern is pattern(c_i) plus {1, 1}. No
    concrete primes are needed.
    """
    name = canonical_function_name(f)
    threshold = SHIFT_K_THRESHOLD_EH if eh else SHIFT_K_THRESHOLD
    problems = []
    if diagram.k < threshold:
        problems.append(f"k too small: k = {diagram.k} < {threshold}" + ("" if eh else " (use eh for k >= 5)"))
    admissible = is_admissible(diagram.forms)
    if not admissible:
        problems.append(f"inadmissible: obstruction at p = {admissible.witness}")
    report = check(diagram, [name])
    if not report.consistent:
        problems.append("inconsistent diagram")
    elif not report.compatible_for[name]:
        problems.append(f"not {name}-compatible")
    if problems:
        raise HypothesisError("; ".join(problems))
    fn = pattern_function(name)
    e2 = ExponentPattern((1, 1))
    patterns = {exponent_pattern(c) + e2 for c in report.coefficients}
    values = {fn(p) for p in patterns}
    assert len(values) == 1, "f-compatible diagram produced distinct shift values"
    return ShiftConclusion(
        name,
        report.r_min,
        report.r_max,
        values.pop(),
        next(iter(patterns)) if len(patterns) == 1 else None,
    )
