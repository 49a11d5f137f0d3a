"""Adjoining transformations T_{A,B}: L(m) -> L(Am+B) / gcd(aA, aB+b)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .arith import crt_modulus
from .diagrams import DiagramError, Relation, RelationDiagram
from .forms import FormTuple, LinearForm, is_admissible


@dataclass(frozen=True)
class AdjoinTransform:
    A: int
    B: int

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError(f"A must be positive, got {self.A}")

    def to_json(self) -> dict:
        return {"A": str(self.A), "B": str(self.B)}

    @classmethod
    def from_json(cls, obj: dict) -> "AdjoinTransform":
        return cls(int(obj["A"]), int(obj["B"]))

    def __str__(self) -> str:
        return f"T_{{{self.A},{self.B}}}"


@dataclass(frozen=True)
class AdjoinSpec:
    """Requested adjoining factors g_i, one per tuple position."""

    factors: tuple[int, ...]

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(g) for g in factors)
        if any(g < 1 for g in factors):
            raise ValueError("adjoining factors must be positive")
        object.__setattr__(self, "factors", factors)

    def to_json(self) -> dict:
        return {"g": [str(g) for g in self.factors]}

    @classmethod
    def from_json(cls, obj) -> "AdjoinSpec":
        return cls(obj["g"] if isinstance(obj, dict) else obj)


def apply(T: AdjoinTransform, form: LinearForm) -> tuple[LinearForm, int]:
    """Image of ``form`` under T together with its adjoining factor."""
    a, b = form.a * T.A, form.a * T.B + form.b
    g = math.gcd(a, b)
    return LinearForm(a // g, b // g), g


class Adjoined(NamedTuple):
    forms: FormTuple
    diagram: RelationDiagram | None
    factors: list[int]


def apply_tuple(T: AdjoinTransform, forms: FormTuple, diagram: RelationDiagram | None = None) -> Adjoined:
    """Transform every form; edge coefficients pick up the adjoining factors, values stay."""
    images = [apply(T, f) for f in forms]
    new_forms = FormTuple(img for img, _ in images)
    factors = [g for _, g in images]
    new_diagram = None
    if diagram is not None:
        if diagram.forms != forms:
            raise DiagramError("diagram does not belong to the given tuple")
        edges = {}
        for key, rel in diagram.edges.items():
            problem = rel.violation(forms)
            if problem:
                raise DiagramError(f"edge {key[0]}->{key[1]} violates its identity: {problem}")
            edges[key] = Relation(
                rel.from_index,
                rel.to_index,
                factors[rel.from_index] * rel.c_from,
                factors[rel.to_index] * rel.c_to,
                rel.r,
            )
        new_diagram = RelationDiagram(new_forms, edges)
    return Adjoined(new_forms, new_diagram, factors)


class SpecViolation(NamedTuple):
    family: str  # "g_i,a_i" | "g_i,det" | "g_i,g_j"
    i: int
    j: int | None
    gcd: int

    def __str__(self) -> str:
        if self.family == "g_i,a_i":
            return f"gcd(g_{self.i}, a_{self.i}) = {self.gcd}"
        if self.family == "g_i,det":
            return f"gcd(g_{self.i}, a_{self.i}*b_{self.j} - a_{self.j}*b_{self.i}) = {self.gcd}"
        return f"gcd(g_{self.i}, g_{self.j}) = {self.gcd}"


class SpecCheck(NamedTuple):
    valid: bool
    violation: SpecViolation | None

    def __bool__(self) -> bool:
        return self.valid


def validate_spec(forms: FormTuple, spec: AdjoinSpec) -> SpecCheck:
    """Check gcd(g_i, a_i) = gcd(g_i, a_i b_j - a_j b_i) = gcd(g_i, g_j) = 1 (0-based indices)."""
    if len(spec.factors) != forms.k:
        raise ValueError(f"spec has {len(spec.factors)} factors for a {forms.k}-tuple")
    g = spec.factors
    for i, L in enumerate(forms):
        c = math.gcd(g[i], L.a)
        if c != 1:
            return SpecCheck(False, SpecViolation("g_i,a_i", i, None, c))
        for j, M in enumerate(forms):
            if j == i:
                continue
            c = math.gcd(g[i], L.a * M.b - M.a * L.b)
            if c != 1:
                return SpecCheck(False, SpecViolation("g_i,det", i, j, c))
    for i, j in itertools.combinations(range(forms.k), 2):
        c = math.gcd(g[i], g[j])
        if c != 1:
            return SpecCheck(False, SpecViolation("g_i,g_j", i, j, c))
    return SpecCheck(True, None)


class ConstructionError(ValueError):
    pass


def construct(forms: FormTuple, spec: AdjoinSpec) -> AdjoinTransform:
    """Transform realizing exactly the adjoining factors in ``spec``.

    A = (prod g_i)^2 and B is the least nonnegative solution of
    L_i(B) = g_i (mod g_i^2). The realized factors and the admissibility of the
    image are checked afterwards rather than assumed.
    """
    admissible = is_admissible(forms)
    if not admissible:
        raise ConstructionError(f"tuple is not admissible (obstruction at p = {admissible.witness})")
    check = validate_spec(forms, spec)
    if not check:
        raise ConstructionError(f"invalid adjoin spec: {check.violation}")
    congruences = []
    for L, g in zip(forms, spec.factors):
        if g == 1:
            continue
        mod = g * g
        congruences.append(((g - L.b) * pow(L.a, -1, mod) % mod, mod))
    B, mod = crt_modulus(congruences)
    A = math.prod(spec.factors) ** 2
    assert mod == A
    T = AdjoinTransform(A, B)
    image = apply_tuple(T, forms)
    if image.factors != list(spec.factors):
        raise ConstructionError(f"realized factors {image.factors} differ from requested {list(spec.factors)}")
    admissible = is_admissible(image.forms)
    if not admissible:
        raise ConstructionError(f"transformed tuple is not admissible (p = {admissible.witness})")
    return T
