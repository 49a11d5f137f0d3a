"""Published constructions and constants, and a replay that regenerates each one.

Every tuple here is rebuilt from its starting data and compared bit-exactly with
the printed values; every J constant is recomputed from the polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Callable

import mpmath

from . import adjoin, diagrams, forms, sieve
from .arith import ExponentPattern, primes_up_to
from .loglinear import LogLinearValue

F = Fraction

FIVE_TUPLE = ("2m+1", "3m+2", "6m+5", "6m+7", "3m+4")
FIVE_TUPLE_COEFFS = (3, 2, 1, 1, 2)
# (i, j) -> printed relation value, 0-based
FIVE_TUPLE_VALUES = {
    (0, 1): 1, (0, 2): 2, (0, 3): 4, (0, 4): 5,
    (1, 2): 1, (1, 3): 3, (1, 4): 4,
    (2, 3): 2, (2, 4): 3,
    (3, 4): 1,
}
ADJOINED_35 = ("70m+1", "105m+2", "42m+1", "30m+1", "105m+4")
ADJOINED_35_COEFFS = (3, 2, 5, 7, 2)

PRIME_PAIR_10 = (0, 2, 6, 8, 12, 18, 20, 26, 30, 32)
PRIME_PAIR_5 = (0, 2, 6, 8, 12)

EQUAL_DISTANCE_SIX = ("24m+5", "90m+19", "288m+61", "33m+7", "80m+17", "108m+23")
EQUAL_DISTANCE_SIX_MAX_DIAM = 20

MONIC_TEN = (4, 5, 7, 8, 9, 11, 13, 16, 17, 19)
PRIMORIAL_19 = 9699690
PRIMORIAL_TEN = (
    "4849845m+2", "1939938m+1", "1385670m+1", "4849845m+4", "3233230m+3",
    "881790m+1", "746130m+1", "4849845m+8", "570570m+1", "510510m+1",
)
PRIMORIAL_TEN_COEFFS = (2, 5, 7, 2, 3, 11, 13, 2, 17, 19)


@dataclass(frozen=True)
class AdjoinCase:
    name: str
    k: int
    g: tuple[int, ...]
    function: str
    value: int  # common shifted value of the function
    coefficient_value: int  # common value of the function on the coefficients i*g_i
    sqrt_A: int | None = None
    B: int | None = None
    tuple_printed: tuple[str, ...] | None = None
    pattern: tuple[int, ...] | None = None
    d_value: int | None = None


ADJOIN_CASES = (
    AdjoinCase(
        "eh-omega-5", 5, (7, 1, 1, 1, 1), "omega", 3, 1, sqrt_A=7, B=5,
        tuple_printed=("420m+43", "1470m+151", "980m+101", "735m+76", "588m+61"),
    ),
    AdjoinCase(
        "eh-Omega-5", 5, (7 * 11, 13, 17, 1, 19), "Omega", 4, 2, sqrt_A=323323, B=97650202718,
        tuple_printed=(
            "81457996620m+76091067053", "241240989990m+225346621657", "122985602740m+114882591433",
            "1568066434935m+1464753040771", "66023849892m+61673812243",
        ),
    ),
    AdjoinCase(
        "eh-h-5", 5, (7**2 * 11, 13**2, 17**2, 19, 23**2), "h", 2**2 * 3 * 5 * 7, 2**2 * 3,
        sqrt_A=264595580249, B=46136207543205182050716,
        tuple_printed=(
            "7793412365933766111540m+5135755941729704866499",
            "12427956406030473177870m+8189859327196186162849",
            "4845039521612802692180m+3192817131017659657489",
            "55271700858398683343685m+36423321744635670040039",
            "1588147170222419634828m+1046568035006544772417",
        ),
        pattern=(2, 1, 1, 1), d_value=24,
    ),
    AdjoinCase("omega-10", 10, (11 * 13, 17, 19, 23, 29, 1, 31, 37, 41, 1), "omega", 4, 2),
    AdjoinCase("Omega-10", 10, (11**3, 13**2, 17**2, 19, 23**2, 29, 31**2, 1, 37, 41), "Omega", 5, 3),
    AdjoinCase(
        "h-10", 10,
        (
            11**3 * 13**2 * 17 * 19, 23**3 * 29**2 * 31, 37**3 * 41**2 * 43, 47**3 * 53 * 59,
            61**3 * 67**2 * 71, 73**3 * 79**2, 83**3 * 89**2 * 97, 101**2 * 103 * 107,
            109**3 * 113 * 127, 131**3 * 137**2,
        ),
        "h", 2**3 * 3**2 * 5 * 7 * 11 * 13, 2**3 * 3**2 * 5 * 7,
        pattern=(3, 2, 1, 1, 1, 1), d_value=192,
    ),
)


@dataclass(frozen=True)
class JCase:
    name: str
    config: sieve.SieveConfig
    P: tuple[Fraction, ...]
    J0: Fraction
    J1: LogLinearValue
    J2: LogLinearValue
    J3: LogLinearValue
    J: LogLinearValue
    printed: dict[str, str] = field(default_factory=dict)


_U = F(113, 85)
_C = F(68139, 34340)
_C1 = F(101, 100)

J_CASES = (
    JCase(
        "unconditional",
        sieve.SieveConfig(10, 2, F(4), F(1, 340), 2),
        (F(3, 20), F(3, 5), F(10)),
        F(18549, 800800),
        LogLinearValue(
            F(2113287710672781837420508478315754592524, 105076848611852709873077392578125),
            {_U: F(-1262566905669, 17875)},
        ),
        LogLinearValue(
            F(-79584691575671328932238080587887183154, 3967936940587444988214111328125),
            {_U: F(12980396496724, 184275)},
        ),
        LogLinearValue(0, {F(3): F(911, 1474200)}),
        LogLinearValue(
            F(8719967520249406350967107646046792519503, 7061164226716502103470800781250000),
            {_U: F(-1953628194503, 450450), F(3): F(911, 65520)},
        ),
        {"J0": "0.02316308", "J1": "0.00063269", "J2": "0.00074896", "J3": "0.00067890", "J": "0.00003645"},
    ),
    JCase(
        "conditional",
        sieve.SieveConfig(5, 2, F(201, 100), F(1, 340), 2),
        (F(3, 4), F(6), F(10)),
        F(7487, 5040),
        LogLinearValue(
            F(-1185867362212062499391309326339523040406768636033, 6426286514402549760000000000000000000000000000),
            {_C: F(75466092079924833449781, 280000000000000000000)},
        ),
        LogLinearValue(
            F(42290186710920567072992744924095611611325091277, 229510232657233920000000000000000000000000000),
            {_C: F(-18808406922710397486573, 70000000000000000000)},
        ),
        LogLinearValue(0, {_C1: F(1747, 12096)}),
        LogLinearValue(
            F(-54641056436520615648365200967849481935314631, 9639429771603824640000000000000000000000000),
            {_C1: F(218375, 151956), _C: F(1156539249170365689, 140000000000000000)},
        ),
        {"J0": "1.48551587", "J1": "0.15294205", "J2": "0.14486877", "J3": "0.00143710", "J": "0.00655959"},
    ),
)


def matches_printed(value: LogLinearValue, printed: str) -> bool:
    """True when ``value`` truncated to the printed number of decimals equals ``printed``."""
    decimals = len(printed.split(".")[1])
    text = mpmath.nstr(value.to_mpf(80), 60, strip_zeros=False, min_fixed=-math.inf, max_fixed=math.inf)
    exact = Decimal(text)
    quantum = Decimal(1).scaleb(-decimals)
    truncated = (exact / quantum).to_integral_value(rounding="ROUND_FLOOR") * quantum
    return truncated == Decimal(printed)


def monic_base(k: int) -> adjoin.Adjoined:
    """T_{lcm(1..k),0} applied to m+1, ..., m+k with its trivial diagram."""
    base = forms.FormTuple.shifts(range(1, k + 1))
    return adjoin.apply_tuple(
        adjoin.AdjoinTransform(math.lcm(*range(1, k + 1)), 0), base, diagrams.canonical_diagram(base)
    )


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _tuple_of(strings) -> forms.FormTuple:
    return forms.FormTuple.of(*strings)


def _run(name: str, fn: Callable[[], tuple[bool, str] | bool]) -> Check:
    try:
        out = fn()
    except Exception as exc:  # a replay failure must be reported, never raised
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    ok, detail = out if isinstance(out, tuple) else (out, "")
    return Check(name, bool(ok), detail)


def _diagram_values(d: diagrams.RelationDiagram) -> dict:
    return {key: rel.r for key, rel in d.edges.items()}


def replay(include_optimizer: bool = True) -> list[Check]:
    """Regenerate every construction and constant; one Check per item, in order."""
    checks: list[Check] = []
    add = lambda name, fn: checks.append(_run(name, fn))  # noqa: E731

    five = _tuple_of(FIVE_TUPLE)
    five_d = diagrams.canonical_diagram(five)

    def five_diagram():
        report = diagrams.check(five_d)
        ok = (
            tuple(report.coefficients) == FIVE_TUPLE_COEFFS
            and _diagram_values(five_d) == FIVE_TUPLE_VALUES
            and bool(forms.is_admissible(five))
            and not any(report.compatible_for.values())
        )
        return ok, f"coefficients {report.coefficients}, r in [{report.r_min}, {report.r_max}], compatible {report.compatible_for}"

    add("five-tuple consistent diagram", five_diagram)

    adj = adjoin.apply_tuple(adjoin.AdjoinTransform(35, 0), five, five_d)

    def adjoined_35():
        report = diagrams.check(adj.diagram)
        ok = (
            adj.forms == _tuple_of(ADJOINED_35)
            and tuple(report.coefficients) == ADJOINED_35_COEFFS
            and _diagram_values(adj.diagram) == FIVE_TUPLE_VALUES
            and bool(forms.is_admissible(adj.forms))
            and report.compatible_for["omega"]
            and report.compatible_for["Omega"]
        )
        return ok, f"T_{{35,0}} -> {adj.forms}, coefficients {report.coefficients}"

    add("T_{35,0} adjoined diagram", adjoined_35)

    def triangle():
        L = _tuple_of(ADJOINED_35[:3])
        return (forms.dist(L[0], L[1]), forms.dist(L[1], L[2]), forms.diam(*L)) == (1, 1, 2), "dist 1, 1; diam 2"

    add("triangle in adjoined tuple", triangle)

    def shift_35():
        om = diagrams.shift_conclusion(adj.diagram, "omega", eh=True)
        Om = diagrams.shift_conclusion(adj.diagram, "Omega", eh=True)
        ok = (om.value, Om.value, om.r_min, om.r_max) == (3, 3, 1, 5)
        return ok, f"omega = Omega = {Om.value}, 1 <= a < b <= {Om.r_max}"

    add("E3 shift conclusion (5-tuple)", shift_35)

    for offsets, label in ((PRIME_PAIR_10, "10"), (PRIME_PAIR_5, "5")):
        add(
            f"admissible prime {label}-tuple",
            lambda offsets=offsets: (bool(forms.is_admissible(forms.FormTuple.shifts(offsets))), str(offsets)),
        )

    def equal_distance_six():
        six = _tuple_of(EQUAL_DISTANCE_SIX)
        ordered = six.sorted()
        dists = {forms.dist(x, y) for x, y in zip(ordered, ordered[1:])}
        dists |= {forms.dist(*sorted(pair)) for pair in itertools.combinations(six, 2)}
        md = forms.max_diameter(ordered)
        ok = dists == {1} and md == EQUAL_DISTANCE_SIX_MAX_DIAM and bool(forms.is_admissible(six))
        return ok, f"distances {sorted(dists)}, max diameter {md}"

    add("equal-distance 6-tuple", equal_distance_six)

    def primorial():
        base = forms.FormTuple.shifts(MONIC_TEN)
        out = adjoin.apply_tuple(adjoin.AdjoinTransform(PRIMORIAL_19, 0), base, diagrams.canonical_diagram(base))
        report = diagrams.check(out.diagram)
        ok = (
            math.prod(primes_up_to(19)) == PRIMORIAL_19
            and not forms.is_admissible(base)
            and out.forms == _tuple_of(PRIMORIAL_TEN)
            and tuple(report.coefficients) == PRIMORIAL_TEN_COEFFS
            and bool(forms.is_admissible(out.forms))
            and (report.r_min, report.r_max) == (1, 15)
        )
        sc = diagrams.shift_conclusion(out.diagram, "Omega")
        sw = diagrams.shift_conclusion(out.diagram, "omega")
        ok = ok and sc.value == 3 and sw.value == 3
        return ok, f"first form {out.forms[0]}, Omega = omega = 3, r in [1, {report.r_max}]"

    add("T_{19#,0} 10-tuple", primorial)

    for k in (5, 10):
        def base_check(k=k):
            out = monic_base(k)
            A = math.lcm(*range(1, k + 1))
            ok = list(out.forms) == [forms.LinearForm(A // i, 1) for i in range(1, k + 1)]
            ok = ok and diagrams.check(out.diagram).coefficients == list(range(1, k + 1))
            return ok and bool(forms.is_admissible(out.forms)), f"T_{{{A},0}}(m+1..m+{k})"

        add(f"monic base {k}-tuple", base_check)

    for case in ADJOIN_CASES:
        add(f"adjoin {case.name}", lambda case=case: _adjoin_case(case))

    for jc in J_CASES:
        for part in ("J0", "J1", "J2", "J3", "J"):
            add(f"{jc.name} {part}", lambda jc=jc, part=part: _j_case(jc, part))

    def diameter_law():
        worst = []
        for offsets in (PRIME_PAIR_10, PRIME_PAIR_5):
            t = forms.FormTuple.shifts(offsets)
            worst.append(forms.max_diameter(t) - (t.k - 1))
        return min(worst) >= 0, f"max_diameter - (k-1) = {worst}"

    add("diameter lower bound on prime tuples", diameter_law)

    if include_optimizer:
        from .optimize import maximize

        for jc in J_CASES:
            def opt(jc=jc):
                res = maximize(jc.config)
                P = sieve.Poly(jc.P)
                ref_q = sieve.J_numerator(P, jc.config) * (1 / sieve.J0(P, jc.config.k))
                mine = res.polynomial
                diff = sieve.J_numerator(mine, jc.config) * (1 / sieve.J0(mine, jc.config.k)) - ref_q
                better = diff.certify_sign().status in ("positive", "zero")
                return res.positive and better, f"lambda_max {res.lambda_max:.6f}, J = {float(res.J_exact):.3e}"

            add(f"optimizer {jc.name}", opt)
    return checks


def _adjoin_case(case: AdjoinCase) -> tuple[bool, str]:
    base = monic_base(case.k)
    T = adjoin.construct(base.forms, adjoin.AdjoinSpec(case.g))
    out = adjoin.apply_tuple(T, base.forms, base.diagram)
    ok = out.factors == list(case.g) and bool(forms.is_admissible(out.forms))
    if case.sqrt_A is not None:
        ok = ok and T.A == case.sqrt_A**2
    if case.B is not None:
        ok = ok and T.B % T.A == case.B % T.A
    if case.tuple_printed is not None:
        ok = ok and out.forms == _tuple_of(case.tuple_printed)
    report = diagrams.check(out.diagram, [case.function])
    ok = ok and report.common_value.get(case.function) == case.coefficient_value
    conclusion = diagrams.shift_conclusion(out.diagram, case.function, eh=case.k < 10)
    ok = ok and conclusion.value == case.value and conclusion.r_min == 1 and conclusion.r_max == case.k - 1
    if case.pattern is not None:
        ok = ok and conclusion.pattern == ExponentPattern(case.pattern)
        d_conc = diagrams.shift_conclusion(out.diagram, "d", eh=case.k < 10)
        ok = ok and d_conc.value == case.d_value
    detail = f"A = {T.A}, B = {T.B}, first form {out.forms[0]}, {case.function} = {conclusion.value}"
    if case.d_value is not None:
        detail += f", d = {case.d_value}"
    return ok, detail


def _j_case(jc: JCase, part: str) -> tuple[bool, str]:
    P = sieve.Poly(jc.P)
    computed = {
        "J0": lambda: LogLinearValue(sieve.J0(P, jc.config.k)),
        "J1": lambda: sieve.J1(P, jc.config),
        "J2": lambda: sieve.J2(P, jc.config),
        "J3": lambda: sieve.J3(P, jc.config),
        "J": lambda: sieve.J_total(P, jc.config),
    }[part]()
    expected = getattr(jc, part)
    if not isinstance(expected, LogLinearValue):
        expected = LogLinearValue(expected)
    ok = computed == expected and matches_printed(computed, jc.printed[part])
    if part == "J":
        ok = ok and computed.certify_sign().status == "positive"
    return ok, f"{computed} = {mpmath.nstr(computed.to_mpf(40), 12)}"
