"""Recompute the displayed metric formulas and compare them with embedded fixtures.

The fixtures list, per monomial label, the expected coefficient as an
expression in the metric coordinates ``r2, s2, t2, u, ubar, v, vbar, z, zbar``
and the family parameters ``rho, lam, D, Dbar, B, Bbar, c, eps``.  In family
(III) ``pm`` stands for the sign of the structure equations.

``rho`` and ``eps`` take values in {0, 1}, so both sides are compared after
the reduction ``rho^k -> rho`` and ``eps^k -> eps``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .forms import Form, del_delbar, delop, monomial_label, parse_label, power
from .polynomial import Polynomial, parse_expression
from .structures import EPS, LAMBDA, RHO, generic_metric, symbolic_family

IDEMPOTENT = (RHO, EPS)
FAMILY_SIGNS = {"P": (1,), "I": (1,), "II": (1,), "III": (1, -1)}


def load_fixtures() -> dict:
    text = resources.files("hermrank").joinpath("data/formula_fixtures.json").read_text()
    return json.loads(text)


def reduce_idempotent(p: Polynomial) -> Polynomial:
    """Replace ``rho^k`` and ``eps^k`` (k >= 1) by ``rho`` and ``eps``."""
    terms: dict = {}
    for mono, coeff in p.items():
        mono = tuple((x, 1 if x in IDEMPOTENT else e) for x, e in mono)
        terms[mono] = terms.get(mono, 0) + coeff
    return Polynomial(terms)


def parse_fixture(text: str, sign: int = 1) -> Polynomial:
    names = {"lam": Polynomial.var(LAMBDA), "pm": Polynomial.constant(sign)}
    return parse_expression(text, names)


@dataclass
class Comparison:
    quantity: str
    family: str | None
    sign: int | None
    compared: int = 0
    diffs: list = field(default_factory=list)


@dataclass
class FormulaReport:
    comparisons: list

    @property
    def diffs(self) -> list[str]:
        return [d for c in self.comparisons for d in c.diffs]

    @property
    def ok(self) -> bool:
        return not self.diffs

    @property
    def coefficient_count(self) -> int:
        return sum(c.compared for c in self.comparisons)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "coefficients_compared": self.coefficient_count,
            "comparisons": [
                {"quantity": c.quantity, "family": c.family, "sign": c.sign,
                 "coefficients": c.compared, "diffs": c.diffs}
                for c in self.comparisons
            ],
        }

    def to_text(self) -> str:
        lines = []
        for c in self.comparisons:
            where = c.quantity if c.family is None else f"{c.quantity} ({c.family})"
            if c.sign is not None and c.family == "III":
                where += f" sign {'+' if c.sign > 0 else '-'}"
            status = "match" if not c.diffs else "MISMATCH"
            lines.append(f"{where}: {c.compared} coefficients, {status}")
            lines.extend(f"  {d}" for d in c.diffs)
        lines.append(f"total: {self.coefficient_count} coefficients, {'all match' if self.ok else 'mismatches found'}")
        return "\n".join(lines) + "\n"


def compare(quantity: str, computed: Form, expected: dict, family=None, sign=None) -> Comparison:
    """Coefficient-by-coefficient comparison; one diff line per disagreeing monomial."""
    result = Comparison(quantity, family, sign)
    where = quantity if family is None else f"{quantity} ({family}{'' if sign is None else ', sign ' + str(sign)})"
    got = {key: reduce_idempotent(Polynomial.coerce(c)) for key, c in computed.items()}
    got = {k: v for k, v in got.items() if v}
    want = {parse_label(label): reduce_idempotent(parse_fixture(text, sign or 1)) for label, text in expected.items()}
    for key in sorted(set(got) | set(want)):
        a, b = got.get(key, Polynomial()), want.get(key, Polynomial())
        result.compared += 1
        if a != b:
            result.diffs.append(f"{where} {monomial_label(*key)}: expected {b or 0}, computed {a or 0}")
    return result


def verify_formula_fixtures(fixtures: dict | None = None) -> FormulaReport:
    """Recompute the products of the generic metric and the del / del-delbar images per family."""
    fixtures = load_fixtures() if fixtures is None else fixtures
    omega = generic_metric()
    comparisons = [
        compare("1/2 omega^2", power(omega, 2).scale(Fraction(1, 2)), fixtures["half_omega_squared"]),
        compare("1/6 omega^3", power(omega, 3).scale(Fraction(1, 6)), fixtures["sixth_omega_cubed"]),
    ]
    for quantity, op, key in (("del omega", delop, "del_omega"), ("del delbar omega", del_delbar, "del_delbar_omega")):
        for family in ("P", "I", "II", "III"):
            for sign in FAMILY_SIGNS[family]:
                spec = symbolic_family(family, sign).spec
                comparisons.append(compare(quantity, op(spec, omega), fixtures[key][family], family,
                                           sign if family == "III" else None))
    return FormulaReport(comparisons)
