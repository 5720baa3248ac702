"""Randomized exact checks of the operator identities of the exterior algebra.

For each family a stream of random parameter choices, random forms and
random closed Lee forms is drawn from a seeded generator; every identity is
evaluated with exact arithmetic and any failure is recorded with the data
that produced it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import (
    DifferentialSpec,
    Form,
    correction_form,
    delbar,
    delop,
    differential,
    power,
    twisted_differential,
    wedge,
)
from .gaussian import GaussianRational
from .structures import FAMILIES, FamilyParams, closed_one_forms, instantiate_family

IDENTITIES = (
    "d^2 = 0",
    "del^2 = 0",
    "delbar^2 = 0",
    "del delbar + delbar del = 0",
    "graded Leibniz",
    "twisted Leibniz",
    "d_theta^2 = -(d theta)^",
    "omega-hat expansion k=2",
    "omega-hat expansion k=3",
)


def random_params(family: str, rng: random.Random) -> FamilyParams:
    def q(lo=-3, hi=3):
        return Fraction(rng.randint(lo, hi), rng.randint(1, 3))

    if family == "P":
        return FamilyParams.create("P", rho=rng.randint(0, 1))
    if family == "I":
        return FamilyParams.create("I", rho=rng.randint(0, 1), lam=abs(q()), D=GaussianRational(q(), abs(q())))
    if family == "II":
        while True:
            rho, b, c = rng.randint(0, 1), GaussianRational(q(), q()), abs(q())
            if rho or b or c:
                return FamilyParams.create("II", rho=rho, B=b, c=c)
    return FamilyParams.create("III", eps=rng.randint(0, 1), sign=rng.choice((1, -1)))


def random_form(n: int, degree: int, rng: random.Random, terms: int = 4) -> Form:
    """Random form of pure total degree with small Gaussian-integer coefficients."""
    out = {}
    for _ in range(terms):
        p = rng.randint(max(0, degree - n), min(degree, n))
        hol = tuple(sorted(rng.sample(range(1, n + 1), p)))
        anti = tuple(sorted(rng.sample(range(1, n + 1), degree - p)))
        coeff = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
        if coeff:
            out[(hol, anti)] = coeff
    return Form(n, out)


def random_closed_one_form(basis: list[Form], rng: random.Random) -> Form:
    total = Form.zero(basis[0].n) if basis else None
    for b in basis:
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if c:
            total = total + b.scale(c)
    return total


@dataclass
class IdentityReport:
    instances_per_family: int
    seed: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, family: str, name: str, holds: bool, detail: str) -> None:
        key = (family, name)
        self.checks[key] = self.checks.get(key, 0) + 1
        if not holds:
            self.failures.append(f"({family}) {name}: {detail}")

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "seed": self.seed,
            "instances_per_family": self.instances_per_family,
            "checks": [{"family": f, "identity": i, "instances": self.checks.get((f, i), 0)}
                       for f in FAMILIES for i in IDENTITIES],
            "failures": self.failures,
        }

    def to_text(self) -> str:
        lines = []
        for f in FAMILIES:
            for i in IDENTITIES:
                n = self.checks.get((f, i), 0)
                bad = sum(1 for x in self.failures if x.startswith(f"({f}) {i}:"))
                lines.append(f"({f}) {i}: {n - bad}/{n} hold")
        lines.append("all identities hold" if self.ok else f"{len(self.failures)} failures")
        return "\n".join(lines) + "\n"


def _check_instance(report: IdentityReport, family: str, spec: DifferentialSpec, closed: list[Form],
                    rng: random.Random) -> None:
    n = spec.n
    deg_a = rng.randint(0, 2 * n - 1)
    a = random_form(n, deg_a, rng)
    b = random_form(n, rng.randint(0, 2), rng)
    label = f"a={a}"

    report.record(family, "d^2 = 0", not differential(spec, differential(spec, a)), label)
    report.record(family, "del^2 = 0", not delop(spec, delop(spec, a)), label)
    report.record(family, "delbar^2 = 0", not delbar(spec, delbar(spec, a)), label)
    report.record(family, "del delbar + delbar del = 0",
                  not (delop(spec, delbar(spec, a)) + delbar(spec, delop(spec, a))), label)

    sign = -1 if deg_a % 2 else 1
    lhs = differential(spec, wedge(a, b))
    rhs = wedge(differential(spec, a), b) + wedge(a, differential(spec, b)).scale(sign)
    report.record(family, "graded Leibniz", lhs == rhs, f"{label}, b={b}")

    theta = random_closed_one_form(closed, rng)
    k, h = rng.randint(-2, 3), rng.randint(-2, 3)
    lhs = twisted_differential(spec, theta.scale(k), wedge(a, b))
    rhs = (wedge(twisted_differential(spec, theta.scale(h), a), b)
           + wedge(a, twisted_differential(spec, theta.scale(k - h), b)).scale(sign))
    report.record(family, "twisted Leibniz", lhs == rhs, f"{label}, b={b}, theta={theta}, k={k}, h={h}")

    # any 1-form, not only closed ones
    eta = random_form(n, 1, rng, terms=3)
    lhs = twisted_differential(spec, eta, twisted_differential(spec, eta, a))
    rhs = -wedge(differential(spec, eta), a)
    report.record(family, "d_theta^2 = -(d theta)^", lhs == rhs, f"{label}, theta={eta}")

    # omega-hat expansion: omega-tilde is d_theta-closed, built as d_theta beta
    beta = random_form(n, 1, rng, terms=3)
    omega = twisted_differential(spec, theta, beta)
    alpha = random_form(n, 1, rng, terms=3)
    hat = omega + twisted_differential(spec, theta, alpha)
    for kk in (2, 3):
        prim = correction_form(spec, theta, omega, alpha, kk)
        holds = power(hat, kk) == power(omega, kk) + twisted_differential(spec, theta.scale(kk), prim)
        report.record(family, f"omega-hat expansion k={kk}", holds, f"theta={theta}, alpha={alpha}, beta={beta}")


def check_identities(instances: int = 200, seed: int = 0, families=FAMILIES) -> IdentityReport:
    rng = random.Random(seed)
    report = IdentityReport(instances, seed)
    for family in families:
        for _ in range(instances):
            instance = instantiate_family(random_params(family, rng))
            _check_instance(report, family, instance.spec, closed_one_forms(instance), rng)
    return report
