"""Verification of the torus suspension example with Kähler rank 1.

The roots ``alpha, beta`` of ``x^2 - (1+i) x + 1`` define the torus
automorphism ``f(z1, z2) = (alpha z1, conj(beta) z2)`` preserving the
lattice spanned by ``v_k = (alpha^k, conj(beta)^k)``, k = 0..3.  The checks
below are the algebraic facts the Kähler-rank argument uses:

* the quartic ``x^4 - 2x^3 + 4x^2 - 2x + 1`` factors over Q(i) into the
  quadratic and its conjugate, so ``alpha`` and ``conj(beta)`` are roots;
* ``f`` acts on the lattice by the integer companion matrix of the quartic;
* ``f^*`` on constant (1,1)-forms is diagonal with eigenvalues
  ``|alpha|^2, alpha beta, conj(alpha beta), |beta|^2``, and only the two
  mixed forms are fixed;
* no nonzero nonnegative form lives on the fixed subspace, while
  ``dw ^ dwbar`` is a closed rank-1 witness.

Identities are exact; quantities needing the roots themselves are computed
with mpmath at 80 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .gaussian import GaussianRational, I
from .linalg import det
from .polynomial import Polynomial, indeterminate
from .psd import HermitianCoeffMatrix, is_psd_exact, principal_minors, rank_exact

DIGITS = 80
X = indeterminate("x")
QUARTIC = (1, -2, 4, -2, 1)  # coefficients of x^4, x^3, x^2, x, 1
RELATION = (-1, 2, -4, 2)  # v4 = -v0 + 2 v1 - 4 v2 + 2 v3
PULLBACK_BASIS = ("dz1^dz1bar", "dz1^dz2bar", "dz2^dz1bar", "dz2^dz2bar")


def _poly(coeffs) -> Polynomial:
    """Polynomial in ``x`` from coefficients listed from the highest degree down."""
    x = Polynomial.var(X)
    deg = len(coeffs) - 1
    total = Polynomial()
    for k, c in enumerate(coeffs):
        total = total + x ** (deg - k) * Polynomial.constant(c)
    return total


def quadratic() -> Polynomial:
    return _poly((1, -(1 + I), 1))


def conjugate_quadratic() -> Polynomial:
    return _poly((1, -(1 - I), 1))


def quartic() -> Polynomial:
    return _poly(QUARTIC)


@dataclass
class Step:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"step": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class RootPair:
    alpha: mpmath.mpc
    beta: mpmath.mpc

    @property
    def abs2_alpha(self):
        return abs(self.alpha) ** 2

    @property
    def abs2_beta(self):
        return abs(self.beta) ** 2


def roots(digits: int = DIGITS) -> RootPair:
    """``alpha`` (larger modulus) and ``beta`` from the quadratic formula."""
    with mpmath.workdps(digits):
        s = mpmath.mpc(1, 1)
        disc = mpmath.sqrt(s * s - 4)
        r1, r2 = (s + disc) / 2, (s - disc) / 2
        alpha, beta = (r1, r2) if abs(r1) > abs(r2) else (r2, r1)
        return RootPair(+alpha, +beta)


def verify_quartic() -> list[Step]:
    product = quadratic() * conjugate_quadratic()
    steps = [Step("quartic factorization", product == quartic(),
                  f"(x^2-(1+i)x+1)(x^2-(1-i)x+1) = {product}")]
    # x^4 reduced modulo the quartic: x^4 = 2x^3 - 4x^2 + 2x - 1
    x = Polynomial.var(X)
    remainder = x ** 4 - quartic()
    expected = _poly((0,) + tuple(reversed(RELATION)))
    steps.append(Step("relation for v4", remainder == expected,
                      "(alpha^4, conj(beta)^4) = 2 v3 - 4 v2 + 2 v1 - v0"))
    steps.append(Step("constant term", quartic().substitute({X: 0}).constant_value() == 1,
                      "product of the quadratics' constant terms is 1"))
    return steps


def lattice_matrix() -> list[list[int]]:
    """Integer matrix of ``f`` on the basis ``v0..v3`` (column k holds the coordinates of ``f(v_k)``)."""
    m = [[0] * 4 for _ in range(4)]
    for k in range(3):
        m[k + 1][k] = 1
    for j in range(4):
        m[j][3] = RELATION[j]
    return m


def characteristic_polynomial(m: list[list[int]]) -> list[Fraction]:
    """Coefficients of ``det(x I - M)`` from the highest degree down (Faddeev-LeVerrier)."""
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        mk = [[prod[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def verify_lattice(pair: RootPair | None = None) -> list[Step]:
    pair = roots() if pair is None else pair
    m = lattice_matrix()
    d = det([[Fraction(v) for v in row] for row in m], one=Fraction(1))
    chi = characteristic_polynomial(m)
    steps = [
        Step("companion column for v3", [row[3] for row in m] == list(RELATION), f"column = {[row[3] for row in m]}"),
        Step("integer matrix", all(isinstance(v, int) for row in m for v in row), "entries are integers"),
        Step("determinant", abs(d) == 1, f"det = {d}"),
        Step("characteristic polynomial", chi == [Fraction(c) for c in QUARTIC], f"coefficients {[str(c) for c in chi]}"),
    ]
    with mpmath.workdps(DIGITS):
        beta_bar = mpmath.conj(pair.beta)
        v = [(pair.alpha ** k, beta_bar ** k) for k in range(5)]
        rel = [sum(RELATION[j] * v[j][c] for j in range(4)) for c in range(2)]
        err = max(abs(rel[0] - v[4][0]), abs(rel[1] - v[4][1]))
        steps.append(Step("f preserves the lattice (numeric)", err < mpmath.mpf(10) ** -40,
                          f"|f(v3) - (2v3-4v2+2v1-v0)| = {mpmath.nstr(err, 5)}"))
    return steps


def verify_roots(pair: RootPair | None = None) -> list[Step]:
    pair = roots() if pair is None else pair
    tol = mpmath.mpf(10) ** -40
    with mpmath.workdps(DIGITS):
        s = mpmath.mpc(1, 1)
        res = max(abs(r * r - s * r + 1) for r in (pair.alpha, pair.beta))
        vieta_prod = abs(pair.alpha * pair.beta - 1)
        vieta_sum = abs(pair.alpha + pair.beta - s)
    # exact Vieta from the quadratic's coefficients
    q = quadratic()
    exact_sum = -q.terms.get(((X, 1),), GaussianRational(0))
    exact_prod = q.terms.get((), GaussianRational(0))
    return [
        Step("Vieta (exact)", exact_sum == 1 + I and exact_prod == 1, "alpha+beta = 1+i, alpha*beta = 1"),
        Step("root residual", res < tol, f"max |x^2-(1+i)x+1| = {mpmath.nstr(res, 5)}"),
        Step("|alpha*beta - 1|", vieta_prod < tol, f"{mpmath.nstr(vieta_prod, 5)}"),
        Step("|alpha+beta-(1+i)|", vieta_sum < tol, f"{mpmath.nstr(vieta_sum, 5)}"),
        Step("alpha+beta not real (exact)", exact_sum.im != 0,
             "|alpha| = 1 would force conj(alpha) = beta and a real sum alpha+beta"),
    ]


@dataclass
class PullbackAction:
    eigenvalues: list
    fixed: list
    exact_unit: list

    def to_json(self) -> dict:
        return {
            "basis": list(PULLBACK_BASIS),
            "eigenvalues": [mpmath.nstr(e, 40) for e in self.eigenvalues],
            "fixed_subspace": list(self.fixed),
        }


def pullback_spectrum(pair: RootPair | None = None) -> PullbackAction:
    """Eigenvalues of ``f^*`` on ``dz^j ^ dzbar^k``; unit eigenvalues are decided exactly."""
    pair = roots() if pair is None else pair
    with mpmath.workdps(DIGITS):
        ab = pair.alpha * pair.beta
        values = [pair.abs2_alpha, ab, mpmath.conj(ab), pair.abs2_beta]
    # exact status: alpha*beta is the constant coefficient of the quadratic; |alpha|^2 != 1 and
    # |beta|^2 = 1/|alpha|^2 != 1 whenever alpha + beta (minus the linear coefficient) is not real
    q = quadratic()
    product = q.terms.get((), GaussianRational(0))
    total = -q.terms.get(((X, 1),), GaussianRational(0))
    mixed_unit = product == 1
    diagonal_unit = product == 1 and total.im == 0
    exact_unit = [diagonal_unit, mixed_unit, mixed_unit, diagonal_unit]
    fixed = [name for name, unit in zip(PULLBACK_BASIS, exact_unit) if unit]
    return PullbackAction(values, fixed, exact_unit)


def fixed_form_matrix(c) -> HermitianCoeffMatrix:
    """Coefficient matrix of the real (1,1)-form ``i (c dz1^dz2bar + conj(c) dz2^dz1bar)``."""
    c = GaussianRational.coerce(c)
    return HermitianCoeffMatrix([[0, c], [c.conj(), 0]])


def psd_obstruction(samples=(0, 1, I, GaussianRational(Fraction(1, 2), 3))) -> list[Step]:
    steps = []
    for c in samples:
        h = fixed_form_matrix(c)
        minors = principal_minors(h)
        c = GaussianRational.coerce(c)
        want = not c  # PSD exactly when c = 0, since the 2x2 minor is -|c|^2
        steps.append(Step(f"fixed form c={c}", is_psd_exact(h) == want and minors[-1] == -c.abs2(),
                          f"minors {[str(m) for m in minors]}, PSD={is_psd_exact(h)}"))
    witness = HermitianCoeffMatrix([[1]])
    steps.append(Step("rank-1 witness dw^dwbar", rank_exact(witness) == 1 and is_psd_exact(witness),
                      "constant form on the base curve, closed, nonnegative, rank 1"))
    return steps


@dataclass
class SuspensionReport:
    steps: list = field(default_factory=list)
    pullback: PullbackAction | None = None
    abs2_alpha: str = ""

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def verdict(self) -> str:
        if self.ok:
            return "Kr(M) = 1 (verified at the algebraic steps; the averaging and Z^2-action steps are cited)"
        return "verification failed; Kr(M) = 1 not confirmed"

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "steps": [s.to_json() for s in self.steps],
            "abs2_alpha": self.abs2_alpha,
            "pullback": self.pullback.to_json() if self.pullback else None,
            "verdict": self.verdict,
        }

    def to_text(self) -> str:
        lines = [f"[{'pass' if s.passed else 'FAIL'}] {s.name}: {s.detail}" for s in self.steps]
        lines.append(f"|alpha|^2 = {self.abs2_alpha}")
        if self.pullback:
            lines.append("fixed subspace: span{" + ", ".join(self.pullback.fixed) + "}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def suspension_report() -> SuspensionReport:
    pair = roots()
    pull = pullback_spectrum(pair)
    steps = verify_quartic() + verify_roots(pair) + verify_lattice(pair)
    with mpmath.workdps(DIGITS):
        gap = min(abs(pull.eigenvalues[0] - 1), abs(pull.eigenvalues[3] - 1))
    steps.append(Step("non-unit eigenvalues", gap > mpmath.mpf("0.1"),
                      f"min(| |alpha|^2 - 1 |, | |beta|^2 - 1 |) = {mpmath.nstr(gap, 10)}"))
    steps.append(Step("fixed subspace", pull.fixed == ["dz1^dz2bar", "dz2^dz1bar"],
                      "eigenvalue 1 exactly on dz1^dz2bar and dz2^dz1bar"))
    steps += psd_obstruction()
    with mpmath.workdps(DIGITS):
        abs2 = mpmath.nstr(pair.abs2_alpha, 45)
    return SuspensionReport(steps, pull, abs2)
