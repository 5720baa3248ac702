"""Closedness systems and rank computations for invariant (1,1)-forms.

For each rank notion the closedness condition on ``omega`` is linear in the
nine (in general n^2) real coordinates of its Hermitian matrix:

* ``kahler``: ``d omega = 0``
* ``hlck``:   ``d omega - theta ^ omega = 0`` for a closed real 1-form ``theta``
* ``skt``:    ``del delbar omega = 0``

The solution space is a ``LinearSlice`` handed to the PSD rank search.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import Form, del_delbar, differential, wedge
from .gaussian import GaussianRational, as_fraction
from .linalg import Q, nullspace
from .psd import (
    ConeRankCertificate,
    HermitianCoeffMatrix,
    LinearSlice,
    facial_reduction,
    is_psd_exact,
    max_rank_over_cone,
    rank_exact,
    ray_max_rank,
    verify_certificate,
)
from .structures import AlgebraInstance, closed_one_forms

KINDS = ("kahler", "hlck", "skt")
SCOPE_NOTE = "invariant-level (Kr(g) <= Kr(X))"
DEFAULT_SWEEP = 10_000
SWEEP_SAMPLES = 60


def coordinate_forms(n: int) -> list[Form]:
    """The real (1,1)-forms ``i * sum E[j][k] phi^j ^ phibar^k`` for the coordinate basis ``E``."""
    forms = []
    for a in range(n * n):
        coords = [Fraction(int(a == b)) for b in range(n * n)]
        forms.append(HermitianCoeffMatrix.from_coords(n, coords).to_form())
    return forms


def _functionals(images: list[Form]) -> tuple[list, list]:
    """Real and imaginary parts of each coefficient, as rows over the coordinate basis."""
    keys = sorted({k for img in images for k in img.terms})
    return keys, _functionals_for(keys, images)


def _functionals_for(keys, images: list[Form]) -> list:
    rows = []
    for key in keys:
        coeffs = [GaussianRational.coerce(img.coefficient(*key, GaussianRational(0))) for img in images]
        rows.append([Q(c.re) for c in coeffs])
        rows.append([Q(c.im) for c in coeffs])
    return rows


class ThetaNotClosedError(ValueError):
    pass


def closedness_system(kind: str, instance: AlgebraInstance, theta: Form | None = None) -> list[list[Fraction]]:
    if kind not in KINDS:
        raise ValueError(f"unknown rank kind {kind!r}; expected one of {', '.join(KINDS)}")
    if instance.symbolic:
        raise ValueError("rank computations need concrete parameters")
    if (kind == "hlck") != (theta is not None):
        raise ValueError("a Lee form theta is required exactly for kind 'hlck'")
    spec = instance.spec
    basis = coordinate_forms(instance.n)
    if kind == "kahler":
        images = [differential(spec, w) for w in basis]
    elif kind == "skt":
        images = [del_delbar(spec, w) for w in basis]
    else:
        if differential(spec, theta):
            raise ThetaNotClosedError("theta is not d-closed")
        if theta and theta.degrees() != {1}:
            raise ValueError("theta must be a 1-form")
        images = [differential(spec, w) - wedge(theta, w) for w in basis]
    return _functionals(images)[1]


def closedness_slice(kind: str, instance: AlgebraInstance, theta: Form | None = None) -> LinearSlice:
    rows = closedness_system(kind, instance, theta)
    n = instance.n
    basis = nullspace(rows, ncols=n * n) if rows else LinearSlice.full(n).basis
    provenance = {"kahler": "d omega = 0", "skt": "del delbar omega = 0", "hlck": "d omega - theta ^ omega = 0"}[kind]
    return LinearSlice(n, tuple(tuple(b) for b in basis), provenance)


def verify_witness(kind: str, instance: AlgebraInstance, witness: HermitianCoeffMatrix,
                   theta: Form | None = None) -> list[str]:
    """Check the closedness equation on the witness form directly, not through the slice."""
    omega = witness.to_form()
    spec = instance.spec
    problems = []
    if not omega.is_real():
        problems.append("witness form is not real")
    if not is_psd_exact(witness):
        problems.append("witness is not nonnegative")
    if kind == "kahler" and differential(spec, omega):
        problems.append("d omega != 0")
    if kind == "skt" and del_delbar(spec, omega):
        problems.append("del delbar omega != 0")
    if kind == "hlck":
        if differential(spec, theta):
            problems.append("d theta != 0")
        if differential(spec, omega) != wedge(theta, omega):
            problems.append("d omega != theta ^ omega")
    return problems


# ---------------------------------------------------------------- reports


@dataclass
class RankReport:
    kind: str
    instance: AlgebraInstance
    lower: int
    upper: int
    status: str
    certificate: ConeRankCertificate
    theta: Form | None = None
    theta_coords: tuple | None = None
    sweep: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    scope: str = SCOPE_NOTE

    @property
    def value(self) -> int | None:
        return self.lower if self.status == "exact" else None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "algebra": self.instance.to_json(),
            "rank": {"lower": self.lower, "upper": self.upper, "status": self.status},
            "witness": self.certificate.witness.to_json(),
            "theta": None if self.theta is None else form_to_json(self.theta),
            "certificate": self.certificate.steps,
            "scope": "invariant",
            "scope_note": self.scope,
            "notes": list(self.notes),
        }
        if self.certificate.reason:
            out["rank"]["reason"] = self.certificate.reason
        if self.sweep:
            out["sweep"] = self.sweep
        return out


def form_to_json(form: Form) -> list:
    out = []
    for (hol, anti), c in form.sorted_items():
        c = GaussianRational.coerce(c)
        out.append({"hol": list(hol), "anti": list(anti), "coeff": c.to_json()})
    return out


def form_from_json(n: int, obj: list) -> Form:
    return Form(n, {(tuple(t["hol"]), tuple(t["anti"])): GaussianRational.from_json(t["coeff"]) for t in obj})


def _instance_notes(instance: AlgebraInstance, kind: str) -> list[str]:
    notes = list(instance.notes)
    params = instance.params
    if kind == "kahler" and params is not None and params.family == "II":
        if (params.rho, params.B, params.c) == (1, GaussianRational(1), 0):
            notes.append("Kr(X) >= 1 is the known bound only for (rho,B,c)=(1,1,0); invariant rank computed here, "
                         "manifold-level value (1 or 2) left open")
    return notes


def _rank_report(kind: str, instance: AlgebraInstance, seed: int) -> RankReport:
    slice_ = closedness_slice(kind, instance)
    cert = max_rank_over_cone(slice_, seed=seed)
    problems = verify_certificate(slice_, cert) + verify_witness(kind, instance, cert.witness)
    if problems:
        raise AssertionError(f"{kind} certificate failed verification: {problems}")
    return RankReport(kind, instance, cert.lower, cert.upper, cert.status, cert,
                      notes=_instance_notes(instance, kind))


def kahler_rank(instance: AlgebraInstance, seed: int = 0) -> RankReport:
    return _rank_report("kahler", instance, seed)


def skt_rank(instance: AlgebraInstance, seed: int = 0) -> RankReport:
    return _rank_report("skt", instance, seed)


# ---------------------------------------------------------------- HlcK sweep


class TwistedSystem:
    """``d_theta`` closedness rows as ``A - sum_b c_b B_b`` over a basis of closed 1-forms."""

    def __init__(self, instance: AlgebraInstance, theta_basis: list[Form] | None = None):
        self.instance = instance
        self.n = instance.n
        self.theta_basis = closed_one_forms(instance) if theta_basis is None else theta_basis
        basis = coordinate_forms(self.n)
        spec = instance.spec
        d_images = [differential(spec, w) for w in basis]
        wedge_images = [[wedge(t, w) for w in basis] for t in self.theta_basis]
        keys = sorted({k for img in d_images for k in img.terms}
                      | {k for imgs in wedge_images for img in imgs for k in img.terms})
        a = _functionals_for(keys, d_images)
        bs = [_functionals_for(keys, imgs) for imgs in wedge_images]
        # drop rows that vanish for every theta or repeat another row up to sign
        keep, seen = [], set()
        for r in range(len(a)):
            stacked = tuple(a[r]) + tuple(x for b in bs for x in b[r])
            lead = next((x for x in stacked if x), None)
            if lead is None:
                continue
            normal = tuple(x / lead for x in stacked)
            if normal in seen:
                continue
            seen.add(normal)
            keep.append(r)
        self.a = [a[r] for r in keep]
        self.b = [[b[r] for r in keep] for b in bs]

    def theta(self, coords) -> Form:
        total = Form.zero(self.n)
        for c, t in zip(coords, self.theta_basis):
            if c:
                total = total + t.scale(GaussianRational(c))
        return total

    def rows(self, coords) -> list[list[Fraction]]:
        out = [list(r) for r in self.a]
        for c, mat in zip(coords, self.b):
            if not c:
                continue
            c = Q(c)
            for r, row in enumerate(mat):
                out[r] = [x - c * y for x, y in zip(out[r], row)]
        return out

    def slice(self, coords) -> LinearSlice:
        rows = self.rows(coords)
        basis = nullspace(rows, ncols=self.n * self.n)
        return LinearSlice(self.n, tuple(tuple(b) for b in basis), "d omega - theta ^ omega = 0")


def special_thetas(instance: AlgebraInstance) -> list[Form]:
    """Lee forms singled out by hand computations: ``phi^2 + phibar^2`` on family (II)."""
    n = instance.n
    params = instance.params
    out = []
    if params is not None and params.family == "II":
        out.append(Form.phi(n, 2) + Form.phibar(n, 2))
    return out


def _coords_in_basis(theta: Form, system: TwistedSystem):
    """Coordinates of a closed 1-form in the system's theta basis (exact)."""
    from .linalg import solve

    keys = sorted({k for t in system.theta_basis for k in t.terms} | set(theta.terms))
    cols = []
    for t in system.theta_basis:
        col = []
        for key in keys:
            c = GaussianRational.coerce(t.coefficient(*key, GaussianRational(0)))
            col += [c.re, c.im]
        cols.append(col)
    target = []
    for key in keys:
        c = GaussianRational.coerce(theta.coefficient(*key, GaussianRational(0)))
        target += [c.re, c.im]
    if not cols:
        return None if any(target) else []
    return solve([list(r) for r in zip(*cols)], target)


def theta_candidates(system: TwistedSystem, sweep: int, seed: int, explicit=None):
    """Deterministic sequence of Lee-form coordinate vectors: specials, grid, then random rationals."""
    dim = len(system.theta_basis)
    seen = set()
    yielded = 0

    def emit(coords):
        key = tuple(as_fraction(c) for c in coords)
        if key in seen:
            return None
        seen.add(key)
        return key

    firsts = [tuple([Fraction(0)] * dim)]
    for theta in list(explicit or []) + special_thetas(system.instance):
        coords = _coords_in_basis(theta, system)
        if coords is None:
            raise ThetaNotClosedError("explicit theta is not a closed real 1-form of this algebra")
        firsts.append(tuple(coords))
    for coords in firsts:
        key = emit(coords)
        if key is not None:
            yield key, "special"
            yielded += 1
    grid_values = (-1, 0, 1) if dim > 4 else (-2, -1, 0, 1, 2)
    for coords in itertools.product(grid_values, repeat=dim):
        if yielded >= sweep:
            return
        key = emit(coords)
        if key is not None:
            yield key, "grid"
            yielded += 1
    rng = random.Random(seed)
    attempts = 0
    while yielded < sweep and attempts < 20 * sweep + 100:
        attempts += 1
        coords = [Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(dim)]
        key = emit(coords)
        if key is not None:
            yield key, "random"
            yielded += 1


def hlck_rank(instance: AlgebraInstance, sweep: int = DEFAULT_SWEEP, seed: int = 0,
              thetas: list[Form] | None = None) -> RankReport:
    """Maximise the PSD rank of the ``d_theta``-closed slice over sampled closed Lee forms.

    The lower bound is exact (verified witness).  Over all theta the only
    certified cap is the dimension ``n``; the largest facial-reduction bound
    met during the sweep is reported as evidence.
    """
    system = TwistedSystem(instance)
    n = instance.n
    best_cert: ConeRankCertificate | None = None
    best_coords = None
    best_slice = None
    max_upper = 0
    counts = {"special": 0, "grid": 0, "random": 0}
    evaluated = 0
    for coords, origin in theta_candidates(system, max(sweep, 1), seed, thetas):
        if best_cert is not None and best_cert.lower == n:
            break
        evaluated += 1
        counts[origin] += 1
        slice_ = system.slice(coords)
        if slice_.dim == 1:
            # a ray: its largest PSD rank is known exactly without a reduction
            bound = ray_max_rank(slice_)
            max_upper = max(max_upper, bound)
            if best_cert is not None and bound <= best_cert.lower:
                continue
        diagonal = facial_reduction(slice_, rank_one=False)
        if best_cert is not None and diagonal.upper_bound <= best_cert.lower:
            continue
        reduction = facial_reduction(slice_, resume=diagonal)
        max_upper = max(max_upper, reduction.upper_bound)
        if best_cert is not None and reduction.upper_bound <= best_cert.lower:
            continue
        cert = max_rank_over_cone(slice_, seed=seed + evaluated, samples=SWEEP_SAMPLES, reduction=reduction)
        if best_cert is None or cert.lower > best_cert.lower:
            best_cert, best_coords, best_slice = cert, coords, slice_
    theta = system.theta(best_coords)
    problems = verify_certificate(best_slice, best_cert) + verify_witness("hlck", instance, best_cert.witness, theta)
    if problems:
        raise AssertionError(f"hlck certificate failed verification: {problems}")
    lower = best_cert.lower
    upper = n
    status = "exact" if lower == upper else "bracket"
    sweep_info = {
        "evaluated": evaluated,
        "by_origin": counts,
        "sweep_max_lower": lower,
        "sweep_max_upper": max_upper,
        "theta_basis": [form_to_json(t) for t in system.theta_basis],
        "theta_coords": [str(c) for c in best_coords],
        "upper_kind": "certified" if status == "exact" else "empirical (sweep)",
    }
    notes = _instance_notes(instance, "hlck")
    return RankReport("hlck", instance, lower, upper, status, best_cert, theta=theta,
                      theta_coords=tuple(best_coords), sweep=sweep_info, notes=notes)


def rank(kind: str, instance: AlgebraInstance, *, seed: int = 0, sweep: int = DEFAULT_SWEEP,
         thetas=None) -> RankReport:
    if kind == "kahler":
        return kahler_rank(instance, seed)
    if kind == "skt":
        return skt_rank(instance, seed)
    if kind == "hlck":
        return hlck_rank(instance, sweep=sweep, seed=seed, thetas=thetas)
    raise ValueError(f"unknown rank kind {kind!r}")


def rank_of_witness(report: RankReport) -> int:
    return rank_exact(report.certificate.witness)
