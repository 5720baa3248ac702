"""Nilpotent Lie algebras with invariant complex structures.

Two sources of algebras: Salamon strings such as ``"(0,0,0,12,13,23)"``
(real structure constants) and the four families (P), (I), (II), (III) of
complex structure equations on 6-dimensional nilmanifolds.  The module also
builds the generic invariant (1,1)-form and its positivity conditions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import DifferentialSpec, Form, differential, wedge
from .gaussian import GaussianRational, I, as_fraction
from .linalg import nullspace
from .polynomial import NONNEGATIVE, REAL, Polynomial, conjugate_pair, indeterminate

# metric coordinates
R2 = indeterminate("r2", NONNEGATIVE)
S2 = indeterminate("s2", NONNEGATIVE)
T2 = indeterminate("t2", NONNEGATIVE)
U, UBAR = conjugate_pair("u")
V, VBAR = conjugate_pair("v")
Z, ZBAR = conjugate_pair("z")

# family parameters
RHO = indeterminate("rho", REAL)
LAMBDA = indeterminate("lambda", REAL)
DPAR, DPARBAR = conjugate_pair("D")
BPAR, BPARBAR = conjugate_pair("B")
C = indeterminate("c", REAL)
EPS = indeterminate("eps", REAL)

# Lee-form coordinates
THETA1, THETA1BAR = conjugate_pair("theta1")
THETA3 = indeterminate("theta3", REAL)

FAMILIES = ("P", "I", "II", "III")
_FAMILY_FIELDS = {
    "P": ("rho",),
    "I": ("rho", "lam", "D"),
    "II": ("rho", "B", "c"),
    "III": ("eps", "sign"),
}
H7 = "(0,0,0,12,13,23)"


class SalamonError(ValueError):
    """Malformed or non-nilpotent Salamon string."""


class DomainError(ValueError):
    """Family parameters outside their admissible domain."""


# ---------------------------------------------------------------- Salamon

_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?\*?)?(\d)(\d)\s*")


@dataclass(frozen=True)
class SalamonSpec:
    text: str
    constants: tuple  # constants[k-1] = ((coeff, i, j), ...) meaning de^k = sum coeff e^i^e^j

    @property
    def dim(self) -> int:
        return len(self.constants)

    def real_spec(self) -> DifferentialSpec:
        """Differential on real generators, encoded with holomorphic slots only."""
        m = self.dim
        images = tuple(
            Form(m, {((i, j), ()): GaussianRational(coef) for coef, i, j in entries})
            for entries in self.constants
        )
        return DifferentialSpec(m, images)

    def is_abelian(self) -> bool:
        return all(not entries for entries in self.constants)

    def describe(self) -> list[str]:
        lines = []
        for k, entries in enumerate(self.constants, start=1):
            if not entries:
                lines.append(f"de^{k} = 0")
            else:
                rhs = " + ".join(f"{_coef_str(c)}e^{i}^e^{j}" for c, i, j in entries).replace("+ -", "- ")
                lines.append(f"de^{k} = {rhs}")
        return lines

    def to_json(self) -> dict:
        return {
            "salamon": self.text,
            "structure_constants": [
                [{"coeff": str(c), "i": i, "j": j} for c, i, j in entries] for entries in self.constants
            ],
        }


def _coef_str(c: Fraction) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return f"{c}*"


def parse_salamon(text: str) -> SalamonSpec:
    """Parse ``"(0,0,0,12,13,23)"``-style notation and verify ``d^2 = 0``.

    Entries are ``0`` or signed sums of optionally scaled index pairs, e.g.
    ``12+34`` or ``-2*13``.  Indices in entry ``k`` must be below ``k``.
    """
    stripped = text.strip()
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise SalamonError(f"expected parenthesised list at position 0 in {text!r}")
    body = stripped[1:-1]
    offset = text.index("(") + 1
    constants = []
    pos = offset
    for k, entry in enumerate(body.split(","), start=1):
        constants.append(_parse_entry(entry, k, pos, text))
        pos += len(entry) + 1
    spec = SalamonSpec(stripped, tuple(constants))
    real = spec.real_spec()
    for k in range(1, spec.dim + 1):
        dd = differential(real, differential(real, Form.phi(spec.dim, k)))
        if dd:
            raise SalamonError(f"Jacobi identity fails: d(de^{k}) = {_real_label(dd)} != 0")
    return spec


def _parse_entry(entry: str, k: int, pos: int, text: str) -> tuple:
    if entry.strip() == "0":
        return ()
    if not entry.strip():
        raise SalamonError(f"empty entry {k} at position {pos} in {text!r}")
    acc: dict = {}
    cursor = 0
    while cursor < len(entry):
        m = _TERM.match(entry, cursor)
        if not m or m.end() == cursor:
            raise SalamonError(f"cannot parse entry {k} at position {pos + cursor} in {text!r}")
        sign, coef, i, j = m.group(1), m.group(2), int(m.group(3)), int(m.group(4))
        if cursor and not sign:
            raise SalamonError(f"missing '+' or '-' at position {pos + cursor} in {text!r}")
        c = as_fraction(coef.rstrip("*")) if coef else Fraction(1)
        if sign == "-":
            c = -c
        if i == j:
            raise SalamonError(f"repeated index {i}{j} in entry {k} at position {pos + cursor}")
        if i >= k or j >= k or i < 1 or j < 1:
            bad = i if (i >= k or i < 1) else j
            raise SalamonError(
                f"index {bad} not below position {k} (entry {k} at position {pos + cursor} in {text!r})"
            )
        if i > j:
            i, j, c = j, i, -c
        acc[(i, j)] = acc.get((i, j), Fraction(0)) + c
        cursor = m.end()
    return tuple((c, i, j) for (i, j), c in sorted(acc.items()) if c)


def _real_label(form: Form) -> str:
    return " + ".join(f"{c}*e^{''.join(map(str, h))}" for (h, _), c in form.sorted_items())


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class FamilyParams:
    family: str
    rho: int | None = None
    lam: Fraction | None = None
    D: GaussianRational | None = None
    B: GaussianRational | None = None
    c: Fraction | None = None
    eps: int | None = None
    sign: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        used = _FAMILY_FIELDS[self.family]
        for name in ("rho", "lam", "D", "B", "c", "eps", "sign"):
            value = getattr(self, name)
            if name not in used and value is not None:
                raise DomainError(f"parameter {name} is not used by family ({self.family})")
            if name in used and value is None:
                raise DomainError(f"family ({self.family}) needs parameter {name}")
        if self.rho is not None:
            object.__setattr__(self, "rho", _as_int_choice(self.rho, (0, 1), "rho"))
        if self.eps is not None:
            object.__setattr__(self, "eps", _as_int_choice(self.eps, (0, 1), "eps"))
        if self.sign is not None:
            object.__setattr__(self, "sign", _as_int_choice(self.sign, (1, -1), "sign"))
        if self.lam is not None:
            lam = as_fraction(self.lam)
            if lam < 0:
                raise DomainError(f"lambda must be >= 0, got {lam}")
            object.__setattr__(self, "lam", lam)
        if self.c is not None:
            c = as_fraction(self.c)
            if c < 0:
                raise DomainError(f"c must be >= 0, got {c}")
            object.__setattr__(self, "c", c)
        if self.D is not None:
            Dv = _as_gaussian(self.D)
            if Dv.im < 0:
                raise DomainError(f"Im D must be >= 0, got D = {Dv}")
            object.__setattr__(self, "D", Dv)
        if self.B is not None:
            object.__setattr__(self, "B", _as_gaussian(self.B))
        if self.family == "II" and self.rho == 0 and not self.B and self.c == 0:
            raise DomainError("family (II) requires (rho, B, c) != (0, 0, 0)")

    @classmethod
    def create(cls, family: str, **values) -> FamilyParams:
        """Like the constructor but fills unspecified parameters of the family with defaults."""
        if family not in FAMILIES:
            raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
        defaults = {"rho": 0, "lam": 0, "D": 0, "B": 0, "c": 0, "eps": 0, "sign": 1}
        values = {k: v for k, v in values.items() if v is not None}
        for name in _FAMILY_FIELDS[family]:
            values.setdefault(name, defaults[name])
        return cls(family, **values)

    def label(self) -> str:
        parts = []
        for name in _FAMILY_FIELDS[self.family]:
            parts.append(f"{name}={getattr(self, name)}")
        return f"({self.family}) " + ", ".join(parts)

    def to_json(self) -> dict:
        out: dict = {"family": self.family}
        for name in _FAMILY_FIELDS[self.family]:
            value = getattr(self, name)
            key = "lambda" if name == "lam" else name
            if isinstance(value, GaussianRational):
                out[key] = value.to_json()
            elif isinstance(value, Fraction):
                out[key] = str(value)
            else:
                out[key] = value
        return out

    @classmethod
    def from_json(cls, obj: dict) -> FamilyParams:
        values = {}
        for key, value in obj.items():
            if key == "family":
                continue
            name = "lam" if key == "lambda" else key
            if name in ("D", "B"):
                value = GaussianRational.from_json(value)
            elif name in ("rho", "eps", "sign"):
                value = int(as_fraction(value))
            elif name in ("lam", "c"):
                value = as_fraction(value)
            else:
                raise DomainError(f"unknown parameter {key!r}")
            values[name] = value
        return cls.create(obj["family"], **values)

    def regime_invariant(self) -> GaussianRational | None:
        """``-rho + D + Dbar - lambda^2`` for family (I), else None."""
        if self.family != "I":
            return None
        return GaussianRational(-self.rho + 2 * self.D.re - self.lam**2)


def _as_int_choice(value, choices, name):
    v = as_fraction(value) if not isinstance(value, int) else Fraction(value)
    if v.denominator != 1 or int(v) not in choices:
        raise DomainError(f"{name} must be one of {choices}, got {value}")
    return int(v)


def _as_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, dict):
        return GaussianRational.from_json(value)
    return GaussianRational(as_fraction(value))


@dataclass(frozen=True)
class AlgebraInstance:
    """A complex structure on a Lie algebra, given by ``d`` on a (1,0)-co-frame."""

    spec: DifferentialSpec
    label: str
    params: FamilyParams | None = None
    salamon: SalamonSpec | None = None
    symbolic: bool = False
    notes: tuple = field(default=())

    def __post_init__(self):
        bad = self.spec.integrability_defects()
        if bad:
            raise DomainError(f"complex structure is not integrable: {', '.join(bad)} has a (0,2) part")
        bad = self.spec.jacobi_defects()
        if bad:
            raise DomainError(f"d^2 != 0 on {', '.join(bad)}")

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def invariant_only(self) -> bool:
        """Whether the manifold-level rank cannot be deduced from the invariant one."""
        return any("h7" in note for note in self.notes)

    def to_json(self) -> dict:
        if self.params is not None:
            return self.params.to_json()
        if self.salamon is not None:
            return {"salamon": self.salamon.text}
        return {"label": self.label}


def _coeff(value, symbol, symbolic: bool):
    if symbolic:
        return Polynomial.var(symbol)
    return GaussianRational.coerce(value)


def family_spec(family: str, *, rho=None, lam=None, D=None, B=None, c=None, eps=None, sign=1,
                symbolic: bool = False) -> DifferentialSpec:
    n = 3
    one = Polynomial.constant(1) if symbolic else GaussianRational(1)

    def mono(hol, anti, coeff=one):
        return Form(n, {(hol, anti): coeff})

    zero = Form.zero(n)
    if family == "P":
        rho_c = _coeff(rho, RHO, symbolic)
        return DifferentialSpec(n, (zero, zero, mono((1, 2), (), rho_c)))
    if family == "I":
        rho_c = _coeff(rho, RHO, symbolic)
        lam_c = _coeff(lam, LAMBDA, symbolic)
        D_c = _coeff(D, DPAR, symbolic)
        d3 = mono((1, 2), (), rho_c) + mono((1,), (1,)) + mono((1,), (2,), lam_c) + mono((2,), (2,), D_c)
        return DifferentialSpec(n, (zero, zero, d3))
    if family == "II":
        rho_c = _coeff(rho, RHO, symbolic)
        B_c = _coeff(B, BPAR, symbolic)
        c_c = _coeff(c, C, symbolic)
        d2 = mono((1,), (1,))
        d3 = mono((1, 2), (), rho_c) + mono((1,), (2,), B_c) + mono((2,), (1,), c_c)
        return DifferentialSpec(n, (zero, d2, d3))
    if family == "III":
        eps_c = _coeff(eps, EPS, symbolic)
        s = I * sign
        d2 = mono((1, 3), ()) + mono((1,), (3,))
        d3 = mono((1,), (1,), eps_c) + mono((1,), (2,), one * s) + mono((2,), (1,), one * (-s))
        return DifferentialSpec(n, (zero, d2, d3))
    raise DomainError(f"unknown family {family!r}")


def instantiate_family(params: FamilyParams) -> AlgebraInstance:
    values = {name: getattr(params, name) for name in _FAMILY_FIELDS[params.family]}
    spec = family_spec(params.family, **values)
    return AlgebraInstance(spec, params.label(), params=params)


def symbolic_family(family: str, sign: int = 1) -> AlgebraInstance:
    """Family instance with every continuous parameter left symbolic (``sign`` stays concrete)."""
    spec = family_spec(family, sign=sign, symbolic=True)
    label = f"({family}) symbolic" + (f", sign={sign:+d}" if family == "III" else "")
    return AlgebraInstance(spec, label, symbolic=True)


def instance_from_salamon(salamon: SalamonSpec | str) -> AlgebraInstance:
    """Complex structure ``phi^j = e^(2j-1) + i e^(2j)`` on a Salamon algebra.

    Raises ``DomainError`` if that almost complex structure is not integrable.
    """
    if isinstance(salamon, str):
        salamon = parse_salamon(salamon)
    m = salamon.dim
    if m % 2:
        raise DomainError(f"odd real dimension {m} carries no complex structure")
    n = m // 2
    half = GaussianRational(Fraction(1, 2))
    # e^(2j-1) = (phi^j + phibar^j)/2 and e^(2j) = -i/2 (phi^j - phibar^j)
    real_gen = {}
    for j in range(1, n + 1):
        real_gen[2 * j - 1] = (Form.phi(n, j) + Form.phibar(n, j)).scale(half)
        real_gen[2 * j] = (Form.phi(n, j) - Form.phibar(n, j)).scale(I * half * -1)

    def d_real(k):
        out = Form.zero(n)
        for coef, a, b in salamon.constants[k - 1]:
            out = out + wedge(real_gen[a], real_gen[b]).scale(GaussianRational(coef))
        return out

    images = tuple(d_real(2 * j - 1) + d_real(2 * j).scale(I) for j in range(1, n + 1))
    spec = DifferentialSpec(n, images)
    notes = ()
    if salamon.constants == parse_salamon(H7).constants:
        notes = ("h7: manifold-level rank not covered; invariant-level only",)
    return AlgebraInstance(spec, f"salamon {salamon.text}", salamon=salamon, notes=notes)


def instance_from_json(obj: dict) -> AlgebraInstance:
    if "salamon" in obj:
        return instance_from_salamon(obj["salamon"])
    if "family" in obj:
        return instantiate_family(FamilyParams.from_json(obj))
    raise DomainError("algebra JSON needs a 'family' or a 'salamon' key")


# ---------------------------------------------------------------- metric

METRIC_COORDS = ("r2", "s2", "t2", "Re u", "Im u", "Re v", "Im v", "Re z", "Im z")


def generic_metric() -> Form:
    """The general invariant real (1,1)-form in the co-frame, with symbolic coordinates."""
    n = 3
    p = Polynomial.var
    return Form(n, {
        ((1,), (1,)): p(R2) * I,
        ((2,), (2,)): p(S2) * I,
        ((3,), (3,)): p(T2) * I,
        ((1,), (2,)): p(U),
        ((2,), (1,)): -p(UBAR),
        ((2,), (3,)): p(V),
        ((3,), (2,)): -p(VBAR),
        ((1,), (3,)): p(Z),
        ((3,), (1,)): -p(ZBAR),
    })


def positivity_conditions() -> list[Polynomial]:
    """The seven principal minors of the metric's Hermitian matrix, as polynomials."""
    p = Polynomial.var
    r2, s2, t2 = p(R2), p(S2), p(T2)
    uu, vv, zz = p(U) * p(UBAR), p(V) * p(VBAR), p(Z) * p(ZBAR)
    iuvz = I * p(UBAR) * p(VBAR) * p(Z)
    return [
        r2,
        s2,
        t2,
        r2 * s2 - uu,
        s2 * t2 - vv,
        r2 * t2 - zz,
        r2 * s2 * t2 + iuvz + iuvz.conj() - t2 * uu - r2 * vv - s2 * zz,
    ]


def metric_bindings(r2, s2, t2, u=0, v=0, z=0) -> dict:
    return {
        R2: GaussianRational.coerce(as_fraction(r2) if not isinstance(r2, GaussianRational) else r2),
        S2: GaussianRational.coerce(as_fraction(s2) if not isinstance(s2, GaussianRational) else s2),
        T2: GaussianRational.coerce(as_fraction(t2) if not isinstance(t2, GaussianRational) else t2),
        U: GaussianRational.coerce(u),
        V: GaussianRational.coerce(v),
        Z: GaussianRational.coerce(z),
    }


# ---------------------------------------------------------------- closed 1-forms

def real_one_form_basis(n: int) -> list[Form]:
    """``phi^j + phibar^j`` and ``i(phi^j - phibar^j)`` for each j: a real basis of 1-forms."""
    out = []
    for j in range(1, n + 1):
        out.append(Form.phi(n, j) + Form.phibar(n, j))
        out.append((Form.phi(n, j) - Form.phibar(n, j)).scale(I))
    return out


def closed_one_forms(instance: AlgebraInstance) -> list[Form]:
    """Exact basis of the real d-closed invariant 1-forms."""
    if instance.symbolic:
        raise ValueError("closed_one_forms needs concrete parameters")
    n = instance.n
    basis = real_one_form_basis(n)
    images = [differential(instance.spec, b) for b in basis]
    keys = sorted({k for img in images for k in img.terms})
    rows = []
    for key in keys:
        coeffs = [img.coefficient(*key, GaussianRational(0)) for img in images]
        rows.append([c.re for c in coeffs])
        rows.append([c.im for c in coeffs])
    kernel = nullspace(rows, ncols=len(basis))
    forms = []
    for vec in kernel:
        total = Form.zero(n)
        for coef, b in zip(vec, basis):
            if coef:
                total = total + b.scale(GaussianRational(coef))
        forms.append(total)
    return forms
