"""Bigraded exterior algebra of invariant forms on a complex co-frame.

A basis monomial is ``phi^I ^ phibar^J`` with ``I`` and ``J`` strictly
increasing tuples of 1-based generator indices; holomorphic factors always
precede antiholomorphic ones.  Coefficients are ring elements supporting
``+ - *``, ``conj()`` and truthiness (``GaussianRational`` or
``Polynomial``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .gaussian import GaussianRational, I


def _sort_sign(seq: tuple) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``seq``; 0 when an index repeats."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def _mono_wedge(k1: tuple, k2: tuple) -> tuple[int, tuple | None]:
    (i1, j1), (i2, j2) = k1, k2
    s1, hol = _sort_sign(i1 + i2)
    if not s1:
        return 0, None
    s2, anti = _sort_sign(j1 + j2)
    if not s2:
        return 0, None
    sign = s1 * s2
    if len(j1) * len(i2) % 2:
        sign = -sign
    return sign, (hol, anti)


class Form:
    """Immutable sparse invariant form of complex dimension ``n``."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for key, coeff in (terms or {}).items():
            hol, anti = tuple(key[0]), tuple(key[1])
            if any(not 1 <= k <= n for k in hol + anti):
                raise ValueError(f"index out of range in {key} for n={n}")
            sign, (hol_s, anti_s) = _normalize(hol, anti)
            if not sign or not coeff:
                continue
            norm = (hol_s, anti_s)
            coeff = coeff if sign > 0 else -coeff
            if norm in clean:
                total = clean[norm] + coeff
                if total:
                    clean[norm] = total
                else:
                    del clean[norm]
            else:
                clean[norm] = coeff
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> Form:
        f = cls.__new__(cls)
        f.n = n
        f._terms = terms
        return f

    @classmethod
    def zero(cls, n: int) -> Form:
        return cls._raw(n, {})

    @classmethod
    def unit(cls, n: int, one=None) -> Form:
        return cls._raw(n, {((), ()): one if one is not None else GaussianRational(1)})

    @classmethod
    def phi(cls, n: int, j: int, coeff=None) -> Form:
        return cls(n, {((j,), ()): coeff if coeff is not None else GaussianRational(1)})

    @classmethod
    def phibar(cls, n: int, j: int, coeff=None) -> Form:
        return cls(n, {((), (j,)): coeff if coeff is not None else GaussianRational(1)})

    @classmethod
    def mono(cls, n: int, hol, anti, coeff=None) -> Form:
        return cls(n, {(tuple(hol), tuple(anti)): coeff if coeff is not None else GaussianRational(1)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, hol, anti, default=None):
        return self._terms.get((tuple(hol), tuple(anti)), default)

    def degrees(self) -> set[int]:
        return {len(i) + len(j) for i, j in self._terms}

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(i), len(j)) for i, j in self._terms}

    def degree(self) -> int:
        """Total degree; raises if the form is inhomogeneous."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def component(self, p: int, q: int) -> Form:
        return Form._raw(self.n, {k: c for k, c in self._terms.items() if (len(k[0]), len(k[1])) == (p, q)})

    def map_coefficients(self, fn) -> Form:
        out = {}
        for k, c in self._terms.items():
            c = fn(c)
            if c:
                out[k] = c
        return Form._raw(self.n, out)

    def _check(self, other: Form):
        if not isinstance(other, Form):
            raise TypeError(f"expected a Form, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Form._raw(self.n, out)

    def __neg__(self):
        return Form._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar) -> Form:
        if not scalar:
            return Form.zero(self.n)
        out = {}
        for k, c in self._terms.items():
            c = c * scalar
            if c:
                out[k] = c
        return Form._raw(self.n, out)

    def __mul__(self, scalar):
        if isinstance(scalar, Form):
            return NotImplemented
        return self.scale(scalar)

    def __rmul__(self, scalar):
        if isinstance(scalar, Form):
            return NotImplemented
        out = {}
        for k, c in self._terms.items():
            c = scalar * c
            if c:
                out[k] = c
        return Form._raw(self.n, out)

    def __xor__(self, other):
        return wedge(self, other)

    def conj(self) -> Form:
        """Complex conjugate; ``conj(phi^I ^ phibar^J) = (-1)^{|I||J|} phi^J ^ phibar^I``."""
        out = {}
        for (hol, anti), c in self._terms.items():
            c = c.conj()
            out[(anti, hol)] = -c if len(hol) * len(anti) % 2 else c
        return Form._raw(self.n, out)

    def is_real(self) -> bool:
        return self == self.conj()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]))

    def __repr__(self):
        return f"Form(n={self.n}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*{monomial_label(*k)}" for k, c in self.sorted_items())


def _normalize(hol: tuple, anti: tuple):
    s1, h = _sort_sign(hol)
    s2, a = _sort_sign(anti)
    return s1 * s2, (h, a)


def monomial_label(hol, anti) -> str:
    """Shorthand label such as ``phi^{12|1b2b}`` for ``phi^1^phi^2^phibar^1^phibar^2``."""
    if not hol and not anti:
        return "1"
    return "phi^{" + "".join(map(str, hol)) + "|" + "".join(f"{j}b" for j in anti) + "}"


def parse_label(label: str) -> tuple[tuple, tuple]:
    """Inverse of ``monomial_label`` for single-digit indices, e.g. ``"12|1b2b"``."""
    body = label.strip()
    if body.startswith("phi^{") and body.endswith("}"):
        body = body[5:-1]
    hol_s, _, anti_s = body.partition("|")
    hol = tuple(int(ch) for ch in hol_s)
    anti = tuple(int(ch) for ch in anti_s.replace("b", ""))
    return hol, anti


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out: dict = {}
    for k1, c1 in a._terms.items():
        for k2, c2 in b._terms.items():
            sign, key = _mono_wedge(k1, k2)
            if not sign:
                continue
            c = c1 * c2
            if sign < 0:
                c = -c
            s = out.get(key)
            out[key] = c if s is None else s + c
    return Form._raw(a.n, {k: c for k, c in out.items() if c})


def wedge_all(*forms: Form) -> Form:
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


def power(a: Form, k: int) -> Form:
    if k < 0:
        raise ValueError("power needs k >= 0")
    result = Form.unit(a.n)
    for _ in range(k):
        result = wedge(result, a)
    return result


@dataclass(frozen=True)
class DifferentialSpec:
    """Images ``d(phi^i)`` of the holomorphic generators; ``d(phibar^i)`` follows by conjugation."""

    n: int
    images: tuple
    _bar_images: tuple = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if len(self.images) != self.n:
            raise ValueError(f"need {self.n} generator images, got {len(self.images)}")
        for j, img in enumerate(self.images, start=1):
            if img.n != self.n:
                raise ValueError(f"image of phi^{j} has wrong dimension")
            if img and img.degrees() != {2}:
                raise ValueError(f"image of phi^{j} is not a 2-form")
        object.__setattr__(self, "_bar_images", tuple(img.conj() for img in self.images))

    def image(self, j: int, barred: bool = False) -> Form:
        return (self._bar_images if barred else self.images)[j - 1]

    def integrability_defects(self) -> list[str]:
        """Generators whose image has a (0,2) component."""
        return [f"d(phi^{j})" for j, img in enumerate(self.images, start=1) if img.component(0, 2)]

    def jacobi_defects(self) -> list[str]:
        bad = []
        for j in range(1, self.n + 1):
            if differential(self, differential(self, Form.phi(self.n, j))):
                bad.append(f"d(d(phi^{j}))")
        return bad


def _d_basis(spec: DifferentialSpec, hol: tuple, anti: tuple) -> Form:
    key = (hol, anti)
    cached = spec._cache.get(key)
    if cached is not None:
        return cached
    n = spec.n
    factors = [Form.phi(n, j) for j in hol] + [Form.phibar(n, j) for j in anti]
    images = [spec.image(j) for j in hol] + [spec.image(j, True) for j in anti]
    result = Form.zero(n)
    for pos, img in enumerate(images):
        if not img:
            continue
        term = Form.unit(n)
        for q, f in enumerate(factors):
            term = wedge(term, img if q == pos else f)
        result = result + (term if pos % 2 == 0 else -term)
    spec._cache[key] = result
    return result


def differential(spec: DifferentialSpec, a: Form) -> Form:
    if a.n != spec.n:
        raise ValueError(f"dimension mismatch: spec n={spec.n}, form n={a.n}")
    out: dict = {}
    for (hol, anti), c in a.items():
        for key, dc in _d_basis(spec, hol, anti).items():
            v = c * dc
            s = out.get(key)
            out[key] = v if s is None else s + v
    return Form._raw(a.n, {k: v for k, v in out.items() if v})


def _projected(spec: DifferentialSpec, a: Form, dp: int, dq: int) -> Form:
    out = Form.zero(a.n)
    for (p, q) in a.bidegrees():
        out = out + differential(spec, a.component(p, q)).component(p + dp, q + dq)
    return out


def delop(spec: DifferentialSpec, a: Form) -> Form:
    """The (1,0) part of ``d``."""
    return _projected(spec, a, 1, 0)


def delbar(spec: DifferentialSpec, a: Form) -> Form:
    """The (0,1) part of ``d``."""
    return _projected(spec, a, 0, 1)


def del_delbar(spec: DifferentialSpec, a: Form) -> Form:
    return delop(spec, delbar(spec, a))


def twisted_differential(spec: DifferentialSpec, theta: Form, a: Form) -> Form:
    """``d_theta a = d a - theta ^ a`` for a 1-form ``theta``."""
    if theta and theta.degrees() != {1}:
        raise ValueError("theta must be a 1-form")
    return differential(spec, a) - wedge(theta, a)


def correction_form(spec: DifferentialSpec, theta: Form, omega: Form, alpha: Form, k: int) -> Form:
    """Primitive ``P`` with ``(omega + d_theta alpha)^k = omega^k + d_{k theta} P``.

    ``P = sum_{s+t=k, t>=1} C(k,s) omega^s ^ alpha ^ (d_{(t-1)theta} alpha)^(t-1)``,
    valid when ``d theta = 0`` and ``d_theta omega = 0``.
    """
    total = Form.zero(spec.n)
    for t in range(1, k + 1):
        s = k - t
        twisted = twisted_differential(spec, theta.scale(t - 1), alpha)
        term = wedge(wedge(power(omega, s), alpha), power(twisted, t - 1))
        total = total + term.scale(comb(k, s))
    return total


def i_form(n: int, pairs: dict) -> Form:
    """``i * sum H[j,k] phi^j ^ phibar^k`` from ``{(j, k): H_jk}``."""
    return Form(n, {((j,), (k,)): I * h for (j, k), h in pairs.items()})
