"""Sparse multivariate polynomials over Q(i) with a conjugation involution.

Indeterminates carry a reality kind.  Real and nonnegative ones are their
own conjugates; complex ones come in pairs ``u``/``ubar`` that conjugation
swaps.  Polynomials are immutable and canonical: zero coefficients are never
stored, so structural equality is mathematical equality.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction

from .gaussian import GaussianRational, I, as_fraction

NONNEGATIVE = "real-nonnegative"
REAL = "real"
COMPLEX = "complex"

_REGISTRY: dict[str, Indeterminate] = {}


@dataclass(frozen=True, order=True)
class Indeterminate:
    name: str
    kind: str = REAL
    partner: str = ""

    def conj(self) -> Indeterminate:
        if self.kind == COMPLEX:
            return _REGISTRY[self.partner]
        return self

    def __repr__(self):
        return self.name


def indeterminate(name: str, kind: str = REAL) -> Indeterminate:
    """Return the real (or nonnegative) indeterminate ``name``, creating it once."""
    if kind == COMPLEX:
        raise ValueError("use conjugate_pair() for complex indeterminates")
    existing = _REGISTRY.get(name)
    if existing is not None:
        if existing.kind != kind:
            raise ValueError(f"indeterminate {name!r} already declared as {existing.kind}")
        return existing
    x = Indeterminate(name, kind, name)
    _REGISTRY[name] = x
    return x


def conjugate_pair(name: str, bar_name: str | None = None) -> tuple[Indeterminate, Indeterminate]:
    bar_name = bar_name or name + "bar"
    if name in _REGISTRY:
        x = _REGISTRY[name]
        if x.kind != COMPLEX or x.partner != bar_name:
            raise ValueError(f"indeterminate {name!r} already declared differently")
        return x, _REGISTRY[bar_name]
    x = Indeterminate(name, COMPLEX, bar_name)
    xb = Indeterminate(bar_name, COMPLEX, name)
    _REGISTRY[name] = x
    _REGISTRY[bar_name] = xb
    return x, xb


def lookup(name: str) -> Indeterminate:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown indeterminate {name!r}") from None


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for x, e in b:
        exps[x] = exps.get(x, 0) + e
    return tuple(sorted(exps.items()))


def _mono_conj(m: tuple) -> tuple:
    return tuple(sorted((x.conj(), e) for x, e in m))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to coefficients.

    A monomial is a sorted tuple of ``(Indeterminate, exponent)`` pairs.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = GaussianRational.coerce(coeff)
                if coeff:
                    clean[mono] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, value) -> Polynomial:
        return cls({(): value})

    @classmethod
    def var(cls, x: Indeterminate | str) -> Polynomial:
        if isinstance(x, str):
            x = lookup(x)
        return cls._raw({((x, 1),): GaussianRational(1)})

    @classmethod
    def coerce(cls, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, Indeterminate):
            return cls.var(value)
        return cls.constant(value)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def indeterminates(self) -> set[Indeterminate]:
        return {x for mono in self._terms for x, _ in mono}

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return self._terms.get((), GaussianRational(0))

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    # ring operations
    def __add__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                scalar = GaussianRational.coerce(other)
            except TypeError:
                if isinstance(other, Indeterminate):
                    return self * Polynomial.var(other)
                return NotImplemented
            if not scalar:
                return Polynomial._raw({})
            return Polynomial._raw({m: c * scalar for m, c in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        scalar = GaussianRational.coerce(other)
        return self * scalar.inverse()

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def conj(self) -> Polynomial:
        return Polynomial._raw({_mono_conj(m): c.conj() for m, c in self._terms.items()})

    def real_part(self) -> Polynomial:
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> Polynomial:
        return (self - self.conj()) * GaussianRational(0, Fraction(-1, 2))

    def substitute(self, bindings: dict) -> Polynomial:
        """Replace bound indeterminates by constants or polynomials.

        Binding one member of a conjugate pair to a constant binds the other
        to the conjugate constant.  Real kinds must receive real values and
        nonnegative kinds nonnegative values.
        """
        full = _complete_bindings(bindings)
        result = Polynomial._raw({})
        power_cache: dict = {}
        for mono, coeff in self._terms.items():
            term = Polynomial._raw({(): coeff})
            rest = []
            for x, e in mono:
                if x in full:
                    key = (x, e)
                    if key not in power_cache:
                        power_cache[key] = full[x] ** e
                    term = term * power_cache[key]
                else:
                    rest.append((x, e))
            if rest:
                term = term * Polynomial._raw({tuple(rest): GaussianRational(1)})
            result = result + term
        return result

    def evaluate(self, bindings: dict) -> GaussianRational:
        return self.substitute(bindings).constant_value()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self):
        def key(item):
            mono = item[0]
            return (-sum(e for _, e in mono), [(x.name, -e) for x, e in mono])

        return sorted(self._terms.items(), key=key)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = [x.name if e == 1 else f"{x.name}^{e}" for x, e in mono]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(coeff) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


def _complete_bindings(bindings: dict) -> dict:
    full: dict = {}
    for x, value in bindings.items():
        if isinstance(x, str):
            x = lookup(x)
        if isinstance(value, (Polynomial, Indeterminate)):
            full[x] = Polynomial.coerce(value)
            continue
        value = GaussianRational.coerce(value)
        if x.kind in (REAL, NONNEGATIVE) and not value.is_real():
            raise ValueError(f"indeterminate {x.name} is real but was bound to {value}")
        if x.kind == NONNEGATIVE and value.re < 0:
            raise ValueError(f"indeterminate {x.name} is nonnegative but was bound to {value}")
        full[x] = Polynomial.constant(value)
    for x in list(full):
        if x.kind != COMPLEX:
            continue
        partner = x.conj()
        value = full[x]
        if partner in full:
            if value.is_constant() and full[partner].is_constant() and full[partner] != value.conj():
                raise ValueError(
                    f"bindings for {x.name} and {partner.name} are not complex conjugates"
                )
        elif value.is_constant():
            full[partner] = value.conj()
    return full


def parse_expression(text: str, names: dict | None = None) -> Polynomial:
    """Parse an arithmetic expression over registered indeterminates.

    ``i`` denotes the imaginary unit, ``^`` or ``**`` exponentiation.
    Only ``+ - * / ^`` with nonnegative integer exponents and numeric
    literals are accepted; anything else raises ``ValueError``.
    """
    names = names or {}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right.constant_value()
            if isinstance(node.op, ast.Pow):
                exp = right.constant_value()
                if not exp.is_real() or exp.re.denominator != 1 or exp.re < 0:
                    raise ValueError(f"bad exponent in {text!r}")
                return left ** int(exp.re)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -walk(node.operand)
            if isinstance(node.op, ast.UAdd):
                return walk(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.constant(node.value)
        if isinstance(node, ast.Constant) and isinstance(node.value, float):
            return Polynomial.constant(as_fraction(ast.get_source_segment(text, node) or str(node.value)))
        if isinstance(node, ast.Name):
            if node.id in names:
                return Polynomial.coerce(names[node.id])
            if node.id == "i":
                return Polynomial.constant(I)
            return Polynomial.var(lookup(node.id))
        raise ValueError(f"unsupported syntax in expression {text!r}")

    return walk(tree)
