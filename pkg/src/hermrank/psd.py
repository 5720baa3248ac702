"""Exact positivity and rank for Hermitian coefficient matrices.

An invariant real (1,1)-form ``omega = i * sum H[j][k] phi^j ^ phibar^k``
is nonnegative exactly when the Hermitian matrix ``H`` is positive
semidefinite, and ``omega^k != 0`` exactly when ``rank(H) >= k``.

Real coordinates of an n x n Hermitian matrix: the n diagonal entries,
then ``Re H[j][k], Im H[j][k]`` for ``j < k`` in lexicographic order.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import Form
from .gaussian import GaussianRational, I, as_fraction
from .linalg import Q, det, intersect_with_kernel, left_nullspace, nullspace, rank, rref, solve


def coord_labels(n: int) -> list[str]:
    labels = [f"H{j}{j}" for j in range(1, n + 1)]
    for j, k in itertools.combinations(range(1, n + 1), 2):
        labels += [f"Re H{j}{k}", f"Im H{j}{k}"]
    return labels


def _pairs(n: int):
    return list(itertools.combinations(range(n), 2))


class NotHermitianError(ValueError):
    pass


class HermitianCoeffMatrix:
    """Immutable exact Hermitian matrix over Q(i)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise NotHermitianError("matrix is not square")
        for j in range(n):
            for k in range(j, n):
                if rows[j][k] != rows[k][j].conj():
                    raise NotHermitianError(f"entries ({j + 1},{k + 1}) and ({k + 1},{j + 1}) are not conjugate")
        self.n = n
        self.rows = rows

    @classmethod
    def from_coords(cls, n: int, coords) -> HermitianCoeffMatrix:
        coords = [as_fraction(x) for x in coords]
        if len(coords) != n * n:
            raise ValueError(f"expected {n * n} real coordinates, got {len(coords)}")
        m = [[GaussianRational(0)] * n for _ in range(n)]
        for j in range(n):
            m[j][j] = GaussianRational(coords[j])
        pos = n
        for j, k in _pairs(n):
            m[j][k] = GaussianRational(coords[pos], coords[pos + 1])
            m[k][j] = m[j][k].conj()
            pos += 2
        return cls(m)

    @classmethod
    def from_metric(cls, r2=0, s2=0, t2=0, u=0, v=0, z=0) -> HermitianCoeffMatrix:
        """Matrix of the generic metric: ``H11=r2, H12=-iu, H13=-iz, H23=-iv``."""
        g = GaussianRational.coerce
        h12, h13, h23 = -I * g(u), -I * g(z), -I * g(v)
        return cls([
            [g(r2), h12, h13],
            [h12.conj(), g(s2), h23],
            [h13.conj(), h23.conj(), g(t2)],
        ])

    @classmethod
    def from_form(cls, omega: Form) -> HermitianCoeffMatrix:
        n = omega.n
        if omega and omega.bidegrees() != {(1, 1)}:
            raise ValueError("form is not of bidegree (1,1)")
        minus_i = GaussianRational(0, -1)
        rows = [[GaussianRational(0)] * n for _ in range(n)]
        for ((j,), (k,)), c in omega.items():
            rows[j - 1][k - 1] = GaussianRational.coerce(c) * minus_i
        return cls(rows)

    @classmethod
    def identity(cls, n: int) -> HermitianCoeffMatrix:
        return cls([[GaussianRational(int(j == k)) for k in range(n)] for j in range(n)])

    def coords(self) -> list[Fraction]:
        out = [self.rows[j][j].re for j in range(self.n)]
        for j, k in _pairs(self.n):
            out += [self.rows[j][k].re, self.rows[j][k].im]
        return out

    def to_form(self) -> Form:
        return Form(self.n, {((j + 1,), (k + 1,)): I * self.rows[j][k]
                             for j in range(self.n) for k in range(self.n) if self.rows[j][k]})

    def __eq__(self, other):
        return isinstance(other, HermitianCoeffMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return HermitianCoeffMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, q) -> HermitianCoeffMatrix:
        q = as_fraction(q)
        return HermitianCoeffMatrix([[x * q for x in row] for row in self.rows])

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, obj) -> HermitianCoeffMatrix:
        return cls([[GaussianRational.from_json(x) for x in row] for row in obj])

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"HermitianCoeffMatrix([{body}])"


def _submatrix(h: HermitianCoeffMatrix, idx) -> list[list]:
    return [[h.rows[a][b] for b in idx] for a in idx]


def principal_minors(h: HermitianCoeffMatrix) -> list[Fraction]:
    """All 2^n - 1 principal minors, subsets ordered by size then lexicographically."""
    if not isinstance(h, HermitianCoeffMatrix):
        h = HermitianCoeffMatrix(h)
    out = []
    for size in range(1, h.n + 1):
        for idx in itertools.combinations(range(h.n), size):
            value = det(_submatrix(h, idx), one=GaussianRational(1))
            if value.im != 0:
                raise ArithmeticError("principal minor of a Hermitian matrix is not real")
            out.append(value.re)
    return out


def is_psd_exact(h: HermitianCoeffMatrix) -> bool:
    return all(m >= 0 for m in principal_minors(h))


def rank_exact(h: HermitianCoeffMatrix) -> int:
    return rank([list(row) for row in h.rows])


def is_positive_definite(h: HermitianCoeffMatrix) -> bool:
    return all(det(_submatrix(h, range(k)), one=GaussianRational(1)).re > 0 for k in range(1, h.n + 1))


# ---------------------------------------------------------------- slices


@dataclass(frozen=True)
class LinearSlice:
    """Linear subspace of Hermitian n x n matrices, as an exact basis in real coordinates."""

    n: int
    basis: tuple
    provenance: str = ""

    def __post_init__(self):
        basis = tuple(tuple(Q(x) for x in b) for b in self.basis)
        for b in basis:
            if len(b) != self.n * self.n:
                raise ValueError("basis vector has the wrong length")
        if basis and rank([list(b) for b in basis]) != len(basis):
            raise ValueError("slice basis is not linearly independent")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def full(cls, n: int, provenance: str = "unconstrained") -> LinearSlice:
        m = n * n
        return cls(n, tuple(tuple(Q(int(i == j)) for j in range(m)) for i in range(m)), provenance)

    @classmethod
    def from_equations(cls, n: int, functionals, provenance: str = "") -> LinearSlice:
        full = [list(b) for b in cls.full(n).basis]
        return cls(n, tuple(tuple(v) for v in intersect_with_kernel(full, [list(f) for f in functionals])), provenance)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> list[Fraction]:
        m = self.n * self.n
        out = [Q(0)] * m
        for c, b in zip(coeffs, self.basis):
            if c:
                for j in range(m):
                    out[j] += c * b[j]
        return out

    def contains(self, coords) -> bool:
        coords = [Q(x) for x in coords]
        if not any(coords):
            return True
        if not self.basis:
            return False
        return solve([list(col) for col in zip(*self.basis)], coords) is not None

    def restrict(self, functionals, provenance: str | None = None) -> LinearSlice:
        basis = intersect_with_kernel([list(b) for b in self.basis], [list(f) for f in functionals])
        return LinearSlice(self.n, tuple(tuple(b) for b in basis), provenance or self.provenance)


@functools.lru_cache(maxsize=None)
def _coordinate_matrices(n: int) -> list[list[list[GaussianRational]]]:
    out = []
    for a in range(n * n):
        coords = [Q(int(a == b)) for b in range(n * n)]
        out.append([list(r) for r in HermitianCoeffMatrix.from_coords(n, coords).rows])
    return out


def _apply(m, w):
    return [sum((x * y for x, y in zip(row, w)), start=GaussianRational(0)) for row in m]


def _hdot(v, w):
    return sum((a.conj() * b for a, b in zip(v, w)), start=GaussianRational(0))


def _parts(w) -> tuple[list, list]:
    return [Q(x.re) for x in w], [Q(x.im) for x in w]


def quadratic_functional(n: int, w) -> list:
    """Real coordinates -> ``w^H X w`` as a row vector."""
    re, im = _parts(w)
    row = [re[j] * re[j] + im[j] * im[j] for j in range(n)]
    for j, k in _pairs(n):
        # conj(w_j) w_k = p_re + i p_im
        p_re = re[j] * re[k] + im[j] * im[k]
        p_im = re[j] * im[k] - im[j] * re[k]
        row += [2 * p_re, -2 * p_im]
    return row


def annihilator_functionals(n: int, w) -> list[list]:
    """Real and imaginary parts of ``X w``; they vanish on PSD ``X`` with ``w^H X w = 0``."""
    re, im = _parts(w)
    zero = Q(0)
    rows_re = [[zero] * (n * n) for _ in range(n)]
    rows_im = [[zero] * (n * n) for _ in range(n)]
    for j in range(n):
        rows_re[j][j], rows_im[j][j] = re[j], im[j]
    for idx, (j, k) in enumerate(_pairs(n)):
        a, b = n + 2 * idx, n + 2 * idx + 1
        # X[j][k] = a + i b and X[k][j] = a - i b
        rows_re[j][a], rows_im[j][a] = re[k], im[k]
        rows_re[k][a], rows_im[k][a] = re[j], im[j]
        rows_re[j][b], rows_im[j][b] = -im[k], re[k]
        rows_re[k][b], rows_im[k][b] = im[j], -re[j]
    out = []
    for j in range(n):
        out += [rows_re[j], rows_im[j]]
    return out


def _unit(n: int, j: int):
    return [GaussianRational(int(k == j)) for k in range(n)]


def complement_basis(n: int, vectors) -> list[list[GaussianRational]]:
    """Basis of ``{v : w^H v = 0 for all w in vectors}``."""
    if not vectors:
        return [_unit(n, j) for j in range(n)]
    rows = [[x.conj() for x in w] for w in vectors]
    return nullspace(rows, ncols=n, one=GaussianRational(1))


def vector_to_json(w) -> list:
    return [x.to_json() for x in w]


def vector_from_json(obj) -> list:
    return [GaussianRational.from_json(x) for x in obj]


@dataclass
class FacialReduction:
    reduced: LinearSlice
    kernel_vectors: list
    range_basis: list
    upper_bound: int
    steps: list = field(default_factory=list)

    @property
    def forced(self) -> tuple:
        """Diagonal positions that are forced to vanish (0-based)."""
        n = self.reduced.n
        return tuple(j for j in range(n) if all(not v[j] for v in self.range_basis))


def _positive_kernel_vector(rows) -> list | None:
    """A strictly positive ``lam`` with ``sum lam_i rows[i] = 0`` when one exists with 1-dim kernel."""
    if not rows or not any(any(r) for r in rows):
        return [Q(1)] * len(rows) if rows else None
    kernel = left_nullspace(rows)
    if len(kernel) != 1:
        return None
    vec = kernel[0]
    if all(x > 0 for x in vec):
        return vec
    if all(x < 0 for x in vec):
        return [-x for x in vec]
    return None


def _diagonal_circuit(basis, active) -> tuple | None:
    rows = {i: [b[i] for b in basis] for i in active}
    for i in active:
        if not any(rows[i]):
            return (i,), [Q(1)]
    for size in range(2, len(active) + 1):
        for subset in itertools.combinations(active, size):
            vec = _positive_kernel_vector([rows[i] for i in subset])
            if vec is not None:
                return subset, vec
    return None


def _generators(range_basis) -> list:
    """Rank-one directions ``B c`` for small ``c``: units, and ``e_j + u e_k`` for ``u`` in {1,-1,i,-i}."""
    k = len(range_basis)
    n = len(range_basis[0]) if range_basis else 0
    units = (GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1), GaussianRational(0, -1))
    coeffs = [[GaussianRational(int(a == j)) for a in range(k)] for j in range(k)]
    for j, l in itertools.combinations(range(k), 2):
        for u in units:
            c = [GaussianRational(0)] * k
            c[j], c[l] = GaussianRational(1), u
            coeffs.append(c)
    out = []
    for c in coeffs:
        w = [sum((c[a] * range_basis[a][i] for a in range(k)), start=GaussianRational(0)) for i in range(n)]
        out.append(w)
    return out


def _round_gaussian(z: complex, denominator: int = 12) -> GaussianRational:
    return GaussianRational(Q(round(z.real * denominator), denominator),
                            Q(round(z.imag * denominator), denominator))


def _eigen_generators(slice_: LinearSlice, range_basis, seed: int = 0) -> list:
    """Rounded eigenvectors of slice elements compressed to the face; candidates only."""
    import numpy as np

    n = slice_.n
    b = np.array([[complex(x) for x in v] for v in range_basis]).T
    q, _ = np.linalg.qr(b)
    rng = np.random.default_rng(seed)
    mats = [HermitianCoeffMatrix.from_coords(n, coords) for coords in slice_.basis]
    arrays = [np.array([[complex(x) for x in row] for row in m.rows]) for m in mats]
    combos = list(arrays)
    for _ in range(min(4, len(arrays))):
        weights = rng.normal(size=len(arrays))
        combos.append(sum(w * a for w, a in zip(weights, arrays)))
    out = []
    for a in combos:
        _, vecs = np.linalg.eigh(q.conj().T @ a @ q)
        for col in (q @ vecs).T:
            col = col / col[np.argmax(abs(col))]
            for denominator in (12, 10**3, 10**6, 10**9):
                w = [_round_gaussian(z, denominator) for z in col]
                if any(w) and w not in out:
                    out.append(w)
    return out


def _project_to_face(w, range_basis) -> list:
    """Orthogonal projection of ``w`` onto ``span(range_basis)``."""
    k = len(range_basis)
    if k == len(w):
        return list(w)
    gram = [[_hdot(range_basis[a], range_basis[b]) for b in range(k)] for a in range(k)]
    rhs = [_hdot(range_basis[a], w) for a in range(k)]
    coeffs = solve(gram, rhs)
    return [sum((coeffs[a] * range_basis[a][i] for a in range(k)), start=GaussianRational(0))
            for i in range(len(w))]


def _kernel_generators(slice_: LinearSlice) -> list:
    """Exact kernel vectors of the slice basis matrices and of their sum."""
    n = slice_.n
    mats = [HermitianCoeffMatrix.from_coords(n, coords) for coords in slice_.basis]
    if len(mats) > 1:
        total = mats[0]
        for m in mats[1:]:
            total = total + m
        mats.append(total)
    out = []
    for m in mats:
        out += nullspace([list(r) for r in m.rows], ncols=n, one=GaussianRational(1))
    return out


def _rank_one_circuit(slice_: LinearSlice, range_basis) -> tuple | None:
    """Search nonnegative combinations of ``w^H X w`` vanishing on the slice.

    A floating-point LP only proposes the support; the certificate is the
    exact positive kernel vector on that support.
    """
    from scipy.optimize import linprog

    n = slice_.n
    gens = _generators(range_basis)
    if slice_.basis:
        extra = _kernel_generators(slice_) + _eigen_generators(slice_, range_basis)
        for w in extra:
            w = _project_to_face(w, range_basis)
            if any(w):
                gens.append(w)
    rows = []
    for w in gens:
        f = quadratic_functional(n, w)
        rows.append([sum((fi * bi for fi, bi in zip(f, b)), start=Q(0)) for b in slice_.basis])
    if not slice_.basis:
        return [gens[0]], [Q(1)]
    m = len(gens)
    a_eq = [[float(rows[i][j]) for i in range(m)] for j in range(slice_.dim)] + [[1.0] * m]
    b_eq = [0.0] * slice_.dim + [1.0]
    res = linprog([0.0] * m, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs-ds")
    if res.status != 0:
        return None
    support = [i for i in range(m) if res.x[i] > 1e-9]
    vec = _positive_kernel_vector([rows[i] for i in support])
    if vec is None:
        return None
    return [gens[i] for i in support], vec


def _hermitian3_minors(coords) -> list:
    """Principal minors of a 3 x 3 Hermitian matrix from its real coordinates, in ``principal_minors`` order."""
    a, b, c, pr, pi, qr, qi, rr, ri = coords
    p2, q2, r2 = pr * pr + pi * pi, qr * qr + qi * qi, rr * rr + ri * ri
    # Re(H12 H23 conj(H13))
    pr_re = pr * rr - pi * ri
    pr_im = pr * ri + pi * rr
    triple = pr_re * qr + pr_im * qi
    det3 = a * b * c + 2 * triple - a * r2 - b * q2 - c * p2
    return [a, b, c, a * b - p2, a * c - q2, b * c - r2, det3]


def ray_max_rank(slice_: LinearSlice) -> int:
    """Exact largest PSD rank in a one-dimensional slice ``span{X}``: rank of ``X`` if ``X`` or ``-X`` is PSD, else 0."""
    if slice_.dim != 1:
        raise ValueError("ray_max_rank needs a one-dimensional slice")
    coords = slice_.basis[0]
    if slice_.n == 3:
        minors = _hermitian3_minors(coords)
        neg = _hermitian3_minors([-x for x in coords])
    else:
        x = HermitianCoeffMatrix.from_coords(slice_.n, coords)
        minors, neg = principal_minors(x), principal_minors(x.scale(-1))
    if all(m >= 0 for m in minors) or all(m >= 0 for m in neg):
        return rank_exact(HermitianCoeffMatrix.from_coords(slice_.n, coords))
    return 0


def _ray_circuit(slice_: LinearSlice, range_basis, kernel) -> tuple | None:
    """Exact circuit for a one-dimensional slice spanned by ``X``.

    If ``X`` or ``-X`` is PSD a kernel vector of ``X`` in the face is forced.
    If ``X`` is indefinite, directions with ``w^H X w`` of both signs give a
    positive combination vanishing on the slice.
    """
    import numpy as np

    n = slice_.n
    coords = slice_.basis[0]
    x = HermitianCoeffMatrix.from_coords(n, coords)
    values, vecs = np.linalg.eigh(np.array([[complex(v) for v in row] for row in x.rows]))
    scale = max(abs(values))
    clearly_indefinite = values[0] < -1e-9 * scale and values[-1] > 1e-9 * scale
    if not clearly_indefinite and (is_psd_exact(x) or is_psd_exact(x.scale(-1))):
        for w in nullspace([list(r) for r in x.rows], ncols=n, one=GaussianRational(1)):
            w = _project_to_face(w, range_basis)
            if any(w) and len(_independent(n, kernel + [w])) > len(kernel):
                return [w], [Q(1)]
        return None
    signed = {}
    for col in vecs.T:
        col = col / col[np.argmax(abs(col))]
        for denominator in (12, 10**3, 10**6, 10**9, 10**12):
            w = [_round_gaussian(z, denominator) for z in col]
            value = sum((a * b for a, b in zip(quadratic_functional(n, w), coords)), start=Q(0))
            if value:
                signed.setdefault(value > 0, (w, value))
        if len(signed) == 2:
            break
    if len(signed) < 2:
        return None
    (w_pos, q_pos), (w_neg, q_neg) = signed[True], signed[False]
    return [w_pos, w_neg], [-q_neg, q_pos]


def facial_reduction(slice_: LinearSlice, rank_one: bool = True,
                     resume: FacialReduction | None = None) -> FacialReduction:
    """Propagate PSD-forced kernel vectors to a fixpoint; the surviving range dimension bounds the rank.

    Diagonal steps come first: a diagonal entry vanishing on the slice, or a
    nonnegative combination of diagonal entries vanishing on it.  With
    ``rank_one`` the same argument is then run with ``w^H X w`` for
    non-coordinate directions ``w`` inside the current face.  ``resume``
    continues from an earlier reduction of the same slice.
    """
    n = slice_.n
    current = slice_
    kernel: list = []
    steps = []
    if resume is not None:
        current, kernel, steps = resume.reduced, list(resume.kernel_vectors), list(resume.steps)
    while True:
        range_basis = complement_basis(n, kernel)
        if not range_basis:
            break
        found = None
        if all(_is_coordinate(v) for v in kernel):
            active = [j for j in range(n) if any(v[j] for v in range_basis)]
            diag = _diagonal_circuit(current.basis, active)
            if diag is not None:
                subset, weights = diag
                found = [_unit(n, j) for j in subset], weights
                if len(subset) == 1:
                    reason = f"H{subset[0] + 1}{subset[0] + 1} vanishes identically on the slice"
                else:
                    combo = " + ".join(f"{w}*H{i + 1}{i + 1}" for w, i in zip(weights, subset))
                    reason = f"{combo} vanishes identically on the slice with nonnegative weights"
        if found is None and rank_one:
            if current.dim == 0:
                found = range_basis, [Q(1)] * len(range_basis)
            elif current.dim == 1:
                found = _ray_circuit(current, range_basis, kernel)
            else:
                found = _rank_one_circuit(current, range_basis)
            if found is not None:
                reason = "nonnegative combination of w^H X w vanishes identically on the slice"
        if found is None:
            break
        vectors, weights = found
        funcs = []
        for w in vectors:
            funcs += annihilator_functionals(n, w)
        current = current.restrict(funcs)
        grown = _independent(n, kernel + vectors)
        if len(grown) == len(kernel):
            break
        kernel = grown
        step = {
            "reason": reason,
            "vectors": [vector_to_json(w) for w in vectors],
            "weights": [str(Fraction(int(x.numerator), int(x.denominator))) for x in weights],
            "dimension_after": current.dim,
            "range_dimension_after": n - len(kernel),
        }
        if all(_is_coordinate(w) for w in vectors):
            step["forced_zero"] = [f"H{_coord_index(w) + 1}{_coord_index(w) + 1}" for w in vectors]
        steps.append(step)
    range_basis = complement_basis(n, kernel)
    return FacialReduction(current, kernel, range_basis, len(range_basis), steps)


def _is_coordinate(w) -> bool:
    return sum(1 for x in w if x) == 1


def _coord_index(w) -> int:
    return next(j for j, x in enumerate(w) if x)


def _independent(n: int, vectors) -> list:
    if not vectors:
        return []
    rows, _ = rref([list(w) for w in vectors], n)
    return [list(r) for r in rows]


# ---------------------------------------------------------------- rank search


@dataclass
class ConeRankCertificate:
    lower: int
    witness: HermitianCoeffMatrix
    upper: int
    steps: list
    status: str
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "status": self.status,
            "witness": self.witness.to_json(),
            "steps": self.steps,
            "reason": self.reason,
        }


def _frobenius_weights(n: int) -> list[int]:
    return [1] * n + [2] * (n * n - n)


def project(slice_: LinearSlice, target) -> list[Fraction]:
    """Orthogonal projection (Frobenius inner product) of ``target`` onto the slice."""
    if not slice_.basis:
        return [Q(0)] * (slice_.n ** 2)
    w = _frobenius_weights(slice_.n)
    basis = slice_.basis
    gram = [[sum(wi * a * b for wi, a, b in zip(w, bi, bj)) for bj in basis] for bi in basis]
    rhs = [sum(wi * a * t for wi, a, t in zip(w, bi, target)) for bi in basis]
    coeffs = solve(gram, rhs)
    return slice_.combine(coeffs)


def _candidate(n, coords):
    h = HermitianCoeffMatrix.from_coords(n, coords)
    if is_psd_exact(h):
        return h, rank_exact(h)
    return None


def max_rank_over_cone(slice_: LinearSlice, seed: int = 0, samples: int = 200,
                       reduction: FacialReduction | None = None) -> ConeRankCertificate:
    """Largest rank of a PSD matrix in the slice: exact witness plus facial-reduction upper bound."""
    n = slice_.n
    fr = facial_reduction(slice_) if reduction is None else reduction
    upper = fr.upper_bound
    best = HermitianCoeffMatrix.from_coords(n, [0] * (n * n))
    best_rank = 0
    psd_found: list[HermitianCoeffMatrix] = []

    def consider(coords):
        nonlocal best, best_rank
        got = _candidate(n, coords)
        if got is None:
            return False
        h, r = got
        if r:
            psd_found.append(h)
        if r > best_rank:
            best, best_rank = h, r
        return best_rank >= upper

    if upper == 0:
        return _certificate(best, best_rank, fr)
    identity = HermitianCoeffMatrix.identity(n).coords()
    face_identity = _projector_coords(n, fr.range_basis)
    seeds = [project(slice_, identity), project(fr.reduced, identity), project(fr.reduced, face_identity)]
    for coords in seeds:
        if consider(coords):
            return _certificate(best, best_rank, fr)

    rng = random.Random(seed)
    reduced = fr.reduced
    for _ in range(samples):
        if reduced.dim == 0:
            break
        if rng.random() < 0.5:
            coeffs = [Q(rng.randint(-3, 3)) for _ in range(reduced.dim)]
            coords = reduced.combine(coeffs)
        else:
            coords = project(reduced, _random_psd_coords(n, fr.range_basis, rng))
        if consider(coords):
            return _certificate(best, best_rank, fr)
    if len(psd_found) > 1:
        total = psd_found[0]
        for h in psd_found[1:]:
            total = total + h
        consider(total.coords())
    return _certificate(best, best_rank, fr)


def _gram(n: int, columns) -> HermitianCoeffMatrix:
    """``sum_c c c^H`` for the given column vectors."""
    h = [[sum((c[j] * c[k].conj() for c in columns), start=GaussianRational(0)) for k in range(n)]
         for j in range(n)]
    return HermitianCoeffMatrix(h)


def _projector_coords(n: int, range_basis) -> list:
    """Coordinates of a PSD matrix whose range is exactly ``span(range_basis)``."""
    if not range_basis:
        return [Q(0)] * (n * n)
    return _gram(n, range_basis).coords()


def _random_psd_coords(n: int, range_basis, rng: random.Random) -> list:
    """Coordinates of ``A A^H`` with columns random Gaussian-integer combinations of ``range_basis``."""
    k = len(range_basis)
    columns = []
    for _ in range(k):
        c = [GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(k)]
        columns.append([sum((c[a] * range_basis[a][i] for a in range(k)), start=GaussianRational(0))
                        for i in range(n)])
    return _gram(n, columns).coords()


def _certificate(best, best_rank, fr: FacialReduction) -> ConeRankCertificate:
    exact = best_rank == fr.upper_bound
    reason = "" if exact else (
        f"no PSD witness of rank {fr.upper_bound} found; facial reduction cannot lower the bound below {fr.upper_bound}"
    )
    return ConeRankCertificate(best_rank, best, fr.upper_bound, fr.steps, "exact" if exact else "bracket", reason)


def verify_certificate(slice_: LinearSlice, cert: ConeRankCertificate) -> list[str]:
    """Independent re-check of a certificate; returns a list of problems (empty when sound)."""
    problems = []
    w = cert.witness
    if not slice_.contains(w.coords()):
        problems.append("witness is not in the slice")
    minors = principal_minors(w)
    if any(m < 0 for m in minors):
        problems.append("witness is not positive semidefinite")
    if rank_exact(w) != cert.lower:
        problems.append(f"witness rank {rank_exact(w)} differs from claimed lower bound {cert.lower}")
    if cert.lower > cert.upper:
        problems.append("lower bound exceeds upper bound")
    if cert.status == "exact" and cert.lower != cert.upper:
        problems.append("status exact but bounds differ")
    # replay each reduction step: the weighted sum of w^H X w must vanish on the current slice
    n = slice_.n
    current = slice_
    kernel: list = []
    for step in cert.steps:
        vectors = [vector_from_json(v) for v in step["vectors"]]
        weights = [Q(as_fraction(x)) for x in step["weights"]]
        if len(weights) != len(vectors) or any(x <= 0 for x in weights):
            problems.append(f"step '{step['reason']}' has non-positive weights")
        total = [Q(0)] * (n * n)
        for v, lam in zip(vectors, weights):
            total = [t + lam * f for t, f in zip(total, quadratic_functional(n, v))]
        if any(sum((t * b for t, b in zip(total, basis)), start=Q(0)) for basis in current.basis):
            problems.append(f"step '{step['reason']}' does not vanish on the slice")
        funcs = []
        for v in vectors:
            funcs += annihilator_functionals(n, v)
        current = current.restrict(funcs)
        kernel = _independent(n, kernel + vectors)
    if n - len(kernel) != cert.upper:
        problems.append("upper bound does not match the dimension of the surviving face")
    return problems
