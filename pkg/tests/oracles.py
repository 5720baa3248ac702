"""Independent numeric oracles used to cross-check the exact solvers."""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath
import numpy as np

from hermrank.psd import HermitianCoeffMatrix, LinearSlice, is_psd_exact, rank_exact


def mp_min_eigenvalue(h: HermitianCoeffMatrix, dps: int = 80):
    """Smallest eigenvalue of an exact Hermitian matrix at ``dps`` digits."""
    with mpmath.workdps(dps):
        m = mpmath.matrix(h.n, h.n)
        for j in range(h.n):
            for k in range(h.n):
                x = h.rows[j][k]
                re = mpmath.mpf(int(x.re.numerator)) / int(x.re.denominator)
                im = mpmath.mpf(int(x.im.numerator)) / int(x.im.denominator)
                m[j, k] = mpmath.mpc(re, im)
        values = mpmath.eigh(m, eigvals_only=True)
        return min(values)


def to_numpy(n: int, coords) -> np.ndarray:
    coords = [float(c) for c in coords]
    m = np.zeros((n, n), dtype=complex)
    for j in range(n):
        m[j, j] = coords[j]
    pos = n
    for j, k in itertools.combinations(range(n), 2):
        m[j, k] = complex(coords[pos], coords[pos + 1])
        m[k, j] = m[j, k].conjugate()
        pos += 2
    return m


def grid_psd_members(slice_: LinearSlice, values=(-1, 0, 1)):
    """Every PSD matrix ``sum c_b B_b`` with all ``c_b`` in ``values``, as (coefficients, exact matrix).

    Numeric eigenvalues prefilter; every reported member is confirmed exactly.
    """
    if slice_.dim == 0:
        return []
    n = slice_.n
    basis = np.array([[float(x) for x in b] for b in slice_.basis])
    combos = np.array(list(itertools.product(values, repeat=slice_.dim)), dtype=float)
    coords = combos @ basis
    mats = np.zeros((len(coords), n, n), dtype=complex)
    for j in range(n):
        mats[:, j, j] = coords[:, j]
    pos = n
    for j, k in itertools.combinations(range(n), 2):
        mats[:, j, k] = coords[:, pos] + 1j * coords[:, pos + 1]
        mats[:, k, j] = coords[:, pos] - 1j * coords[:, pos + 1]
        pos += 2
    smallest = np.linalg.eigvalsh(mats)[:, 0]
    members = []
    for idx in np.nonzero(smallest > -1e-9)[0]:
        c = [Fraction(int(x)) for x in combos[idx]]
        h = HermitianCoeffMatrix.from_coords(n, slice_.combine(c))
        if is_psd_exact(h):
            members.append((c, h))
    return members


def grid_max_rank(slice_: LinearSlice, values=(-1, 0, 1)) -> int:
    return max((rank_exact(h) for _, h in grid_psd_members(slice_, values)), default=0)
