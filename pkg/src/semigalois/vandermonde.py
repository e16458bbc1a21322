"""The n! x n! root-monomial matrix V_n, its determinant, and the G-Galois system.

Rows are indexed by permutations phi_i = s_1^{i_1} s_2^{i_2} ... s_{n-1}^{i_{n-1}}
with s_k the cycle (k k+1 ... n); columns by monomials
x_j = a_1^{j_1} ... a_{n-1}^{j_{n-1}}.  Both run over the exponent tuples in
the order that compares the last coordinate first.  A permutation acts on a
monomial by permuting root indices: phi(a_k) = a_{phi(k)}.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DuplicateRoots, InputError, SingularSystem, ToleranceExceeded
from .numerics import GaussianRational, _det_exact
from .perm import Permutation

__all__ = [
    "index_order",
    "sigma_enum",
    "v_matrix",
    "delta",
    "log_abs_delta",
    "check_sign",
    "galois_system",
    "galois_residual",
    "permuted_roots",
    "regular_sign",
    "MAX_N",
]

MAX_N = 5


def index_order(n: int) -> list[tuple[int, ...]]:
    """All (i_1, ..., i_{n-1}) with 0 <= i_k <= n-k, last coordinate most significant."""
    if n < 1:
        raise InputError("n must be >= 1")
    tuples = itertools.product(*[range(n - k + 1) for k in range(1, n)])
    return sorted(tuples, key=lambda t: t[::-1])


def _cycle_from(k: int, n: int) -> Permutation:
    """(k k+1 ... n), k 1-based."""
    return Permutation.from_cycles([list(range(k, n + 1))], n)


@lru_cache(maxsize=None)
def _sigma_enum_cached(n: int) -> tuple[Permutation, ...]:
    cycles = [_cycle_from(k, n) for k in range(1, n)]
    out = []
    for t in index_order(n):
        p = Permutation.identity(n)
        for c, e in zip(cycles, t):
            p = p * c ** e
        out.append(p)
    return tuple(out)


def sigma_enum(n: int) -> list[Permutation]:
    """phi_1 .. phi_{n!} in index order."""
    return list(_sigma_enum_cached(n))


def _check_n(n: int, allow_large: bool):
    if n > MAX_N and not allow_large:
        raise InputError(f"V_n has (n!)^2 entries; n = {n} needs allow_large=True")


def _is_exact(alpha) -> bool:
    return all(isinstance(a, GaussianRational) for a in alpha)


def _check_distinct(alpha):
    if len(set(alpha)) != len(alpha):
        raise DuplicateRoots("roots must be pairwise distinct")
    if not _is_exact(alpha):
        a = np.asarray(alpha, dtype=complex)
        if a.size > 1:
            d = np.abs(a[:, None] - a[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() == 0:
                raise DuplicateRoots("roots must be pairwise distinct")


def v_matrix(alpha: Sequence, allow_large: bool = False):
    """Entries phi_i(x_j); a numpy array for floats, nested lists for exact roots."""
    n = len(alpha)
    _check_n(n, allow_large)
    _check_distinct(alpha)
    tuples = index_order(n)
    phis = _sigma_enum_cached(n)
    exact = _is_exact(alpha)
    if exact:
        one = GaussianRational(Fraction(1))
        powers = [[a ** e for e in range(n)] for a in alpha]
        rows = []
        for phi in phis:
            row = []
            for t in tuples:
                v = one
                for k, e in enumerate(t):
                    if e:
                        v = v * powers[phi(k)][e]
                row.append(v)
            rows.append(row)
        return rows
    a = np.asarray(alpha, dtype=complex)
    expo = np.array(tuples, dtype=int).reshape(len(tuples), n - 1)
    V = np.ones((len(phis), len(tuples)), dtype=complex)
    for i, phi in enumerate(phis):
        perm_a = a[list(phi.images[: n - 1])]
        V[i] = np.prod(perm_a[None, :] ** expo, axis=1) if n > 1 else 1.0
    return V


def delta(alpha: Sequence, allow_large: bool = False):
    """det V_n at the roots: exact for Gaussian-rational input, complex otherwise."""
    V = v_matrix(alpha, allow_large)
    if _is_exact(alpha):
        return _det_exact(V)
    return complex(np.linalg.det(V))


def log_abs_delta(alpha: Sequence, allow_large: bool = False) -> float:
    """``log |Delta|`` via a pivoted LU, safe from overflow."""
    V = v_matrix([complex(a) for a in alpha], allow_large)
    sign, logdet = np.linalg.slogdet(V)
    return float(logdet) if sign != 0 else float("-inf")


def permuted_roots(alpha: Sequence, sigma: Permutation) -> list:
    """Roots after applying sigma: the new k-th root is alpha_{sigma(k)}."""
    return [alpha[sigma(k)] for k in range(len(alpha))]


def regular_sign(sigma: Permutation) -> int:
    """Sign of left multiplication by sigma on S_n, the actual factor Delta picks up."""
    n = sigma.degree
    # left multiplication splits S_n into n!/ord cycles of length ord
    cycles = math.factorial(n) // sigma.order
    return -1 if (sigma.order - 1) * cycles % 2 else 1


def check_sign(alpha: Sequence, sigma: Permutation, rtol: float = 1e-9,
               allow_large: bool = False, raise_on_fail: bool = True) -> dict:
    """Compare Delta at sigma-permuted roots with sign(sigma) * Delta.

    The report also carries Delta^2 invariance and the sign of the row
    permutation induced on V_n.  Raises :class:`ToleranceExceeded` when
    either identity fails.
    """
    d0 = delta(alpha, allow_large)
    d1 = delta(permuted_roots(alpha, sigma), allow_large)
    exact = _is_exact(alpha)
    if exact:
        ratio = d1 / d0
        sign_ok = ratio == sigma.sign
        square_ok = d1 * d1 == d0 * d0
        ratio_c = complex(ratio)
    else:
        ratio_c = d1 / d0
        sign_ok = abs(d1 - sigma.sign * d0) <= rtol * abs(d0)
        square_ok = abs(d1 * d1 - d0 * d0) <= rtol * abs(d0 * d0)
    report = {
        "sigma": str(sigma),
        "sign": sigma.sign,
        "ratio": [ratio_c.real, ratio_c.imag],
        "row_permutation_sign": regular_sign(sigma),
        "sign_ok": bool(sign_ok),
        "square_ok": bool(square_ok),
    }
    if not (sign_ok and square_ok) and raise_on_fail:
        raise ToleranceExceeded(
            f"Delta(sigma.alpha)/Delta(alpha) = {ratio_c:.6g} for sigma = {sigma} "
            f"(sign {sigma.sign}); Delta^2 invariant: {square_ok}", )
    return report


def galois_system(alpha: Sequence, tol: float = 1e-9, allow_large: bool = False) -> np.ndarray:
    """Solve V y = e_1 and check sum_i s(x_i) y_i = [s == id] for all s in S_n."""
    n = len(alpha)
    a = np.asarray([complex(v) for v in alpha])
    V = v_matrix(list(a), allow_large)
    rhs = np.zeros(V.shape[0], dtype=complex)
    rhs[0] = 1.0
    try:
        y = np.linalg.solve(V, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    if not np.all(np.isfinite(y)):
        raise SingularSystem("non-finite solution")
    worst = galois_residual(a, y)
    if worst > tol:
        raise SingularSystem(f"G-Galois residual {worst:.3e} exceeds tolerance")
    return y


def galois_residual(alpha: Sequence, y: np.ndarray) -> float:
    """Largest |sum_i s(x_i) y_i - [s == id]| over S_n.

    Each s(x_i) is rebuilt from the monomial exponents, independently of V's rows.
    """
    n = len(alpha)
    a = np.asarray([complex(v) for v in alpha])
    tuples = index_order(n)
    worst = 0.0
    for images in itertools.permutations(range(n)):
        s = Permutation(images)
        total = sum(np.prod([a[s(k)] ** e for k, e in enumerate(t)]) * yi
                    for t, yi in zip(tuples, y))
        worst = max(worst, abs(total - (1.0 if s.is_identity() else 0.0)))
    return worst
