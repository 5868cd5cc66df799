"""Complex zonal polynomials and hypergeometric functions of Hermitian matrix argument.

C̃_K(X) = f^K s_K(eig X), where s_K is the Schur polynomial and f^K the number
of standard Young tableaux of shape K. With [a]_K = prod_i (a - i + 1)_{k_i}
this gives sum_{K |- k} C̃_K(X) = (tr X)^k and 1F0(a; X) = |det(I - X)|^(-a).

Everything below accepts eigenvalue stacks of shape (..., p) so series can be
evaluated for a whole Monte-Carlo batch at once.
"""

import logging
import math
from functools import lru_cache

import numpy as np

from mvsf.errors import DomainError, NonconvergentTail, NormTooLarge
from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import HypSeriesSpec
from mvsf.models.partition import Partition
from mvsf.services.hermitian import eigenvalues

logger = logging.getLogger(__name__)


def _generate(k: int, largest: int, max_parts: int):
    if k == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _generate(k - first, first, max_parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(k: int, max_parts: int) -> tuple[Partition, ...]:
    """Partitions of k with at most max_parts parts, reverse-lexicographic."""
    if k < 0:
        raise DomainError(f"partition weight must be nonnegative, got {k}")
    return tuple(Partition(parts) for parts in _generate(k, k, max_parts))


def hook_lengths(K: Partition) -> tuple[int, ...]:
    return K.hook_lengths


def standard_tableaux_count(K: Partition) -> int:
    return K.standard_tableaux


def gen_pochhammer(a: float, K: Partition) -> float:
    """[a]_K = prod_i (a - i + 1)_{k_i}, rows numbered from 1."""
    return math.prod(a - i + j for i, k in enumerate(K) for j in range(k))


def _as_eigs(X) -> np.ndarray:
    if isinstance(X, HermitianMatrix):
        return eigenvalues(X)
    return np.asarray(X, dtype=float)


def complete_homogeneous(eigs: np.ndarray, degree: int) -> np.ndarray:
    """h_0..h_degree from power sums by Newton's identities m h_m = sum_i p_i h_(m-i).

    Returns shape (..., degree + 1).
    """
    eigs = np.asarray(eigs, dtype=float)
    powers = eigs[..., None] ** np.arange(1, degree + 1)
    p_sums = powers.sum(axis=-2)  # (..., degree)
    h = np.zeros(eigs.shape[:-1] + (degree + 1,))
    h[..., 0] = 1.0
    for m in range(1, degree + 1):
        h[..., m] = np.sum(p_sums[..., :m] * h[..., m - 1::-1][..., :m], axis=-1) / m
    return h


def _schur_from_h(K: Partition, h: np.ndarray) -> np.ndarray:
    """Jacobi-Trudi: s_K = det[h_(k_i - i + j)]."""
    n = len(K)
    if n == 0:
        return np.ones(h.shape[:-1])
    m = np.zeros(h.shape[:-1] + (n, n))
    for i, k in enumerate(K):
        for j in range(n):
            idx = k - i + j
            if idx >= 0:
                m[..., i, j] = h[..., idx]
    return np.linalg.det(m)


def schur(K: Partition, eigs) -> np.ndarray:
    eigs = _as_eigs(eigs)
    if len(K) > eigs.shape[-1]:
        return np.zeros(eigs.shape[:-1])
    h = complete_homogeneous(eigs, K.weight + len(K))
    return _schur_from_h(K, h)


def zonal_c(K: Partition, X) -> float | np.ndarray:
    """C̃_K(X); X is a HermitianMatrix or an eigenvalue stack of shape (..., p)."""
    eigs = _as_eigs(X)
    value = standard_tableaux_count(K) * schur(K, eigs)
    return float(value) if np.ndim(value) == 0 else value


def series_coefficient(spec: HypSeriesSpec, K: Partition) -> float:
    num = math.prod(gen_pochhammer(a, K) for a in spec.a_params)
    den = math.prod(gen_pochhammer(b, K) for b in spec.b_params)
    return num / den


def _check_denominators(spec: HypSeriesSpec, p: int) -> None:
    """Reject b with [b]_K = 0 for some K of weight <= k_max and at most p parts."""
    for b in spec.b_params:
        nearest = round(b)
        if abs(b - nearest) > 1e-12:
            continue
        # Cell (i, j), 0-based, contributes the factor b - i + j.
        for i in range(min(p, spec.k_max)):
            j = i - nearest
            if j >= 0 and (i + 1) * (j + 1) <= spec.k_max:
                raise DomainError(
                    f"denominator parameter b={b} makes [b]_K vanish for a partition of weight <= {spec.k_max}"
                )


def _layer_sums(spec: HypSeriesSpec, eigs) -> tuple[np.ndarray, np.ndarray]:
    """Signed layer sums and the layers of the majorant sum |coef(K)| C̃_K(|X|) / k!.

    s_K has nonnegative monomial coefficients, so |C̃_K(X)| <= C̃_K(|X|) and the
    majorant layers bound every term of degree k in absolute value.
    """
    eigs = _as_eigs(eigs)
    p = eigs.shape[-1]
    _check_denominators(spec, p)
    h = complete_homogeneous(eigs, spec.k_max + p)
    signed = bool(np.any(eigs < 0))
    h_abs = complete_homogeneous(np.abs(eigs), spec.k_max + p) if signed else h
    layers = np.zeros(eigs.shape[:-1] + (spec.k_max + 1,))
    majorant = np.zeros_like(layers)
    for k in range(spec.k_max + 1):
        scale = 1.0 / math.factorial(k)
        for K in partitions_of(k, p):
            coef = series_coefficient(spec, K)
            if coef == 0:
                continue
            weight = standard_tableaux_count(K) * scale
            s = _schur_from_h(K, h)
            s_abs = _schur_from_h(K, h_abs) if signed else np.abs(s)
            layers[..., k] += coef * weight * s
            majorant[..., k] += abs(coef) * weight * s_abs
    return layers, majorant


def hyp_pfq_layers(spec: HypSeriesSpec, eigs) -> np.ndarray:
    """Degree-k layer sums L_k = sum_{K |- k} coef(K) C̃_K / k!, shape (..., k_max + 1)."""
    return _layer_sums(spec, eigs)[0]


def _tail(majorant: np.ndarray, label: str, strict: bool = True) -> np.ndarray:
    mags = majorant[..., -3:]
    # Two vanishing top layers: a terminating polynomial.
    terminated = (mags[..., 2] == 0) & (mags[..., 1] == 0)
    decreasing = (mags[..., 2] < mags[..., 1]) & (mags[..., 1] < mags[..., 0])
    unresolved = ~terminated & ~decreasing
    if strict and np.any(unresolved):
        raise NonconvergentTail(f"{label}: absolute layer sums are not decreasing over the last three degrees")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(terminated | unresolved, 0.0, mags[..., 2] / mags[..., 1])
        tail = np.where(terminated, 0.0, mags[..., 2] * ratio / (1 - ratio))
    return np.where(unresolved, np.inf, tail)


def hyp_pfq_eigs(spec: HypSeriesSpec, eigs: np.ndarray, strict: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised hyp_pfq over an eigenvalue stack (..., p); returns (values, tail_bounds).

    With strict=False an entry whose tail cannot be estimated gets an infinite
    bound instead of raising NonconvergentTail for the whole stack.
    """
    eigs = np.asarray(eigs, dtype=float)
    if spec.bounded and np.any(np.max(np.abs(eigs), axis=-1) >= 1):
        raise NormTooLarge(f"{spec.label()} needs spectral norm < 1")
    layers, majorant = _layer_sums(spec, eigs)
    return layers.sum(axis=-1), _tail(majorant, spec.label(), strict)


def hyp_pfq(spec: HypSeriesSpec, X: HermitianMatrix) -> tuple[float, float]:
    """Truncated rFs(a; b; X) and a last-term-ratio estimate of the omitted tail."""
    value, tail = hyp_pfq_eigs(spec, eigenvalues(X))
    logger.debug(f"{spec.label()} at p={X.p}: {float(value):.12g} (tail {float(tail):.2e})")
    return float(value), float(tail)
