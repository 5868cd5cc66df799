import math

import numpy as np
from scipy import special

from mvsf.errors import DomainError
from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import HypSeriesSpec
from mvsf.schemas.result import ResultRow
from mvsf.services.checks._base import CheckOptions, case_id, num
from mvsf.services.hermitian import abs_det, random_pd, random_unitary
from mvsf.services.montecarlo import batch_rng
from mvsf.services.zonal import hyp_pfq, partitions_of, zonal_c

STREAM_HYP = 20
ZONAL_RTOL = 1e-10
SERIES_ATOL = 1e-12

# Scalar oracles for rFs at p = 1, keyed by (r, s).
_SCALAR = {
    (0, 0): lambda a, b, x: math.exp(x),
    (1, 0): lambda a, b, x: (1 - x) ** (-a[0]),
    (0, 1): lambda a, b, x: float(special.hyp0f1(b[0], x)),
    (1, 1): lambda a, b, x: float(special.hyp1f1(a[0], b[0], x)),
    (2, 1): lambda a, b, x: float(special.hyp2f1(a[0], a[1], b[0], x)),
}


def _test_matrix(p: int, rng: np.random.Generator, norm: float) -> HermitianMatrix:
    """Hermitian matrix with eigenvalues in (0.05, norm)."""
    q = random_unitary(p, rng)
    w = rng.uniform(0.05, norm, size=p)
    return HermitianMatrix((q * w) @ q.conj().T)


def _series_row(label: str, spec: HypSeriesSpec, X: HermitianMatrix, exact: float) -> ResultRow:
    value, tail = hyp_pfq(spec, X)
    return ResultRow.build(label, exact, value, tail_bound=tail + SERIES_ATOL * max(1.0, abs(exact)))


def identity_rows(opts: CheckOptions, p: int) -> list[ResultRow]:
    """0F0 = etr, 1F0 = det^(-a) and the zonal normalization sum_{K |- k} C̃_K = (tr X)^k."""
    rng = batch_rng(opts.seed, STREAM_HYP, p)
    rows = []

    X = _test_matrix(p, rng, 0.5)
    trace = float(np.trace(X.entries).real)
    rows.append(_series_row(case_id("hyp", "0F0", f"p{p}"), HypSeriesSpec(k_max=opts.kmax), X, math.exp(trace)))

    a = 1.5
    exact = abs_det(HermitianMatrix(np.eye(p) - X.entries)) ** (-a)
    rows.append(_series_row(case_id("hyp", "1F0", f"p{p}", "a", float(a)), HypSeriesSpec((a,), (), k_max=opts.kmax), X, exact))

    Y = random_pd(p, rng)
    trace = float(np.trace(Y.entries).real)
    for k in range(1, 7):
        total = sum(zonal_c(K, Y) for K in partitions_of(k, p))
        target = trace**k
        rows.append(ResultRow.build(case_id("hyp", "zonal-sum", f"k{k}", f"p{p}"), target, total,
                                    tail_bound=ZONAL_RTOL * target))
    return rows


def scalar_row(opts: CheckOptions) -> ResultRow:
    """rFs at p = 1 against the scalar function from scipy."""
    a = tuple(opts.a_params or ())
    b = tuple(opts.b_params or ())
    oracle = _SCALAR.get((len(a), len(b)))
    if oracle is None:
        raise DomainError(f"no scalar oracle for {len(a)}F{len(b)}; supported: 0F0, 1F0, 0F1, 1F1, 2F1")
    x = opts.u if opts.u is not None else 0.5
    spec = HypSeriesSpec(a, b, k_max=opts.kmax)
    label = case_id("hyp", spec.label(), "p1", ";".join(num(v) for v in a + b) or "-", "x", float(x))
    return _series_row(label, spec, HermitianMatrix.scalar(x, 1), oracle(a, b, x))


def hyp_rows(opts: CheckOptions) -> list[ResultRow]:
    if opts.a_params is not None or opts.b_params is not None:
        return [scalar_row(opts)]
    rows = []
    for p in ([opts.p] if opts.p else [1, 2, 3]):
        rows.extend(identity_rows(opts, p))
    gauss = CheckOptions(a_params=(2.0, 1.0), b_params=(3.0,), u=0.5, kmax=60, seed=opts.seed)
    rows.append(scalar_row(gauss))
    return rows
