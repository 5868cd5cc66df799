from mvsf.models.params import MatrixGammaParams
from mvsf.schemas.result import ResultRow
from mvsf.services.checks._base import CheckOptions, case_id, mc_row
from mvsf.services.sampler import normalization_check, sample_mean

_DEFAULT_ALPHA = {1: 2.0, 2: 3.0, 3: 4.0}


def sample_rows(opts: CheckOptions) -> list[ResultRow]:
    """Density normalization and componentwise mean E[X] = alpha I of the sampler at B = I."""
    orders = [opts.p] if opts.p else [1, 2, 3]
    rows = []
    for p in orders:
        alpha = opts.alpha if opts.alpha is not None else _DEFAULT_ALPHA[p]
        params = MatrixGammaParams.standard(alpha, p)
        rows.append(mc_row(case_id("sample", "normalization", f"p{p}", "a", alpha), 1.0,
                           lambda params=params: normalization_check(params, opts.mc())))
        rows.extend(_mean_rows(opts, params))
    return rows


def _mean_rows(opts: CheckOptions, params: MatrixGammaParams) -> list[ResultRow]:
    p, alpha = params.p, params.alpha
    mean, err = sample_mean(params, opts.mc())
    rows = []
    for i in range(p):
        for j in range(i + 1):
            target = alpha if i == j else 0.0
            parts = [("re", mean[i, j].real, err[i, j].real)]
            if i != j:
                parts.append(("im", mean[i, j].imag, err[i, j].imag))
            for tag, value, se in parts:
                label = case_id("sample", "mean", f"p{p}", "a", alpha, f"x{i + 1}{j + 1}", tag)
                rows.append(ResultRow.build(label, target, float(value), std_error=float(se)))
    return rows
