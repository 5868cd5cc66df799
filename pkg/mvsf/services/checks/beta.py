import math

from mvsf.models.params import BetaArgs
from mvsf.schemas.result import ResultRow
from mvsf.services import integrate
from mvsf.services.checks._base import CheckOptions, case_id, guarded, mc_row, quadrature_row
from mvsf.services.integrate import BetaRepresentation
from mvsf.services.multigamma import complex_matrix_beta, real_matrix_beta


def _equivalence_row(opts: CheckOptions, p: int, alpha: float, beta: float) -> ResultRow:
    """Type-1 and type-2 estimators against each other, pooled standard error."""
    case = case_id("beta", "equivalence", f"p{p}", "a", alpha, "b", beta)

    def numeric() -> ResultRow:
        one = integrate.mc_beta_integral(p, alpha, beta, BetaRepresentation.TYPE1, opts.mc())
        two = integrate.mc_beta_integral(p, alpha, beta, BetaRepresentation.TYPE2, opts.mc())
        pooled = math.hypot(one.std_error, two.std_error)
        return ResultRow.build(case, one.value, two.value, std_error=pooled)

    return guarded(case, complex_matrix_beta(BetaArgs(alpha, beta, p)), numeric)


def beta_rows(opts: CheckOptions) -> list[ResultRow]:
    """Closed-form matrix beta against quadrature (p <= 2) and both MC representations."""
    p = opts.p or 2
    alpha = opts.alpha if opts.alpha is not None else 2.0
    beta = opts.beta if opts.beta is not None else 2.0
    closed = complex_matrix_beta(BetaArgs(alpha, beta, p))
    rows = []

    if p == 1:
        rows.append(quadrature_row(case_id("beta", "scalar", "p1", "a", alpha, "b", beta, "quad"), closed,
                                   lambda: integrate.beta_integral_p1(alpha, beta)))
    elif p == 2:
        rows.append(quadrature_row(case_id("beta", "complex", "p2", "a", alpha, "b", beta, "quad"), closed,
                                   lambda: integrate.beta_integral_complex_p2(alpha, beta, opts.quad())))
        real_closed = real_matrix_beta(BetaArgs(alpha, beta, 2))
        rows.append(quadrature_row(case_id("beta", "real", "p2", "a", alpha, "b", beta, "quad"), real_closed,
                                   lambda: integrate.beta_integral_real_p2(alpha, beta, opts.quad())))

    for rep in BetaRepresentation:
        rows.append(mc_row(case_id("beta", "complex", f"p{p}", "a", alpha, "b", beta, rep.value), closed,
                           lambda rep=rep: integrate.mc_beta_integral(p, alpha, beta, rep, opts.mc())))
    rows.append(_equivalence_row(opts, p, alpha, beta))
    return rows


def real_beta_rows(opts: CheckOptions, alpha: float, beta: float) -> list[ResultRow]:
    """Real-case p = 2 quadrature only (real parameters may sit below the complex domain)."""
    closed = real_matrix_beta(BetaArgs(alpha, beta, 2))
    return [quadrature_row(case_id("beta", "real", "p2", "a", alpha, "b", beta, "quad"), closed,
                           lambda: integrate.beta_integral_real_p2(alpha, beta, opts.quad()))]
