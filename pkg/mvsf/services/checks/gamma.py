from mvsf.models.params import GammaArg
from mvsf.schemas.result import ResultRow
from mvsf.services import integrate
from mvsf.services.checks._base import CheckOptions, case_id, mc_row, quadrature_row
from mvsf.services.multigamma import complex_multigamma, real_multigamma


def gamma_rows(opts: CheckOptions) -> list[ResultRow]:
    """Closed-form multigamma against quadrature (p <= 2) and Monte Carlo (p <= 3)."""
    p = opts.p or 2
    alpha = opts.alpha if opts.alpha is not None else 3.0
    closed = complex_multigamma(GammaArg(alpha, p))
    rows = []

    if p == 1:
        rows.append(quadrature_row(case_id("gamma", "scalar", "p1", "a", alpha, "quad"), closed,
                                   lambda: integrate.gamma_integral_p1(alpha)))
    elif p == 2:
        rows.append(quadrature_row(case_id("gamma", "complex", "p2", "a", alpha, "quad"), closed,
                                   lambda: integrate.gamma_integral_complex_p2(alpha, opts.quad())))
        real_closed = real_multigamma(GammaArg(alpha, 2))
        rows.append(quadrature_row(case_id("gamma", "real", "p2", "a", alpha, "quad"), real_closed,
                                   lambda: integrate.gamma_integral_real_p2(alpha, opts.quad())))

    rows.append(mc_row(case_id("gamma", "complex", f"p{p}", "a", alpha, "mc"), closed,
                       lambda: integrate.mc_gamma_integral(p, alpha, opts.mc())))
    return rows


def real_gamma_rows(opts: CheckOptions, alpha: float) -> list[ResultRow]:
    closed = real_multigamma(GammaArg(alpha, 2))
    return [quadrature_row(case_id("gamma", "real", "p2", "a", alpha, "quad"), closed,
                           lambda: integrate.gamma_integral_real_p2(alpha, opts.quad()))]
