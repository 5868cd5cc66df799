"""Verification-row dispatcher: one builder per CLI verb."""

import logging
from collections.abc import Callable
from dataclasses import replace

from mvsf.schemas.result import ResultRow
from mvsf.services.checks._base import CheckOptions

logger = logging.getLogger(__name__)


def _gamma(opts: CheckOptions) -> list[ResultRow]:
    from mvsf.services.checks.gamma import gamma_rows
    return gamma_rows(opts)


def _beta(opts: CheckOptions) -> list[ResultRow]:
    from mvsf.services.checks.beta import beta_rows
    return beta_rows(opts)


def _kober(opts: CheckOptions) -> list[ResultRow]:
    from mvsf.services.checks.kober import kober_rows
    return kober_rows(opts)


def _hyp(opts: CheckOptions) -> list[ResultRow]:
    from mvsf.services.checks.hyp import hyp_rows
    return hyp_rows(opts)


def _sample(opts: CheckOptions) -> list[ResultRow]:
    from mvsf.services.checks.sample import sample_rows
    return sample_rows(opts)


def _jacobians(opts: CheckOptions) -> list[ResultRow]:
    from mvsf.services.checks.jacobians import jacobian_rows
    return jacobian_rows(opts)


def _verify_all(opts: CheckOptions) -> list[ResultRow]:
    """Every suite at the parameters of the acceptance checks."""
    from mvsf.services.checks.beta import beta_rows, real_beta_rows
    from mvsf.services.checks.gamma import gamma_rows, real_gamma_rows
    from mvsf.services.checks.kober import CASES, kober_rows, lattice_rows

    defaults = replace(
        opts, kind=None, alpha=None, beta=None, gamma=None, delta=None, u=None, a_params=None, b_params=None
    )
    rows = []
    for p, alpha in ((1, 2.0), (2, 3.0), (3, 4.0)):
        rows += gamma_rows(replace(opts, p=p, alpha=alpha))
    rows += real_gamma_rows(opts, 2.0)

    for p, alpha, beta in ((1, 1.0, 1.0), (2, 2.0, 2.0)):
        rows += beta_rows(replace(opts, p=p, alpha=alpha, beta=beta))
    rows += real_beta_rows(opts, 1.5, 1.5)

    for p in (1, 2):
        for case in CASES:
            rows += kober_rows(replace(defaults, p=p, case=case))
        rows += lattice_rows(replace(defaults, p=p))

    rows += _hyp(replace(defaults, p=None))
    rows += _sample(replace(defaults, p=None))
    rows += _jacobians(replace(opts, instances=max(opts.instances, 200)))
    return rows


CHECKS: dict[str, Callable[[CheckOptions], list[ResultRow]]] = {
    "gamma": _gamma,
    "beta": _beta,
    "kober": _kober,
    "hyp": _hyp,
    "sample": _sample,
    "verify-jacobians": _jacobians,
    "verify-all": _verify_all,
}


def run_check(verb: str, opts: CheckOptions) -> list[ResultRow]:
    """Rows of one verb, sorted by case_id."""
    builder = CHECKS.get(verb)
    if builder is None:
        raise ValueError(f"Unknown verb: {verb}. Supported: {', '.join(CHECKS)}")
    rows = builder(opts)
    failed = sum(not r.passed for r in rows)
    logger.info(f"{verb}: {len(rows)} rows, {failed} failing")
    return sorted(rows, key=lambda r: r.case_id)
