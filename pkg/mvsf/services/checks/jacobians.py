import logging

import numpy as np

from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import MatrixTransform, TransformKind
from mvsf.schemas.result import ResultRow
from mvsf.services.checks._base import FD_RTOL, CheckOptions, case_id, guarded
from mvsf.services.jacobians import random_case, verify_jacobian_fd
from mvsf.services.montecarlo import batch_rng

logger = logging.getLogger(__name__)

STREAM_JACOBIANS = 30
FD_STEP = 1e-5


def _fd_row(label: str, t: MatrixTransform, X) -> ResultRow:
    check = verify_jacobian_fd(t, X, FD_STEP)
    return ResultRow.build(label, check.analytic, check.numeric, tail_bound=FD_RTOL * check.analytic)


def _worst_row(kind: TransformKind, opts: CheckOptions) -> ResultRow:
    """Worst relative error over opts.instances seeded random instances of one lemma."""
    label = case_id("jacobian", kind.value, f"worst-of-{opts.instances}")

    def numeric() -> ResultRow:
        rng = batch_rng(opts.seed, STREAM_JACOBIANS, list(TransformKind).index(kind))
        worst = None
        for _ in range(opts.instances):
            t, X = random_case(kind, rng)
            check = verify_jacobian_fd(t, X, FD_STEP)
            if worst is None or check.rel_err > worst.rel_err:
                worst = check
        logger.info(f"{kind.value}: worst rel_err {worst.rel_err:.2e} over {opts.instances} instances")
        return ResultRow.build(label, worst.analytic, worst.numeric, tail_bound=FD_RTOL * worst.analytic)

    return guarded(label, 0.0, numeric)


def jacobian_rows(opts: CheckOptions) -> list[ResultRow]:
    congruence = MatrixTransform(TransformKind.HERMITIAN_CONGRUENCE, A=np.diag([2.0, 1.0]).astype(complex))
    rows = [
        _fd_row(case_id("jacobian", "congruence", "p2", "diag2-1"), congruence, HermitianMatrix.identity(2)),
        _fd_row(case_id("jacobian", "inverse", "p1", "x2"), MatrixTransform(TransformKind.INVERSE),
                HermitianMatrix.scalar(2.0, 1)),
        _fd_row(case_id("jacobian", "identity", "p2"), MatrixTransform(TransformKind.LINEAR_SANDWICH),
                np.array([[1.0, 2.0 - 1.0j], [0.5j, -1.0]])),
    ]
    rows.extend(_worst_row(kind, opts) for kind in TransformKind)
    return rows
