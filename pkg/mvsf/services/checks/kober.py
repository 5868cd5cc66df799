from mvsf.errors import DomainError
from mvsf.models.matrices import HermitianMatrix
from mvsf.models.params import HypSeriesSpec, IntegrandDescriptor, KoberKind, KoberRequest
from mvsf.schemas.result import ResultRow
from mvsf.services.checks._base import P1_KOBER_ATOL, CheckOptions, case_id, guarded, num
from mvsf.services.kober import kober_closed, kober_numeric

CASES = ("power", "case1", "case2", "case3", "case4")

# Default (alpha, beta, gamma, delta, u) per case.
_DEFAULTS = {
    "power": (2.0, 2.0, 2.0, 0.0, 1.0),
    "case1": (2.0, 1.0, 1.0, 0.0, 0.5),
    "case2": (2.0, 1.0, 0.5, 0.0, 0.3),
    "case3": (2.0, 1.0, 1.0, 1.0, 0.4),
    "case4": (2.0, 0.0, 0.0, 0.0, 0.5),
}


def _pick(value, default):
    return default if value is None else value


def resolve_case(opts: CheckOptions) -> str:
    case = opts.case or ("power" if opts.kind == 2 else "case1")
    if case not in CASES:
        raise DomainError(f"unknown Kober case {case!r}; expected one of {', '.join(CASES)}")
    if opts.kind is not None and (opts.kind == 2) != (case == "power"):
        raise DomainError("--case power goes with --kind 2, case1..case4 with --kind 1")
    return case


def build_request(opts: CheckOptions) -> KoberRequest:
    case = resolve_case(opts)
    d_alpha, d_beta, d_gamma, d_delta, d_u = _DEFAULTS[case]
    p = opts.p or 2
    alpha, beta = _pick(opts.alpha, d_alpha), _pick(opts.beta, d_beta)
    gamma, delta = _pick(opts.gamma, d_gamma), _pick(opts.delta, d_delta)
    U = HermitianMatrix.scalar(_pick(opts.u, d_u), p)

    if case == "power":
        f = IntegrandDescriptor.det_power_neg(gamma)
    elif case == "case1":
        f = IntegrandDescriptor.det_power(gamma)
    elif case == "case2":
        f = IntegrandDescriptor.det_one_minus_power(gamma)
    elif case == "case3":
        f = IntegrandDescriptor.det_power_times_one_minus(gamma, delta)
    else:
        series = HypSeriesSpec(opts.a_params or (), opts.b_params or (), k_max=opts.kmax)
        f = IntegrandDescriptor.hyp_series(series)

    kind = KoberKind.SECOND if case == "power" else KoberKind.FIRST
    return KoberRequest(kind, alpha, beta, f, U)


def _label(case: str, req: KoberRequest) -> str:
    parts = ["kober", case, f"p{req.p}", "a", req.alpha, "b", req.beta]
    if case in ("power", "case1", "case2", "case3"):
        parts += ["g", req.f.gamma]
    if case == "case3":
        parts += ["d", req.f.delta]
    if case == "case4":
        parts += [req.f.series.label(), ";".join(num(x) for x in req.f.series.a_params + req.f.series.b_params) or "-"]
    parts += ["u", float(req.U.entries[0, 0].real)]
    return case_id(*parts)


def kober_rows(opts: CheckOptions) -> list[ResultRow]:
    """Closed form of one special case against direct evaluation of the operator."""
    case = resolve_case(opts)
    req = build_request(opts)
    closed, tail = kober_closed(req, opts.kmax)
    label = _label(case, req)
    slack = P1_KOBER_ATOL if req.p == 1 else 0.0

    def numeric() -> ResultRow:
        est = kober_numeric(req, opts.mc())
        return ResultRow.build(label, closed, est.value, std_error=est.std_error, tail_bound=tail + slack)

    return [guarded(label, closed, numeric)]


def _lattice_row(label: str, left: KoberRequest, right: KoberRequest, k_max: int) -> ResultRow:
    a, tail_a = kober_closed(left, k_max)
    b, tail_b = kober_closed(right, k_max)
    return ResultRow.build(label, a, b, tail_bound=tail_a + tail_b)


def lattice_rows(opts: CheckOptions) -> list[ResultRow]:
    """Case 3 at delta = 0 is case 1, at gamma = 0 case 2; case 4 with 1F0(gamma) is case 2."""
    p = opts.p or 2
    alpha, beta, gamma, delta, u = 2.0, 1.0, 0.7, 0.6, 0.4
    U = HermitianMatrix.scalar(u, p)
    first = KoberKind.FIRST

    def req(f: IntegrandDescriptor) -> KoberRequest:
        return KoberRequest(first, alpha, beta, f, U)

    one_f_zero = HypSeriesSpec((gamma,), (), k_max=opts.kmax)
    return [
        _lattice_row(case_id("kober", "lattice", "case3-d0", f"p{p}"),
                     req(IntegrandDescriptor.det_power_times_one_minus(gamma, 0.0)),
                     req(IntegrandDescriptor.det_power(gamma)), opts.kmax),
        _lattice_row(case_id("kober", "lattice", "case3-g0", f"p{p}"),
                     req(IntegrandDescriptor.det_power_times_one_minus(0.0, delta)),
                     req(IntegrandDescriptor.det_one_minus_power(delta)), opts.kmax),
        _lattice_row(case_id("kober", "lattice", "case4-1F0", f"p{p}"),
                     req(IntegrandDescriptor.hyp_series(one_f_zero)),
                     req(IntegrandDescriptor.det_one_minus_power(gamma)), opts.kmax),
    ]
