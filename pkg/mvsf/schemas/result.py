from pydantic import BaseModel, Field

ABS_FLOOR = 1e-9

COLUMNS = ("case_id", "closed_form", "numeric", "std_error", "tail_bound", "rel_diff", "pass")


class ResultRow(BaseModel):
    case_id: str
    closed_form: float
    numeric: float
    std_error: float = Field(ge=0.0)
    tail_bound: float = Field(ge=0.0)
    rel_diff: float
    passed: bool = Field(alias="pass")

    model_config = {"frozen": True, "populate_by_name": True, "allow_inf_nan": False}

    @classmethod
    def build(
        cls,
        case_id: str,
        closed_form: float,
        numeric: float,
        std_error: float = 0.0,
        tail_bound: float = 0.0,
    ) -> "ResultRow":
        diff = abs(closed_form - numeric)
        rel_diff = diff / abs(closed_form) if closed_form != 0 else diff
        passed = bool(diff <= 3.0 * std_error + tail_bound + ABS_FLOOR)
        return cls(
            case_id=case_id,
            closed_form=closed_form,
            numeric=numeric,
            std_error=std_error,
            tail_bound=tail_bound,
            rel_diff=rel_diff,
            passed=passed,
        )

    @classmethod
    def failed(cls, case_id: str, closed_form: float) -> "ResultRow":
        """Row for a case whose numeric side raised instead of producing a value."""
        return cls(
            case_id=case_id,
            closed_form=closed_form,
            numeric=0.0,
            std_error=0.0,
            tail_bound=0.0,
            rel_diff=1.0,
            passed=False,
        )
