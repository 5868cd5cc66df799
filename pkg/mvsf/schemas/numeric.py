from pydantic import BaseModel, Field

from mvsf.config import settings


class QuadratureSpec(BaseModel):
    nodes_per_axis: int = Field(default_factory=lambda: settings.QUAD_NODES, ge=16)
    radial_truncation: float = Field(default_factory=lambda: settings.RADIAL_TRUNCATION, ge=30.0)

    model_config = {"frozen": True}


class McConfig(BaseModel):
    samples: int = Field(default_factory=lambda: settings.SAMPLES, ge=10_000)
    seed: int = Field(default_factory=lambda: settings.SEED, ge=0, lt=2**64)
    batch_size: int = Field(default_factory=lambda: settings.BATCH_SIZE, ge=1)

    model_config = {"frozen": True}

    def batch_sizes(self) -> list[int]:
        """Sizes of the batches; the last one is partial when samples % batch_size != 0."""
        full, rest = divmod(self.samples, self.batch_size)
        return [self.batch_size] * full + ([rest] if rest else [])


class McEstimate(BaseModel):
    value: float
    std_error: float = Field(ge=0.0)
    n: int

    model_config = {"frozen": True}

    def within(self, target: float, k: float = 3.0, slack: float = 0.0) -> bool:
        return abs(self.value - target) <= k * self.std_error + slack
