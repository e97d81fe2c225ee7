from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Family = Literal["case1", "case2", "random", "vertex"]


class SweepConfig(BaseModel):
    """One resource sweep: a channel family over a parameter grid or a random sample."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2)
    family: Family
    param_grid: Optional[List[float]] = None
    sample_count: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(ge=0)
    output_path: Optional[str] = None

    @model_validator(mode="after")
    def grid_in_family_domain(self):
        if self.family == "random":
            if self.sample_count is None:
                raise ValueError("family 'random' needs a sample count")
            return self
        if not self.param_grid:
            raise ValueError(f"family '{self.family}' needs a non-empty parameter grid")
        if self.family == "case2" and self.n < 3:
            raise ValueError("family 'case2' needs n >= 3")
        if self.family == "vertex":
            if any(not float(tau).is_integer() or not 0 <= tau <= self.n - 1 for tau in self.param_grid):
                raise ValueError(f"vertex parameters must be integers in [0, {self.n - 1}]")
        elif any(not 0.0 <= value <= 1.0 for value in self.param_grid):
            raise ValueError(f"family '{self.family}' parameters must lie in [0, 1]")
        return self


class ImperfectGrid(BaseModel):
    """Qutrit channel amplitudes a_0 for the noise and imperfect-teleportation curves."""

    a0_grid: List[float] = Field(min_length=1)
    samples: int = Field(ge=1)
    seed: int = Field(ge=0)

    @model_validator(mode="after")
    def a0_in_range(self):
        upper = 1.0 / np.sqrt(3.0) + 1e-15
        if any(not 0.0 <= a0 <= upper for a0 in self.a0_grid):
            raise ValueError("a0 must lie in [0, 1/sqrt(3)]")
        return self
