from typing import Optional

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from errors import ConfigError
from field_service.galois_field import degree_of_order, is_irreducible, poly_degree
from geometry_service.projective_space import GeometryIndex, get_index
from settings import get_settings


class RunConfig(BaseModel):
    """Arguments shared by every command and endpoint, validated against the settings."""

    q: int
    modulus: Optional[str] = None  # hex, e.g. "13" for x^4+x+1
    workers: Optional[int] = None
    witnessCap: Optional[int] = None

    @field_validator("q")
    @classmethod
    def check_q(cls, q: int) -> int:
        degree_of_order(q)
        q_max = get_settings().q_max
        if q > q_max:
            raise ValueError(f"q={q} exceeds GEOM_Q_MAX={q_max}")
        return q

    @field_validator("workers")
    @classmethod
    def check_workers(cls, workers: Optional[int]) -> Optional[int]:
        if workers is not None and workers < 1 and workers != -1:
            raise ValueError("workers must be >= 1, or -1 for every core")
        return workers

    @field_validator("witnessCap")
    @classmethod
    def check_cap(cls, cap: Optional[int]) -> Optional[int]:
        if cap is not None and cap < 0:
            raise ValueError("witness cap must be >= 0")
        return cap

    @model_validator(mode="after")
    def check_modulus(self) -> "RunConfig":
        if self.modulus is None:
            return self
        try:
            bits = int(self.modulus, 16)
        except ValueError:
            raise ValueError(f"modulus '{self.modulus}' is not a hex polynomial") from None
        degree = degree_of_order(self.q)
        if poly_degree(bits) != degree or not is_irreducible(bits):
            raise ValueError(f"modulus {self.modulus} is not an irreducible polynomial of degree {degree}")
        return self

    @classmethod
    def build(cls, **values) -> "RunConfig":
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError("; ".join(err["msg"] for err in e.errors())) from None

    @property
    def modulus_bits(self) -> Optional[int]:
        return None if self.modulus is None else int(self.modulus, 16)

    @property
    def n_jobs(self) -> int:
        return get_settings().n_jobs if self.workers is None else self.workers

    @property
    def witness_cap(self) -> int:
        return get_settings().witness_cap if self.witnessCap is None else self.witnessCap

    def index(self) -> GeometryIndex:
        return get_index(self.q, self.modulus_bits, self.n_jobs)
