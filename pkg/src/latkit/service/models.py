'''Request and response shapes for the HTTP service.

The lattice wire format matches the JSON module: elements are labels,
covers are [lower, upper] index pairs.
'''

from typing import Any, Optional

from pydantic import BaseModel, Field

from ..order import FiniteLattice, FinitePoset


class LatticeModel(BaseModel):
    elements: list[str]
    covers: list[tuple[int, int]]
    name: Optional[str] = None

    @classmethod
    def from_poset(cls, lat: FinitePoset) -> 'LatticeModel':
        import numpy as np
        pairs = sorted((int(i), int(j)) for i, j in np.argwhere(lat.covers))
        return cls(elements=list(lat.labels), covers=pairs, name=lat.name)

    def to_lattice(self) -> FiniteLattice:
        return FiniteLattice.from_covers(self.elements, self.covers,
                                         name=self.name)


class GenRequest(BaseModel):
    kind: str
    n: Optional[int] = None
    size: Optional[int] = None
    seed: int = 0


class GenResponse(BaseModel):
    lattice: LatticeModel


class OpRequest(BaseModel):
    op: str
    lattices: list[LatticeModel] = Field(min_length=1, max_length=2)
    guard: Optional[int] = None


class OpResponse(BaseModel):
    lattice: Optional[LatticeModel] = None
    meta: dict = Field(default_factory=dict)


class CheckRequest(BaseModel):
    prop: str
    lattices: list[LatticeModel] = Field(min_length=1, max_length=2)
    mapping: Optional[list[int]] = None
    guard: Optional[int] = None


class CheckResponse(BaseModel):
    verdict: bool
    report: dict = Field(default_factory=dict)


class VerifyRequest(BaseModel):
    suite: str
    seed: int = 0
    max_size: int = 5
    samples: int = 20
    guard: Optional[int] = None
    workers: Optional[int] = None


class VerifyResponse(BaseModel):
    records: list[dict]


class ErrorModel(BaseModel):
    error: str
    message: str
    witness: Any = None
