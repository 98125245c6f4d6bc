"""
Pydantic documents for every structured-text interface of newton_strata.

Rationals are carried as strings "a/b" (or "a"), never as floats.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from newton_strata.settings import SCHEMA_VERSION


class Document(BaseModel):
    """Base for top-level documents; serializes with a leading "schema" field."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2) + "\n"


class RootDatumDocument(Document):
    rank: int = Field(..., ge=1)
    roots: List[List[int]]
    coroots: List[List[int]]
    simple_indices: List[int]
    sigma_permutation: List[int]
    sigma_matrix: List[List[int]]
    name: str = ""
    family: str = ""
    size: int = 0


class AbelianGroupDocument(BaseModel):
    free_rank: int = Field(..., ge=0)
    torsion: List[int]


class ClassDocument(BaseModel):
    label: str
    newton_point: List[str]
    kottwitz_point: List[int]
    break_points: List[List[int]]


class PosetDocument(Document):
    group: str
    mu: List[int]
    pi1: AbelianGroupDocument
    elements: List[ClassDocument]
    hasse: List[Tuple[int, int]]
    b_min: int
    b_max: int


class StrataRowDocument(BaseModel):
    newton_point: List[str]
    kottwitz_point: List[int]
    defect: int
    dim_stratum: int
    codim: int
    dim_central_leaf: int
    dim_rz: int


class StrataReportDocument(Document):
    group: str
    mu: List[int]
    dim_deformation_space: int
    rows: List[StrataRowDocument]


class OrbitPairingDocument(BaseModel):
    orbit: List[List[int]]
    r_c_count: int
    negative_pairing_sum: str
    pairs: List[Tuple[List[int], List[int]]]


class RootSetsDocument(Document):
    group: str
    mu_prime: List[int]
    w: List[int]
    nu: List[str]
    r_mu: List[List[int]]
    r_nu: List[List[int]]
    r_mu_nu: List[List[int]]
    r_c: List[List[int]]
    orbits: List[OrbitPairingDocument] = Field(default_factory=list)


class MatrixDocument(Document):
    """A square matrix over W(F_{p^s})/p^N; entries are coefficient arrays of length s."""

    p: int = Field(..., ge=2)
    precision: int = Field(..., ge=1)
    degree: int = Field(..., ge=1)
    modulus: List[int]
    entries: List[List[List[int]]]


class SlopesDocument(Document):
    slopes: List[str]
    kappa: int
    precision: int


class SuiteResultDocument(BaseModel):
    name: str
    passed: bool
    cases: int
    failures: List[str] = Field(default_factory=list)


class CheckReportDocument(Document):
    passed: bool
    suites: List[SuiteResultDocument]
    seed: Optional[int] = None
