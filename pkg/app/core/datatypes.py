from typing import Any

from typing_extensions import Literal, NotRequired, TypedDict


FamilyTag = Literal["ALL", "A1", "A2"]
Direction = Literal["lower", "upper"]
TripleKind = Literal["general", "special"]


class OutputRecord(TypedDict):
    schema_version: int
    command: str
    payload: Any


class CountRecord(TypedDict):
    n: int
    a: int


class FamilyStatsRecord(TypedDict):
    n: int
    family: FamilyTag
    total: int
    palindromes: int
    pairs: int


class SquareRecord(TypedDict):
    start: int
    half: int


class WitnessRecord(TypedDict):
    word: str
    blocks: list[str]
    square: SquareRecord | None


class VerdictRecord(TypedDict):
    n: int
    valid: bool
    checked: int
    mode: NotRequired[str]
    witness: NotRequired[WitnessRecord]


class CatalogRecord(TypedDict):
    n: int
    family: FamilyTag
    b_p: int
    b_n: int
    palindromes: list[str]
    pair_reps: list[str]


class HypergraphRecord(TypedDict):
    n: int
    family: FamilyTag
    vertices: int
    pair_edges: int
    t: int


class OptimumRecord(TypedDict):
    k_p: int
    k_n: int
    k: int
    palindromes: list[str]
    pair_reps: list[str]


class SearchRowRecord(TypedDict):
    n: int
    family: FamilyTag
    a: int
    a_f: int
    a_fp: int
    a_fn: int
    b_fp: int
    b_fn: int
    t_f: int
    signature: list[int] | None
    k_opt: int | None


class BoundRecord(TypedDict):
    direction: Direction
    base: int
    denominator: int
    decimal: float
    provenance: dict[str, int]


class TripleDocument(TypedDict):
    n: int
    kind: TripleKind
    b0: NotRequired[list[str]]
    b1: NotRequired[list[str]]
    b2: NotRequired[list[str]]
    family: NotRequired[FamilyTag]
    palindromes: NotRequired[list[str]]
    pair_reps: NotRequired[list[str]]


class Search211Record(TypedDict):
    n: int
    found: bool
    checked: int
    b0: NotRequired[list[str]]
    b1: NotRequired[list[str]]
    b2: NotRequired[list[str]]


class SubstitutionRecord(TypedDict):
    word: str
    image: str
    choices: list[int]
    length: int
    square_free: bool


class GeneratorSetSummary(TypedDict):
    name: str
    n: int
    family: FamilyTag
    signature: list[int]
    k: int
