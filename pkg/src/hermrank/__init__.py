"""Exact degenerate Kähler, Hermitian lcK and pluri-closed ranks of nilpotent Lie algebras."""

from .engine import DEFAULT_SWEEP, RankReport, hlck_rank, kahler_rank, rank, skt_rank
from .gaussian import GaussianRational
from .structures import (
    AlgebraInstance,
    DomainError,
    FamilyParams,
    SalamonError,
    instance_from_json,
    instance_from_salamon,
    instantiate_family,
    parse_salamon,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SWEEP",
    "AlgebraInstance",
    "DomainError",
    "FamilyParams",
    "GaussianRational",
    "RankReport",
    "SalamonError",
    "hlck_rank",
    "instance_from_json",
    "instance_from_salamon",
    "instantiate_family",
    "kahler_rank",
    "parse_salamon",
    "rank",
    "skt_rank",
]
