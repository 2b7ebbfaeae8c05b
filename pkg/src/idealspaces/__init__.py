"""Spaces of ideals of staged transitive relations on the naturals.

Points are enumerations of ideals, queries are fuel-bounded and answer Yes
or Unknown, and maps between spaces are given by codes.
"""

from .codes import FnCode, Pi2Code, StagedFamily, StagedSet, apply_code, compose_codes, identity_code
from .ideal import (Chain, IdealStream, basis_witness, chain_from_ideal, fingen, ideal_from_chain,
                    member, validate_prefix)
from .relation import Answer, QueryResult, StagedRelation, builtin, finite_relation, holds
from .specs import Loader, SpecError

__version__ = "0.1.0"

__all__ = [
    "Answer", "Chain", "FnCode", "IdealStream", "Loader", "Pi2Code", "QueryResult", "SpecError",
    "StagedFamily", "StagedRelation", "StagedSet", "apply_code", "basis_witness", "builtin",
    "chain_from_ideal", "compose_codes", "finite_relation", "fingen", "holds", "identity_code",
    "ideal_from_chain", "member", "validate_prefix",
]
