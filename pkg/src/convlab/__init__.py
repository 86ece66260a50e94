"""Exact construction and certification of MDP and strongly MDS convolutional
codes over finite fields."""

from __future__ import annotations

from .convcode import CodeParams, ConvCode, Infeasible, column_distance_oracle, free_distance_oracle
from .gf import GF, FieldElem, field_make
from .lsys import Realization, code_from_realization, markov
from .matrix import Mat
from .polymat import PolyMat
from .realize import MarkovSeq, complete_FM, minimal_degree, partial_realization, verify_realization
from .search import SearchConfig, SearchResult, search
from .toeplitz import certify_MDP, certify_sMDS

__version__ = "1.0.0"

__all__ = [
    "CodeParams", "ConvCode", "Infeasible", "column_distance_oracle", "free_distance_oracle",
    "GF", "FieldElem", "field_make", "Realization", "code_from_realization", "markov", "Mat",
    "PolyMat", "MarkovSeq", "complete_FM", "minimal_degree", "partial_realization",
    "verify_realization", "SearchConfig", "SearchResult", "search", "certify_MDP", "certify_sMDS",
]
