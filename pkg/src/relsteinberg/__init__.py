"""Relative Steinberg groups over finite rings: relation catalogs, root
elimination, simply laced presentations and transvection quotients, all
checked by exact evaluation in finite semidirect rings."""
from __future__ import annotations

from .chevalley import (
    CHEVALLEY_IDS,
    ChevalleyContext,
    build_constants,
    chevalley_instance,
    embed_subsystem,
    random_chevalley_instances,
    verify_chevalley_instance,
    verify_n_rel,
)
from .conjugation import conjugation_form
from .context import LinearContext
from .elimination import F_alpha, G_alpha, merge_context, relativize_xi, relativize_zeta
from .evaluation import eval_symbol, eval_word, unipotent_factorization, verify_instance
from .quotients import AbelianPresentation, ft_presentation, verify_quotient_map
from .relations import GROUP_IDS, RelationInstance, random_instances, relation_instance
from .rings import (
    CrossedModule,
    FiniteRing,
    cyclic,
    diagonal_family,
    homotope,
    ideal_inclusion,
    matrix_crossed_module,
    matrix_ring,
    scalar_ideal,
    semidirect,
)
from .roots import RootDatum
from .snf import SNFResult, smith_normal_form
from .words import EMPTY, X, Z, ZC, Word, word

__version__ = "0.1.0"

__all__ = [
    "CHEVALLEY_IDS", "ChevalleyContext", "build_constants", "chevalley_instance", "embed_subsystem",
    "random_chevalley_instances", "verify_chevalley_instance", "verify_n_rel", "conjugation_form",
    "LinearContext", "F_alpha", "G_alpha", "merge_context", "relativize_xi", "relativize_zeta",
    "eval_symbol", "eval_word", "unipotent_factorization", "verify_instance", "AbelianPresentation",
    "ft_presentation", "verify_quotient_map", "GROUP_IDS", "RelationInstance", "random_instances",
    "relation_instance", "CrossedModule", "FiniteRing", "cyclic", "diagonal_family", "homotope",
    "ideal_inclusion", "matrix_crossed_module", "matrix_ring", "scalar_ideal", "semidirect",
    "RootDatum", "SNFResult", "smith_normal_form", "EMPTY", "X", "Z", "ZC", "Word", "word",
]
