"""Semiprimitive permutation groups: analysis, construction and verification."""

from __future__ import annotations

from .action import TransitiveAction, action_of_transitive_group, make_action, quotient_action, regular_action
from .analysis import (
    classify_it_type,
    classify_structure,
    cent_hom,
    faithful_quotient_criterion,
    is_semiprimitive,
    plinth_report,
    property_checks,
    sp_predicates,
)
from .config import DEFAULT_CAPS, Caps
from .errors import *  # noqa: F401,F403
from .glue import decompose_glued, find_glue_mu, glue_actions
from .group import Homomorphism, PermGroup, Subgroup, coset_action, core, intersection
from .iso import is_perm_isomorphic
from .lattice import normal_subgroups
from .perm import Permutation, parse_cycles
from .triples import (
    GroupWithElements,
    SemiprimitiveTriple,
    build_from_triple,
    extract_triple,
    find_gluing_isomorphism,
    triple_product,
    validate_triple,
)
from .wreath import WreathSpec, wreath_build, wreath_sp_criterion

__version__ = "0.1.0"
