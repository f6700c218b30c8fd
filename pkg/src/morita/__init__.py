"""Finite groupoids up to Morita equivalence, with pi_0 and pi_1 computed
through exact integer algebra."""

from .bibundle import (Bibundle, MoritaResult, bibundle_iso_search, bundle_from_functor,
                       inverse_bibundle, is_biprincipal, is_principal, morita_equivalent, tensor,
                       unit_bundle)
from .cocycle import (Cocycle, GridCover, cech_groupoid, coboundary, cocycle_to_bundle,
                      lift_cocycle, pushforward, validate_cocycle)
from .fpgroup import (GroupPresentation, PresentationMap, abelianization, hom_count,
                      hom_signature, probably_isomorphic, simplify, smith_normal_form)
from .groupoid import (FiniteGroupoid, GroupoidFunctor, SetAction, group_as_groupoid, isotropy,
                       is_weak_equivalence, orbits, pair_groupoid, point_groupoid,
                       translation_groupoid, validate_groupoid)
from .groups import FiniteGroup, cyclic, dihedral, symmetric
from .homotopy import (BorelModel, Report, check_eff_sequence, check_example4_sequence,
                       eff_translation, pi0, pi1_finite, pi1_nerve)
from .simplicial import (ComplexAction, SimplicialComplex, pi1_presentation,
                         quotient_by_free_action)

__version__ = "0.1.0"
