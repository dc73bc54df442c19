"""Contractibility certificates for conjugation quotients of p-subgroup chains.

For a concrete finite group and a prime p, this package builds the quotient
of the chain complex of nontrivial p-subgroups (members normal in the chain
top) by conjugation, pairs its cells into a discrete Morse matching with a
single critical vertex, certifies the matching digraph acyclic, executes the
implied sequence of elementary collapses down to the Sylow vertex, and
independently confirms trivial reduced integer homology for both this
quotient and the unrestricted-chain quotient.
"""

from .groups import (AlreadySylow, DegreeMismatch, EmptyChain, NotSubgroup,
                     ParseError, PermGroup, Permutation, SizeLimit, Subgroup,
                     all_p_subgroups, chain_normalizer, conjugate_subgroup,
                     enumerate_group, is_p_power, is_sylow_in, iter_mask,
                     normalizer, normalizer_within, parse_generators,
                     parse_permutation, sylow_extension, valuation)
from .families import (FAMILIES, PARAMETRIC, family_generators,
                       family_order)
from .complexes import (EmptyComplex, OrbitCell, QuotientComplex,
                        build_chains, build_poset_quotient, build_quotient,
                        canonical_orbit_rep, orbit_soundness_check,
                        verify_simplicial_identities)
from .morse import (COLLAPSIBLE, CRITICAL, REDUNDANT, AcyclicityCertificate,
                    BoundViolated, CollapseSchedule, MatchingFailure,
                    MorseDigraph, MorseMatching, StuckCollapse,
                    build_digraph, build_matching, check_acyclic,
                    check_height_discipline, classify_cells, classify_chain,
                    collapse_schedule, height, longest_alternating_path,
                    representative_independence_test, validate_matching)
from .homology import (BoundaryCheckFailed, HomologyProfile,
                       IntegerChainComplex, boundary_matrices,
                       cross_check_quotients, quotient_homology,
                       reduced_homology, smith_normal_form)
from .cli import GroupSpec, PipelineOptions, Report, parse_group_spec, run_pipeline

__version__ = "0.1.0"
