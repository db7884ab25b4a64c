"""Graph covers of zero-dimensional dynamical systems.

Finite-depth towers of directed graphs, translations to and from Bratteli
diagrams, substitution sequences, Rauzy graphs and Kakutani-Rokhlin data, and
dynamical criteria evaluated on the truncations.
"""
from .errors import *  # noqa: F401,F403
from .digraph import (Arrow, DiGraph, ValidationReport, validate_graph, is_strongly_connected,
                      strongly_connected_components, enumerate_simple_cycles,
                      enumerate_closed_walks, canonical_rotation, shortest_path, special_vertices)
from .tower import (CoverTower, TowerReport, BondingReport, validate_tower, winding_matrix,
                    telescoped_winding, telescope, select_levels, truncate, weights_vector,
                    with_consistent_weights, levels_isomorphic, contract_regular)
from .translators import *  # noqa: F401,F403
from .generators import (convergent_denominators, ostrowski_cover, odometer_cover, standard_words,
                         sturmian_word, sturmian_oracle, full_shift_oracle,
                         substitution_fixed_point, IETConfig, RauzyInduction, rauzy_step,
                         iet_rauzy_induction, induced_substitution_check, induction_window)
from .dynamics import (Thread, StepResolution, project, minimal_thread, is_compatible, step,
                       step_resolved, orbit, itinerary, BVPathPoint, is_bv_path, minimal_bv_path,
                       vershik_step, thread_to_bv_path)
from .analysis import (Verdict, Verified, Refuted, NotDecidedUpTo, check_chain_transitive,
                       check_minimal, check_transitive, unique_ergodicity_diameters, ConeDiameter,
                       SpecialCounts, special_vertex_counts, measure_value_bound,
                       ergodic_count_bound, uniform_rigidity_check, RigidityWitness,
                       linear_recurrence_constants, RecurrenceConstants, return_words)
from . import io

__version__ = "0.1.0"
