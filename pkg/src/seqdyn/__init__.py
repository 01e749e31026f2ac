"""Strategy-update dynamics in finite sequential games."""

from .dynamics import (DynamicsGraph, DynamicsSpec, build_graph, cycle_witness, decompose_si_step, mixed_edge,
                       satisfies, terminal_profiles, terminates, terminates_for_acyclic, to_dot)
from .equilibria import (equilibrium_sets, is_nash, is_sne, is_spe, nash_deviation, sne_deviation,
                         spe_deviation)
from .game import (Game, GameError, ProfileCapError, ProfileDiff, StrategyProfile, diff, enumerate_profiles,
                   lies_along, load_game, load_game_file, outcome_of, parse_profile, subgame, substrategy)
from .kernel import BACKEND
from .prefs import (PreferenceError, PreferenceRelation, is_acyclic, is_layerable_oracle,
                    is_strict_linear_order, is_strict_weak_order, layer_partition, layerable_linear_extension,
                    main_pattern_witness, out_of_main_pattern, out_of_pattern, out_of_secondary_pattern,
                    secondary_pattern_witness)

__version__ = "0.1.0"
