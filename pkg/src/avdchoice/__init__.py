"""AVD list edge and total colourings of multigraphs, with exhaustive oracles."""

from .errors import (AVDError, ColouringNotFound, DoublingBudgetExceeded, GraphFormatError,
                     InfeasibleThresholds, InvalidInput, IsolatedEdgeError, ListTooShort,
                     NoFreeReservedColour, OracleCapExceeded, ReductionLogError,
                     ResampleBudgetExhausted)
from .graph import (ListAssignment, MultiGraph, PartialColouring, Stage, VerifyReport,
                    is_proper, palette, symmetric_difference, verify)
from .oracle import check_choosability, chromatic_avd_index, naive_verify
from .pipeline import (PipelineRun, ReservedLists, UncolourState, avd_list_edge_colour,
                       colour_with_trace, greedy_finish, initial_proper_colouring,
                       random_uncolour, reserve_colours, reserved_naive_colour, run_stages)
from .profile import ThresholdProfile
from .reduction import (ReductionLog, boost_min_degree, contract_low_degree_edges,
                        finish_low_degree, greedy_small_delta, lift_and_strip)
from .total import TotalColouring, avd_list_total_colour, verify_total

__all__ = [
    "AVDError", "ColouringNotFound", "DoublingBudgetExceeded", "GraphFormatError",
    "InfeasibleThresholds", "InvalidInput", "IsolatedEdgeError", "ListTooShort",
    "NoFreeReservedColour", "OracleCapExceeded", "ReductionLogError", "ResampleBudgetExhausted",
    "ListAssignment", "MultiGraph", "PartialColouring", "Stage", "VerifyReport",
    "is_proper", "palette", "symmetric_difference", "verify",
    "check_choosability", "chromatic_avd_index", "naive_verify",
    "PipelineRun", "ReservedLists", "UncolourState", "avd_list_edge_colour", "colour_with_trace",
    "greedy_finish", "initial_proper_colouring", "random_uncolour", "reserve_colours",
    "reserved_naive_colour", "run_stages", "ThresholdProfile",
    "ReductionLog", "boost_min_degree", "contract_low_degree_edges", "finish_low_degree",
    "greedy_small_delta", "lift_and_strip",
    "TotalColouring", "avd_list_total_colour", "verify_total",
]
