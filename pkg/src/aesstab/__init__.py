"""Stability for graphs of high minimum degree: constructions, clique counts,
decomposition into an H-copy or a near r-partite graph, and brute-force
oracles that check them."""
from .errors import (AesStabError, CapacityError, ConstructionError, Graph6Error,
                     InputError, PreconditionError, SearchBudgetExceeded)
from .graph import (Graph, TargetSpec, analyze_target, build_graph, chromatic_number,
                    complete_graph, complete_multipartite, cycle_graph, random_graph)
from .io import parse_edge_list, parse_graph6, serialize_edge_list, serialize_graph6
from .cliques import (CliqueCensus, Embedding, clique_census, edges_in_many_cliques,
                      find_blowup, find_kts, find_subgraph)
from .extremal import (BiexBounds, Construction, ExtremalParams, aes_extremal,
                       biex_bounds, ktt_free_gadget, lower_bound_graph,
                       modified_extremal, turan_graph)
from .decompose import (DecompositionResult, Partition, Thresholds, clique_partition,
                        refine_partition, stability_decompose)
from .oracle import OracleReport, biex_exact, min_deletion_to_r_partite

__version__ = "0.1.0"
