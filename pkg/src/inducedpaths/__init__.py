"""Certified long induced paths in graphs with a Hamiltonian path and a width-bounded representation."""

from .errors import (ClassError, InducedPathError, InputError, InternalInvariantError, NoPathError,
                     OracleCapError, ParameterError, UnsupportedError, ValidationError, WitnessError)
from .graph import (ContractionMap, Graph, connected_components, contract_path_edge, eccentric_shortest_path,
                    induced_subgraph, is_hamiltonian_path, is_induced_path, lift_induced_path, shortest_path,
                    split_by_removal)
from .representations import (CycleRepresentation, PathRepresentation, TreeRepresentation, adhesion_set, bag,
                              from_bags, make_varied, max_weight_path, node_weight, path_weight,
                              restrict_to_path, torso)
from .extractors import (AlmostBoundedDegreeBase, BaseExtractor, BoundedDegreeBase, ExtractionCertificate,
                         contract_to_path_rep, extract_adhesion_pathrep, extract_bounded_degree,
                         extract_from_vortex, extract_master, extract_pathwidth, extract_tree_composition,
                         extract_treewidth, extract_with_modulator)
from .generators import (GeneratedInstance, gen_chained_cliques, gen_outerplanar_family, gen_path_power,
                         gen_random_validated, gen_worstcase_interval)
from .oracle import OracleResult, hamiltonian_path, longest_induced_path, max_clique, verify_certificate

__version__ = "0.1.0"
