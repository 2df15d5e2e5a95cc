"""Bounded, Lipschitz random quasipartitions of planar digraphs."""

__version__ = "0.1.0"

from .errors import (ContractError, InputError, InternalError, ParseError,
                     PreconditionError, QcgError, SizeError, StructureError)
from .graph import (Arc, DirectedPath, PlanarDigraph, Quasipartition, UndEdge,
                    all_pairs_dist, check_layered, dijkstra, extract_path,
                    is_shortest_path, materialize_relation, quasiball,
                    relation_contains, shortest_path_dist)
from .embedding import contract_vertices, drop_arcs, induced_subgraph, triangulate
from .shock import (ShockResult, TruncExp, exhaust_lowest_id, sample_shock,
                    stop_after, trunc_exp_sample)
from .pathqp import PathQPResult, path_quasipartition, portal_of, segment_path
from .wave import LayerGraph, WaveDecomposition, extract_layer, locate_path_layers, sample_wave
from .separator import (SeparatorPaths, component_separator,
                        fundamental_cycle_separator, layered_tree,
                        three_path_separator)
from .decompose import (DecompositionResult, LayerQPConfig, layer_config,
                        layer_quasipartition, planar_quasipartition,
                        rng_for_sample, sample_many)
from .instances import InstanceSpec, gen_chain, gen_grid, gen_triangulation, generate
