"""binet: reconstruct and measure the networks inside binary executables.

Pipeline: disassembly listings are parsed and segmented into basic
blocks; blocks become the nodes of the control flow graph, operands the
nodes of per-block data dependency graphs; the two compose into a
program dependence graph. Every graph can then be measured (degree
statistics, diameter predictors, assortativity, clustering, power-law
exponent, clique census) and classified.
"""

from binet.asm import BasicBlock, Instruction, parse_disassembly, segment_blocks
from binet.cfg import CfgConfig, build_cfg, resolve_jump_target
from binet.report import (CorpusRow, NetworkClassification, Thresholds,
                          classify, render_corpus_csv, render_report_json)
from binet.ddg import DdgConfig, OperandKey, build_ddg, extract_data_moves, normalize_operand
from binet.graph import DirectedGraph, build_graph, degree_sequence, read_edge_list, write_edge_list
from binet.metrics import (NetworkMetrics, assortativity, basic_metrics, clustering,
                           compute_metrics, count_k_cliques, degree_histogram,
                           degree_rank, diameter_predictors)
from binet.pdg import ProgramDependenceGraph, build_pdg, load_pdg, project_bipartite, save_pdg
from binet.powerlaw import PowerLawFit, fit_power_law, sample_discrete_power_law

__version__ = "0.1.0"

__all__ = [
    "BasicBlock", "Instruction", "parse_disassembly", "segment_blocks",
    "CfgConfig", "build_cfg", "resolve_jump_target",
    "DdgConfig", "OperandKey", "build_ddg", "extract_data_moves", "normalize_operand",
    "DirectedGraph", "build_graph", "degree_sequence", "read_edge_list", "write_edge_list",
    "ProgramDependenceGraph", "build_pdg", "load_pdg", "project_bipartite", "save_pdg",
    "NetworkMetrics", "assortativity", "basic_metrics", "clustering", "compute_metrics",
    "count_k_cliques", "degree_histogram", "degree_rank", "diameter_predictors",
    "PowerLawFit", "fit_power_law", "sample_discrete_power_law",
    "CorpusRow", "NetworkClassification", "Thresholds", "classify",
    "render_corpus_csv", "render_report_json",
    "__version__",
]
