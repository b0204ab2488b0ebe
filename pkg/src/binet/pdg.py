"""Program dependence graph: the CFG composed with its per-block DDGs.

The composition is stored as a CFG-node-indexed collection of DDGs (each
block owns its dependency graph) plus a global operand table. From it we
derive a block-to-operand bipartite incidence graph whose structural
metrics can be measured like any other graph's.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from binet.graph import DirectedGraph, build_graph, read_edge_list, write_edge_list


class UnknownCfgNode(ValueError):
    """A DDG was supplied for a node id the CFG does not have."""


_EMPTY = build_graph(0, [])


@dataclass
class ProgramDependenceGraph:
    cfg: DirectedGraph
    ddgs: dict[int, DirectedGraph]  # exactly one entry per CFG node
    operand_universe: dict[str, int]  # operand spelling -> global id


def _ddg_label(ddg: DirectedGraph, block: int, node: int) -> str:
    if ddg.labels is not None and node in ddg.labels:
        return ddg.labels[node]
    # label-less graphs (imported edge lists) get block-scoped placeholders
    return f"block{block}_op{node}"


def build_pdg(cfg: DirectedGraph, ddgs: dict[int, DirectedGraph]) -> ProgramDependenceGraph:
    """Compose a CFG with per-block DDGs.

    Missing blocks get empty graphs. Global operand ids are dense and
    assigned by first appearance in block-index order.
    """
    for key in ddgs:
        if not 0 <= key < cfg.n:
            raise UnknownCfgNode(f"ddg key {key} outside [0, {cfg.n})")
    full = {i: ddgs.get(i, _EMPTY) for i in range(cfg.n)}
    universe: dict[str, int] = {}
    for b in range(cfg.n):
        ddg = full[b]
        for node in range(ddg.n):
            label = _ddg_label(ddg, b, node)
            if label not in universe:
                universe[label] = len(universe)
    return ProgramDependenceGraph(cfg=cfg, ddgs=full, operand_universe=universe)


def project_bipartite(pdg: ProgramDependenceGraph) -> DirectedGraph:
    """Block-operand incidence graph.

    Node ids 0..N_cfg-1 are blocks; ids N_cfg.. are global operands.
    Edge (b, operand) exists iff the operand is a node of block b's DDG,
    so an operand shared by several blocks contributes one edge per
    block. Treat the result as undirected.
    """
    n_cfg = pdg.cfg.n
    edges = []
    labels: dict[int, str] = {}
    for b in range(n_cfg):
        labels[b] = f"block_{b}"
        ddg = pdg.ddgs[b]
        seen: set[int] = set()
        for node in range(ddg.n):
            gid = pdg.operand_universe[_ddg_label(ddg, b, node)]
            if gid not in seen:  # duplicate labels inside one block collapse
                seen.add(gid)
                edges.append((b, n_cfg + gid))
    for label, gid in pdg.operand_universe.items():
        labels[n_cfg + gid] = label
    return build_graph(n_cfg + len(pdg.operand_universe), edges, labels=labels)


# -- directory serialization -------------------------------------------------
#
#   cfg.edges            control flow graph
#   ddg_<i>.edges        one per CFG node
#   operands.json        operand spelling -> global id
#   ddg_labels.json      per-block node labels, so a reload is lossless
#   bipartite.edges      derived incidence graph, written for interchange


def save_pdg(pdg: ProgramDependenceGraph, dirpath) -> None:
    os.makedirs(dirpath, exist_ok=True)
    write_edge_list(pdg.cfg, os.path.join(dirpath, "cfg.edges"))
    ddg_labels = {}
    for i in range(pdg.cfg.n):
        ddg = pdg.ddgs[i]
        write_edge_list(ddg, os.path.join(dirpath, f"ddg_{i}.edges"))
        ddg_labels[str(i)] = [_ddg_label(ddg, i, node) for node in range(ddg.n)]
    with open(os.path.join(dirpath, "operands.json"), "w", encoding="utf-8") as fh:
        json.dump(pdg.operand_universe, fh)
        fh.write("\n")
    with open(os.path.join(dirpath, "ddg_labels.json"), "w", encoding="utf-8") as fh:
        json.dump(ddg_labels, fh)
        fh.write("\n")
    write_edge_list(project_bipartite(pdg), os.path.join(dirpath, "bipartite.edges"))


def load_pdg(dirpath) -> ProgramDependenceGraph:
    cfg = read_edge_list(os.path.join(dirpath, "cfg.edges"))
    with open(os.path.join(dirpath, "operands.json"), "r", encoding="utf-8") as fh:
        universe = {str(k): int(v) for k, v in json.load(fh).items()}
    with open(os.path.join(dirpath, "ddg_labels.json"), "r", encoding="utf-8") as fh:
        ddg_labels = json.load(fh)
    ddgs = {}
    for i in range(cfg.n):
        g = read_edge_list(os.path.join(dirpath, f"ddg_{i}.edges"))
        labels = {node: lab for node, lab in enumerate(ddg_labels.get(str(i), []))}
        ddgs[i] = DirectedGraph(g.n, g.edge_array, labels=labels or None)
    return ProgramDependenceGraph(cfg=cfg, ddgs=ddgs, operand_universe=universe)
