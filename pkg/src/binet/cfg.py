"""Control flow graph construction: blocks are nodes, jumps are edges."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from binet.asm import BasicBlock, Instruction
from binet.graph import DirectedGraph, build_graph

_ADDR_TOKEN = re.compile(r"^(0[xX][0-9a-fA-F]+|[0-9a-fA-F]+)$")


@dataclass(frozen=True)
class CfgConfig:
    """Edge policy for CFG recovery.

    jumps_only adds an edge per resolvable jump target; with_fallthrough
    additionally links block i to block i+1 when the terminator is a
    conditional jump or absent. call_edges controls whether a resolvable
    ``call`` target contributes an edge.
    """

    edge_policy: str = "jumps_only"
    call_edges: bool = True

    def __post_init__(self):
        if self.edge_policy not in ("jumps_only", "with_fallthrough"):
            raise ValueError(f"unknown edge policy {self.edge_policy!r}")


@dataclass
class CfgResult:
    """A built CFG plus the sidecar data the pipeline persists."""

    graph: DirectedGraph
    block_addresses: dict[int, int]  # node id -> block start address
    unresolved_jumps: int

    def sidecar_dict(self) -> dict:
        return {
            "block_addresses": {str(i): a for i, a in self.block_addresses.items()},
            "unresolved_jumps": self.unresolved_jumps,
        }

    def write_sidecar(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.sidecar_dict(), fh)
            fh.write("\n")


def block_address_index(blocks: Sequence[BasicBlock]) -> dict[int, int]:
    """Map block start address -> block index."""
    return {b.start_address: b.index for b in blocks}


def _address_candidates(instr: Instruction) -> list[int]:
    """Possible numeric readings of a jump target operand.

    ``0x``-prefixed tokens are hex. Bare tokens are ambiguous between the
    two conventions, so the decimal reading is tried first and the hex
    reading second; resolution picks the first one present in the index.
    Register or memory operands yield no candidates.
    """
    if not instr.operands:
        return []
    tok = instr.operands[0].strip()
    if not _ADDR_TOKEN.match(tok):
        return []
    if tok.lower().startswith("0x"):
        return [int(tok, 16)]
    candidates = []
    if tok.isdigit():
        candidates.append(int(tok, 10))
    hex_val = int(tok, 16)
    if hex_val not in candidates:
        candidates.append(hex_val)
    return candidates


def resolve_jump_target(instr: Instruction, address_index: Mapping[int, int]) -> Optional[int]:
    """Block index the jump lands in, or None (indirect/external target)."""
    for addr in _address_candidates(instr):
        if addr in address_index:
            return address_index[addr]
    return None


def build_cfg(blocks: Sequence[BasicBlock], config: CfgConfig = CfgConfig()) -> CfgResult:
    """Build the control flow graph of a block sequence.

    One node per block. Unresolvable immediate targets produce no edge
    but are counted in the diagnostics; indirect jumps are silent.
    """
    index = block_address_index(blocks)
    edges: list[tuple[int, int]] = []
    unresolved = 0
    last = len(blocks) - 1
    for b in blocks:
        term = b.terminator
        if term is not None:
            skip_target = term.opcode == "call" and not config.call_edges
            if not skip_target:
                candidates = _address_candidates(term)
                if candidates:
                    target = resolve_jump_target(term, index)
                    if target is not None:
                        edges.append((b.index, target))
                    else:
                        unresolved += 1
        if config.edge_policy == "with_fallthrough" and b.index < last:
            conditional = (term is not None and term.opcode.startswith("j")
                           and term.opcode != "jmp")
            if term is None or conditional:
                edges.append((b.index, b.index + 1))

    graph = build_graph(len(blocks), edges,
                        labels={b.index: f"{b.start_address:#x}" for b in blocks})
    return CfgResult(graph=graph,
                     block_addresses={b.index: b.start_address for b in blocks},
                     unresolved_jumps=unresolved)
