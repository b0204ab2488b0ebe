"""Per-block data dependency graphs.

Nodes are normalized data operands; a directed edge runs from the source
operand to the destination operand of each data-movement instruction.
Immediates are constants, not dependency carriers, so they never become
nodes: ``mov rip+180, 0`` contributes nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from binet.asm import BasicBlock
from binet.graph import DirectedGraph, build_graph

# x86 register tokens, mapped to their 64-bit parent for full_width aliasing.
_GP = {
    "rax": ("eax", "ax", "al", "ah"),
    "rbx": ("ebx", "bx", "bl", "bh"),
    "rcx": ("ecx", "cx", "cl", "ch"),
    "rdx": ("edx", "dx", "dl", "dh"),
    "rsi": ("esi", "si", "sil"),
    "rdi": ("edi", "di", "dil"),
    "rbp": ("ebp", "bp", "bpl"),
    "rsp": ("esp", "sp", "spl"),
    "rip": ("eip",),
}
_SUB_TO_PARENT: dict[str, str] = {}
for _parent, _subs in _GP.items():
    _SUB_TO_PARENT[_parent] = _parent
    for _s in _subs:
        _SUB_TO_PARENT[_s] = _parent
for _i in range(8, 16):
    _SUB_TO_PARENT[f"r{_i}"] = f"r{_i}"
    for _suffix in ("d", "w", "b"):
        _SUB_TO_PARENT[f"r{_i}{_suffix}"] = f"r{_i}"

_OTHER_REGISTERS = frozenset(
    [f"xmm{i}" for i in range(16)]
    + [f"ymm{i}" for i in range(16)]
    + [f"zmm{i}" for i in range(16)]
    + [f"mm{i}" for i in range(8)]
    + [f"st{i}" for i in range(8)]
    + ["cs", "ds", "es", "fs", "gs", "ss", "eflags", "rflags"]
)

REGISTERS = frozenset(_SUB_TO_PARENT) | _OTHER_REGISTERS

_SIZE_PREFIX = re.compile(
    r"^(byte|word|dword|qword|tbyte|xmmword|ymmword|zmmword)?\s*ptr\s+", re.IGNORECASE)
_SEGMENT_PREFIX = re.compile(r"^(cs|ds|es|fs|gs|ss):", re.IGNORECASE)
_IMMEDIATE = re.compile(r"^[+-]?(0[xX][0-9a-fA-F]+|[0-9]+)$")
_BASE_DISP = re.compile(
    r"^(?P<base>[a-z][a-z0-9]*)\s*(?:(?P<sign>[+-])\s*(?P<disp>0[xX][0-9a-fA-F]+|[0-9]+))?$")


@dataclass(frozen=True)
class OperandKey:
    """Canonical operand identity: normalized spelling plus a kind tag."""

    normalized: str
    kind: str  # "register" | "memory" | "immediate"


@dataclass(frozen=True)
class DdgConfig:
    """Knobs for DDG extraction.

    move_opcodes are prefixes; an instruction participates when its
    opcode starts with any of them. reverse_edges flips every extracted
    pair, for comparison against tools with the opposite convention.
    """

    move_opcodes: tuple[str, ...] = ("mov", "movzx", "movsx", "movsd", "movss", "cmov")
    register_aliasing: str = "none"  # or "full_width"
    reverse_edges: bool = False

    def __post_init__(self):
        if not self.move_opcodes:
            raise ValueError("move_opcodes must be non-empty")
        if self.register_aliasing not in ("none", "full_width"):
            raise ValueError(f"unknown register aliasing {self.register_aliasing!r}")

    def matches(self, opcode: str) -> bool:
        return any(opcode.startswith(p) for p in self.move_opcodes)


def _parse_int(tok: str) -> int:
    t = tok.strip()
    sign = 1
    if t.startswith(("+", "-")):
        sign = -1 if t[0] == "-" else 1
        t = t[1:]
    return sign * (int(t, 16) if t.lower().startswith("0x") else int(t, 10))


def normalize_operand(raw: str, aliasing: str = "none") -> OperandKey:
    """Canonicalize one operand string.

    Lowercases, collapses whitespace, strips size/segment decorations and
    brackets, rewrites memory expressions to ``base±disp`` with a decimal
    displacement, and classifies the result as register, memory or
    immediate. Unclassifiable strings stay memory with their spelling
    stripped of whitespace. Idempotent by construction.
    """
    s = " ".join(raw.strip().lower().split())
    s = _SIZE_PREFIX.sub("", s)
    s = _SEGMENT_PREFIX.sub("", s)
    bracketed = s.startswith("[") and s.endswith("]")
    if bracketed:
        s = s[1:-1].strip()
        s = _SEGMENT_PREFIX.sub("", s)

    if _IMMEDIATE.match(s):
        if bracketed:
            # memory at an absolute address keeps its brackets, otherwise
            # a second normalization pass would reclassify it immediate
            return OperandKey(normalized=f"[{_parse_int(s)}]", kind="memory")
        return OperandKey(normalized=str(_parse_int(s)), kind="immediate")

    if not bracketed and s in REGISTERS:
        name = _SUB_TO_PARENT.get(s, s) if aliasing == "full_width" else s
        return OperandKey(normalized=name, kind="register")

    m = _BASE_DISP.match(s)
    if m is not None and m.group("base") in REGISTERS:
        base = m.group("base")
        if aliasing == "full_width":
            base = _SUB_TO_PARENT.get(base, base)
        if m.group("disp") is None:
            # bare [reg]: spell the zero displacement so the memory cell
            # cannot collide with the register node of the same name
            return OperandKey(normalized=f"{base}+0", kind="memory")
        disp = _parse_int(m.group("disp"))
        sign = m.group("sign")
        return OperandKey(normalized=f"{base}{sign}{disp}", kind="memory")

    return OperandKey(normalized=s.replace(" ", ""), kind="memory")


def extract_data_moves(block: BasicBlock, config: DdgConfig = DdgConfig()
                       ) -> list[tuple[OperandKey, OperandKey]]:
    """(source, destination) operand pairs of the block's data moves.

    Operand order is destination first in the listing, so a pair is
    (operand2, operand1). Pairs touching an immediate are dropped.
    """
    pairs: list[tuple[OperandKey, OperandKey]] = []
    for instr in block.instructions:
        if len(instr.operands) < 2 or not config.matches(instr.opcode):
            continue
        dst = normalize_operand(instr.operands[0], config.register_aliasing)
        src = normalize_operand(instr.operands[1], config.register_aliasing)
        if src.kind == "immediate" or dst.kind == "immediate":
            continue
        pairs.append((dst, src) if config.reverse_edges else (src, dst))
    return pairs


def build_ddg(block: BasicBlock, config: DdgConfig = DdgConfig()) -> DirectedGraph:
    """Data dependency graph of one block.

    Nodes are the distinct operand keys of the extracted pairs, numbered
    by first appearance; edges are the distinct pairs with self-loops
    dropped. Labels carry the normalized operand spellings.
    """
    pairs = extract_data_moves(block, config)
    ids: dict[OperandKey, int] = {}
    for src, dst in pairs:
        for key in (src, dst):
            if key not in ids:
                ids[key] = len(ids)
    edges = [(ids[src], ids[dst]) for src, dst in pairs if src != dst]
    labels = {i: key.normalized for key, i in ids.items()}
    return build_graph(len(ids), edges, labels=labels)


def build_all_ddgs(blocks: Sequence[BasicBlock], config: DdgConfig = DdgConfig()
                   ) -> dict[int, DirectedGraph]:
    """One DDG per block, keyed by block index."""
    return {b.index: build_ddg(b, config) for b in blocks}
