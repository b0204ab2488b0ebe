"""Parse textual disassembly listings and segment them into basic blocks.

Two input formats are supported:

* ``canonical``: one instruction per line, ``<hexaddr>: <opcode> <operands>``.
* ``intel``: objdump ``-d -M intel`` output. The address field, the
  byte-encoding column and the mnemonic are tab separated; section
  headers, symbol labels and byte-only lines are skipped. Trailing
  ``<symbol+0x..>`` annotations and ``# ...`` comments are stripped.

AT&T syntax is not supported and is rejected at the syntax-flag level;
operand order throughout the package is destination first.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

#: Opcodes that end a basic block. ``call`` and ``ret`` transfer control and
#: are included by default; pass JUMP_FAMILY_ONLY to segment strictly on the
#: j* family.
JUMP_OPCODES = frozenset({
    "jmp", "je", "jne", "jz", "jnz", "jg", "jge", "jl", "jle",
    "ja", "jae", "jb", "jbe", "js", "jns", "jo", "jno", "jp", "jnp",
    "call", "ret",
})

JUMP_FAMILY_ONLY = frozenset(op for op in JUMP_OPCODES if op.startswith("j"))


class MalformedLine(ValueError):
    """A line shaped like an instruction that cannot be parsed as one."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Instruction:
    """One parsed instruction: address, opcode and raw operand strings."""

    address: int
    opcode: str
    operands: tuple[str, ...]
    raw_line: str = field(default="", compare=False, repr=False)

    def render(self) -> str:
        """Canonical one-line form: ``addr: opcode op1, op2``."""
        ops = ", ".join(self.operands)
        return f"{self.address:x}: {self.opcode} {ops}".rstrip()


@dataclass(frozen=True)
class BasicBlock:
    """A maximal run of instructions ending at a control transfer."""

    index: int
    instructions: tuple[Instruction, ...]

    @property
    def terminator(self) -> Optional[Instruction]:
        """The jump that ends the block, if the block ends in one."""
        last = self.instructions[-1]
        return last if last.opcode in JUMP_OPCODES else None

    @property
    def start_address(self) -> int:
        return self.instructions[0].address


# a line that *tries* to be an instruction: leading token, colon, then more
_INSTR_SHAPE = re.compile(r"^\s*(\S+):\s+(\S.*)$")
_HEX_ADDR = re.compile(r"^(0[xX])?[0-9a-fA-F]+$")


def split_operands(text: str) -> tuple[str, ...]:
    """Split an operand string on top-level commas only.

    Commas nested in ``[...]`` or ``(...)`` stay inside their operand.
    """
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return tuple(p for p in parts if p)


def _strip_annotations(text: str) -> str:
    # objdump decorations: trailing "<symbol+0x..>" and "# rip-relative" notes
    text = re.sub(r"#.*$", "", text)
    text = re.sub(r"<[^<>]*>\s*$", "", text.strip())
    return text.strip()


def _parse_instruction_text(address: int, body: str, raw: str, lineno: int) -> Instruction:
    fields = body.split(None, 1)
    opcode = fields[0].strip().lower()
    if not opcode:
        raise MalformedLine("empty opcode", lineno)
    operands = split_operands(fields[1]) if len(fields) > 1 else ()
    return Instruction(address=address, opcode=opcode, operands=operands, raw_line=raw)


def parse_disassembly(text: str, syntax: str = "canonical") -> list[Instruction]:
    """Parse a disassembly listing into instructions, in listing order.

    Lines that do not look like instructions (section headers, symbol
    labels, data-byte rows) are skipped. A line that matches the
    instruction shape but has an unparseable address raises
    MalformedLine with its line number.
    """
    if syntax not in ("intel", "canonical"):
        raise ValueError(f"unsupported syntax {syntax!r} (expected 'intel' or 'canonical')")

    out: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if syntax == "intel" and "\t" in raw:
            parsed = _parse_objdump_line(raw, lineno)
            if parsed is not None:
                out.append(parsed)
            continue
        m = _INSTR_SHAPE.match(raw)
        if m is None:
            continue
        addr_tok, body = m.group(1), m.group(2)
        if not _HEX_ADDR.match(addr_tok):
            # symbol labels ("main: ...") and prose do not reach here often,
            # but an address-shaped token that is not hex is a real defect
            if re.fullmatch(r"[0-9a-fA-FxX]+", addr_tok):
                raise MalformedLine(f"unparseable address {addr_tok!r}", lineno)
            continue
        if syntax == "intel":
            body = _strip_annotations(body)
            if not body:
                continue
        out.append(_parse_instruction_text(int(addr_tok, 16), body, raw, lineno))
    return out


def _parse_objdump_line(raw: str, lineno: int) -> Optional[Instruction]:
    fields = raw.split("\t")
    addr_tok = fields[0].strip()
    if not addr_tok.endswith(":"):
        return None
    addr_tok = addr_tok[:-1].strip()
    if not _HEX_ADDR.match(addr_tok):
        raise MalformedLine(f"unparseable address {addr_tok!r}", lineno)
    if len(fields) < 3:
        return None  # address plus byte column only: data, no mnemonic
    body = _strip_annotations("\t".join(fields[2:]))
    if not body:
        return None
    return _parse_instruction_text(int(addr_tok, 16), body, raw, lineno)


def segment_blocks(
    instrs: Sequence[Instruction] | Iterable[Instruction],
    jump_opcodes: frozenset[str] | set[str] = JUMP_OPCODES,
) -> list[BasicBlock]:
    """Cut an instruction stream into basic blocks.

    A block ends at each jump-family instruction (inclusive) or at the
    end of input. The blocks partition the input exactly.
    """
    blocks: list[BasicBlock] = []
    current: list[Instruction] = []
    for instr in instrs:
        current.append(instr)
        if instr.opcode in jump_opcodes:
            blocks.append(BasicBlock(index=len(blocks), instructions=tuple(current)))
            current = []
    if current:
        blocks.append(BasicBlock(index=len(blocks), instructions=tuple(current)))
    return blocks


# -- block JSON interchange -------------------------------------------------


def blocks_to_dict(blocks: Sequence[BasicBlock]) -> dict:
    doc = []
    for b in blocks:
        term = b.terminator
        doc.append({
            "index": b.index,
            "instructions": [
                {"address": i.address, "opcode": i.opcode, "operands": list(i.operands)}
                for i in b.instructions
            ],
            "terminator_index": (len(b.instructions) - 1) if term is not None else None,
        })
    return {"blocks": doc}


def blocks_from_dict(doc: dict) -> list[BasicBlock]:
    blocks = []
    for entry in doc["blocks"]:
        instrs = tuple(
            Instruction(
                address=int(item["address"]),
                opcode=str(item["opcode"]),
                operands=tuple(str(o) for o in item["operands"]),
            )
            for item in entry["instructions"]
        )
        blocks.append(BasicBlock(index=int(entry["index"]), instructions=instrs))
    return blocks


def save_blocks(blocks: Sequence[BasicBlock], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(blocks_to_dict(blocks), fh)
        fh.write("\n")


def load_blocks(path) -> list[BasicBlock]:
    with open(path, "r", encoding="utf-8") as fh:
        return blocks_from_dict(json.load(fh))
