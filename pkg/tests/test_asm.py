import random

import pytest

from binet.asm import (JUMP_FAMILY_ONLY, JUMP_OPCODES, BasicBlock, Instruction,
                       MalformedLine, blocks_from_dict, blocks_to_dict,
                       parse_disassembly, segment_blocks, split_operands)
from tests.conftest import SAMPLE_BLOCK_LISTING


def test_parse_canonical_line():
    instrs = parse_disassembly("0: mov ecx, rbp - 44", syntax="canonical")
    assert instrs == [Instruction(address=0, opcode="mov", operands=("ecx", "rbp - 44"))]


def test_parse_empty_text():
    assert parse_disassembly("", syntax="canonical") == []


def test_parse_sample_listing():
    instrs = parse_disassembly(SAMPLE_BLOCK_LISTING, syntax="canonical")
    assert len(instrs) == 10
    assert instrs[-1].opcode == "jmp"
    assert instrs[-1].operands == ("0x100000000",)


def test_parse_skips_non_instruction_lines():
    text = """\
fig.o:     file format elf64-x86-64

Disassembly of section .text:

0000000000401000 <_start>:
"""
    assert parse_disassembly(text, syntax="canonical") == []


def test_parse_objdump_intel_layout():
    text = ("  401000:\t55                   \tpush   rbp\n"
            "  401001:\t48 89 e5             \tmov    rbp,rsp\n"
            "  401004:\t00 00\n"  # data bytes, no mnemonic
            "  401006:\teb fe                \tjmp    401004 <_start+0x4>\n"
            "  401008:\t48 8b 05 d9 2f 00 00 \tmov    rax,QWORD PTR [rip+0x2fd9]"
            "        # 403fe8 <x>\n")
    instrs = parse_disassembly(text, syntax="intel")
    assert [i.opcode for i in instrs] == ["push", "mov", "jmp", "mov"]
    assert instrs[0].address == 0x401000
    assert instrs[2].operands == ("401004",)  # symbol annotation stripped
    assert instrs[3].operands == ("rax", "QWORD PTR [rip+0x2fd9]")


def test_malformed_address_reports_line_number():
    with pytest.raises(MalformedLine) as exc:
        parse_disassembly("0: mov eax, ebx\n0x: add eax, 1", syntax="canonical")
    assert exc.value.line == 2


def test_att_syntax_rejected():
    with pytest.raises(ValueError):
        parse_disassembly("0: mov %eax, %ebx", syntax="att")


def test_split_operands_keeps_bracketed_commas():
    assert split_operands("eax, [rbx + rcx, 8], 1") == ("eax", "[rbx + rcx, 8]", "1")


def _random_instructions(rng: random.Random, count: int) -> list[Instruction]:
    opcodes = ["mov", "add", "xor", "jmp", "jne", "call", "ret", "cmp", "lea"]
    operand_pool = ["eax", "ebx", "rbp - 8", "rip + 16", "0x10", "42", "[rax]"]
    out = []
    for i in range(count):
        op = rng.choice(opcodes)
        n_ops = rng.randint(0, 2)
        out.append(Instruction(address=i * 4, opcode=op,
                               operands=tuple(rng.choice(operand_pool) for _ in range(n_ops))))
    return out


def test_render_reparse_round_trip():
    rng = random.Random(7)
    for instr in _random_instructions(rng, 200):
        reparsed = parse_disassembly(instr.render(), syntax="canonical")
        assert reparsed == [instr]


def test_segment_sample_listing_single_block():
    instrs = parse_disassembly(SAMPLE_BLOCK_LISTING, syntax="canonical")
    blocks = segment_blocks(instrs)
    assert len(blocks) == 1
    assert len(blocks[0].instructions) == 10
    assert blocks[0].terminator is not None
    assert blocks[0].terminator.opcode == "jmp"


def test_segment_splits_at_jumps():
    opcodes = ["mov", "jmp", "mov", "mov", "jne", "mov"]
    instrs = [Instruction(address=i, opcode=op, operands=()) for i, op in enumerate(opcodes)]
    blocks = segment_blocks(instrs)
    assert [len(b.instructions) for b in blocks] == [2, 3, 1]
    assert [b.index for b in blocks] == [0, 1, 2]
    assert blocks[2].terminator is None


def test_segment_no_jumps_is_one_block():
    instrs = [Instruction(address=i, opcode="mov", operands=("eax", "ebx"))
              for i in range(1000)]
    blocks = segment_blocks(instrs)
    assert len(blocks) == 1
    assert len(blocks[0].instructions) == 1000


def test_segment_partitions_random_streams():
    rng = random.Random(13)
    for _ in range(50):
        instrs = _random_instructions(rng, rng.randint(0, 120))
        blocks = segment_blocks(instrs)
        flattened = [i for b in blocks for i in b.instructions]
        assert flattened == instrs
        for b in blocks:
            jumps = [i for i in b.instructions if i.opcode in JUMP_OPCODES]
            assert len(jumps) <= 1
            if jumps:
                assert b.instructions[-1] is jumps[0]


def test_strict_jump_family_excludes_call_ret():
    instrs = [Instruction(address=i, opcode=op, operands=())
              for i, op in enumerate(["mov", "call", "mov", "ret", "jne"])]
    blocks = segment_blocks(instrs, JUMP_FAMILY_ONLY)
    assert len(blocks) == 1
    assert blocks[0].terminator.opcode == "jne"


def test_blocks_json_round_trip():
    instrs = parse_disassembly(SAMPLE_BLOCK_LISTING, syntax="canonical")
    blocks = segment_blocks(instrs)
    doc = blocks_to_dict(blocks)
    assert doc["blocks"][0]["terminator_index"] == 9
    assert doc["blocks"][0]["instructions"][0] == {
        "address": 0, "opcode": "mov", "operands": ["ecx", "rbp - 44"]}
    restored = blocks_from_dict(doc)
    assert restored == [BasicBlock(index=b.index, instructions=b.instructions)
                        for b in blocks]
