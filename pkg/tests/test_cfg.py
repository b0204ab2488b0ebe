import random

from binet.asm import Instruction, parse_disassembly, segment_blocks
from binet.cfg import CfgConfig, build_cfg, resolve_jump_target


def _program(lines: str):
    return segment_blocks(parse_disassembly(lines, syntax="canonical"))


THREE_BLOCKS = """\
0: mov eax, ebx
f: jmp 32
10: mov ecx, eax
1f: jne 0
20: mov edx, ecx
"""


def test_jumps_only_edges():
    blocks = _program(THREE_BLOCKS)
    assert [b.start_address for b in blocks] == [0, 16, 32]
    result = build_cfg(blocks, CfgConfig(edge_policy="jumps_only"))
    assert result.graph.n == 3
    assert result.graph.edge_set() == {(0, 2), (1, 0)}
    assert result.unresolved_jumps == 0


def test_with_fallthrough_adds_conditional_edges():
    blocks = _program(THREE_BLOCKS)
    result = build_cfg(blocks, CfgConfig(edge_policy="with_fallthrough"))
    # jmp is unconditional: no fallthrough from block 0; jne gets both
    assert result.graph.edge_set() == {(0, 2), (1, 0), (1, 2)}


def test_fallthrough_is_superset_of_jumps_only():
    rng = random.Random(5)
    opcodes = ["mov", "add", "jmp", "jne", "call", "ret"]
    for _ in range(30):
        lines = []
        for addr in range(rng.randint(1, 60)):
            op = rng.choice(opcodes)
            operand = rng.choice([f"{rng.randrange(60):x}", "rax", "0x5000"])
            lines.append(f"{addr:x}: {op} {operand}")
        blocks = _program("\n".join(lines))
        jumps_only = build_cfg(blocks, CfgConfig(edge_policy="jumps_only"))
        fallthrough = build_cfg(blocks, CfgConfig(edge_policy="with_fallthrough"))
        assert jumps_only.graph.edge_set() <= fallthrough.graph.edge_set()
        assert jumps_only.graph.n == len(blocks)
        n_jump_terms = sum(1 for b in blocks if b.terminator is not None)
        assert jumps_only.graph.num_edges <= n_jump_terms


def test_resolve_jump_target():
    index = {0x20: 7}
    jmp_hex = Instruction(address=0, opcode="jmp", operands=("0x20",))
    jmp_reg = Instruction(address=0, opcode="jmp", operands=("rax",))
    jmp_far = Instruction(address=0, opcode="jmp", operands=("0x100000000",))
    assert resolve_jump_target(jmp_hex, index) == 7
    assert resolve_jump_target(jmp_reg, index) is None
    assert resolve_jump_target(jmp_far, index) is None


def test_bare_decimal_target_prefers_decimal_reading():
    # blocks at 0, 16, 32: "jmp 32" must land on the block at address 32
    blocks = _program(THREE_BLOCKS)
    index = {b.start_address: b.index for b in blocks}
    instr = Instruction(address=15, opcode="jmp", operands=("32",))
    assert resolve_jump_target(instr, index) == 2


def test_bare_hex_target_falls_back_to_hex_reading():
    index = {0x401064: 3}
    instr = Instruction(address=0, opcode="je", operands=("401064",))
    assert resolve_jump_target(instr, index) == 3


def test_unresolved_jump_counted_not_fatal():
    blocks = _program("0: mov eax, ebx\n1: jmp 0x100000000\n")
    result = build_cfg(blocks)
    assert result.graph.num_edges == 0
    assert result.unresolved_jumps == 1


def test_indirect_jump_not_counted_as_unresolved():
    blocks = _program("0: jmp rax\n")
    result = build_cfg(blocks)
    assert result.graph.num_edges == 0
    assert result.unresolved_jumps == 0


def test_call_edges_flag():
    text = "0: call 2\n1: ret\n2: mov eax, ebx\n"
    blocks = _program(text)
    with_calls = build_cfg(blocks, CfgConfig())
    without = build_cfg(blocks, CfgConfig(call_edges=False))
    assert (0, 2) in with_calls.graph.edge_set()
    assert without.graph.num_edges == 0


def test_sidecar_dict_shape():
    blocks = _program(THREE_BLOCKS)
    doc = build_cfg(blocks).sidecar_dict()
    assert doc["block_addresses"] == {"0": 0, "1": 16, "2": 32}
    assert doc["unresolved_jumps"] == 0
