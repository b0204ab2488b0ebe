import random

import pytest

from binet.asm import Instruction, BasicBlock, parse_disassembly, segment_blocks
from binet.ddg import DdgConfig, OperandKey, build_ddg, extract_data_moves, normalize_operand
from tests.conftest import SAMPLE_BLOCK_LISTING


def _block(*lines: str) -> BasicBlock:
    instrs = parse_disassembly("\n".join(f"{i}: {line}" for i, line in enumerate(lines)),
                               syntax="canonical")
    return segment_blocks(instrs)[0]


@pytest.fixture
def sample_block() -> BasicBlock:
    return segment_blocks(parse_disassembly(SAMPLE_BLOCK_LISTING, syntax="canonical"))[0]


# -- normalization -------------------------------------------------------------


@pytest.mark.parametrize("raw,normalized,kind", [
    ("rbp - 44", "rbp-44", "memory"),
    ("ECX ", "ecx", "register"),
    ("0", "0", "immediate"),
    ("0x2c", "44", "immediate"),
    ("-8", "-8", "immediate"),
    ("[rbp-0x2c]", "rbp-44", "memory"),
    ("QWORD PTR [rip+0x2fd9]", "rip+12249", "memory"),
    ("[rax]", "rax+0", "memory"),
    ("r13d", "r13d", "register"),
    ("xmm3", "xmm3", "register"),
    ("rbx*4+rcx", "rbx*4+rcx", "memory"),  # unclassifiable stays verbatim
])
def test_normalize_operand(raw, normalized, kind):
    key = normalize_operand(raw)
    assert key == OperandKey(normalized=normalized, kind=kind)


def test_full_width_aliasing():
    assert normalize_operand("eax", aliasing="full_width").normalized == "rax"
    assert normalize_operand("r13d", aliasing="full_width").normalized == "r13"
    assert normalize_operand("[ebp-4]", aliasing="full_width").normalized == "rbp-4"
    # no aliasing keeps sub-registers distinct
    assert normalize_operand("eax").normalized == "eax"


def test_normalize_idempotent():
    samples = ["rbp - 44", "ECX", "0x10", "[rbp-0x2c]", "qword ptr [rax+8]",
               "rbx*4+rcx", "42", "rip + 180", "[r14]", "fs:[0x30]"]
    rng = random.Random(11)
    samples += ["".join(rng.choice("abcx []+-0123456789") for _ in range(rng.randint(1, 12)))
                for _ in range(200)]
    for aliasing in ("none", "full_width"):
        for raw in samples:
            once = normalize_operand(raw, aliasing)
            twice = normalize_operand(once.normalized, aliasing)
            assert twice.normalized == once.normalized, raw


# -- extraction ------------------------------------------------------------------


def test_extract_sample_block_pairs(sample_block):
    pairs = extract_data_moves(sample_block)
    as_text = [(src.normalized, dst.normalized) for src, dst in pairs]
    assert as_text == [("rbp-44", "ecx"), ("ecx", "eax"), ("eax", "ecx"), ("ecx", "rbp-44")]


def test_extract_ignores_non_move_opcodes():
    block = _block("and eax, 400", "or ecx, 1", "cmp eax, ecx")
    assert extract_data_moves(block) == []


def test_extract_keeps_self_move_pair():
    block = _block("mov eax, eax")
    pairs = extract_data_moves(block)
    assert len(pairs) == 1
    assert pairs[0][0] == pairs[0][1]


def test_immediate_pairs_dropped():
    block = _block("mov rip + 180, 0", "mov eax, 42")
    assert extract_data_moves(block) == []


def test_reverse_edges_flag(sample_block):
    forward = extract_data_moves(sample_block)
    reverse = extract_data_moves(sample_block, DdgConfig(reverse_edges=True))
    assert [(d, s) for s, d in forward] == reverse


# -- graph construction ------------------------------------------------------------


def test_build_ddg_sample_block(sample_block):
    g = build_ddg(sample_block)
    assert g.n == 3
    assert g.labels == {0: "rbp-44", 1: "ecx", 2: "eax"}
    by_label = {label: node for node, label in g.labels.items()}
    edges = {(g.labels[u], g.labels[v]) for u, v in g.edge_set()}
    assert edges == {("rbp-44", "ecx"), ("ecx", "eax"), ("eax", "ecx"), ("ecx", "rbp-44")}
    assert by_label.keys() == {"rbp-44", "ecx", "eax"}


def test_build_ddg_empty_block():
    g = build_ddg(_block("nop"))
    assert (g.n, g.num_edges) == (0, 0)


def test_build_ddg_chain_is_path():
    k = 17
    lines = [f"mov v{i + 1}, v{i}" for i in range(k)]
    g = build_ddg(_block(*lines))
    assert (g.n, g.num_edges) == (k + 1, k)
    assert g.undirected_degrees().tolist() == [1] + [2] * (k - 1) + [1]


def test_self_move_drops_loop_keeps_node():
    g = build_ddg(_block("mov eax, eax"))
    assert (g.n, g.num_edges) == (1, 0)


def test_node_bound_and_no_immediates():
    rng = random.Random(23)
    operands = ["eax", "ebx", "ecx", "rbp - 8", "rbp - 16", "0", "42", "0x8"]
    for _ in range(50):
        lines = []
        moves = 0
        for _ in range(rng.randint(1, 30)):
            op = rng.choice(["mov", "cmovne", "add", "xor"])
            a, b = rng.choice(operands), rng.choice(operands)
            if op.startswith(("mov", "cmov")):
                moves += 1
            lines.append(f"{op} {a}, {b}")
        block = _block(*lines)
        g = build_ddg(block)
        assert g.n <= 2 * moves
        if g.labels:
            for label in g.labels.values():
                assert normalize_operand(label).kind != "immediate"


def test_build_ddg_deterministic(sample_block):
    g1 = build_ddg(sample_block)
    g2 = build_ddg(sample_block)
    assert g1 == g2
    assert g1.labels == g2.labels


def test_custom_move_opcodes():
    block = _block("xchg eax, ebx", "mov ecx, eax")
    narrow = build_ddg(block, DdgConfig(move_opcodes=("mov",)))
    wide = build_ddg(block, DdgConfig(move_opcodes=("mov", "xchg")))
    assert narrow.n == 2
    assert wide.n == 3
