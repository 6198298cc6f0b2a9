"""
Decoding of raw EVM bytecode into instruction streams.
"""

from .disassembler import (
    Bytecode,
    BytecodeSource,
    Instruction,
    assemble,
    disassemble,
    from_binary,
    parse_hex,
    to_listing,
)
from .opcodes import (
    INVALID,
    OPCODE_TABLES,
    OpcodeSpec,
    canonical_families,
    merge_family,
    opcode_lookup,
    opcode_table,
)

__all__ = [
    "Bytecode",
    "BytecodeSource",
    "Instruction",
    "assemble",
    "disassemble",
    "from_binary",
    "parse_hex",
    "to_listing",
    "INVALID",
    "OPCODE_TABLES",
    "OpcodeSpec",
    "canonical_families",
    "merge_family",
    "opcode_lookup",
    "opcode_table",
]
