"""
Linear disassembly of EVM bytecode.

Bytecode is scanned from offset `0`. Every `PUSHN` consumes its `N`
immediate bytes, a push cut off by the end of the code is kept as a
truncated instruction. Unknown bytes decode as `INVALID` instructions.
Trailing metadata is not stripped.
"""

import enum
import string
from typing import NamedTuple

from opclass.core.constants import DEFAULT_OPCODE_TABLE
from opclass.core.exceptions import (
    NonHexCharacterException,
    OddLengthException,
)

from .opcodes import OpcodeSpec, opcode_table

_HEX_DIGITS = frozenset(string.hexdigits)


class BytecodeSource(enum.Enum):
    """Provenance of a piece of bytecode."""

    HEX_FILE = "hex-file"
    JSONL_RECORD = "jsonl-record"
    RPC = "rpc"
    RAW = "raw"


class Bytecode(NamedTuple):
    """Raw contract bytecode together with its provenance.

    Attributes
    ----------
    code : bytes
        May be empty (externally owned accounts have no code).

    source : BytecodeSource
    """

    code: bytes
    source: BytecodeSource = BytecodeSource.HEX_FILE

    @property
    def is_contract(self):
        """`True` if there is any code."""
        return len(self.code) > 0

    def to_hex(self):
        """The code as lower case hex string with `0x` prefix."""
        return "0x" + self.code.hex()

    def __len__(self):
        return len(self.code)


class Instruction(NamedTuple):
    """One decoded EVM operation.

    Attributes
    ----------
    offset : int
        Byte position of the opcode in the code.

    spec : OpcodeSpec

    immediate : bytes
        The immediate bytes, shorter than `spec.immediate_len` only if
        `truncated`.

    truncated : bool
        `True` iff the code ended before the immediate was complete.
    """

    offset: int
    spec: OpcodeSpec
    immediate: bytes = b""
    truncated: bool = False

    @property
    def size(self):
        """Number of bytes occupied by the instruction."""
        return 1 + len(self.immediate)

    def to_bytes(self):
        """Re-serializes the instruction."""
        return bytes([self.spec.value]) + self.immediate

    def __str__(self):
        line = f"{self.offset:04x}: {self.spec.mnemonic}"
        if self.immediate:
            line += f" 0x{self.immediate.hex()}"
        return line


def parse_hex(text, source=BytecodeSource.HEX_FILE):
    """Decodes a hex string to bytecode.

    Parameters
    ----------
    text : str
        ASCII hex digits, optionally prefixed by `"0x"` or `"0X"`.
        Digits are case insensitive, whitespace at both ends is ignored.

    source : BytecodeSource, optional
        Provenance recorded in the result.

        Defaults to `BytecodeSource.HEX_FILE`.

    Returns
    -------
    bytecode : Bytecode

    Raises
    ------
    NonHexCharacterException
        If a character is not a hex digit. The position refers to `text`.

    OddLengthException
        If the number of hex digits is odd.
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped[:2] in ("0x", "0X"):
        stripped = stripped[2:]
        offset += 2

    for i, char in enumerate(stripped):
        if char not in _HEX_DIGITS:
            raise NonHexCharacterException(offset + i, char)
    if len(stripped) % 2:
        raise OddLengthException(
            f"hex string has an odd number of digits ({len(stripped)})"
        )
    return Bytecode(bytes.fromhex(stripped), source)


def from_binary(data):
    """Wraps raw binary code.

    Parameters
    ----------
    data : bytes-like

    Returns
    -------
    bytecode : Bytecode
    """
    return Bytecode(bytes(data), BytecodeSource.RAW)


def disassemble(code, version=DEFAULT_OPCODE_TABLE):
    """Decodes bytecode into a linear instruction stream.

    The scan never fails: unknown bytes become `INVALID` instructions and
    a push cut off by the end of the code is emitted with
    `truncated=True`. Concatenating the bytes of all instructions
    reproduces the input.

    Parameters
    ----------
    code : Bytecode or bytes-like

    version : str, optional
        Opcode table version.

        Defaults to `"istanbul"`.

    Returns
    -------
    instructions : list of Instruction
    """
    if isinstance(code, Bytecode):
        code = code.code
    code = bytes(code)
    table = opcode_table(version)

    instructions = []
    offset = 0
    while offset < len(code):
        spec = table[code[offset]]
        start = offset + 1
        immediate = code[start : start + spec.immediate_len]
        instructions.append(
            Instruction(
                offset,
                spec,
                immediate,
                len(immediate) < spec.immediate_len,
            )
        )
        offset = start + len(immediate)
    return instructions


def assemble(instructions):
    """Re-serializes an instruction stream.

    Parameters
    ----------
    instructions : iterable of Instruction

    Returns
    -------
    code : bytes
    """
    return b"".join(instruction.to_bytes() for instruction in instructions)


def to_listing(instructions):
    """Writes the textual listing of an instruction stream, one line
    `<offset-hex>: <MNEMONIC> [0x<immediate-hex>]` per instruction.

    Parameters
    ----------
    instructions : iterable of Instruction

    Returns
    -------
    listing : str
        Empty if there are no instructions, otherwise terminated by a
        newline.
    """
    lines = [str(instruction) for instruction in instructions]
    return "".join(line + "\n" for line in lines)
