"""
The EVM opcode table.

The table is data driven: `OPCODE_TABLES` maps a table version to a mapping
of byte values to mnemonics. Later forks extend earlier tables, so new
instructions can be added behind a new version tag without touching the
decoding logic.

- `"istanbul"` (default) is the instruction set of early 2020,
- `"london"` adds `BASEFEE`,
- `"shanghai"` adds `PUSH0`.
"""

import re
from functools import lru_cache
from typing import NamedTuple

from opclass.core.constants import DEFAULT_OPCODE_TABLE

_ISTANBUL = {
    0x00: "STOP",
    0x01: "ADD",
    0x02: "MUL",
    0x03: "SUB",
    0x04: "DIV",
    0x05: "SDIV",
    0x06: "MOD",
    0x07: "SMOD",
    0x08: "ADDMOD",
    0x09: "MULMOD",
    0x0A: "EXP",
    0x0B: "SIGNEXTEND",
    0x10: "LT",
    0x11: "GT",
    0x12: "SLT",
    0x13: "SGT",
    0x14: "EQ",
    0x15: "ISZERO",
    0x16: "AND",
    0x17: "OR",
    0x18: "XOR",
    0x19: "NOT",
    0x1A: "BYTE",
    0x1B: "SHL",
    0x1C: "SHR",
    0x1D: "SAR",
    0x20: "SHA3",
    0x30: "ADDRESS",
    0x31: "BALANCE",
    0x32: "ORIGIN",
    0x33: "CALLER",
    0x34: "CALLVALUE",
    0x35: "CALLDATALOAD",
    0x36: "CALLDATASIZE",
    0x37: "CALLDATACOPY",
    0x38: "CODESIZE",
    0x39: "CODECOPY",
    0x3A: "GASPRICE",
    0x3B: "EXTCODESIZE",
    0x3C: "EXTCODECOPY",
    0x3D: "RETURNDATASIZE",
    0x3E: "RETURNDATACOPY",
    0x3F: "EXTCODEHASH",
    0x40: "BLOCKHASH",
    0x41: "COINBASE",
    0x42: "TIMESTAMP",
    0x43: "NUMBER",
    0x44: "DIFFICULTY",
    0x45: "GASLIMIT",
    0x46: "CHAINID",
    0x47: "SELFBALANCE",
    0x50: "POP",
    0x51: "MLOAD",
    0x52: "MSTORE",
    0x53: "MSTORE8",
    0x54: "SLOAD",
    0x55: "SSTORE",
    0x56: "JUMP",
    0x57: "JUMPI",
    0x58: "PC",
    0x59: "MSIZE",
    0x5A: "GAS",
    0x5B: "JUMPDEST",
    **{0x60 + i: f"PUSH{i + 1}" for i in range(32)},
    **{0x80 + i: f"DUP{i + 1}" for i in range(16)},
    **{0x90 + i: f"SWAP{i + 1}" for i in range(16)},
    **{0xA0 + i: f"LOG{i}" for i in range(5)},
    0xF0: "CREATE",
    0xF1: "CALL",
    0xF2: "CALLCODE",
    0xF3: "RETURN",
    0xF4: "DELEGATECALL",
    0xF5: "CREATE2",
    0xFA: "STATICCALL",
    0xFD: "REVERT",
    0xFE: "INVALID",
    0xFF: "SELFDESTRUCT",
}

_LONDON = {**_ISTANBUL, 0x48: "BASEFEE"}

_SHANGHAI = {**_LONDON, 0x5F: "PUSH0"}

OPCODE_TABLES = {
    "istanbul": _ISTANBUL,
    "london": _LONDON,
    "shanghai": _SHANGHAI,
}

INVALID = "INVALID"

_FAMILY_SUFFIX = re.compile(r"^(PUSH|DUP|SWAP|LOG)\d+$")
_PUSH = re.compile(r"^PUSH(\d+)$")


class OpcodeSpec(NamedTuple):
    """Static opcode-table entry.

    Attributes
    ----------
    value : int
        The byte value of the opcode.

    mnemonic : str

    immediate_len : int
        Number of immediate bytes following the opcode (`N` for `PUSHN`,
        `0` otherwise).

    family : str
        The mnemonic with the numeric suffix of the `PUSH`, `DUP`, `SWAP`
        and `LOG` families stripped.
    """

    value: int
    mnemonic: str
    immediate_len: int
    family: str


def merge_family(mnemonic):
    """Maps a mnemonic to its opcode family, e.g. `"PUSH7"` to `"PUSH"`
    and `"LOG3"` to `"LOG"`. All other mnemonics are returned unchanged.

    Parameters
    ----------
    mnemonic : str

    Returns
    -------
    family : str
    """
    match = _FAMILY_SUFFIX.match(mnemonic)
    if match is None:
        return mnemonic
    return match.group(1)


def _make_spec(value, mnemonic):
    push = _PUSH.match(mnemonic)
    immediate_len = int(push.group(1)) if push else 0
    return OpcodeSpec(value, mnemonic, immediate_len, merge_family(mnemonic))


@lru_cache(maxsize=None)
def opcode_table(version=DEFAULT_OPCODE_TABLE):
    """Returns the complete lookup table of a table version.

    Parameters
    ----------
    version : str, optional
        One of the keys of `OPCODE_TABLES`.

        Defaults to `"istanbul"`.

    Returns
    -------
    table : tuple of OpcodeSpec
        Tuple of length 256, entry `i` belongs to byte value `i`.
        Unassigned byte values get an `INVALID` entry carrying their own
        value.
    """
    if version not in OPCODE_TABLES:
        raise ValueError(f"`version` {version!r} is not a known opcode table")
    mnemonics = OPCODE_TABLES[version]
    return tuple(
        _make_spec(value, mnemonics.get(value, INVALID))
        for value in range(256)
    )


def opcode_lookup(value, version=DEFAULT_OPCODE_TABLE):
    """Looks up the table entry of a byte value. The lookup is total,
    unassigned byte values return an `INVALID` entry with immediate length
    `0`.

    Parameters
    ----------
    value : int
        Byte value between `0x00` and `0xff`.

    version : str, optional
        Opcode table version.

        Defaults to `"istanbul"`.

    Returns
    -------
    spec : OpcodeSpec
    """
    if not 0 <= value <= 0xFF:
        raise ValueError("`value` is not a byte")
    return opcode_table(version)[value]


@lru_cache(maxsize=None)
def canonical_families(version=DEFAULT_OPCODE_TABLE):
    """Returns all opcode families of a table, ordered ascending by the
    smallest opcode value belonging to the family.

    Parameters
    ----------
    version : str, optional
        Opcode table version.

        Defaults to `"istanbul"`.

    Returns
    -------
    families : tuple of str
    """
    if version not in OPCODE_TABLES:
        raise ValueError(f"`version` {version!r} is not a known opcode table")
    families = []
    for value in sorted(OPCODE_TABLES[version]):
        family = merge_family(OPCODE_TABLES[version][value])
        if family not in families:
            families.append(family)
    return tuple(families)
