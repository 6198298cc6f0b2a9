"""
Classes and functions to turn contracts into feature vectors.

Code features are raw opcode-family frequencies of the disassembled
bytecode followed by the byte length `size`. Account features are derived
from the balance, nonce and transaction history of a contract account.

Defines the `FeatureSchema` naming the columns of a feature vector and the
`FeatureExtractor` component.
"""

import enum
import statistics
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from opclass.core.constants import (
    ACCOUNT_FEATURE_NAMES,
    DEFAULT_OPCODE_TABLE,
    MISSING,
    SIZE_FEATURE,
)
from opclass.core.exceptions import SchemaMismatchException
from opclass.core.statistics import ComponentWithStatistics
from opclass.evm.disassembler import disassemble, parse_hex
from opclass.evm.opcodes import canonical_families

SCHEMA_VERSION = 1

SCHEMA_NAMES = ("code-0day", "full", "custom")


class FeatureSchema:
    """
    Named, versioned list of feature names.

    - `"code-0day"` schemas hold the opcode families of an opcode table,
    ascending by their smallest opcode value, followed by `"size"`,
    - `"full"` schemas hold the code features followed by the account
    features,
    - `"custom"` schemas hold arbitrary feature names, e.g. of synthetic
    data.

    Parameters
    ----------
    name : {"code-0day", "full", "custom"}

    feature_names : sequence of str
        Unique feature names.

    version : int, optional
        Defaults to the current schema version.

    table : str, optional
        The opcode table the code features were derived from.

        Defaults to `"istanbul"`.
    """

    def __init__(
        self,
        name,
        feature_names,
        version=SCHEMA_VERSION,
        table=DEFAULT_OPCODE_TABLE,
    ):
        if name not in SCHEMA_NAMES:
            raise ValueError(
                f"`name` has to be one of {SCHEMA_NAMES}, got {name!r}"
            )
        feature_names = tuple(str(f) for f in feature_names)
        if len(set(feature_names)) != len(feature_names):
            raise ValueError("`feature_names` are not unique")

        self.name = name
        self.feature_names = feature_names
        self.version = int(version)
        self.table = table

    @classmethod
    def code_0day(cls, table=DEFAULT_OPCODE_TABLE):
        """Schema of the code-only model."""
        return cls(
            "code-0day",
            canonical_families(table) + (SIZE_FEATURE,),
            table=table,
        )

    @classmethod
    def full(cls, table=DEFAULT_OPCODE_TABLE):
        """Schema of the code and account model."""
        return cls(
            "full",
            cls.code_0day(table).feature_names + ACCOUNT_FEATURE_NAMES,
            table=table,
        )

    @classmethod
    def custom(cls, feature_names):
        """Schema of features not derived from bytecode."""
        return cls("custom", feature_names)

    @classmethod
    def for_feature_set(cls, feature_set, table=DEFAULT_OPCODE_TABLE):
        """
        Parameters
        ----------
        feature_set : {"code", "full"}

        table : str, optional

        Returns
        -------
        schema : FeatureSchema
        """
        if feature_set == "code":
            return cls.code_0day(table)
        if feature_set == "full":
            return cls.full(table)
        raise ValueError(
            f"`feature_set` has to be 'code' or 'full', got {feature_set!r}"
        )

    def __len__(self):
        return len(self.feature_names)

    def __eq__(self, other):
        if not isinstance(other, FeatureSchema):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return (
            f"FeatureSchema(name={self.name!r}, "
            f"n_features={len(self.feature_names)}, "
            f"version={self.version}, table={self.table!r})"
        )

    @property
    def requires_account(self):
        return self.name == "full"

    @property
    def code_feature_count(self):
        """Number of features that are not account features."""
        if self.name == "custom":
            return 0
        return sum(f not in ACCOUNT_FEATURE_NAMES for f in self.feature_names)

    @property
    def header(self):
        """The CSV header: all feature names followed by `"label"`."""
        return list(self.feature_names) + ["label"]

    def index(self, feature_name):
        return self.feature_names.index(feature_name)

    def subset(self, mask):
        """
        Parameters
        ----------
        mask : array_like of bool

        Returns
        -------
        schema : FeatureSchema
            Schema of the same name containing the selected features.
        """
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (len(self.feature_names),):
            raise ValueError("`mask` does not match the number of features")
        return FeatureSchema(
            self.name,
            [f for f, keep in zip(self.feature_names, mask) if keep],
            self.version,
            self.table,
        )

    def to_dict(self):
        return {
            "name": self.name,
            "feature_names": list(self.feature_names),
            "version": self.version,
            "table": self.table,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["name"],
            data["feature_names"],
            data.get("version", SCHEMA_VERSION),
            data.get("table", DEFAULT_OPCODE_TABLE),
        )


class CodeFeatures(NamedTuple):
    """
    Attributes
    ----------
    counts : dict
        Maps every opcode family of the table to its number of
        occurrences.

    size : int
        Byte length of the bytecode.
    """

    counts: dict
    size: int


class AccountFeatures(NamedTuple):
    """
    Account features of a contract. Every field may be `MISSING` (`None`).
    Wei amounts are exact integers, averages and deviations are floats.
    """

    balance: Optional[int]
    nonce: Optional[int]
    nbr_trans_act: Optional[int]
    nbr_trans_psv: Optional[int]
    eth_in: Optional[int]
    eth_out: Optional[int]
    eth_avg: Optional[float]
    eth_sdev: Optional[float]
    lifetime: Optional[int]
    trs_gap_avg: Optional[float]
    trs_gap_sdev: Optional[float]
    nbr_addr: Optional[int]

    def to_vector(self):
        """
        Returns
        -------
        vector : numpy.ndarray of float
            The features in the order of `ACCOUNT_FEATURE_NAMES`, `MISSING`
            values as `nan`. Large wei amounts lose precision here.
        """
        return np.array(
            [np.nan if value is MISSING else float(value) for value in self],
            dtype=float,
        )


class Direction(enum.Enum):
    """Direction of a transaction seen from the contract account."""

    IN = "in"
    OUT = "out"


@dataclass(frozen=True)
class TransactionRecord:
    """One transaction of a contract account.

    Raises a `ValueError` if the timestamp or the value is negative.
    """

    #: Unix timestamp in seconds.
    timestamp: int

    direction: Direction

    #: Transferred amount in wei.
    value: int

    #: Address of the other party.
    counterparty: str

    def __post_init__(self):
        if self.timestamp < 0:
            raise ValueError("`timestamp` is negative")
        if self.value < 0:
            raise ValueError("`value` is negative")
        if not isinstance(self.direction, Direction):
            object.__setattr__(self, "direction", Direction(self.direction))

    def to_dict(self):
        return {
            "t": self.timestamp,
            "dir": self.direction.value,
            "value": str(self.value),
            "addr": self.counterparty,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            int(data["t"]),
            Direction(data["dir"]),
            int(data["value"]),
            str(data["addr"]),
        )


def count_families(instructions, table=DEFAULT_OPCODE_TABLE):
    """
    Parameters
    ----------
    instructions : iterable of Instruction

    table : str, optional

    Returns
    -------
    counts : dict
        Number of instructions per opcode family, every family of the
        table is present.
    """
    counts = dict.fromkeys(canonical_families(table), 0)
    for instruction in instructions:
        family = instruction.spec.family
        counts[family] = counts.get(family, 0) + 1
    return counts


def extract_code_features(code, table=DEFAULT_OPCODE_TABLE):
    """
    Parameters
    ----------
    code : Bytecode or bytes-like

    table : str, optional
        Opcode table version.

        Defaults to `"istanbul"`.

    Returns
    -------
    features : CodeFeatures
        Raw family counts and the byte length.
    """
    raw = getattr(code, "code", code)
    return CodeFeatures(
        count_families(disassemble(raw, table), table), len(raw)
    )


def extract_account_features(balance, nonce, txs):
    """
    Computes the account features from a transaction history.

    Parameters
    ----------
    balance : int or None
        Balance in wei.

    nonce : int or None

    txs : iterable of TransactionRecord
        Order does not matter.

    Returns
    -------
    features : AccountFeatures
        Value statistics are `MISSING` without transactions, gap
        statistics are `MISSING` with fewer than two transactions.
        Standard deviations are population standard deviations.
    """
    txs = sorted(txs, key=lambda tx: tx.timestamp)
    values = [tx.value for tx in txs]
    incoming = [tx.value for tx in txs if tx.direction is Direction.IN]
    outgoing = [tx.value for tx in txs if tx.direction is Direction.OUT]

    eth_avg = eth_sdev = MISSING
    if values:
        eth_avg = float(statistics.mean(values))
        eth_sdev = float(statistics.pstdev(values))

    lifetime = 0
    trs_gap_avg = trs_gap_sdev = MISSING
    if len(txs) >= 2:
        timestamps = np.array([tx.timestamp for tx in txs], dtype=np.int64)
        gaps = np.diff(timestamps)
        lifetime = int(timestamps[-1] - timestamps[0])
        trs_gap_avg = float(gaps.mean())
        trs_gap_sdev = float(gaps.std())

    return AccountFeatures(
        balance=balance,
        nonce=nonce,
        nbr_trans_act=len(outgoing),
        nbr_trans_psv=len(incoming),
        eth_in=sum(incoming),
        eth_out=sum(outgoing),
        eth_avg=eth_avg,
        eth_sdev=eth_sdev,
        lifetime=lifetime,
        trs_gap_avg=trs_gap_avg,
        trs_gap_sdev=trs_gap_sdev,
        nbr_addr=len({tx.counterparty.lower() for tx in txs}),
    )


def assemble_vector(code, account, schema):
    """
    Builds the dense feature vector of a contract.

    Parameters
    ----------
    code : CodeFeatures

    account : AccountFeatures or None
        Ignored for code-only schemas.

    schema : FeatureSchema

    Returns
    -------
    vector : numpy.ndarray of float
        Ordered as `schema.feature_names`, missing values are `nan`.

    Raises
    ------
    SchemaMismatchException
        If a full schema is requested without account features or the
        schema is not derived from bytecode.
    """
    if schema.name == "custom":
        raise SchemaMismatchException(
            "custom schemas can not be assembled from contract features"
        )
    if schema.requires_account and account is None:
        raise SchemaMismatchException(
            "schema `full` requires account features"
        )

    values = dict(code.counts)
    values[SIZE_FEATURE] = code.size
    if schema.requires_account:
        values.update(zip(ACCOUNT_FEATURE_NAMES, account.to_vector()))

    try:
        return np.array(
            [values[name] for name in schema.feature_names], dtype=float
        )
    except KeyError as ke:
        raise SchemaMismatchException(
            f"feature {ke.args[0]!r} is not known"
        ) from ke


class FeatureExtractor(ComponentWithStatistics):
    """
    Component mapping contract records to feature vectors of a schema.

    Parameters
    ----------
    schema : FeatureSchema
        A `"code-0day"` or `"full"` schema.

    See also
    --------
    `assemble_vector`
    """

    def __init__(self, schema):
        super().__init__()
        if schema.name == "custom":
            raise ValueError("`schema` is not derived from bytecode")
        self.schema = schema

    def __repr__(self):
        return f"FeatureExtractor(schema={self.schema!r})"

    def extract(self, record):
        """
        Parameters
        ----------
        record : ContractRecord

        Returns
        -------
        vector : numpy.ndarray of float

        Raises
        ------
        SchemaMismatchException
            If the schema needs account data the record does not have.
        """
        return self.extract_many([record])[0]

    def extract_many(self, records):
        """
        Parameters
        ----------
        records : iterable of ContractRecord

        Returns
        -------
        X : numpy.ndarray of shape (n, d)
        """
        rows = []
        n_instructions = n_truncated = 0
        for record in records:
            instructions = disassemble(
                parse_hex(record.bytecode), self.schema.table
            )
            n_instructions += len(instructions)
            n_truncated += sum(i.truncated for i in instructions)
            code = CodeFeatures(
                count_families(instructions, self.schema.table),
                sum(i.size for i in instructions),
            )
            account = None
            if self.schema.requires_account and record.has_account_data:
                account = extract_account_features(
                    record.balance, record.nonce, record.txs
                )
            rows.append(assemble_vector(code, account, self.schema))

        self.set_statistics(
            n_records=len(rows),
            n_instructions=n_instructions,
            n_truncated_pushes=n_truncated,
        )
        return np.array(rows, dtype=float).reshape(
            len(rows), len(self.schema)
        )
