"""
Classes used to read and write labeled contract corpora.

Two file formats are supported:

- `.csv` feature tables with the header `f1,...,fn,label`, missing values
being empty cells,
- `.jsonl` raw corpora with one contract record per line, which are turned
into feature vectors by a `FeatureExtractor`.

Defines the `CorpusHandler` abstract base class that can be used to
create custom handlers to read formats which are not supported yet.
"""

import csv
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from opclass.core.data import LabeledDataset
from opclass.core.exceptions import (
    BytecodeParsingException,
    CorpusIOException,
    FileReadingException,
    RaggedRowException,
    SchemaHeaderMismatchException,
)
from opclass.core.statistics import ComponentWithStatistics
from opclass.evm.disassembler import parse_hex
from opclass.evm.opcodes import OPCODE_TABLES

from .extractor import FeatureExtractor, FeatureSchema, TransactionRecord

FLOAT_FORMAT = "%.17g"

SCHEMA_SUFFIX = ".schema.json"


@dataclass(frozen=True)
class ContractRecord:
    """A labeled contract as stored in a raw JSONL corpus.

    A record without `balance` carries no account data.
    """

    address: str
    #: Hex string, with or without `0x` prefix.
    bytecode: str
    category: str
    balance: Optional[int] = None
    nonce: Optional[int] = None
    txs: Tuple[TransactionRecord, ...] = field(default_factory=tuple)

    @property
    def has_account_data(self):
        return self.balance is not None

    def to_dict(self):
        """
        Returns
        -------
        record : dict
            JSON object in corpus format, wei amounts as decimal strings.
            Account keys are only present if the record has account data.
        """
        data = {
            "address": self.address,
            "bytecode": self.bytecode,
            "category": self.category,
        }
        if self.has_account_data:
            data["balance"] = str(self.balance)
            data["nonce"] = self.nonce
            data["txs"] = [tx.to_dict() for tx in self.txs]
        return data

    @classmethod
    def from_dict(cls, data):
        """
        Parameters
        ----------
        data : dict
            JSON object in corpus format.

        Returns
        -------
        record : ContractRecord

        Raises
        ------
        ValueError, KeyError, TypeError
            If the object is malformed.
        """
        if not isinstance(data["bytecode"], str):
            raise TypeError("`bytecode` is not a string")
        balance = data.get("balance")
        nonce = data.get("nonce")
        return cls(
            address=str(data.get("address", "")),
            bytecode=data["bytecode"],
            category=str(data["category"]),
            balance=None if balance is None else int(balance),
            nonce=None if nonce is None else int(nonce),
            txs=tuple(
                TransactionRecord.from_dict(tx) for tx in data.get("txs", [])
            ),
        )


def read_records(path, skip_invalid=False):
    """
    Reads the records of a raw JSONL corpus.

    Parameters
    ----------
    path : path_like

    skip_invalid : bool, optional
        If `True`, lines that are no valid records or carry unparseable
        bytecode are logged and skipped instead of raising.

        Defaults to `False`.

    Returns
    -------
    records : list of ContractRecord

    Raises
    ------
    FileReadingException
        If a line is malformed and `skip_invalid` is `False`.

    BytecodeParsingException
        If the bytecode of a record can not be parsed and `skip_invalid`
        is `False`.

    CorpusIOException
        If the file can not be read.
    """
    records = []
    try:
        with open(path, "rb") as file:
            lines = list(file)
    except OSError as oe:
        raise CorpusIOException(f"could not read {path}: {oe}") from oe

    # lines are decoded one by one, invalid UTF-8 only spoils its own line
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = ContractRecord.from_dict(
                json.loads(line.decode("utf-8"))
            )
            parse_hex(record.bytecode)
        except BytecodeParsingException as bpe:
            if not skip_invalid:
                raise
            logger.warning(f"{path}:{line_no}: skipped record, {bpe}")
            continue
        except (ValueError, KeyError, TypeError) as err:
            if not skip_invalid:
                raise FileReadingException(
                    f"{path}:{line_no}: malformed record ({err!r})"
                ) from err
            logger.warning(f"{path}:{line_no}: skipped record, {err!r}")
            continue
        records.append(record)
    return records


def write_records(records, path):
    """
    Writes contract records as a raw JSONL corpus, one compact JSON object
    per line.

    Parameters
    ----------
    records : iterable of ContractRecord

    path : path_like

    Returns
    -------
    count : int
        Number of written records.
    """
    count = 0
    try:
        with open(path, "w", encoding="utf-8") as file:
            for record in records:
                file.write(
                    json.dumps(record.to_dict(), separators=(",", ":"))
                    + "\n"
                )
                count += 1
    except OSError as oe:
        raise CorpusIOException(f"could not write {path}: {oe}") from oe
    return count


class CorpusHandler(ComponentWithStatistics, ABC):
    """Base class for all corpus handler classes."""

    @abstractmethod
    def handle(self, data):
        """This method should be used to read a labeled corpus in a format
        that is dependent on the handler.

        Parameters
        ----------
        data :
            Corpus in a format compatible to the inheriting handler.

        Returns
        -------
        dataset : LabeledDataset
        """

    def set_statistics(self, dataset):
        """
        Computes standard statistics for the output of a corpus handler.

        Parameters
        ----------
        dataset : LabeledDataset
        """
        super().set_statistics(
            n_samples=dataset.n_samples,
            n_features=dataset.n_features,
            class_counts=dict(
                zip(dataset.class_names, dataset.class_counts())
            ),
        )


def schema_path(path):
    """Path of the schema file written next to a .csv feature table."""
    return Path(f"{path}{SCHEMA_SUFFIX}")


def _infer_schema(feature_names):
    # tables with equal families, e.g. london and shanghai, give the first
    feature_names = tuple(feature_names)
    for table in OPCODE_TABLES:
        for schema in (
            FeatureSchema.code_0day(table),
            FeatureSchema.full(table),
        ):
            if feature_names == schema.feature_names:
                return schema
    return FeatureSchema.custom(feature_names)


def _read_schema_file(path, header):
    """Returns schema and class names stored next to `path`, or `None` if
    there is no schema file or it belongs to another header."""
    sidecar = schema_path(path)
    if not sidecar.is_file():
        return None
    try:
        with open(sidecar, "r", encoding="utf-8") as file:
            data = json.load(file)
        schema = FeatureSchema.from_dict(data["schema"])
        class_names = data.get("class_names")
    except (
        OSError, ValueError, KeyError, TypeError, AttributeError
    ) as err:
        raise FileReadingException(
            f"{sidecar} is no valid schema file: {err}"
        ) from err
    if list(schema.header) != header:
        logger.warning(
            f"{sidecar.name} does not match the header of {path}, ignored"
        )
        return None
    return schema, class_names


def _parse_cell(cell):
    return float(cell) if cell.strip() else np.nan


class CsvCorpusHandler(CorpusHandler):
    """A corpus handler to read feature tables from a .csv file.

    Parameters
    ----------
    schema : FeatureSchema, optional
        If given, the header has to match the schema exactly. Otherwise
        the schema is taken from the schema file written by
        `write_corpus`, or inferred from the header if there is none.

    class_names : sequence of str, optional
        Known class names, also fixing the class order.

        Defaults to the class names of the schema file, or the labels in
        order of first appearance.

    See also
    --------
    `CorpusHandler`, `write_corpus`
    """

    def __init__(self, schema=None, class_names=None):
        super().__init__()
        self._schema = schema
        self._class_names = class_names

    def handle(self, data):
        """
        Parameters
        ----------
        data : path_like
            Path to a .csv file.

        Raises
        ------
        SchemaHeaderMismatchException
            If the header does not fit the schema or does not end with
            `label`.

        RaggedRowException
            If a row has a different number of cells than the header.

        UnknownLabelException
            If `class_names` is given and a label is not contained.

        See also
        --------
        `CorpusHandler.handle`
        """
        try:
            with open(data, "r", encoding="utf-8", newline="") as file:
                rows = list(csv.reader(file))
        except OSError as oe:
            raise CorpusIOException(f"could not read {data}: {oe}") from oe
        except UnicodeDecodeError as ude:
            raise FileReadingException(f"{data} is no UTF-8 text") from ude

        if not rows or not rows[0] or rows[0][-1] != "label":
            raise SchemaHeaderMismatchException(
                f"header of {data} does not end with `label`"
            )
        header = rows[0]
        if self._schema is not None and header != self._schema.header:
            raise SchemaHeaderMismatchException(
                f"header of {data} does not match schema "
                f"`{self._schema.name}`"
            )
        schema, class_names = self._schema, self._class_names
        stored = _read_schema_file(data, header)
        if stored is not None:
            if schema is None:
                schema = stored[0]
            if class_names is None:
                class_names = stored[1]
        if schema is None:
            schema = _infer_schema(header[:-1])

        values, labels = [], []
        for row_no, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise RaggedRowException(
                    f"{data}:{row_no}: row has {len(row)} cells, "
                    f"header has {len(header)}"
                )
            try:
                values.append([_parse_cell(cell) for cell in row[:-1]])
            except ValueError as ve:
                raise FileReadingException(
                    f"{data}:{row_no}: {ve}"
                ) from ve
            labels.append(row[-1])

        dataset = LabeledDataset.from_labels(
            schema,
            np.array(values, dtype=float).reshape(len(values), len(schema)),
            labels,
            class_names,
        )
        self.set_statistics(dataset)
        return dataset


class JsonlCorpusHandler(CorpusHandler):
    """A corpus handler to read raw JSONL corpora and extract features.

    Parameters
    ----------
    schema : FeatureSchema, optional
        Schema of the extracted features.

        Defaults to `FeatureSchema.code_0day()`.

    class_names : sequence of str, optional
        Known class names, also fixing the class order.

        Defaults to the categories in order of first appearance.

    See also
    --------
    `CorpusHandler`
    """

    def __init__(self, schema=None, class_names=None):
        super().__init__()
        self._extractor = FeatureExtractor(schema or FeatureSchema.code_0day())
        self._class_names = class_names

    def handle(self, data):
        """
        Parameters
        ----------
        data : path_like or iterable of ContractRecord
            Path to a .jsonl file or already read records.

        Raises
        ------
        SchemaMismatchException
            If the schema is `"full"` and a record has no account data.

        See also
        --------
        `CorpusHandler.handle`, `read_records`
        """
        if isinstance(data, (str, Path)):
            data = read_records(data)
        records = list(data)
        X = self._extractor.extract_many(records)
        dataset = LabeledDataset.from_labels(
            self._extractor.schema,
            X,
            [record.category for record in records],
            self._class_names,
        )
        self.set_statistics(dataset)
        self.update_statistics(**self._extractor.get_latest_statistics())
        return dataset


def read_corpus(path, schema=None, class_names=None):
    """
    Reads a labeled corpus, dispatching on the file suffix.

    Parameters
    ----------
    path : path_like
        A `.csv` feature table or a `.jsonl` raw corpus.

    schema : FeatureSchema, optional
        See `CsvCorpusHandler` and `JsonlCorpusHandler`.

    class_names : sequence of str, optional

    Returns
    -------
    dataset : LabeledDataset
    """
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        handler = CsvCorpusHandler(schema, class_names)
    elif suffix in (".jsonl", ".json"):
        handler = JsonlCorpusHandler(schema, class_names)
    else:
        raise FileReadingException(
            f"unsupported corpus format {suffix!r}, use .csv or .jsonl"
        )
    return handler.handle(path)


def write_corpus(dataset, path):
    """
    Writes a dataset as .csv feature table. Floats are written with 17
    significant digits, missing values as empty cells.

    Schema and class names are written to a JSON file next to the table,
    see `schema_path`, so reading the table again yields an equal dataset.

    Parameters
    ----------
    dataset : LabeledDataset

    path : path_like
    """
    frame = pd.DataFrame(dataset.X, columns=list(dataset.feature_names))
    frame["label"] = dataset.labels
    stored = {
        "schema": dataset.schema.to_dict(),
        "class_names": list(dataset.class_names),
    }
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")
        with open(schema_path(path), "w", encoding="utf-8") as file:
            json.dump(stored, file, indent=2)
    except OSError as oe:
        raise CorpusIOException(f"could not write {path}: {oe}") from oe
