# pylint: disable-all

import json
import os
import tempfile
from unittest import TestCase

import numpy as np

import opclass.processing.datahandler as dth
from opclass.core.exceptions import (
    BytecodeParsingException,
    CorpusIOException,
    FileReadingException,
    SchemaMismatchException,
)
from opclass.processing.extractor import (
    Direction,
    FeatureSchema,
    TransactionRecord,
)


def _records():
    return [
        dth.ContractRecord("0x01", "0x600160015401", "Wallet"),
        dth.ContractRecord(
            "0x02",
            "fe",
            "Game",
            balance=5,
            nonce=1,
            txs=(
                TransactionRecord(100, Direction.IN, 5, "0xAa"),
                TransactionRecord(400, Direction.OUT, 1, "0xaa"),
            ),
        ),
    ]


class TestContractRecord(TestCase):
    def test_to_dict(self):
        """
        Input/Output-Test.
        """
        first, second = _records()
        self.assertEqual(
            first.to_dict(),
            {
                "address": "0x01",
                "bytecode": "0x600160015401",
                "category": "Wallet",
            },
        )
        result = second.to_dict()
        self.assertEqual(result["balance"], "5")
        self.assertEqual(
            result["txs"][0],
            {"t": 100, "dir": "in", "value": "5", "addr": "0xAa"},
        )

    def test_from_dict(self):
        """
        Input/Output-Test.
        """
        for record in _records():
            with self.subTest(record=record.address):
                self.assertEqual(
                    dth.ContractRecord.from_dict(record.to_dict()), record
                )

    def test_from_dict_big_value(self):
        """
        EdgeCase: Wei amounts beyond 64 bit stay exact.
        """
        record = dth.ContractRecord.from_dict(
            {
                "bytecode": "",
                "category": "Finance",
                "balance": str(2**100),
                "nonce": 0,
                "txs": [],
            }
        )
        self.assertEqual(record.balance, 2**100)
        self.assertTrue(record.has_account_data)

    def test_from_dict_Error(self):
        """
        Error if required keys are missing or bytecode is not a string.
        """
        with self.assertRaises(KeyError):
            dth.ContractRecord.from_dict({"bytecode": "00"})
        with self.assertRaises(TypeError):
            dth.ContractRecord.from_dict({"bytecode": 1, "category": "x"})


class TestRecordFiles(TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = os.path.join(self.tmp.name, "corpus.jsonl")

    def _write_lines(self, lines):
        with open(self.path, "w", encoding="utf-8") as file:
            file.write("\n".join(lines) + "\n")

    def test_write_and_read_records(self):
        """
        Input/Output-Test.
        """
        self.assertEqual(dth.write_records(_records(), self.path), 2)
        self.assertEqual(dth.read_records(self.path), _records())

    def test_read_records_blank_lines(self):
        """
        EdgeCase: Blank lines are ignored.
        """
        self._write_lines(
            ["", json.dumps(_records()[0].to_dict()), "   "]
        )
        self.assertEqual(len(dth.read_records(self.path)), 1)

    def test_read_records_malformed_Error(self):
        """
        Error if a line is not a valid record.
        """
        self._write_lines(["{not json"])
        with self.assertRaises(FileReadingException):
            dth.read_records(self.path)

    def test_read_records_bytecode_Error(self):
        """
        Error if the bytecode of a record can not be parsed.
        """
        self._write_lines(['{"bytecode": "0x6", "category": "Game"}'])
        with self.assertRaises(BytecodeParsingException):
            dth.read_records(self.path)

    def test_read_records_skip_invalid(self):
        """
        EdgeCase: Invalid lines are skipped on request.
        """
        self._write_lines(
            [
                '{"bytecode": "0x6", "category": "Game"}',
                "{not json",
                json.dumps(_records()[0].to_dict()),
            ]
        )
        result = dth.read_records(self.path, skip_invalid=True)
        self.assertEqual(result, _records()[:1])

    def test_read_records_skip_invalid_utf8(self):
        """
        EdgeCase: Lines that are no UTF-8 text are skipped on request.
        """
        with open(self.path, "wb") as file:
            file.write(b'{"bytecode": "0x00", "category": "\xff"}\n')
            file.write(json.dumps(_records()[0].to_dict()).encode("utf-8"))
        result = dth.read_records(self.path, skip_invalid=True)
        self.assertEqual(result, _records()[:1])

    def test_read_records_utf8_Error(self):
        """
        Error if a line is no UTF-8 text.
        """
        with open(self.path, "wb") as file:
            file.write(b"\xff\xfe\n")
        with self.assertRaises(FileReadingException):
            dth.read_records(self.path)

    def test_read_records_missing_file_Error(self):
        """
        Error if the file does not exist.
        """
        with self.assertRaises(CorpusIOException):
            dth.read_records(os.path.join(self.tmp.name, "missing.jsonl"))


class TestJsonlCorpusHandler(TestCase):
    def test_handle_code(self):
        """
        Input/Output-Test.
        """
        handler = dth.JsonlCorpusHandler()
        ds = handler.handle(_records())
        schema = FeatureSchema.code_0day()
        self.assertEqual(ds.schema, schema)
        self.assertEqual(ds.class_names, ("Wallet", "Game"))
        self.assertEqual(ds.X[0, schema.index("PUSH")], 2)
        self.assertEqual(ds.X[0, schema.index("size")], 6)
        self.assertEqual(ds.X[1, schema.index("INVALID")], 1)
        statistics = handler.get_latest_statistics()
        self.assertEqual(statistics["n_records"], 2)
        self.assertEqual(statistics["n_instructions"], 5)
        self.assertEqual(statistics["n_truncated_pushes"], 0)
        self.assertEqual(statistics["class_counts"], {"Wallet": 1, "Game": 1})

    def test_handle_full(self):
        """
        Input/Output-Test.
        """
        schema = FeatureSchema.full()
        ds = dth.JsonlCorpusHandler(schema).handle(_records()[1:])
        row = dict(zip(schema.feature_names, ds.X[0]))
        self.assertEqual(row["Balance"], 5)
        self.assertEqual(row["Nbr_trans_act"], 1)
        self.assertEqual(row["Nbr_trans_psv"], 1)
        self.assertEqual(row["Eth_avg"], 3)
        self.assertEqual(row["Lifetime"], 300)
        self.assertEqual(row["Trs_gap_avg"], 300)
        self.assertEqual(row["Trs_gap_sdev"], 0)
        self.assertEqual(row["Nbr_addr"], 1)

    def test_handle_full_Error(self):
        """
        Error if the full schema meets a record without account data.
        """
        with self.assertRaises(SchemaMismatchException):
            dth.JsonlCorpusHandler(FeatureSchema.full()).handle(_records())

    def test_handle_path(self):
        """
        Input/Output-Test.
        """
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "corpus.jsonl")
            dth.write_records(_records(), path)
            ds = dth.read_corpus(path, class_names=["Game", "Wallet"])
        np.testing.assert_array_equal(ds.y, [1, 0])
