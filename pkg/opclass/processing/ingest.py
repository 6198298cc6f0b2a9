"""
Acquisition of contract bytecode.

Contains a small JSON-RPC 2.0 client fetching runtime code with
`eth_getCode` from an Ethereum node, and `normalize_corpus`, which turns
file based corpora into canonical JSONL corpora.
"""

import itertools
import json
import os
import re
import threading
import time
from pathlib import Path

import requests
from joblib import Parallel, delayed
from loguru import logger

from opclass.core.constants import DEFAULT_RPC_URL, RPC_URL_ENV
from opclass.core.exceptions import (
    BadAddressException,
    BytecodeParsingException,
    CorpusIOException,
    NoRecordsException,
    RpcErrorException,
    RpcTransportException,
)
from opclass.evm.disassembler import BytecodeSource, parse_hex

from .datahandler import ContractRecord, read_records, write_records

ADDRESS_PATTERN = re.compile(r"^0x[0-9a-fA-F]{40}$")


def check_address(address):
    """Raises a `BadAddressException` if `address` is not a 20 byte hex
    string with `0x` prefix."""
    if not isinstance(address, str) or not ADDRESS_PATTERN.match(address):
        raise BadAddressException(f"{address!r} is not a valid address")


class RpcEndpoint:
    """
    Connection parameters of a JSON-RPC node.

    Parameters
    ----------
    url : str, optional
        Defaults to the environment variable `OPCLASS_RPC_URL` or, if it is
        not set, to `"http://127.0.0.1:8545"`.

    timeout : float, optional
        Request timeout in seconds.

        Defaults to `10`.

    max_retries : int, optional
        Number of retries after transport errors and HTTP 5xx answers.

        Defaults to `3`.

    backoff : float, optional
        The `n`-th retry waits `n * backoff` seconds.

        Defaults to `0.5`.
    """

    def __init__(self, url=None, timeout=10.0, max_retries=3, backoff=0.5):
        if timeout <= 0:
            raise ValueError("`timeout` is non-positive")
        if max_retries < 0:
            raise ValueError("`max_retries` is negative")
        if backoff < 0:
            raise ValueError("`backoff` is negative")
        self.url = url or os.environ.get(RPC_URL_ENV, DEFAULT_RPC_URL)
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff

    def __repr__(self):
        return (
            f"RpcEndpoint(url={self.url!r}, timeout={self.timeout}, "
            f"max_retries={self.max_retries}, backoff={self.backoff})"
        )

    def to_dict(self):
        return {
            "url": self.url,
            "timeout": self.timeout,
            "max_retries": self.max_retries,
            "backoff": self.backoff,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


class JsonRpcClient:
    """
    Thread-safe JSON-RPC 2.0 client over HTTP POST.

    Parameters
    ----------
    endpoint : RpcEndpoint

    session : requests.Session, optional
        Session used for all requests, e.g. a configured or mocked one.

        Defaults to a new `requests.Session`.
    """

    def __init__(self, endpoint, session=None):
        self.endpoint = endpoint
        self._session = session or requests.Session()
        self._ids = itertools.count(1)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"JsonRpcClient(endpoint={self.endpoint!r})"

    def _next_id(self):
        with self._lock:
            return next(self._ids)

    def call(self, method, params):
        """
        Issues a JSON-RPC request and returns its result.

        Parameters
        ----------
        method : str

        params : list

        Returns
        -------
        result : object

        Raises
        ------
        RpcTransportException
            If the request fails on transport level after all retries or
            the answer is no matching JSON-RPC response.

        RpcErrorException
            If the node answers with an error object.
        """
        request_id = self._next_id()
        body = json.dumps(
            {
                "jsonrpc": "2.0",
                "id": request_id,
                "method": method,
                "params": params,
            },
            separators=(",", ":"),
        )
        response = self._post(body)

        try:
            answer = response.json()
        except ValueError as ve:
            raise RpcTransportException(
                f"{method}: answer is not JSON"
            ) from ve
        if not isinstance(answer, dict) or answer.get("id") != request_id:
            raise RpcTransportException(
                f"{method}: answer does not match request id {request_id}"
            )
        if "error" in answer:
            error = answer["error"] or {}
            raise RpcErrorException(
                error.get("code"), error.get("message", "")
            )
        if "result" not in answer:
            raise RpcTransportException(f"{method}: answer has no result")
        return answer["result"]

    def _post(self, body):
        attempts = self.endpoint.max_retries + 1
        for attempt in range(1, attempts + 1):
            try:
                response = self._session.post(
                    self.endpoint.url,
                    data=body,
                    headers={"Content-Type": "application/json"},
                    timeout=self.endpoint.timeout,
                )
            except requests.RequestException as exc:
                failure = f"transport error {exc!r}"
            else:
                if response.status_code < 500:
                    if response.status_code >= 400:
                        raise RpcTransportException(
                            f"HTTP {response.status_code} from "
                            f"{self.endpoint.url}"
                        )
                    return response
                failure = f"HTTP {response.status_code}"

            if attempt == attempts:
                raise RpcTransportException(
                    f"request to {self.endpoint.url} failed after "
                    f"{attempts} attempts: {failure}"
                )
            logger.warning(
                f"request to {self.endpoint.url} failed ({failure}), "
                f"retry {attempt}/{self.endpoint.max_retries}"
            )
            time.sleep(attempt * self.endpoint.backoff)

    def get_code(self, address, block="latest"):
        """
        Fetches the code of an account.

        Parameters
        ----------
        address : str
            20 byte hex address with `0x` prefix.

        block : str, optional
            Defaults to `"latest"`.

        Returns
        -------
        bytecode : Bytecode
            Empty for externally owned accounts.

        Raises
        ------
        BadAddressException
            If `address` is malformed.
        """
        check_address(address)
        result = self.call("eth_getCode", [address, block])
        if not isinstance(result, str):
            raise RpcTransportException("eth_getCode result is no string")
        return parse_hex(result, source=BytecodeSource.RPC)

    def fetch_codes(self, addresses, max_in_flight=8):
        """
        Fetches the code of several accounts concurrently.

        Parameters
        ----------
        addresses : sequence of str

        max_in_flight : int, optional
            Maximal number of concurrent requests.

            Defaults to `8`.

        Returns
        -------
        codes : list of Bytecode
            In the order of `addresses`.
        """
        if max_in_flight < 1:
            raise ValueError("`max_in_flight` is smaller than 1")
        addresses = list(addresses)
        for address in addresses:
            check_address(address)
        return Parallel(n_jobs=max_in_flight, prefer="threads")(
            delayed(self.get_code)(address) for address in addresses
        )


def fetch_code(endpoint, address, session=None):
    """
    Fetches the code of an account with `eth_getCode`.

    Parameters
    ----------
    endpoint : RpcEndpoint

    address : str

    session : requests.Session, optional

    Returns
    -------
    bytecode : Bytecode

    See also
    --------
    `JsonRpcClient.get_code`
    """
    return JsonRpcClient(endpoint, session).get_code(address)


def _records_from_hex_directory(directory):
    records = []
    for path in sorted(directory.glob("*.hex")):
        address, sep, category = path.stem.partition("_")
        if not sep or not category:
            logger.warning(
                f"{path.name}: skipped, file name is not "
                "<address>_<category>.hex"
            )
            continue
        try:
            code = parse_hex(path.read_text(encoding="utf-8"))
        except BytecodeParsingException as bpe:
            logger.warning(f"{path.name}: skipped, {bpe}")
            continue
        except UnicodeDecodeError as ude:
            logger.warning(f"{path.name}: skipped, no UTF-8 text ({ude})")
            continue
        records.append(ContractRecord(address, code.to_hex(), category))
    return records


def _canonical(record):
    code = parse_hex(record.bytecode)
    return ContractRecord(
        record.address,
        code.to_hex(),
        record.category,
        record.balance,
        record.nonce,
        record.txs,
    )


def normalize_corpus(input_path, output_path):
    """
    Converts a corpus into a canonical JSONL corpus with lower case,
    `0x` prefixed bytecode. Records with unparseable bytecode are logged
    and skipped.

    Parameters
    ----------
    input_path : path_like
        A JSONL corpus or a directory of `<address>_<category>.hex` files.
        The category is the text after the first `_`. Records from `.hex`
        files carry no account data.

    output_path : path_like

    Returns
    -------
    count : int
        Number of written records.

    Raises
    ------
    CorpusIOException
        If the input can not be read or the output can not be written.

    NoRecordsException
        If no valid record was found.
    """
    input_path = Path(input_path)
    try:
        if input_path.is_dir():
            records = _records_from_hex_directory(input_path)
        elif input_path.is_file():
            records = [
                _canonical(record)
                for record in read_records(input_path, skip_invalid=True)
            ]
        else:
            raise CorpusIOException(f"{input_path} does not exist")
    except OSError as oe:
        raise CorpusIOException(f"could not read {input_path}: {oe}") from oe

    if not records:
        raise NoRecordsException(f"{input_path} contains no valid records")
    count = write_records(records, output_path)
    logger.info(f"wrote {count} records to {output_path}")
    return count
