"""
Contains constants used throughout the package.

- `MISSING` is the marker of a feature value that is not known. In feature
vectors it is represented by `numpy.nan`,

- `SIZE_FEATURE` is the name of the code feature holding the byte length of
the bytecode,

- `ACCOUNT_FEATURE_NAMES` is the ordered tuple of the names of the account
features,

- `CATEGORIES` is the tuple of contract categories used by default for
synthetic corpora,

- `DEFAULT_OPCODE_TABLE` is the name of the opcode table used if no other
table is requested,

- `RPC_URL_ENV` is the name of the environment variable overriding the
JSON-RPC endpoint,

- `DEFAULT_RPC_URL` is the endpoint used if neither a flag nor the
environment variable is given.
"""

MISSING = None

SIZE_FEATURE = "size"

ACCOUNT_FEATURE_NAMES = (
    "Balance",
    "Nonce",
    "Nbr_trans_act",
    "Nbr_trans_psv",
    "Eth_in",
    "Eth_out",
    "Eth_avg",
    "Eth_sdev",
    "Lifetime",
    "Trs_gap_avg",
    "Trs_gap_sdev",
    "Nbr_addr",
)

CATEGORIES = ("Governance", "Finance", "Gambling", "Game", "Wallet", "Social")

DEFAULT_OPCODE_TABLE = "istanbul"

RPC_URL_ENV = "OPCLASS_RPC_URL"

DEFAULT_RPC_URL = "http://127.0.0.1:8545"
