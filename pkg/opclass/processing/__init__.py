"""
Components to read, generate and featurize contract corpora.
"""

from .datahandler import (
    ContractRecord,
    CorpusHandler,
    CsvCorpusHandler,
    JsonlCorpusHandler,
    read_corpus,
    read_records,
    write_corpus,
    write_records,
)
from .extractor import (
    AccountFeatures,
    CodeFeatures,
    Direction,
    FeatureExtractor,
    FeatureSchema,
    TransactionRecord,
    assemble_vector,
    extract_account_features,
    extract_code_features,
)
from .ingest import (
    JsonRpcClient,
    RpcEndpoint,
    fetch_code,
    normalize_corpus,
)
from .sampler import (
    BytecodeSampler,
    CorpusSampler,
    FeatureSampler,
    imbalanced_class_sizes,
)

__all__ = [
    "ContractRecord",
    "CorpusHandler",
    "CsvCorpusHandler",
    "JsonlCorpusHandler",
    "read_corpus",
    "read_records",
    "write_corpus",
    "write_records",
    "AccountFeatures",
    "CodeFeatures",
    "Direction",
    "FeatureExtractor",
    "FeatureSchema",
    "TransactionRecord",
    "assemble_vector",
    "extract_account_features",
    "extract_code_features",
    "JsonRpcClient",
    "RpcEndpoint",
    "fetch_code",
    "normalize_corpus",
    "BytecodeSampler",
    "CorpusSampler",
    "FeatureSampler",
    "imbalanced_class_sizes",
]
