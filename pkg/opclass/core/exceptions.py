"""Non standard exceptions"""


class OpclassException(Exception):
    """Base class of all exceptions raised by `opclass`."""


class BytecodeParsingException(OpclassException, ValueError):
    """Exception raised if a hex string can not be decoded to bytecode."""


class OddLengthException(BytecodeParsingException):
    """Exception raised if a hex string has an odd number of digits."""


class NonHexCharacterException(BytecodeParsingException):
    """Exception raised if a hex string contains a non hex character.

    Parameters
    ----------
    position : int
        Index of the offending character in the given text.

    character : str
        The offending character.
    """

    def __init__(self, position, character):
        super().__init__(
            f"non hex character {character!r} at position {position}"
        )
        self.position = position
        self.character = character


class SchemaMismatchException(OpclassException):
    """Exception raised if data does not conform to a feature schema."""


class FileReadingException(OpclassException):
    """Exception raised if non-OS-error occurs,
    when reading a file.
    """


class SchemaHeaderMismatchException(FileReadingException):
    """Exception raised if the header of a corpus file does not match the
    expected feature schema.
    """


class UnknownLabelException(FileReadingException):
    """Exception raised if a corpus row carries a label that is not one of
    the known class names.
    """


class RaggedRowException(FileReadingException):
    """Exception raised if a corpus row has a different number of cells
    than the header.
    """


class CorpusIOException(FileReadingException):
    """Exception raised if a corpus file or directory can not be accessed."""


class NoRecordsException(FileReadingException):
    """Exception raised if a corpus contains no usable records."""


class DatasetException(OpclassException):
    """Base class for exceptions concerning labeled datasets."""


class EmptyClassException(DatasetException):
    """Exception raised if a class of a dataset has no samples."""


class BadFoldCountException(DatasetException, ValueError):
    """Exception raised if a cross-validation fold count is smaller than 2."""


class TrainingException(OpclassException):
    """Base class for exceptions raised while training a classifier."""


class EmptyDatasetException(TrainingException):
    """Exception raised if a classifier is trained on an empty dataset."""


class AllWeightsZeroException(TrainingException):
    """Exception raised if all sample weights are zero."""


class EpsilonOutOfRangeException(TrainingException):
    """Exception raised if a weak learner has a weighted error of at least
    one half.
    """


class DegenerateDistributionException(TrainingException):
    """Exception raised if a boosting distribution underflows to zero."""


class FirstRoundTooWeakException(TrainingException):
    """Exception raised if the first boosting round already has a weighted
    error of at least one half.
    """


class MaskEmptyException(TrainingException):
    """Exception raised if a feature mask selects no feature."""


class MetricException(OpclassException):
    """Base class for exceptions raised by evaluation metrics."""


class LengthMismatchException(MetricException, ValueError):
    """Exception raised if paired sequences have different lengths."""


class MissingClassException(MetricException):
    """Exception raised if a class required by a metric has no sample."""


class EmptySetException(MetricException):
    """Exception raised if a metric is computed over an empty set."""


class RpcException(OpclassException):
    """Base class for exceptions raised while talking to an Ethereum node."""


class BadAddressException(RpcException, ValueError):
    """Exception raised if an account address is malformed."""


class RpcTransportException(RpcException):
    """Exception raised if a JSON-RPC request fails on the transport level
    after all retries.
    """


class RpcErrorException(RpcException):
    """Exception raised if the node answers with a JSON-RPC error object.

    Parameters
    ----------
    code : int
        The error code reported by the node.

    message : str
        The error message reported by the node.
    """

    def __init__(self, code, message):
        super().__init__(f"node returned error {code}: {message}")
        self.code = code
        self.message = message
