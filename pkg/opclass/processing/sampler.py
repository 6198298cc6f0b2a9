"""
Classes used to generate synthetic labeled corpora.

Defines the `CorpusSampler` abstract base class. `FeatureSampler`
generates feature-level datasets with a few informative and many noise
features, `BytecodeSampler` generates raw contract records whose classes
have distinct opcode profiles and random account histories.
"""

from abc import ABC, abstractmethod

import numpy as np

from opclass.core.constants import CATEGORIES
from opclass.core.data import LabeledDataset
from opclass.evm.opcodes import INVALID, opcode_table

from .datahandler import ContractRecord
from .extractor import Direction, FeatureSchema, TransactionRecord


def imbalanced_class_sizes(n_samples, n_classes, ratio):
    """
    Splits `n_samples` into geometrically decreasing class sizes.

    The largest class is `ratio` times as large as the smallest one (up to
    rounding), the sizes in between decrease geometrically and are
    adjusted so that they sum up to `n_samples`.

    Parameters
    ----------
    n_samples : int

    n_classes : int
        At least 2.

    ratio : float
        Imbalance ratio, at least 1.

    Returns
    -------
    sizes : list of int
        Descending class sizes.
    """
    if n_classes < 2:
        raise ValueError("`n_classes` is smaller than 2")
    if ratio < 1:
        raise ValueError("`ratio` is smaller than 1")
    factors = ratio ** (np.arange(n_classes) / (n_classes - 1))
    smallest = max(1, int(round(n_samples / factors.sum())))
    if n_classes == 2:
        sizes = [n_samples - smallest, smallest]
    else:
        largest = int(round(smallest * ratio))
        middle = smallest * factors[1:-1]
        floored = np.floor(middle).astype(int)
        remainder = n_samples - smallest - largest - floored.sum()
        order = np.argsort(-(middle - floored), kind="stable")
        step = 1 if remainder > 0 else -1
        for i in range(abs(int(remainder))):
            floored[order[i % len(order)]] += step
        sizes = [largest] + floored[::-1].tolist() + [smallest]
    if min(sizes) < 1:
        raise ValueError(
            "`n_samples` is too small for the requested classes and ratio"
        )
    return sizes


class CorpusSampler(ABC):
    """Base class for all corpus sampler classes."""

    @abstractmethod
    def sample(self, seed):
        """This method should be used to generate a synthetic corpus.

        Parameters
        ----------
        seed : int
            Seed of the random number generator, equal seeds yield equal
            corpora.
        """


class FeatureSampler(CorpusSampler):
    """A sampler producing an imbalanced multiclass dataset of numeric
    features. The informative features come first and are drawn around
    random class centers, the noise features are standard normal.

    Parameters
    ----------
    n_samples : int, optional
        Defaults to `1200`.

    n_classes : int, optional
        Defaults to `6`.

    ratio : float, optional
        Imbalance ratio. Defaults to `19`.

    n_informative : int, optional
        Defaults to `5`.

    n_noise : int, optional
        Defaults to `15`.

    separation : float, optional
        Standard deviation of the class centers, the noise around them is
        standard normal.

        Defaults to `2.0`.

    See also
    --------
    `CorpusSampler`
    """

    def __init__(
        self,
        n_samples=1200,
        n_classes=6,
        ratio=19,
        n_informative=5,
        n_noise=15,
        separation=2.0,
    ):
        if n_informative < 1:
            raise ValueError("`n_informative` is non-positive")
        if n_noise < 0:
            raise ValueError("`n_noise` is negative")
        if separation <= 0:
            raise ValueError("`separation` is non-positive")
        self.class_sizes = imbalanced_class_sizes(n_samples, n_classes, ratio)
        self.n_informative = n_informative
        self.n_noise = n_noise
        self.separation = separation

    def __repr__(self):
        return (
            f"FeatureSampler(class_sizes={self.class_sizes}, "
            f"n_informative={self.n_informative}, n_noise={self.n_noise}, "
            f"separation={self.separation})"
        )

    @property
    def schema(self):
        return FeatureSchema.custom(
            [f"informative_{i}" for i in range(self.n_informative)]
            + [f"noise_{i}" for i in range(self.n_noise)]
        )

    def sample(self, seed):
        """
        Returns
        -------
        dataset : LabeledDataset
            Rows in random order, class names from `CATEGORIES` (or
            `class_<i>` for more classes).

        See also
        --------
        `CorpusSampler.sample`
        """
        rng = np.random.default_rng(seed)
        n_classes = len(self.class_sizes)
        y = np.repeat(np.arange(n_classes), self.class_sizes)
        y = y[rng.permutation(len(y))]

        centers = rng.normal(
            scale=self.separation, size=(n_classes, self.n_informative)
        )
        informative = centers[y] + rng.normal(
            size=(len(y), self.n_informative)
        )
        noise = rng.normal(size=(len(y), self.n_noise))
        return LabeledDataset(
            self.schema,
            np.hstack([informative, noise]),
            y,
            _class_names(n_classes),
        )


def _class_names(n_classes):
    if n_classes <= len(CATEGORIES):
        return list(CATEGORIES[:n_classes])
    return [f"class_{i}" for i in range(n_classes)]


class BytecodeSampler(CorpusSampler):
    """A sampler producing raw contract records. Every class draws its
    opcodes from its own random distribution over the assigned opcodes of
    the table, account histories are random with class dependent value
    scales.

    Parameters
    ----------
    class_sizes : sequence of int, optional
        Number of records per class.

        Defaults to `(20, 12, 8)`.

    code_length : tuple of int, optional
        Range of the number of instructions per contract.

        Defaults to `(100, 400)`.

    concentration : float, optional
        Dirichlet concentration of the class opcode profiles, smaller
        values give more distinct classes.

        Defaults to `0.3`.

    table : str, optional
        Defaults to `"istanbul"`.

    See also
    --------
    `CorpusSampler`
    """

    def __init__(
        self,
        class_sizes=(20, 12, 8),
        code_length=(100, 400),
        concentration=0.3,
        table="istanbul",
    ):
        if len(class_sizes) < 2 or min(class_sizes) < 1:
            raise ValueError("`class_sizes` needs two non-empty classes")
        if not 1 <= code_length[0] <= code_length[1]:
            raise ValueError("`code_length` is no valid range")
        if concentration <= 0:
            raise ValueError("`concentration` is non-positive")
        self.class_sizes = list(class_sizes)
        self.code_length = code_length
        self.concentration = concentration
        self.table = table

    def __repr__(self):
        return (
            f"BytecodeSampler(class_sizes={self.class_sizes}, "
            f"code_length={self.code_length}, "
            f"concentration={self.concentration}, table={self.table!r})"
        )

    def sample(self, seed):
        """
        Returns
        -------
        records : list of ContractRecord
            Records with account data, grouped by class.

        See also
        --------
        `CorpusSampler.sample`
        """
        rng = np.random.default_rng(seed)
        pool = [
            spec for spec in opcode_table(self.table) if spec.family != INVALID
        ]
        names = _class_names(len(self.class_sizes))

        records = []
        for label, size in enumerate(self.class_sizes):
            profile = rng.dirichlet(np.full(len(pool), self.concentration))
            value_scale = 10 ** (15 + 2 * label)
            for _ in range(size):
                records.append(
                    ContractRecord(
                        address="0x" + rng.bytes(20).hex(),
                        bytecode="0x" + self._code(rng, pool, profile).hex(),
                        category=names[label],
                        balance=int(rng.integers(0, 1000)) * value_scale,
                        nonce=int(rng.integers(0, 50)),
                        txs=_history(rng, value_scale),
                    )
                )
        return records

    def _code(self, rng, pool, profile):
        length = rng.integers(self.code_length[0], self.code_length[1] + 1)
        chosen = rng.choice(len(pool), size=length, p=profile)
        code = bytearray()
        for index in chosen:
            spec = pool[index]
            code.append(spec.value)
            code.extend(rng.bytes(spec.immediate_len))
        return bytes(code)


def _history(rng, value_scale):
    n_txs = int(rng.integers(0, 20))
    start = int(rng.integers(1_500_000_000, 1_600_000_000))
    counterparties = ["0x" + rng.bytes(20).hex() for _ in range(5)]
    return tuple(
        TransactionRecord(
            timestamp=start + int(rng.integers(0, 10_000_000)),
            direction=Direction.IN if rng.random() < 0.6 else Direction.OUT,
            value=int(rng.integers(0, 100)) * value_scale,
            counterparty=counterparties[int(rng.integers(0, 5))],
        )
        for _ in range(n_txs)
    )
