"""
Command line interface.

Exit codes: `0` on success, `2` for unparseable bytecode, bad fold counts
and usage errors, `3` if features and model schema do not match, `1` for
any other error.
"""

import json
from pathlib import Path

import click
from loguru import logger

from opclass.core.computing import json_ready
from opclass.core.data import category_feature_means, means_frame
from opclass.core.exceptions import (
    BadFoldCountException,
    BytecodeParsingException,
    CorpusIOException,
    OpclassException,
    SchemaMismatchException,
)
from opclass.evm import disassemble, parse_hex, to_listing
from opclass.models import load_model
from opclass.pipeline import (
    ALGORITHMS,
    ClassificationPipeline,
    RunConfig,
    compare,
    comparison_frame,
    extension_for,
)
from opclass.processing import (
    BytecodeSampler,
    ContractRecord,
    FeatureExtractor,
    FeatureSampler,
    FeatureSchema,
    JsonRpcClient,
    RpcEndpoint,
    normalize_corpus,
    read_corpus,
    write_corpus,
    write_records,
)
from opclass.processing.datahandler import FLOAT_FORMAT


def exit_code(err):
    """The exit code belonging to an exception raised by a command."""
    if isinstance(err, (BytecodeParsingException, BadFoldCountException)):
        return 2
    if isinstance(err, SchemaMismatchException):
        return 3
    return 1


class _OpclassGroup(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except OpclassException as err:
            click.echo(f"Error: {err}", err=True)
            ctx.exit(exit_code(err))


@click.group(cls=_OpclassGroup)
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages.")
def main(verbose):
    """Classifies Ethereum contracts from their bytecode."""
    logger.remove()
    logger.add(
        lambda message: click.echo(message, err=True, nl=False),
        level="DEBUG" if verbose else "INFO",
        format="{level}: {message}",
    )
    logger.enable("opclass")


def _read_code_input(hex_input, file):
    if hex_input is not None:
        return hex_input
    if file is not None:
        return Path(file).read_text(encoding="utf-8")
    return click.get_text_stream("stdin").read()


def _write_report(report, path):
    text = json.dumps(json_ready(report), sort_keys=True, indent=2) + "\n"
    if path is None:
        click.echo(text, nl=False)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as oe:
        raise CorpusIOException(f"could not write {path}: {oe}") from oe


def _write_frame(frame, path):
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as oe:
        raise CorpusIOException(f"could not write {path}: {oe}") from oe


def _run_config(mode, config_path, bpso=None, tree=None, **flags):
    bpso = {k: v for k, v in (bpso or {}).items() if v is not None}
    tree = {k: v for k, v in (tree or {}).items() if v is not None}
    overrides = {
        "mode": mode,
        "bpso": bpso or None,
        "tree": tree or None,
        **flags,
    }
    try:
        if config_path is not None:
            return RunConfig.from_file(config_path, **overrides)
        return RunConfig.from_dict(
            {k: v for k, v in overrides.items() if v is not None}
        )
    except (TypeError, ValueError) as err:
        if isinstance(err, OpclassException):
            raise
        raise click.UsageError(f"invalid configuration: {err}") from err


def _corpus_schema(config):
    if Path(config.corpus).suffix.lower() == ".csv":
        return None
    return FeatureSchema.for_feature_set(config.feature_set, config.table)


def _training_options(func):
    options = [
        click.option(
            "--config",
            "config_path",
            type=click.Path(exists=True, dir_okay=False),
            help="JSON run configuration, flags override its values.",
        ),
        click.option(
            "--corpus",
            type=click.Path(exists=True, dir_okay=False),
            help="Labeled corpus, .csv feature table or .jsonl records.",
        ),
        click.option(
            "--features",
            "feature_set",
            type=click.Choice(["code", "full"]),
            help="Feature set of .jsonl corpora.",
        ),
        click.option("--seed", type=int),
        click.option("--table", help="Opcode table version."),
        click.option("--rounds", type=int, help="Boosting rounds T."),
        click.option("--swarm-size", type=int),
        click.option("--generations", type=int, help="Generation limit."),
        click.option("--stagnation", type=int, help="Stagnation limit."),
        click.option("--inner-folds", type=int),
        click.option("--n-jobs", type=int),
        click.option("--max-depth", type=int),
        click.option("--min-leaf", type=float, help="Minimal leaf weight."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _split_training_options(kwargs):
    bpso = {
        "boosting_rounds": kwargs.pop("rounds"),
        "swarm_size": kwargs.pop("swarm_size"),
        "generation_limit": kwargs.pop("generations"),
        "stagnation_limit": kwargs.pop("stagnation"),
        "inner_folds": kwargs.pop("inner_folds"),
        "n_jobs": kwargs.pop("n_jobs"),
    }
    tree = {
        "max_depth": kwargs.pop("max_depth"),
        "min_leaf_weight": kwargs.pop("min_leaf"),
    }
    return bpso, tree


def _require_corpus(config):
    if config.corpus is None:
        raise click.UsageError("no corpus given, use --corpus")
    if not Path(config.corpus).is_file():
        raise click.UsageError(f"corpus {config.corpus} does not exist")


@main.command()
@click.argument("hex_input", required=False)
@click.option(
    "--file",
    type=click.Path(exists=True, dir_okay=False),
    help="Read the hex string from a file.",
)
@click.option("--table", default="istanbul", help="Opcode table version.")
def disasm(hex_input, file, table):
    """Prints the instruction listing of HEX_INPUT (or of stdin)."""
    code = parse_hex(_read_code_input(hex_input, file))
    click.echo(to_listing(disassemble(code, table)), nl=False)


@main.command()
@click.option(
    "--corpus",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Labeled .jsonl corpus of contract records.",
)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option(
    "--features",
    "feature_set",
    type=click.Choice(["code", "full"]),
    default="code",
)
@click.option("--table", default="istanbul", help="Opcode table version.")
@click.option(
    "--means-report",
    type=click.Path(dir_okay=False),
    help="Also write the per category feature means to this .csv file.",
)
@click.option("--top-n", type=int, default=10, show_default=True)
@click.option(
    "--exclude-size", is_flag=True, help="Leave `size` out of the means."
)
def extract(
    corpus, out, feature_set, table, means_report, top_n, exclude_size
):
    """Writes the feature table of a raw corpus."""
    schema = FeatureSchema.for_feature_set(feature_set, table)
    dataset = read_corpus(corpus, schema)
    write_corpus(dataset, out)
    logger.info(
        f"wrote {dataset.n_samples} feature vectors of schema "
        f"`{schema.name}` to {out}"
    )
    if means_report is not None:
        means = category_feature_means(
            dataset, top_n, exclude=("size",) if exclude_size else ()
        )
        _write_frame(means_frame(means), means_report)


@main.command()
@_training_options
@click.option(
    "--algorithm", type=click.Choice(ALGORITHMS), help="Classifier variant."
)
@click.option(
    "--model-out",
    "model",
    required=True,
    type=click.Path(dir_okay=False),
    help="Path of the trained model.",
)
@click.option("--report", type=click.Path(dir_okay=False))
def train(config_path, **kwargs):
    """Trains a classifier on a labeled corpus."""
    bpso, tree = _split_training_options(kwargs)
    config = _run_config("train", config_path, bpso, tree, **kwargs)
    _require_corpus(config)
    if config.algorithm == "all":
        raise click.UsageError("`all` is only available for crossval")

    dataset = read_corpus(config.corpus, _corpus_schema(config))
    pipeline = ClassificationPipeline(
        extension_for(config.algorithm, config.bpso, config.tree, config.seed)
    )
    out = pipeline.train(dataset)
    out.model.to_file(config.model)
    logger.info(f"saved {out.model.kind} model to {config.model}")
    _write_report(
        {
            "config": config.to_dict(),
            "schema": dataset.schema.to_dict(),
            "class_names": list(dataset.class_names),
            "statistics": out.training_statistics._asdict(),
            "training": out.training_report.to_dict(dataset.class_names),
        },
        config.report,
    )


@main.command()
@click.argument("hex_input", required=False)
@click.option(
    "--model",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--file",
    type=click.Path(exists=True, dir_okay=False),
    help="Read the hex string from a file.",
)
@click.option(
    "--account",
    help="Account data as JSON object with `balance`, `nonce` and `txs`.",
)
def classify(hex_input, model, file, account):
    """Predicts the category of the contract HEX_INPUT (or of stdin).

    Prints the category followed by the probability of every class.
    """
    classifier = load_model(model)
    if classifier.schema.name == "custom":
        raise SchemaMismatchException(
            "model was not trained on bytecode features"
        )
    data = {"bytecode": _read_code_input(hex_input, file), "category": ""}
    if account is not None:
        try:
            account_data = json.loads(account)
            if not isinstance(account_data, dict):
                raise ValueError("no JSON object")
            record = ContractRecord.from_dict({**account_data, **data})
        except (ValueError, KeyError, TypeError) as err:
            raise click.BadParameter(
                str(err), param_hint="--account"
            ) from err
    else:
        record = ContractRecord.from_dict(data)

    vector = FeatureExtractor(classifier.schema).extract(record)
    probs = classifier.predict_proba(vector)
    click.echo(classifier.class_names[classifier.predict(vector)])
    for name, prob in zip(classifier.class_names, probs):
        click.echo(f"{name}\t{float(prob)!r}")


@main.command()
@click.option(
    "--model",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--corpus",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Labeled held-out corpus.",
)
@click.option("--report", type=click.Path(dir_okay=False))
def evaluate(model, corpus, report):
    """Evaluates a trained model on a labeled held-out corpus."""
    classifier = load_model(model)
    dataset = read_corpus(
        corpus,
        None if classifier.schema.name == "custom" else classifier.schema,
        classifier.class_names,
    )
    result = ClassificationPipeline().evaluate(classifier, dataset)
    _write_report(
        {
            "model": {
                "kind": classifier.kind,
                "schema": classifier.schema.to_dict(),
            },
            "n_samples": dataset.n_samples,
            "evaluation": result.to_dict(dataset.class_names),
        },
        report,
    )


@main.command()
@_training_options
@click.option(
    "--algorithm",
    type=click.Choice(ALGORITHMS + ("all",)),
    help="Classifier variant, `all` compares the four variants.",
)
@click.option("--folds", type=int, help="Number of folds.")
@click.option("--report", type=click.Path(dir_okay=False))
@click.option(
    "--comparison",
    type=click.Path(dir_okay=False),
    help="Write the pooled results per algorithm to this .csv file.",
)
def crossval(config_path, comparison, **kwargs):
    """Stratified cross-validation of one or all classifier variants."""
    bpso, tree = _split_training_options(kwargs)
    config = _run_config("crossval", config_path, bpso, tree, **kwargs)
    _require_corpus(config)

    dataset = read_corpus(config.corpus, _corpus_schema(config))
    algorithms = (
        ALGORITHMS if config.algorithm == "all" else (config.algorithm,)
    )
    outputs = compare(
        dataset,
        algorithms,
        config.folds,
        config.seed,
        config.bpso,
        config.tree,
    )
    _write_report(
        {
            "config": config.to_dict(),
            "schema": dataset.schema.to_dict(),
            "class_names": list(dataset.class_names),
            "algorithms": {
                algorithm: output.to_dict(dataset.class_names)
                for algorithm, output in outputs.items()
            },
        },
        config.report,
    )
    if comparison is not None:
        _write_frame(
            comparison_frame(outputs, dataset.class_names), comparison
        )


@main.command()
@click.argument("addresses", nargs=-1, required=True)
@click.option("--rpc-url", help="JSON-RPC endpoint of an Ethereum node.")
@click.option(
    "--category",
    default="unknown",
    show_default=True,
    help="Category of the written records.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    help="Write a .jsonl corpus instead of printing the code.",
)
@click.option("--max-in-flight", type=int, default=8, show_default=True)
def fetch(addresses, rpc_url, category, out, max_in_flight):
    """Fetches the deployed code of ADDRESSES with `eth_getCode`."""
    client = JsonRpcClient(RpcEndpoint(rpc_url))
    codes = client.fetch_codes(addresses, max_in_flight)
    for address, code in zip(addresses, codes):
        if not code.is_contract:
            logger.warning(f"{address} has no code")
    if out is None:
        for address, code in zip(addresses, codes):
            click.echo(f"{address} {code.to_hex()}")
        return
    write_records(
        [
            ContractRecord(address, code.to_hex(), category)
            for address, code in zip(addresses, codes)
        ],
        out,
    )


@main.command()
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("output_path", type=click.Path(dir_okay=False))
def normalize(input_path, output_path):
    """Converts INPUT_PATH (.jsonl file or directory of
    <address>_<category>.hex files) into a canonical .jsonl corpus."""
    count = normalize_corpus(input_path, output_path)
    click.echo(f"{count} records")


@main.command()
@click.option(
    "--kind",
    type=click.Choice(["features", "bytecode"]),
    default="features",
    show_default=True,
)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=1200, show_default=True)
@click.option("--classes", type=int, default=6, show_default=True)
@click.option("--ratio", type=float, default=19.0, show_default=True)
@click.option("--informative", type=int, default=5, show_default=True)
@click.option("--noise", type=int, default=15, show_default=True)
@click.option(
    "--class-sizes",
    default="20,12,8",
    show_default=True,
    help="Records per class of bytecode corpora.",
)
def synth(
    kind, out, seed, samples, classes, ratio, informative, noise, class_sizes
):
    """Writes a synthetic labeled corpus.

    `features` writes a .csv feature table, `bytecode` a .jsonl corpus of
    contract records with account data.
    """
    try:
        if kind == "features":
            sampler = FeatureSampler(
                samples, classes, ratio, informative, noise
            )
        else:
            sizes = [int(size) for size in class_sizes.split(",")]
            sampler = BytecodeSampler(sizes)
    except ValueError as err:
        raise click.UsageError(str(err)) from err

    corpus = sampler.sample(seed)
    if kind == "features":
        write_corpus(corpus, out)
    else:
        write_records(corpus, out)
    logger.info(f"wrote synthetic {kind} corpus to {out}")
