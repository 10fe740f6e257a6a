"""
Command-line front end for the code toolkit.

    python -m app generate --class II --h 1 --k 0 --m 3
    python -m app generate --zrm --h 2 --p 1 --r 2 --m 3 --out words.jsonl
    python -m app verify golay-pairs --m 3 --h 1
    python -m app pmepr --input words.jsonl --summary summary.csv
    python -m app encode --class II --h 2 --k 1 --r 2 --m 4 --payload 1f3a5
    python -m app index --class II --h 1 --m 3 --word 0,0,0,1,0,0,1,0
    python -m app info --class III --h 2 --p 1 --k 1 --m 4

Exit codes: 0 success, 1 a verification suite failed, 2 invalid parameters
or input, 3 enumeration cap exceeded without sampling.

A JSON --config file overrides the flags. Identical resolved options
produce identical output bytes.
"""

import argparse
import csv
import itertools
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Any, Callable, Iterable, Iterator, Optional, TextIO, Union

import numpy as np

from app.config import PRESETS, OutputFormat, RunConfig, settings
from app.models import AnfModel, ConstructionParams, EnvelopeParams, VerifyOptions, ZrmParams
from app.services import (
    ClassCode,
    CodeParameterError,
    EnumerationCapExceeded,
    GeneralizedBooleanFunction,
    LinearCode,
    MalformedLineError,
    ZqVector,
    class_code,
    evaluate,
    payload_from_hex,
    payload_to_hex,
    pmepr,
    pmepr_batch,
    pmepr_summary,
    run_suite,
    suite_names,
    zrm_code,
    zrm_distances,
    zrm_label,
)
from app.services.corr import is_power_of_two

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_CAP = 3

CONSTRUCTION_KEYS = ("class", "h", "p", "k", "r", "m", "J", "rep_index", "zrm")
RUN_KEYS = {
    "oversample": "oversample",
    "cap": "cap_log2",
    "cap_log2": "cap_log2",
    "sample": "sample",
    "seed": "seed",
    "format": "output_format",
    "output_format": "output_format",
    "out": "out",
    "workers": "workers",
    "batch_size": "batch_size",
}
VERIFY_KEYS = ("trials", "suite")

SUMMARY_COLUMNS = ("count", "min", "mean", "max", "q50", "q90", "q99")

Batch = tuple[list[int], np.ndarray, int]


# ============================================================================
# Option parsing
# ============================================================================

def _indices(text: str) -> tuple[int, ...]:
    """'1,2' or '1 2' to (1, 2)."""
    parts = text.replace(",", " ").split()
    try:
        return tuple(int(part) for part in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got '{text}'")


def _alphabet(text: str) -> int:
    """q = 2^h to h."""
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer, got '{text}'")
    if not is_power_of_two(q):
        raise argparse.ArgumentTypeError(f"q must be a power of two >= 2, got {q}")
    return q.bit_length() - 1


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)

    construction = shared.add_argument_group("construction")
    construction.add_argument("--class", dest="code_class", choices=["I", "II", "III"],
                              help="Code class (default: II)")
    alphabet = construction.add_mutually_exclusive_group()
    alphabet.add_argument("--h", type=int, help="Alphabet exponent, q = 2^h")
    alphabet.add_argument("--q", dest="h", type=_alphabet, help="Alphabet size, a power of two")
    construction.add_argument("--p", type=int, help="Divisibility order")
    construction.add_argument("--k", type=int, help="Number of restricted variables")
    construction.add_argument("--r", type=int, help="Order of the underlying ZRM code")
    construction.add_argument("--m", type=int, help="Length exponent, n = 2^m")
    construction.add_argument("--J", type=_indices, help="Restricted indices, e.g. 1,3")
    construction.add_argument("--rep-index", dest="rep_index", type=int,
                              help="Coset representative of a Class I code")
    construction.add_argument("--zrm", action="store_const", const=True,
                              help="Use the plain code ZRM^p_{2^h}(r, m) instead of a class code")

    run = shared.add_argument_group("run")
    run.add_argument("--preset", choices=sorted(PRESETS), default="default",
                     help="Base run configuration (default: default)")
    run.add_argument("--oversample", type=int, help="Envelope samples per subcarrier spacing")
    run.add_argument("--cap", type=int, help="log2 of the largest code enumerated exhaustively")
    run.add_argument("--sample", type=int, help="Draw this many codewords instead of enumerating")
    run.add_argument("--seed", type=int, help="Seed for sampling and randomized suites")
    run.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    run.add_argument("--out", help="Output path (default: stdout)")
    run.add_argument("--workers", type=int, help="Worker threads for PMEPR measurement")
    run.add_argument("--batch-size", dest="batch_size", type=int, help="Codewords per batch")
    run.add_argument("--config", help="JSON file whose entries override the flags")
    run.add_argument("--log-level", dest="log_level", default=settings.LOG_LEVEL,
                     choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level")

    parser = argparse.ArgumentParser(
        prog="pmepr-codes",
        description=settings.APP_DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("generate", parents=[shared], help="Stream codewords as JSON lines")

    verify = commands.add_parser("verify", parents=[shared], help="Run a verification suite")
    verify.add_argument("suite", nargs="?", choices=suite_names(), help="Suite name")
    verify.add_argument("--suite", dest="suite_option", choices=suite_names(),
                        help="Suite name (alternative to the positional argument)")
    verify.add_argument("--trials", type=int, help="Randomized instances per suite")

    measure = commands.add_parser("pmepr", parents=[shared], help="Measure PMEPR of a word stream or a code")
    measure.add_argument("--input", help="Word stream, one JSON word or ANF per line ('-' for stdin)")
    measure.add_argument("--summary", help="Also write the summary CSV to this path")

    encode = commands.add_parser("encode", parents=[shared], help="Encode a hex payload")
    encode.add_argument("--payload", required=True, help="Hex payload of exactly the code's capacity")

    index = commands.add_parser("index", parents=[shared], help="Recover the payload of a codeword")
    index.add_argument("--word", required=True, help="Codeword as a JSON list or comma-separated digits")

    commands.add_parser("info", parents=[shared], help="Print size, capacity and distance guarantees")
    return parser


def load_config(path: str) -> dict:
    """Read a JSON object of construction, run and verify options."""
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise CodeParameterError(f"config {path} must hold a JSON object")
    unknown = set(data) - set(CONSTRUCTION_KEYS) - set(RUN_KEYS) - set(VERIFY_KEYS)
    if unknown:
        raise CodeParameterError(f"config {path} has unknown keys: {', '.join(sorted(unknown))}")
    return data


def resolve(args: argparse.Namespace) -> tuple[dict, RunConfig, dict]:
    """Construction fields, run configuration and verify fields after --config."""
    construction = {
        key: getattr(args, "code_class" if key == "class" else key)
        for key in CONSTRUCTION_KEYS
    }
    run = {field: getattr(args, key) for key, field in RUN_KEYS.items() if hasattr(args, key)}
    extra = {
        "trials": getattr(args, "trials", None),
        "suite": getattr(args, "suite", None) or getattr(args, "suite_option", None),
    }

    if args.config:
        data = load_config(args.config)
        construction.update({k: v for k, v in data.items() if k in CONSTRUCTION_KEYS})
        run.update({RUN_KEYS[k]: v for k, v in data.items() if k in RUN_KEYS})
        extra.update({k: v for k, v in data.items() if k in VERIFY_KEYS})
    if construction.get("J") is not None:
        construction["J"] = tuple(construction["J"])

    base = PRESETS[args.preset]().model_dump()
    base.update({k: v for k, v in run.items() if v is not None})
    base["command"] = args.command
    config = RunConfig(**base)
    construction = {k: v for k, v in construction.items() if v is not None}
    return construction, config, {k: v for k, v in extra.items() if v is not None}


def build_code(fields: dict) -> Union[ClassCode, LinearCode]:
    """A class code, or the plain ZRM code when 'zrm' is set."""
    fields = dict(fields)
    if fields.pop("zrm", False):
        if "r" not in fields:
            raise CodeParameterError("ZRM mode requires --r")
        return zrm_code(_zrm_params(fields))
    return class_code(_class_params(fields))


def _zrm_params(fields: dict) -> ZrmParams:
    return ZrmParams(h=fields.get("h", 1), p=fields.get("p", 0), r=fields["r"], m=fields.get("m", 3))


def _class_params(fields: dict) -> ConstructionParams:
    if fields.get("zrm"):
        raise CodeParameterError("this command works on Class I/II/III codes, not plain ZRM codes")
    fields = {k: v for k, v in fields.items() if k != "zrm"}
    fields.setdefault("class", "II")
    return ConstructionParams(**fields)


# ============================================================================
# Output
# ============================================================================

def _fmt(value: float) -> float:
    """Round to 9 significant digits."""
    return float(f"{value:.9g}")


def _fixed(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _fixed(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_fixed(v) for v in value]
    if isinstance(value, float):
        return _fmt(value)
    return value


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = " ".join(str(v) for v in value)
        elif isinstance(value, float):
            flat[name] = f"{value:.9g}"
        else:
            flat[name] = value
    return flat


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
        return
    with open(path, "w", newline="", encoding="utf-8") as handle:
        yield handle


def _csv_writer(stream: TextIO):
    return csv.writer(stream, lineterminator="\n")


def write_record(stream: TextIO, record: dict, output_format: OutputFormat) -> None:
    """One JSON line, or a header row plus one CSV row."""
    if output_format == OutputFormat.CSV:
        flat = _flatten(record)
        writer = _csv_writer(stream)
        writer.writerow(flat.keys())
        writer.writerow(flat.values())
    else:
        stream.write(json.dumps(_fixed(record)) + "\n")


def write_summary(stream: TextIO, values: list[float], oversample: int) -> None:
    summary = pmepr_summary(values).to_dict()
    writer = _csv_writer(stream)
    writer.writerow(SUMMARY_COLUMNS + ("oversample",))
    writer.writerow(
        [summary["count"]] + [f"{summary[c]:.9g}" for c in SUMMARY_COLUMNS[1:]] + [oversample]
    )


# ============================================================================
# Word sources
# ============================================================================

def _check_cap(code: Union[ClassCode, LinearCode], run: RunConfig) -> None:
    if not run.sampling and code.size_log2 > run.cap_log2:
        raise EnumerationCapExceeded(round(code.size_log2, 3), run.cap_log2)


def code_batches(code: Union[ClassCode, LinearCode], run: RunConfig) -> Iterator[Batch]:
    """(indices, words, q) batches: the whole code in index order, or a seeded sample."""
    if run.sampling:
        logger.info(f"Sampling {run.sample} words of {code.name} with seed {run.seed}")
        indices, words = code.sample(run.sample, run.seed)
        for start in range(0, len(indices), run.batch_size):
            stop = start + run.batch_size
            yield indices[start:stop], words[start:stop], code.q
        return
    _check_cap(code, run)
    for start, words in code.iter_words(run.batch_size, cap_log2=run.cap_log2):
        yield list(range(start, start + len(words))), words, code.q


def parse_word_line(text: str, default_q: int) -> tuple[Optional[int], ZqVector]:
    """
    Parse one stream line: a JSON list of digits, {"word": [...], "q": ...,
    "index": ...} or an ANF object {"m": ..., "q": ..., "coeffs": [...]}.
    """
    data = json.loads(text)
    if isinstance(data, list):
        return None, ZqVector(default_q, data)
    if not isinstance(data, dict):
        raise ValueError("expected a JSON list or object")
    index = data.get("index")
    if index is not None and (not isinstance(index, int) or index < 0):
        raise ValueError(f"index must be a nonnegative integer, got {index!r}")
    if "coeffs" in data:
        anf = AnfModel.model_validate(data)
        return index, evaluate(GeneralizedBooleanFunction.from_dict(anf.model_dump()))
    if "word" in data:
        return index, ZqVector(int(data.get("q", default_q)), data["word"])
    raise ValueError("expected a word list, a {\"word\": ...} object or an ANF object")


def stream_batches(stream: Iterable[str], default_q: int) -> Iterator[Batch]:
    """One single-word batch per nonblank line; indices default to the word's position."""
    position = 0
    for number, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            index, word = parse_word_line(text, default_q)
        except (ValueError, TypeError) as exc:
            raise MalformedLineError(number, str(exc)) from exc
        yield [position if index is None else index], word.values[None, :], word.q
        position += 1


def measure_batches(
    batches: Iterator[Batch], envelope: EnvelopeParams, workers: int
) -> Iterator[tuple[list[int], np.ndarray, np.ndarray]]:
    """PMEPR per batch on a thread pool; results come back in input order."""
    window = 4 * workers

    def measure(batch: Batch) -> np.ndarray:
        return pmepr_batch(batch[1], batch[2], envelope)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        while True:
            chunk = list(itertools.islice(batches, window))
            if not chunk:
                return
            for (indices, words, _), values in zip(chunk, pool.map(measure, chunk)):
                yield indices, words, values


def _parse_word_text(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return [int(v) for v in json.loads(text)]
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise CodeParameterError(f"word must be a JSON list or comma-separated digits, got '{text}'")


# ============================================================================
# Commands
# ============================================================================

def cmd_generate(args: argparse.Namespace, fields: dict, run: RunConfig, extra: dict) -> int:
    """Write every codeword (or a seeded sample) with its stable index."""
    code = build_code(fields)
    _check_cap(code, run)
    logger.info(f"Generating {code!r}")
    count = 0
    with _output(run.out) as out:
        writer = None
        if run.output_format == OutputFormat.CSV:
            writer = _csv_writer(out)
            writer.writerow(["index", "word"])
        for indices, words, _ in code_batches(code, run):
            for index, row in zip(indices, words.tolist()):
                if writer is not None:
                    writer.writerow([index, " ".join(map(str, row))])
                else:
                    out.write(json.dumps({"index": index, "word": row}) + "\n")
            count += len(indices)
    logger.info(f"Wrote {count} codewords")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, fields: dict, run: RunConfig, extra: dict) -> int:
    """Run one suite; exit 1 if any check failed."""
    name = extra.get("suite")
    if name is None:
        raise CodeParameterError(f"verify needs a suite: {', '.join(suite_names())}")
    options = VerifyOptions(
        **{k: v for k, v in fields.items() if k != "zrm"},
        **({"trials": extra["trials"]} if "trials" in extra else {}),
        **({"seed": run.seed} if run.seed is not None else {}),
        oversample=run.oversample,
        cap_log2=run.cap_log2,
        workers=run.workers,
    )
    report = run_suite(name, options)

    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {report.name}: {report.checks} checks (seed={options.seed})", file=sys.stderr)
    if report.witness is not None:
        print(f"  witness: {json.dumps(_fixed(report.witness))}", file=sys.stderr)

    with _output(run.out) as out:
        write_record(out, report.to_dict(), run.output_format)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_pmepr(args: argparse.Namespace, fields: dict, run: RunConfig, extra: dict) -> int:
    """Per-word PMEPR lines (jsonl) or the summary CSV (csv)."""
    envelope = EnvelopeParams(oversample=run.oversample)
    values: list[float] = []
    code = None
    if args.input is None:
        code = build_code(fields)
        _check_cap(code, run)
        logger.info(f"Measuring PMEPR over {code!r}")

    with _open_source(args.input) as source, _output(run.out) as out:
        if code is None:
            batches = stream_batches(source, 1 << fields.get("h", 1))
        else:
            batches = code_batches(code, run)
        for indices, words, measured in measure_batches(batches, envelope, run.workers):
            for index, row, value in zip(indices, words.tolist(), measured):
                value = _fmt(float(value))
                values.append(value)
                if run.output_format == OutputFormat.JSONL:
                    record = {"index": index, "word": row, "pmepr": value, "oversample": envelope.oversample}
                    out.write(json.dumps(record) + "\n")
        if not values:
            raise CodeParameterError("no words to measure")
        if run.output_format == OutputFormat.CSV:
            write_summary(out, values, envelope.oversample)

    if args.summary:
        with _output(args.summary) as handle:
            write_summary(handle, values, envelope.oversample)
    logger.info(f"Measured {len(values)} words, max PMEPR {max(values):.9g}")
    return EXIT_OK


@contextmanager
def _open_source(path: Optional[str]) -> Iterator[Optional[TextIO]]:
    if path is None:
        yield None
    elif path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as handle:
            yield handle


def cmd_encode(args: argparse.Namespace, fields: dict, run: RunConfig, extra: dict) -> int:
    """Map a hex payload to its codeword."""
    code = class_code(_class_params(fields))
    bits = payload_from_hex(args.payload, code.capacity)
    word = code.encode(bits)
    envelope = EnvelopeParams(oversample=run.oversample)
    record = {
        "index": code.index_of(word),
        "payload": payload_to_hex(bits),
        "word": word.tolist(),
        "pmepr": pmepr(word, envelope),
        "oversample": envelope.oversample,
    }
    with _output(run.out) as out:
        write_record(out, record, run.output_format)
    return EXIT_OK


def cmd_index(args: argparse.Namespace, fields: dict, run: RunConfig, extra: dict) -> int:
    """Recover the payload and index of a codeword."""
    code = class_code(_class_params(fields))
    word = ZqVector(code.q, _parse_word_text(args.word))
    bits = code.codeword_index(word)
    record = {"index": code.index_of(word), "payload": payload_to_hex(bits), "bits": bits}
    with _output(run.out) as out:
        write_record(out, record, run.output_format)
    return EXIT_OK


def cmd_info(args: argparse.Namespace, fields: dict, run: RunConfig, extra: dict) -> int:
    """Size, capacity and distance guarantees."""
    if fields.get("zrm"):
        if "r" not in fields:
            raise CodeParameterError("ZRM mode requires --r")
        params = _zrm_params(fields)
        code = zrm_code(params)
        hamming, lee = zrm_distances(params)
        record = {
            "code": zrm_label(params),
            "n": code.n,
            "q": code.q,
            "size_log2": code.size_log2,
            "d_hamming": hamming,
            "d_lee": lee,
        }
    else:
        record = class_code(_class_params(fields)).describe()
    with _output(run.out) as out:
        write_record(out, record, run.output_format)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace, dict, RunConfig, dict], int]] = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "pmepr": cmd_pmepr,
    "encode": cmd_encode,
    "index": cmd_index,
    "info": cmd_info,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        fields, run, extra = resolve(args)
        return COMMANDS[args.command](args, fields, run, extra)
    except EnumerationCapExceeded as exc:
        print(f"[error] {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"[error] {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
