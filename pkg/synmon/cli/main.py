"""Command-line entry point for syntactic algebra computations."""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import click
from tabulate import tabulate

from synmon.cli.corpus import (
    CORPUS_VARIETIES,
    EXIT_FAILED,
    EXIT_OK,
    load_corpus,
    outcome_exit_code,
    run_checks,
    run_corpus,
)
from synmon.cli.models import CheckOutcome, Command, LanguageResult, OutputFormat, RunConfig
from synmon.config import (
    CORPUS_PATH,
    DEFAULT_SEED,
    LOG_LEVEL,
    MAX_DIM,
    MAX_ELEMENTS,
    MAX_JSL_STATES,
    MAX_WORD_LENGTH,
)
from synmon.dautomata.construct import minimal_d_automaton
from synmon.dautomata.export import automaton_to_csv, automaton_to_dot, automaton_to_json, automaton_to_table
from synmon.dautomata.models import CapacityLimits
from synmon.duality.atoms import (
    atoms_to_dot,
    build_derivative_system,
    compute_atoms,
    verify_minimal_duality,
    verify_syntactic_duality,
)
from synmon.errors import AlphabetError, SynmonError
from synmon.freemon.algebra import eval_language, format_free_elem, format_output, parse_free_elem
from synmon.freemon.models import Variety, VarietyKind
from synmon.langcore.automata import dfa_from_json, minimize
from synmon.langcore.models import Dfa, normalize_alphabet
from synmon.langcore.regex import compile_regex
from synmon.logging_config import setup_logging
from synmon.synalg.closure import syntactic_algebra
from synmon.synalg.models import VerificationReport
from synmon.synalg.oracle import congruence_oracle, congruence_witness
from synmon.synalg.render import algebra_to_dot, render_csv, render_json, render_table

logger = logging.getLogger(__name__)
cli_logger = logging.getLogger("cli")

Action = Callable[[RunConfig], Tuple[str, int]]


def language_options(func):
    """Options shared by every command working on one language."""
    options = [
        click.option("--variety", type=click.Choice([k.value for k in VarietyKind]), default="set",
                     show_default=True, help="Ambient variety"),
        click.option("--prime", type=int, default=None, help="Characteristic p for vect"),
        click.option("--alphabet", default=None, help="Letters of the alphabet, e.g. ab"),
        click.option("--regex", default=None, help="Regular expression for L"),
        click.option("--dfa", "dfa_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     default=None, help="DFA file in JSON"),
        click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]),
                     default="table", show_default=True, help="Output format"),
        click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
                     help="Seed for sampled checks"),
        click.option("--max-jsl-states", type=int, default=MAX_JSL_STATES, show_default=True,
                     help="Guard on the JSL subset construction"),
        click.option("--max-dim", type=int, default=MAX_DIM, show_default=True, help="Guard on VECT dimension"),
        click.option("--max-elements", type=int, default=MAX_ELEMENTS, show_default=True,
                     help="Guard on transition monoid size"),
        click.option("--max-length", type=click.IntRange(min=0), default=4, show_default=True,
                     help="Word length bound for the oracle cross-check"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _config(command: Command, variety="set", prime=None, alphabet=None, regex=None, dfa_path=None,
            output_format="table", seed=DEFAULT_SEED, max_jsl_states=MAX_JSL_STATES, max_dim=MAX_DIM,
            max_elements=MAX_ELEMENTS, max_length=4, workers=1) -> RunConfig:
    return RunConfig(
        command=command,
        variety=Variety.of(variety, prime),
        alphabet=normalize_alphabet(alphabet) if alphabet is not None else None,
        regex=regex,
        dfa_path=dfa_path,
        output_format=OutputFormat(output_format),
        limits=CapacityLimits(max_jsl_states=max_jsl_states, max_dim=max_dim, max_elements=max_elements),
        seed=seed,
        max_length=max_length,
        workers=workers,
    )


def load_language(config: RunConfig) -> Dfa:
    """The minimal DFA of L from --regex or --dfa."""
    if (config.regex is None) == (config.dfa_path is None):
        raise click.UsageError("Give exactly one of --regex and --dfa")
    if config.regex is not None:
        if config.alphabet is None:
            raise click.UsageError("--alphabet is required with --regex")
        return compile_regex(config.regex, config.alphabet)
    dfa = dfa_from_json(config.dfa_path.read_text(encoding="utf-8"))
    if config.alphabet is not None and set(config.alphabet) != set(dfa.alphabet):
        raise AlphabetError(
            f"--alphabet {''.join(config.alphabet)} does not match the DFA alphabet {''.join(dfa.alphabet)}"
        )
    return minimize(dfa)


def _run(options: dict, command: Command, action: Action) -> None:
    """Build the config, run `action`, print its output and exit with the code it reports."""
    ctx = click.get_current_context()
    try:
        config = _config(command, **options)
        cli_logger.info(f"{command.value}: {config.model_dump_json(exclude={'command'})}")
        output, code = action(config)
    except SynmonError as error:
        logger.error(f"{command.value} failed: {error.detail}")
        cli_logger.info(f"{command.value}: exit {error.exit_code}")
        click.echo(f"Error: {error.detail}", err=True)
        ctx.exit(error.exit_code)
    click.echo(output, nl=False)
    cli_logger.info(f"{command.value}: exit {code}")
    if code:
        ctx.exit(code)


def _unsupported(config: RunConfig) -> click.UsageError:
    return click.UsageError(f"--format {config.output_format.value} is not available for {config.command.value}")


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging")
def cli(verbose: bool):
    """Syntactic algebras of regular languages across six varieties."""
    setup_logging("DEBUG" if verbose else LOG_LEVEL)


# syn


def _syn(config: RunConfig) -> Tuple[str, int]:
    algebra = syntactic_algebra(config.variety, load_language(config), config.limits)
    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        return render_json(algebra, config.seed), EXIT_OK
    if fmt == OutputFormat.CSV:
        return f"# seed={config.seed}\n" + render_csv(algebra), EXIT_OK
    if fmt == OutputFormat.DOT:
        if algebra.is_linear:
            raise _unsupported(config)
        return f"// seed={config.seed}\n" + algebra_to_dot(algebra), EXIT_OK
    return f"seed: {config.seed}\n" + render_table(algebra), EXIT_OK


@cli.command()
@language_options
def syn(**options):
    """Print the syntactic D-monoid Syn L."""
    _run(options, Command.SYN, _syn)


# min


def _min(config: RunConfig) -> Tuple[str, int]:
    automaton = minimal_d_automaton(config.variety, load_language(config), config.limits)
    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        return automaton_to_json(automaton, seed=config.seed), EXIT_OK
    if fmt == OutputFormat.CSV:
        return f"# seed={config.seed}\n" + automaton_to_csv(automaton), EXIT_OK
    if fmt == OutputFormat.DOT:
        return f"// seed={config.seed}\n" + automaton_to_dot(automaton), EXIT_OK
    return f"seed: {config.seed}\n" + automaton_to_table(automaton), EXIT_OK


@cli.command(name="min")
@language_options
def min_command(**options):
    """Print the minimal D-automaton Min L."""
    _run(options, Command.MIN, _min)


# dual


def _report_rows(reports: List[Tuple[str, VerificationReport]]) -> List[List[str]]:
    return [
        [name, report.status.value, " ".join(f"{k}={_flat(v)}" for k, v in report.data.items() if k != "generators")]
        for name, report in reports
    ]


def _flat(value) -> str:
    return str(value).lower() if isinstance(value, bool) else str(value)


def _dual(config: RunConfig) -> Tuple[str, int]:
    dfa = load_language(config)
    fmt = config.output_format
    if fmt == OutputFormat.DOT:
        return f"// seed={config.seed}\n" + atoms_to_dot(compute_atoms(build_derivative_system(dfa))), True
    syntactic = verify_syntactic_duality(dfa)
    minimal = verify_minimal_duality(dfa)
    code = EXIT_OK if syntactic.passed and minimal.passed else EXIT_FAILED
    if fmt == OutputFormat.JSON:
        data = {
            "seed": config.seed,
            "syntactic": syntactic.model_dump(mode="json"),
            "minimal": minimal.model_dump(mode="json"),
        }
        return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n", code
    rows = _report_rows([("syntactic", syntactic), ("minimal", minimal)])
    if fmt == OutputFormat.CSV:
        return _csv([["# seed", config.seed], ["check", "status", "data"]] + rows), code
    s = syntactic.data
    summary = f"atoms={s['atoms']} syn={s['syn_size']} isomorphic={_flat(s['isomorphic'])}"
    witnesses = syntactic.witnesses + minimal.witnesses
    return "\n".join(
        [f"seed: {config.seed}", summary, "", tabulate(rows, headers=["check", "status", "data"])]
        + [f"witness: {w}" for w in witnesses]
    ) + "\n", code


@cli.command()
@language_options
def dual(**options):
    """Check the duality between Syn L, Min L and the atoms of the languages
    generated by L^rev (always in set)."""
    options["variety"] = "set"
    _run(options, Command.DUAL, _dual)


# check


def _csv(rows: List[list]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def _outcome_rows(outcomes: List[CheckOutcome]) -> List[List[str]]:
    return [[o.check, "pass" if o.passed else "FAIL", o.message] for o in outcomes]


def _check(config: RunConfig) -> Tuple[str, int]:
    outcomes = run_checks(config.variety, load_language(config), config.limits, config.seed, config.max_length)
    passed = all(o.passed for o in outcomes)
    code = outcome_exit_code(outcomes)
    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        data = {"variety": str(config.variety), "seed": config.seed, "passed": passed,
                "outcomes": [o.model_dump() for o in outcomes]}
        return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n", code
    if fmt == OutputFormat.CSV:
        return _csv([["# seed", config.seed], ["check", "result", "message"]] + _outcome_rows(outcomes)), code
    if fmt == OutputFormat.DOT:
        raise _unsupported(config)
    lines = [f"seed: {config.seed}  variety: {config.variety}",
             tabulate(_outcome_rows(outcomes), headers=["check", "result", "message"])]
    for o in outcomes:
        lines += [f"{o.check} witness: {w}" for w in o.witnesses]
    return "\n".join(lines) + "\n", code


@cli.command()
@language_options
def check(**options):
    """Run every verification suite on one language."""
    _run(options, Command.CHECK, _check)


# corpus


def _matrix(results: List[LanguageResult]) -> List[List[str]]:
    rows = []
    for result in results:
        cells = []
        for variety in result.outcomes:
            failed = [o.check for o in result.outcomes[variety] if not o.passed]
            cells.append("pass" if not failed else "FAIL:" + ",".join(failed))
        rows.append([result.index, result.name, result.regex] + cells)
    return rows


@cli.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              default=CORPUS_PATH, show_default=True, help="Corpus YAML file")
@click.option("--format", "output_format", type=click.Choice(["table", "json", "csv"]), default="table",
              show_default=True, help="Output format")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed for sampled checks")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes")
@click.option("--max-jsl-states", type=int, default=MAX_JSL_STATES, show_default=True)
@click.option("--max-dim", type=int, default=MAX_DIM, show_default=True)
@click.option("--max-elements", type=int, default=MAX_ELEMENTS, show_default=True)
@click.option("--max-length", type=click.IntRange(min=0), default=4, show_default=True)
def corpus(corpus_path: Path, **options):
    """Run the acceptance corpus and print a pass/fail matrix."""

    def action(config: RunConfig) -> Tuple[str, int]:
        results = run_corpus(load_corpus(corpus_path), config.limits, config.seed,
                             config.max_length, config.workers)
        passed = all(r.passed for r in results)
        code = outcome_exit_code(o for r in results for checks in r.outcomes.values() for o in checks)
        headers = ["#", "name", "regex"] + [str(Variety.of(k)) for k in CORPUS_VARIETIES]
        if config.output_format == OutputFormat.JSON:
            data = {"seed": config.seed, "passed": passed,
                    "languages": [r.model_dump(mode="json") for r in results]}
            return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n", code
        if config.output_format == OutputFormat.CSV:
            return _csv([["# seed", config.seed], headers] + _matrix(results)), code
        failures = sum(not r.passed for r in results)
        return (f"seed: {config.seed}\n" + tabulate(_matrix(results), headers=headers)
                + f"\n\n{len(results) - failures}/{len(results)} languages pass\n"), code

    _run(options, Command.CORPUS, action)


# eval


@cli.command(name="eval")
@language_options
@click.option("--elem", "elements", multiple=True, required=True,
              help="Element of X*: ab, _|_ (pset), ~ab (inv), {ab,b} (jsl), ab+2*b (vect); give two to compare")
def eval_command(elements: Tuple[str, ...], **options):
    """Evaluate L and Syn L on an element, or decide congruence of two elements."""

    def action(config: RunConfig) -> Tuple[str, int]:
        if len(elements) > 2:
            raise click.UsageError("Give one or two --elem values")
        dfa = load_language(config)
        variety = config.variety
        parsed = [parse_free_elem(variety, text, dfa.alphabet, MAX_WORD_LENGTH) for text in elements]
        algebra = syntactic_algebra(variety, dfa, config.limits)
        data = {"seed": config.seed, "variety": str(variety), "elements": []}
        for u in parsed:
            cls = algebra.class_of(u)
            data["elements"].append({
                "element": format_free_elem(u),
                "language": format_output(eval_language(variety, dfa, u)),
                "class": list(cls) if algebra.is_linear else format_free_elem(algebra.elements[cls].representative),
            })
        if len(parsed) == 2:
            decision = congruence_oracle(variety, dfa, parsed[0], parsed[1], config.limits)
            if variety.kind == VarietyKind.POS:
                data["leq"], data["geq"] = decision
                data["congruent"] = decision[0] and decision[1]
            else:
                data["congruent"] = decision
            witness = congruence_witness(variety, dfa, parsed[0], parsed[1], config.limits)
            data["witness"] = None if witness is None else {"left": witness[0], "right": witness[1]}
        if config.output_format == OutputFormat.JSON:
            return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n", EXIT_OK
        if config.output_format != OutputFormat.TABLE:
            raise _unsupported(config)
        lines = [f"seed: {config.seed}  variety: {variety}",
                 tabulate([[e["element"], e["language"], e["class"]] for e in data["elements"]],
                          headers=["element", "L", "class"])]
        if "congruent" in data:
            lines.append(f"congruent={_flat(data['congruent'])}")
            if "leq" in data:
                lines.append(f"leq={_flat(data['leq'])} geq={_flat(data['geq'])}")
            if data["witness"] is not None:
                w = data["witness"]
                lines.append(f"witness: x={w['left'] or 'ε'} y={w['right'] or 'ε'}")
        return "\n".join(lines) + "\n", EXIT_OK

    _run(options, Command.EVAL, action)


def main() -> Optional[int]:
    return cli()
