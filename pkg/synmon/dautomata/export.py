"""Table, CSV, JSON and DOT renderings of D-automata."""
import csv
import io
import json
from typing import Any, Dict, List, Optional

from tabulate import tabulate

from synmon.dautomata.models import DAutomaton
from synmon.freemon.algebra import format_output
from synmon.freemon.models import VarietyKind


def automaton_to_dict(automaton: DAutomaton) -> Dict[str, Any]:
    data = automaton.model_dump(mode="json", exclude_none=True)
    data["variety"] = str(automaton.variety)
    data["output"] = [format_output(v) for v in automaton.output]
    return data


def automaton_to_json(automaton: DAutomaton, seed: Optional[int] = None) -> str:
    data = automaton_to_dict(automaton)
    if seed is not None:
        data["seed"] = seed
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _rows(automaton: DAutomaton) -> List[List[str]]:
    rows = []
    for x in range(automaton.size):
        marks = []
        if x == automaton.initial:
            marks.append("initial")
        if automaton.bottom == x:
            marks.append("bottom")
        if automaton.involution is not None:
            marks.append(f"~ -> {automaton.label(automaton.involution[x])}")
        rows.append(
            [automaton.label(x), format_output(automaton.output[x])]
            + [automaton.label(automaton.trans[a][x]) for a in automaton.alphabet]
            + [", ".join(marks)]
        )
    return rows


def automaton_to_table(automaton: DAutomaton) -> str:
    header = f"variety: {automaton.variety}  alphabet: {''.join(automaton.alphabet)}  size: {automaton.size}"
    if automaton.is_linear:
        sections = [header, "i = " + " ".join(str(x) for x in automaton.initial_vector),
                    "f = " + " ".join(str(x) for x in automaton.output_vector)]
        for letter, matrix in sorted(automaton.matrices.items()):
            sections.append(f"M_{letter}\n" + tabulate(matrix, tablefmt="plain"))
        return "\n\n".join(sections) + "\n"
    sections = [header, tabulate(_rows(automaton), headers=["state", "f"] + list(automaton.alphabet) + ["notes"])]
    if automaton.order is not None:
        labels = [automaton.label(x) for x in range(automaton.size)]
        sections.append(tabulate(
            [[labels[p]] + ["≤" if leq else "" for leq in row] for p, row in enumerate(automaton.order)],
            headers=["≤"] + labels,
        ))
    return "\n\n".join(sections) + "\n"


def automaton_to_csv(automaton: DAutomaton) -> str:
    """Transition table as CSV (matrix entries for VECT)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if automaton.is_linear:
        writer.writerow(["letter", "row"] + [f"c{j}" for j in range(automaton.size)])
        for letter, matrix in sorted(automaton.matrices.items()):
            for r, row in enumerate(matrix):
                writer.writerow([letter, r] + list(row))
        return buffer.getvalue()
    writer.writerow(["state", "f"] + list(automaton.alphabet))
    for row in _rows(automaton):
        writer.writerow(row[:-1])
    return buffer.getvalue()


def _covers(automaton: DAutomaton) -> List[tuple]:
    """Hasse diagram edges of the POS order."""
    leq = automaton.order
    strict = [
        (p, q) for p in range(automaton.size) for q in range(automaton.size) if p != q and leq[p][q]
    ]
    return [
        (p, q) for p, q in strict
        if not any(leq[p][r] and leq[r][q] and r not in (p, q) for r in range(automaton.size))
    ]


def automaton_to_dot(automaton: DAutomaton, name: str = "automaton") -> str:
    """Graphviz source; order covers are dashed, complement pairs dotted."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  start [shape=point];"]
    if automaton.is_linear:
        lines.append(f'  info [shape=note, label="{automaton.variety} dim {automaton.size}"];')
        for letter, matrix in sorted(automaton.matrices.items()):
            rows = "\\n".join(" ".join(str(x) for x in row) for row in matrix)
            lines.append(f'  m_{letter} [shape=box, label="M_{letter}\\n{rows}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    for x in range(automaton.size):
        shape = "doublecircle" if format_output(automaton.output[x]) == "1" else "circle"
        lines.append(f'  s{x} [shape={shape}, label="{automaton.label(x)}"];')
    lines.append(f"  start -> s{automaton.initial};")
    for x in range(automaton.size):
        targets: Dict[int, List[str]] = {}
        for letter in automaton.alphabet:
            targets.setdefault(automaton.trans[letter][x], []).append(letter)
        for target, letters in targets.items():
            lines.append(f'  s{x} -> s{target} [label="{",".join(letters)}"];')
    kind = automaton.variety.kind
    if kind == VarietyKind.POS:
        for p, q in _covers(automaton):
            lines.append(f"  s{p} -> s{q} [style=dashed, arrowhead=none];")
    elif kind == VarietyKind.INV:
        for x, y in enumerate(automaton.involution):
            if x < y:
                lines.append(f"  s{x} -> s{y} [style=dotted, dir=both];")
    lines.append("}")
    return "\n".join(lines) + "\n"
