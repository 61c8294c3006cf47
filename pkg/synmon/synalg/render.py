"""Text, JSON and CSV renderings of syntactic algebras."""
import csv
import io
import json
from typing import Any, Dict, List

from tabulate import tabulate

from synmon.freemon.algebra import format_free_elem, format_output
from synmon.synalg.closure import basis_matrices
from synmon.synalg.models import SynAlgebra


def element_labels(algebra: SynAlgebra) -> List[str]:
    return [format_free_elem(e.representative) for e in algebra.elements]


def _absorbing(algebra: SynAlgebra, i: int) -> bool:
    return all(algebra.mult[i][x] == i == algebra.mult[x][i] for x in range(algebra.size))


def _roles(algebra: SynAlgebra, i: int) -> str:
    roles = []
    if not algebra.is_linear and i == algebra.unit:
        roles.append("unit")
    if algebra.zero is not None and i == algebra.zero:
        roles.append("zero")
    elif algebra.zero is None and not algebra.is_linear and _absorbing(algebra, i):
        roles.append("zero")
    roles += [f"gen {a}" for a, g in algebra.gen_map.items() if g == i]
    if algebra.involution is not None:
        roles.append(f"~ -> {algebra.involution[i]}")
    return ", ".join(roles)


def render_table(algebra: SynAlgebra) -> str:
    """Aligned element list followed by the multiplication table(s)."""
    labels = element_labels(algebra)
    sections = [f"variety: {algebra.variety}  alphabet: {''.join(algebra.alphabet)}  size: {algebra.size}"]
    sections.append(tabulate(
        [[i, label, format_output(algebra.output_map[i]), _roles(algebra, i)] for i, label in enumerate(labels)],
        headers=["#", "representative", "f_L", "role"],
    ))
    if algebra.is_linear:
        sections.append("unit: " + " ".join(str(x) for x in algebra.unit_coords))
        for a, coords in algebra.gen_coords.items():
            sections.append(f"gen {a}: " + " ".join(str(x) for x in coords))
        for i, matrix in enumerate(basis_matrices(algebra)):
            sections.append(f"e{i} = M_{labels[i]}\n" + tabulate(matrix, tablefmt="plain"))
        sections.append(tabulate(
            [[f"e{i}"] + [" ".join(str(x) for x in algebra.structure[i][j]) for j in range(algebra.size)]
             for i in range(algebra.size)],
            headers=["·"] + [f"e{j}" for j in range(algebra.size)],
        ))
        return "\n\n".join(sections) + "\n"

    marked = [f"*{label}" if i == algebra.unit else label for i, label in enumerate(labels)]
    sections.append(tabulate(
        [[marked[i]] + [labels[j] for j in row] for i, row in enumerate(algebra.mult)],
        headers=["·"] + marked,
    ))
    if algebra.addition is not None:
        sections.append(tabulate(
            [[labels[i]] + [labels[j] for j in row] for i, row in enumerate(algebra.addition)],
            headers=["+"] + labels,
        ))
    if algebra.order is not None:
        sections.append(tabulate(
            [[labels[i]] + ["≤" if leq else "" for leq in row] for i, row in enumerate(algebra.order)],
            headers=["≤"] + labels,
        ))
    return "\n\n".join(sections) + "\n"


def algebra_to_dict(algebra: SynAlgebra) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "variety": str(algebra.variety),
        "alphabet": "".join(algebra.alphabet),
        "size": algebra.size,
        "elements": [
            {"index": i, "representative": label, "output": format_output(algebra.output_map[i])}
            for i, label in enumerate(element_labels(algebra))
        ],
    }
    if algebra.is_linear:
        data["basis"] = [[list(row) for row in m] for m in basis_matrices(algebra)]
        data["structure"] = [[list(c) for c in row] for row in algebra.structure or ()]
        data["unit"] = list(algebra.unit_coords)
        data["generators"] = {a: list(c) for a, c in algebra.gen_coords.items()}
        return data
    data["unit"] = algebra.unit
    data["generators"] = dict(algebra.gen_map)
    data["mult"] = [list(row) for row in algebra.mult]
    if algebra.order is not None:
        data["order"] = [[int(x) for x in row] for row in algebra.order]
    if algebra.zero is not None:
        data["zero"] = algebra.zero
    if algebra.involution is not None:
        data["involution"] = list(algebra.involution)
    if algebra.addition is not None:
        data["addition"] = [list(row) for row in algebra.addition]
    return data


def render_json(algebra: SynAlgebra, seed: int) -> str:
    data = algebra_to_dict(algebra)
    data["seed"] = seed
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def render_csv(algebra: SynAlgebra) -> str:
    """Multiplication table as CSV (structure constants for VECT)."""
    labels = element_labels(algebra)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if algebra.is_linear:
        writer.writerow(["left", "right"] + [f"e{k}" for k in range(algebra.size)])
        for i in range(algebra.size):
            for j in range(algebra.size):
                writer.writerow([labels[i], labels[j]] + list(algebra.structure[i][j]))
        return buffer.getvalue()
    writer.writerow(["·"] + labels)
    for i, row in enumerate(algebra.mult):
        writer.writerow([labels[i]] + [labels[j] for j in row])
    return buffer.getvalue()


def algebra_to_dot(algebra: SynAlgebra, name: str = "syn") -> str:
    """Right Cayley graph: m -a-> m·e_L(a)."""
    labels = element_labels(algebra)
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i, label in enumerate(labels):
        shape = "doublecircle" if format_output(algebra.output_map[i]) == "1" else "circle"
        style = ", style=bold" if i == algebra.unit else ""
        lines.append(f'  m{i} [shape={shape}, label="{label}"{style}];')
    for i in range(algebra.size):
        targets: Dict[int, List[str]] = {}
        for a in algebra.alphabet:
            targets.setdefault(algebra.mult[i][algebra.gen_map[a]], []).append(a)
        for target, letters in targets.items():
            lines.append(f'  m{i} -> m{target} [label="{",".join(letters)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
