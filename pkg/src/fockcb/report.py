"""Block results and their text renderings (JSON, CSV, LaTeX, plain text).

A :class:`BlockResult` is the portable form of one computed weight subspace:
plain labels, named matrices and the provenance of the bar-invariant basis.
It round-trips through JSON, which is what the cache and worker processes use.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .combinatorics import format_multipartition, format_multipartition_paper
from .crystal import in_crystal
from .laurent import format_poly, parse_poly
from .linalg import LaurentMatrix

#: Names used for the matrices in every output format.
MATRIX_NAMES = {"plus": "Δ+", "minus": "Δ-", "A": "A", "T": "T"}


@dataclass
class BlockResult:
    n: int
    l: int
    charge: tuple
    deficit: tuple
    labels: list
    matrices: dict  # name -> LaurentMatrix, in insertion order
    provenance: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @classmethod
    def from_transition(cls, res, names) -> "BlockResult":
        mats = {}
        for name in names:
            M = getattr(res, name)
            if M is not None:
                mats[name] = M
        prov = [el.describe() for el in res.basis]
        return cls(res.n, res.l, tuple(res.s_l), tuple(res.deficit), list(res.labels), mats, prov, dict(res.timings))

    def params(self) -> dict:
        return {"n": self.n, "l": self.l, "charge": list(self.charge), "deficit": list(self.deficit), "dimension": len(self.labels)}

    def starred(self) -> list:
        """Labels that are vertices of the crystal of the highest-weight module."""
        return [in_crystal(mp, self.charge, self.n) for mp in self.labels]

    # -- JSON -------------------------------------------------------------------

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "params": self.params(),
            "labels": [[list(p) for p in mp] for mp in self.labels],
            "matrix": {MATRIX_NAMES.get(k, k): matrix_triples(M) for k, M in self.matrices.items()},
            "basis": self.provenance,
        }
        if include_timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out

    @classmethod
    def from_dict(cls, data) -> "BlockResult":
        p = data["params"]
        labels = [tuple(tuple(part) for part in mp) for mp in data["labels"]]
        by_text = {format_multipartition(mp): mp for mp in labels}
        reverse = {v: k for k, v in MATRIX_NAMES.items()}
        mats = {}
        for name, triples in data["matrix"].items():
            ent = {(by_text[r], by_text[c]): parse_poly(v) for r, c, v in triples}
            mats[reverse.get(name, name)] = LaurentMatrix(labels, labels, ent)
        return cls(p["n"], p["l"], tuple(p["charge"]), tuple(p["deficit"]), labels, mats, list(data.get("basis", [])))


def matrix_triples(M: LaurentMatrix) -> list:
    """``[row, col, poly]`` for every nonzero entry, in row-then-column label order."""
    out = []
    for r in M.rows:
        for c in M.cols:
            v = M[(r, c)]
            if v:
                out.append([format_multipartition(r), format_multipartition(c), format_poly(v)])
    return out


# -- emitters --------------------------------------------------------------------

def render_json(blocks, params: dict) -> str:
    if len(blocks) == 1:
        payload = blocks[0].to_dict()
        payload["params"] = {**params, **payload["params"]}
    else:
        payload = {"params": params, "blocks": [b.to_dict() for b in blocks]}
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_csv(blocks) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    many = len(blocks) > 1 or any(len(b.matrices) > 1 for b in blocks)
    header = ["row", "col", "poly"]
    if many:
        header = ["deficit", "matrix"] + header
    w.writerow(header)
    for b in blocks:
        tag = ",".join(map(str, b.deficit))
        for name, M in b.matrices.items():
            for row in matrix_triples(M):
                w.writerow(([tag, MATRIX_NAMES.get(name, name)] if many else []) + row)
    return buf.getvalue()


def latex_poly(f) -> str:
    """Descending powers, e.g. ``q^3+q`` or ``2q^{-1}``."""
    if not f:
        return "0"
    parts = []
    for e, c in sorted(f.terms(), reverse=True):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = "q" if e == 1 else (f"q^{e}" if 0 <= e < 10 else f"q^{{{e}}}")
            body = power if mag == 1 else f"{mag}{power}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


def _latex_label(mp) -> str:
    comps = []
    for part in mp:
        comps.append("\\emptyset" if not part else "(" + ",".join(map(str, part)) + ")")
    return "\\bigl( " + ",".join(comps) + " \\bigr)"


def render_latex(block: BlockResult, name: str = "plus") -> str:
    """Lower-triangular array read by columns, labels with crystal marks on the right."""
    M = block.matrices[name]
    d = len(block.labels)
    lines = [f"% n={block.n}, l={block.l}, charge={list(block.charge)}, deficit={list(block.deficit)}, {MATRIX_NAMES.get(name, name)}"]
    lines.append("\\begin{array}{ll}")
    lines.append(f" \\left( \\begin{{array}}{{*{{{d}}}{{c}}}}")
    for i, r in enumerate(block.labels):
        cells = []
        for j, c in enumerate(block.labels):
            cells.append("." if j > i else latex_poly(M[(r, c)]))
        lines.append(" " + " & ".join(cells) + " \\\\")
    lines.append(" \\end{array} \\right)")
    lines.append("& \\hspace{-5mm}")
    lines.append(" \\begin{array}{ll}")
    for star, mp in zip(block.starred(), block.labels):
        lines.append(f" {'*' if star else ''} & \\hspace{{-3mm}} {_latex_label(mp)} \\\\")
    lines.append(" \\end{array}")
    lines.append("\\end{array}")
    return "\n".join(lines) + "\n"


def render_pretty(block: BlockResult) -> str:
    out = []
    p = block.params()
    out.append(f"n={p['n']} l={p['l']} charge={tuple(block.charge)} deficit={tuple(block.deficit)} dim={p['dimension']}")
    stars = block.starred()
    width = max((len(format_multipartition_paper(mp)) for mp in block.labels), default=0)
    for name, M in block.matrices.items():
        out.append(f"{MATRIX_NAMES.get(name, name)}:")
        grid = [[latex_poly(M[(r, c)]) if j <= i or M[(r, c)] else "." for j, c in enumerate(block.labels)] for i, r in enumerate(block.labels)]
        cw = max((len(x) for row in grid for x in row), default=1)
        for i, mp in enumerate(block.labels):
            label = format_multipartition_paper(mp).ljust(width)
            mark = "*" if stars[i] else " "
            out.append(f"  {mark} {label}  " + " ".join(x.rjust(cw) for x in grid[i]))
    return "\n".join(out) + "\n"


# -- report directory ------------------------------------------------------------

def block_stem(block: BlockResult) -> str:
    charge = "_".join(str(x) for x in block.charge)
    deficit = "_".join(str(x) for x in block.deficit)
    return f"n{block.n}_l{block.l}_s{charge}_N{deficit}"


def write_report(blocks, directory) -> list:
    """One CSV and one heatmap per matrix per block; returns the written paths."""
    from .plotting import plot_matrix

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for b in blocks:
        stem = block_stem(b)
        for name, M in b.matrices.items():
            single = BlockResult(b.n, b.l, b.charge, b.deficit, b.labels, {name: M})
            csv_path = directory / f"{stem}_{name}.csv"
            csv_path.write_text(render_csv([single]))
            png_path = directory / f"{stem}_{name}.png"
            title = f"{MATRIX_NAMES.get(name, name)}  n={b.n} l={b.l} s={tuple(b.charge)} N={tuple(b.deficit)}"
            plot_matrix(M, png_path, title=title)
            written += [csv_path, png_path]
    return written
