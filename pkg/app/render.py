"""Text emitters: DOT and ASCII for quivers, plain tables for reports."""
import io
from typing import Iterable, List, Sequence

from app.schemas import ClassificationOut, ConesOut, ElementsOut, PeelOut, SuiteOut, WeightsOut
from app.solver.quiver import MinusculeQuiver, heights, holes, peaks


def _ints(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def to_dot(q: MinusculeQuiver) -> str:
    """Node and edge statements only; vertices of equal height share a rank."""
    output = io.StringIO()
    h = heights(q)
    tops, gaps = peaks(q), holes(q)
    print(f'digraph "{q.rs.name}_w{q.weight}" {{', file=output)
    print("  rankdir=TB;", file=output)
    for v in q.vertices:
        attrs = [f'label="{v}:a{q.color(v)}"']
        if v in tops:
            attrs.append("shape=box")
        if v in gaps:
            attrs.append("style=dashed")
        print(f"  {v} [{', '.join(attrs)}];", file=output)
    for a, b in sorted(q.arrows):
        print(f"  {a} -> {b};", file=output)
    for level in sorted(set(h.values()), reverse=True):
        same = " ".join(f"{v};" for v in q.vertices if h[v] == level)
        print(f"  {{ rank=same; {same} }}", file=output)
    print("}", file=output)
    return output.getvalue()


def to_ascii(q: MinusculeQuiver) -> str:
    """
    One column per color, one row per height (top row highest). A cell holds
    the vertex number, '*' marks a peak and '!' a hole.
    """
    h = heights(q)
    tops, gaps = peaks(q), holes(q)
    colors = list(q.rs.indices)
    width = max(4, len(str(len(q))) + 3)

    lines: List[str] = [f"{q.describe()}"]
    lines.append("h\\c " + "".join(f"{c:>{width}}" for c in colors))
    for level in sorted(set(h.values()), reverse=True):
        cells = []
        for c in colors:
            here = [v for v in q.vertices if h[v] == level and q.color(v) == c]
            cell = ""
            for v in here:
                cell += f"{v}{'*' if v in tops else ''}{'!' if v in gaps else ''}"
            cells.append(f"{cell or '.':>{width}}")
        lines.append(f"{level:>3} " + "".join(cells))
    lines.append("arrows: " + " ".join(f"{a}->{b}" for a, b in sorted(q.arrows)))
    lines.append(f"peaks: {_ints(sorted(tops))}  holes: {_ints(sorted(gaps))}")
    return "\n".join(lines) + "\n"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    out = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    out.append("  ".join("-" * w for w in widths))
    for row in rows:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(out) + "\n"


def weights_table(out: WeightsOut) -> str:
    rows = [[out.root_system, _ints(out.minuscule), _ints(out.cominuscule), " ".join(out.highest_root)]]
    return _table(["type", "minuscule", "cominuscule", "highest root"], rows)


def elements_table(out: ElementsOut) -> str:
    rows = [[str(k), str(len(w)), _ints(w) or "(empty)"] for k, w in enumerate(out.elements)]
    return _table(["#", "length", "word"], rows)


def classification_table(out: ClassificationOut) -> str:
    rows = [
        [
            _ints(d.ordering),
            " | ".join(_ints(p) for p in d.parts),
            " | ".join(_ints(w) for w in d.words),
            "yes" if d.neat else "no",
            "yes" if d.smooth else "no",
            "yes" if d.ih_small else "no",
        ]
        for d in out.decompositions
    ]
    body = _table(["ordering", "parts", "part words", "neat", "smooth", "ih-small"], rows)
    counts = " ".join(f"{k}={v}" for k, v in out.counts.items())
    return body + counts + "\n"


def cones_table(out: ConesOut) -> str:
    rows = [["effective", "", " ".join("(" + ",".join(g) + ")" for g in out.effective.generators)]]
    for nef in out.nef:
        gens = " ".join("(" + ",".join(g) + ")" for g in nef.cone.generators)
        rows.append(["nef", _ints(nef.ordering), gens])
    return _table(["cone", "ordering", "generators"], rows)


def peel_table(out: PeelOut) -> str:
    rows = [[str(s.vertex), s.coefficient] for s in out.steps]
    return _table(["vertex", "mu"], rows) + f"ordering: {_ints(out.ordering)}\n"


def suite_table(out: SuiteOut) -> str:
    rows = [["PASS" if c.passed else "FAIL", c.name, c.detail] for c in out.checks]
    verdict = "ok" if out.ok else "FAILED"
    return _table(["", "check", "detail"], rows) + f"{out.root_system} omega_{out.weight}: {verdict}\n"
