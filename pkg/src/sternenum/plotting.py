"""PNG figures for the ``report`` command.

Everything goes through ``Figure`` + ``FigureCanvasAgg`` so importing this
module never touches pyplot's global backend.
"""

from __future__ import annotations

from fractions import Fraction

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from matplotlib.patches import Circle as CirclePatch

from .analysis import DEGREE_TARGETS, question_mark
from .enumerations import get_enumeration, prefix
from .stern import get_family, seq_term

__all__ = ["plot_degrees", "plot_packing", "plot_question_mark", "plot_enumeration"]

# fixed metadata keeps PNG bytes stable across runs
_META = {"Software": None}


def _save(fig: Figure, path) -> None:
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=100, metadata=_META)


def plot_degrees(estimates: dict, path) -> None:
    """estimates maps family tag to a DegreeEstimate."""
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    for tag in sorted(estimates):
        est = estimates[tag]
        ks = range(1, len(est.history) + 1)
        line = ax.plot(ks, est.history, marker="o", ms=3, label=tag)[0]
        ax.axhline(DEGREE_TARGETS[tag], color=line.get_color(), ls=":", lw=0.8)
    ax.set_xlabel("row k")
    ax.set_ylabel("log(M_k / M_(k-1)) / log base")
    ax.set_ylim(0.6, 0.9)
    ax.legend()
    _save(fig, path)


def plot_packing(chain, path, viewport=(0, 1), title: str = "") -> None:
    x0, x1 = (float(v) for v in viewport)
    fig = Figure(figsize=(6, 3.5))
    ax = fig.add_subplot()
    top = 0.0
    for c in chain:
        if c.is_line:
            ax.axhline(float(c.x) ** 2, color="gray", lw=0.5)
            continue
        p = float(c.touch_point)
        if not x0 <= p <= x1:
            continue
        r = float(c.radius)
        top = max(top, 2 * r)
        ax.add_patch(CirclePatch((p, r), r, fill=False, lw=0.4))
    ax.axhline(0, color="black", lw=0.8)
    ax.set_xlim(x0, x1)
    ax.set_ylim(-0.02, min(top, 1.0) * 1.05 + 0.02)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    _save(fig, path)


def plot_question_mark(path, k: int = 8, family: str = "B", k_family: int = 4) -> None:
    """?(x) on the dyadic points plus x_n/x_{m^k+n} against n/m^k."""
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    pts = sorted({Fraction(seq_term("A", n), seq_term("A", 2**k + n)) for n in range(2**k + 1)})
    ax.plot([float(x) for x in pts], [float(question_mark(x)) for x in pts], lw=0.8, label="?(x)")
    fam = get_family(family)
    m = fam.base**k_family
    xs = [float(seq_term(fam, n) / seq_term(fam, m + n)) if n else 0.0 for n in range(m + 1)]
    ax.plot(xs, [n / m for n in range(m + 1)], ".", ms=3, label=f"{fam.tag} inverse")
    ax.set_xlabel("x")
    ax.legend()
    _save(fig, path)


def plot_enumeration(tag: str, count: int, path) -> None:
    e = get_enumeration(tag)
    vals = [float(v) for v in prefix(e, count)]
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    ax.semilogy(range(1, count + 1), vals, ".", ms=2)
    ax.set_xlabel("n")
    ax.set_ylabel(f"{e.tag.lower()}_n")
    _save(fig, path)
