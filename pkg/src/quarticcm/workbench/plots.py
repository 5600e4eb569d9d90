"""Figures for CLI reports (matplotlib, Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rc("figure", figsize=(6.0, 3.6), dpi=120)
plt.rc("axes", linewidth=0.6, titlesize=10, labelsize=9)
plt.rc("xtick", labelsize=8)
plt.rc("ytick", labelsize=8)
plt.rc("legend", fontsize=8, frameon=False)


def _finish(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_table1(reports, path: str) -> str:
    """Grouped bars of computed i1, i2, i3 per row; expected values as ticks."""
    rows = [r for r in reports if r.computed]
    labels = ["[%d,%d,%d]" % tuple(r.inputs["row"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7.5, 3.6))
    width = 0.27
    for j, key in enumerate(("i1", "i2", "i3")):
        xs = [i + (j - 1) * width for i in range(len(rows))]
        ax.bar(xs, [r.computed[key] for r in rows], width, label=key)
        ax.scatter(xs, [r.expected[key] for r in rows], marker="_", color="k", s=60, zorder=3)
    ax.set_yscale("log")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=60, ha="right")
    ax.set_ylabel("index in O_K")
    ax.set_title("computed indices (bars) against the table (black ticks)")
    ax.legend()
    return _finish(fig, path)


def plot_omin_profile(profiles: dict, path: str) -> str:
    """[O_K : O_min,2^k] for the stable k, one bar per field."""
    labels = list(profiles)
    vals = [profiles[k].get(2, (0, 1))[1] for k in labels]
    fig, ax = plt.subplots(figsize=(7.5, 3.4))
    ax.bar(range(len(labels)), vals, color=["C3" if v > 1 else "C0" for v in vals])
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right")
    ax.set_ylabel("[O_K : O_min,2]")
    ax.set_yticks([1, 2, 4])
    ax.set_title("stable minimal order at p = 2")
    return _finish(fig, path)


def plot_orders(orders, path: str, title: str = "orders") -> str:
    """Index against real-subring index for a list of orders."""
    fig, ax = plt.subplots()
    xs = [O.index() for O in orders]
    ys = [O.real_suborder().index() for O in orders]
    ax.scatter(xs, ys, s=28)
    for x, y in zip(xs, ys):
        ax.annotate(str(x), (x, y), textcoords="offset points", xytext=(3, 3), fontsize=7)
    ax.set_xscale("symlog")
    ax.set_yscale("symlog")
    ax.set_xlabel("[O_K : O]")
    ax.set_ylabel("[O_K0 : O_0]")
    ax.set_title(title)
    return _finish(fig, path)


def plot_group(invariants, path: str, title: str = "invariant factors") -> str:
    fig, ax = plt.subplots(figsize=(4.0, 3.0))
    inv = list(invariants) or [1]
    ax.bar(range(len(inv)), inv, color="C2")
    ax.set_xticks(range(len(inv)))
    ax.set_xticklabels([f"Z/{d}" for d in inv])
    ax.set_ylabel("order of factor")
    ax.set_title(title)
    return _finish(fig, path)


def plot_verdicts(reports, path: str) -> str:
    """One bar per report, coloured by verdict."""
    colours = {"pass": "C2", "fail": "C3", "skip": "0.6"}
    fig, ax = plt.subplots(figsize=(max(3.0, 0.5 * len(reports) + 1), 2.6))
    ax.bar(range(len(reports)), [1] * len(reports),
           color=[colours.get(r.verdict, "k") for r in reports])
    ax.set_xticks(range(len(reports)))
    ax.set_xticklabels([r.claim for r in reports], rotation=60, ha="right", fontsize=7)
    ax.set_yticks([])
    ax.set_title("verdicts")
    return _finish(fig, path)
