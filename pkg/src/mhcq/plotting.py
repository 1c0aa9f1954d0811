"""PNG figures written next to the JSON/TSV reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_COLORS = {"pass": "#4c956c", "FAIL": "#c8553d", "n/a": "#b0b0b0"}


def plot_checks(checks: Sequence[dict], path, title: str) -> Path:
    """Horizontal bars: tuples checked per check group, coloured by status."""
    path = Path(path)
    names = [c["name"] for c in checks][::-1]
    counts = [max(c["checked"], 1) for c in checks][::-1]
    colors = [_COLORS.get(c["status"], "#808080") for c in checks][::-1]
    fig, ax = plt.subplots(figsize=(8, 0.35 * len(names) + 1.2))
    ax.barh(range(len(names)), counts, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels([n if len(n) <= 60 else n[:57] + "..." for n in names], fontsize=7)
    ax.set_xscale("log")
    ax.set_xlabel("basis tuples checked (log scale)")
    ax.set_title(title, fontsize=9)
    handles = [plt.Rectangle((0, 0), 1, 1, color=v) for v in _COLORS.values()]
    ax.legend(handles, list(_COLORS), fontsize=7, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_classification(rows: Sequence[dict], path, max_order: int) -> Path:
    """Per order: loops split by inverse property and by antipode-suite outcome."""
    path = Path(path)
    orders = list(range(1, max_order + 1))
    cats = [("IP, antipode pass", True, True), ("IP, antipode fail", True, False),
            ("non-IP, antipode pass", False, True), ("non-IP, antipode fail", False, False)]
    colors = ["#4c956c", "#e09f3e", "#9e2a2b", "#c8553d"]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    bottom = [0] * len(orders)
    for (label, ip, ok), color in zip(cats, colors):
        vals = [sum(1 for r in rows if r["order"] == n and r["inverse_property"] == ip
                    and r["antipode_suite"] == ("pass" if ok else "FAIL")) for n in orders]
        ax.bar(orders, vals, bottom=bottom, color=color, label=label)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_yscale("symlog")
    ax.set_xlabel("loop order")
    ax.set_ylabel("isomorphism classes")
    ax.set_xticks(orders)
    ax.legend(fontsize=7)
    ax.set_title("function algebras of small loops", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
    return path
