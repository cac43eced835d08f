"""Figure rendering for suite reports (opt-in; headless backend).

The verification pipeline is text-first: JSON/CSV reports are the
canonical output and nothing here runs unless figures are requested.
Rendering produces:

* ``effective_constants.png``: per-statement panels of effective
  constant against set size, one line per family, log-log axes;
* ``pass_rates.png``: a horizontal bar chart of pass rates per
  statement (asserted statements only).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import SuiteReport

__all__ = ["render_report_figures"]


def _series_by_statement(suite: SuiteReport) -> dict[str, dict[str, list[tuple[int, float]]]]:
    """statement -> family -> sorted (n, effective constant) points."""
    table: dict[str, dict[str, list[tuple[int, float]]]] = {}
    for rep in suite.reports:
        n = rep.instance.get("n")
        family = str(rep.instance.get("family", "?"))
        eff = rep.effective_constant
        if not isinstance(n, int) or not (eff > 0) or eff != eff or eff == float("inf"):
            continue
        table.setdefault(rep.statement_id, {}).setdefault(family, []).append((n, eff))
    for families in table.values():
        for points in families.values():
            points.sort()
    return table


def render_report_figures(
    suite: SuiteReport, out_dir: str | Path, dpi: int = 130
) -> list[Path]:
    """Render the report figures into ``out_dir``; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    table = _series_by_statement(suite)
    if table:
        names = sorted(table)
        cols = 3
        rows = (len(names) + cols - 1) // cols
        fig, axes = plt.subplots(
            rows, cols, figsize=(4.2 * cols, 3.2 * rows), squeeze=False
        )
        for idx, name in enumerate(names):
            ax = axes[idx // cols][idx % cols]
            for family, points in sorted(table[name].items()):
                xs = [p[0] for p in points]
                ys = [p[1] for p in points]
                ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.0, label=family)
            ax.set_xscale("log", base=2)
            ax.set_yscale("log")
            ax.axhline(1.0, color="gray", linewidth=0.8, linestyle=":")
            ax.set_title(name, fontsize=9)
            ax.tick_params(labelsize=7)
        for idx in range(len(names), rows * cols):
            axes[idx // cols][idx % cols].axis("off")
        handles, labels = axes[0][0].get_legend_handles_labels()
        if handles:
            fig.legend(handles, labels, loc="lower right", fontsize=8)
        fig.suptitle("Effective constants by set size", fontsize=11)
        fig.supxlabel("|A|", fontsize=9)
        fig.supylabel("lhs / rhs", fontsize=9)
        fig.tight_layout(rect=(0, 0, 1, 0.97))
        path = out / "effective_constants.png"
        fig.savefig(path, dpi=dpi)
        plt.close(fig)
        written.append(path)

    stats = suite.summary.get("statements", {})
    gating = {k: v for k, v in stats.items() if v.get("asserted", True)}
    if gating:
        names = sorted(gating)
        rates = [gating[name].get("pass_rate", 0.0) for name in names]
        fig, ax = plt.subplots(figsize=(7, 0.34 * len(names) + 1.6))
        colors = ["#2a7e43" if r >= 1.0 else "#b03a2e" for r in rates]
        ax.barh(range(len(names)), rates, color=colors)
        ax.set_yticks(range(len(names)))
        ax.set_yticklabels(names, fontsize=8)
        ax.invert_yaxis()
        ax.set_xlim(0, 1.05)
        ax.set_xlabel("pass rate")
        ax.set_title("Pass rate per statement", fontsize=11)
        fig.tight_layout()
        path = out / "pass_rates.png"
        fig.savefig(path, dpi=dpi)
        plt.close(fig)
        written.append(path)

    return written
