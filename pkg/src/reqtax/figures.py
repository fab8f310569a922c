"""Bar charts of document statistics, written next to the stats table."""

from __future__ import annotations

from pathlib import Path

from reqtax.document import SrsDocument
from reqtax.report import document_stats
from reqtax.taxonomy import Category


def _bar(ax, labels, values, title, color):
    positions = range(len(labels))
    ax.barh(list(positions), values, color=color)
    ax.set_yticks(list(positions))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("count")
    for p, v in zip(positions, values):
        if v:
            ax.text(v, p, f" {v}", va="center", fontsize=7)


def plot_stats(doc: SrsDocument, out_dir: str | Path, stem: str = "stats") -> list[Path]:
    """Render category and relation counts; return the written PNG paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    s = document_stats(doc)
    written = []

    fig, ax = plt.subplots(figsize=(6, 4))
    cats = list(s["categories"].items())
    _bar(ax, [Category(k).title for k, _ in cats], [v for _, v in cats],
         f"Categories ({s['elements']} elements)", "tab:blue")
    fig.tight_layout()
    path = out_dir / f"{stem}_categories.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    kinds = list(s["relations"]["declared"])
    declared = [s["relations"]["declared"][k] for k in kinds]
    derived = [s["relations"]["derived"][k] for k in kinds]
    positions = range(len(kinds))
    ax.barh(list(positions), declared, color="tab:orange", label="declared")
    ax.barh(list(positions), derived, left=declared, color="tab:gray", label="derived")
    ax.set_yticks(list(positions))
    ax.set_yticklabels(kinds, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("count")
    ax.set_title("Relations", fontsize=10)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    path = out_dir / f"{stem}_relations.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
