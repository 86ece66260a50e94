from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .convcode import CodeParams  # noqa: E402


def profile_figure(profile: Sequence[int], params: CodeParams, path: str | Path, dfree: int | None = None) -> Path:
    """Column distances against (n-k)(j+1)+1 and the Singleton bound, saved as PNG."""
    js = list(range(len(profile)))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(js, [params.col_bound(j) for j in js], ls="--", color="0.5", label="(n-k)(j+1)+1")
    ax.axhline(params.singleton, color="tab:red", lw=4, alpha=0.25, label="Singleton bound")
    ax.plot(js, profile, marker="o", color="tab:blue", label="$d_j^c$")
    if dfree is not None:
        ax.axhline(dfree, color="tab:green", lw=0.8, label="$d_{free}$")
    for name, j in (("L", params.L), ("M", params.M)):
        if j < len(profile):
            ax.axvline(j, color="0.85", lw=0.8, zorder=0)
            ax.annotate(name, (j, 0), xytext=(2, 2), textcoords="offset points", color="0.4")
    p = params
    ax.set_title(f"({p.n},{p.k},{p.delta}) column distance profile")
    ax.set_xlabel("j")
    ax.set_ylabel("distance")
    ax.set_xticks(js)
    ax.set_ylim(bottom=0)
    ax.legend(loc="upper left", fontsize=8, frameon=False)
    fig.tight_layout()
    path = Path(path)
    # no timestamps or version strings: identical inputs give identical bytes
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
