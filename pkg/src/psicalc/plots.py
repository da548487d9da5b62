"""Figure rendering for the CLI report paths (optional, file output only).

matplotlib is imported lazily and pinned to the Agg backend so plotting
never needs a display and never runs unless a --plot path was requested.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_expansion_figure(report, path: str) -> None:
    """Bar chart of term values by index, with the remainder alongside."""
    plt = _pyplot()
    labels = [str(k) for k in range(len(report.terms))] + ["rem"]
    heights = [float(t) for t in report.terms] + [float(report.remainder)]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(labels, heights, color=["#4878d0"] * len(report.terms) + ["#d65f5f"])
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_xlabel("term index k")
    ax.set_ylabel("value")
    ax.set_title(f"{report.engine} expansion of {report.fn} "
                 f"(order {report.order})")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_jackson_figure(partial_sums, exact: float, tail_bound: float,
                        path: str) -> None:
    """Convergence of the q-integration partial sums toward the closed form."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 3.5))
    xs = list(range(1, len(partial_sums) + 1))
    ax.plot(xs, partial_sums, "-o", markersize=3, label="partial sum")
    ax.axhline(exact, color="#d65f5f", linewidth=0.8, label="closed form")
    ax.set_xlabel("terms summed")
    ax.set_ylabel("value")
    ax.set_title(f"Jackson series convergence (tail bound {tail_bound:.2e})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_table_figure(rows, path: str) -> None:
    """Sequence values and factorial growth from a `table` run."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ns = [r[0] for r in rows]
    ax.plot(ns, [float(r[1]) for r in rows], "-o", markersize=3,
            label="n_psi")
    ax.plot(ns, [float(r[3]) for r in rows], "-s", markersize=3,
            label="n!/n_psi!")
    ax.set_xlabel("n")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
