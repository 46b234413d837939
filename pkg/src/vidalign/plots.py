"""Figure rendering for report outputs.

Each report-producing CLI command drops a PNG next to its delimited output:
the warp path over the cost table, the area enclosed against ground truth,
and per-method benchmark score distributions.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_alignment_figure(out_png, cost, result, gt=None):
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(cost.T, origin="lower", aspect="auto", cmap="viridis",
                   extent=(0.5, result.n + 0.5, 0.5, result.k + 0.5))
    fig.colorbar(im, ax=ax, label="cost")
    ax.plot(result.path[:, 0], result.path[:, 1], "w-", lw=2,
            label=result.method)
    if gt is not None:
        ax.plot(gt.anchors[:, 0], gt.anchors[:, 1], "r--", lw=1.5,
                label="ground truth")
    ax.set_xlabel("first video frame")
    ax.set_ylabel("second video frame")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(out_png, dpi=120)
    plt.close(fig)


def save_eae_figure(out_png, path, gt, n, k, eae=None):
    fig, ax = plt.subplots(figsize=(6, 5))
    poly = np.vstack([path.astype(float), gt.anchors[::-1]])
    ax.fill(poly[:, 0], poly[:, 1], color="tab:orange", alpha=0.3,
            label="enclosed area")
    ax.plot(path[:, 0], path[:, 1], "b-", lw=2, label="predicted")
    ax.plot(gt.anchors[:, 0], gt.anchors[:, 1], "r--", lw=1.5, label="ground truth")
    ax.set_xlim(1, n)
    ax.set_ylim(1, k)
    ax.set_xlabel("first video frame")
    ax.set_ylabel("second video frame")
    title = "alignment vs ground truth"
    if eae is not None:
        title += f" (EAE={eae:.4f})"
    ax.set_title(title)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(out_png, dpi=120)
    plt.close(fig)


def save_benchmark_figure(out_png, rows):
    """One boxplot of EAE per (suite, method) group."""
    groups = {}
    for r in rows:
        groups.setdefault(f"{r['suite']}/{r['method']}", []).append(r["eae"])
    labels = list(groups)
    fig, ax = plt.subplots(figsize=(1.8 * max(4, len(labels)), 4.5))
    ax.boxplot([groups[label] for label in labels], tick_labels=labels)
    ax.set_ylabel("EAE")
    ax.set_title("alignment error by suite and method")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_png, dpi=120)
    plt.close(fig)
