"""Figure rendering for the report path.

Every command's report can be accompanied by one PNG per result section,
written next to the delimited output.  Rendering is deterministic: fixed
geometry, data straight from the (already sorted) records, and the PNG
Software chunk stripped so reruns are byte-identical.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import BARI_LEMMA, NIKOLSKII_THEOREM
from .segments import ALL_STATEMENTS

_SAVEFIG = {"dpi": 130, "metadata": {"Software": None}}


def _save(fig, path: str) -> None:
    fig.savefig(path, **_SAVEFIG)
    plt.close(fig)


def _fig_constants(records: list[dict], path: str) -> None:
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
    for ax, check, title in (
        (axes[0], "c-monotone", "trigonometric-bound constant vs n"),
        (axes[1], "b-monotone", "algebraic-bound constant vs n"),
    ):
        series: dict[tuple, list[tuple[int, float]]] = {}
        for r in records:
            if r.get("check") != check:
                continue
            key = (r["alpha"], r.get("beta"), r["mu"], r["p"])
            series.setdefault(key, []).append((r["n"], r["lhs"]))
        for key in sorted(series, key=str):
            pts = sorted(series[key])
            ax.loglog([n for n, _ in pts], [v for _, v in pts], "-o",
                      lw=0.8, ms=2.5, alpha=0.5)
        ax.set_xlabel("n")
        ax.set_ylabel("constant")
        ax.set_title(title, fontsize=9)
        ax.grid(True, which="both", lw=0.3, alpha=0.4)
    fig.tight_layout()
    _save(fig, path)


def _fig_lemmas(records: list[dict], path: str) -> None:
    fig, axes = plt.subplots(2, 2, figsize=(9, 6.4))
    for ax, statement in zip(axes.ravel(), ALL_STATEMENTS):
        rows = [r for r in records if r["statement"] == statement]
        if rows:
            ax.scatter(
                [r["l"] for r in rows],
                [r["margin"] for r in rows],
                s=4,
                alpha=0.4,
                c=["tab:blue" if r["pass"] else "tab:red" for r in rows],
            )
        ax.axhline(0.0, color="k", lw=0.6)
        ax.set_title(statement, fontsize=9)
        ax.set_xlabel("segment length")
        ax.set_ylabel("margin")
    fig.tight_layout()
    _save(fig, path)


def _fig_ratio_suite(records: list[dict], path: str, title: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ns = np.array([r["n"] for r in records], dtype=float)
    ratios = np.array([r["ratio"] for r in records], dtype=float)
    ax.scatter(ns, ratios, s=3, alpha=0.2)
    ax.axhline(1.0, color="tab:red", lw=1.0, label="bound")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("degree n")
    ax.set_ylabel("lhs / rhs")
    ax.set_ylim(0.0, 1.08)
    ax.set_title(title, fontsize=10)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def _fig_sharpness(records: list[dict], path: str) -> None:
    cols = len(records)
    fig, axes = plt.subplots(1, cols, figsize=(4.4 * cols, 3.6), squeeze=False)
    for ax, r in zip(axes[0], records):
        logn = np.log(np.array(r["degrees"], dtype=float))
        logr = np.log(np.array(r["best_ratios"], dtype=float))
        ax.plot(logn, logr, "o", ms=4, label="best ratios")
        slope = r["fitted_exponent"]
        intercept = float(np.mean(logr - slope * logn))
        ax.plot(logn, slope * logn + intercept, "-", lw=1.0,
                label=f"fit {slope:.3f}")
        theory = r["theory_exponent"]
        anchor = logr[0] - theory * logn[0]
        ax.plot(logn, theory * logn + anchor, "--", lw=1.0,
                label=f"theory {theory:.3f}")
        ax.set_xlabel("log n")
        ax.set_ylabel("log best ratio")
        label = f"a={r['alpha']} b={r['beta']} mu={r['mu']} p={r['p']} q={r['q']}"
        ax.set_title(label, fontsize=8)
        ax.legend(fontsize=7)
        ax.grid(True, lw=0.3, alpha=0.4)
    fig.tight_layout()
    _save(fig, path)


def render_figures(envelope, stem: str) -> list[str]:
    """Render one PNG per result section present in the envelope."""
    records = envelope.records
    paths: list[str] = []

    constants = [r for r in records if r["statement"] == "constant-properties"]
    if constants:
        path = f"{stem}-constants.png"
        _fig_constants(constants, path)
        paths.append(path)

    lemmas = [r for r in records if r["statement"] in ALL_STATEMENTS]
    if lemmas:
        path = f"{stem}-lemmas.png"
        _fig_lemmas(lemmas, path)
        paths.append(path)

    for statement, name, title in (
        (BARI_LEMMA, "bari", "uniform-norm bound, random trigonometric polynomials"),
        (NIKOLSKII_THEOREM, "nikolskii", "different-metrics bound, random algebraic polynomials"),
    ):
        rows = [r for r in records if r["statement"] == statement]
        if rows:
            path = f"{stem}-{name}.png"
            _fig_ratio_suite(rows, path, title)
            paths.append(path)

    sharp = [r for r in records if r["statement"] == "sharpness-probe"]
    if sharp:
        path = f"{stem}-sharpness.png"
        _fig_sharpness(sharp, path)
        paths.append(path)
    return paths
