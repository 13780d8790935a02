"""Report figures rendered to PNG files (headless, byte-stable output)."""

import os

import matplotlib
import mpmath

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# drop the version stamp so identical data gives identical files
_PNG_METADATA = {"Software": None}


def _save(fig, directory, name):
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def sweep_outcomes(directory, report):
    """Bar chart of passes and of each failure kind."""
    labels = ["certificate passed", "frobenius passed"]
    values = [report["certificate_passes"], report["frobenius_passes"]]
    for kind, n in sorted(report["failures"].items()):
        labels.append(kind)
        values.append(n)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    colors = ["tab:green"] * 2 + ["tab:red"] * (len(values) - 2)
    ax.bar(range(len(values)), values, color=colors)
    ax.set_xticks(range(len(values)), labels, rotation=20, ha="right")
    ax.set_ylabel("curves")
    ax.set_ylim(0, max(report["count"], 1) * 1.05)
    ax.set_title(f"sweep over F_{report['q']}: {report['count']} curves, seed {report['seed']}")
    return _save(fig, directory, "sweep_outcomes.png")


def sweep_timing(directory, seconds, q):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.hist(seconds, bins=min(30, max(5, len(seconds) // 4)), color="tab:blue")
    ax.set_xlabel("seconds per curve")
    ax.set_ylabel("curves")
    ax.set_title(f"certificate time over F_{q}")
    return _save(fig, directory, "sweep_timing.png")


def hessian_residuals(directory, values, precision):
    """log10 |B4(c+)| at each sampled Hessian point."""
    floor = -(precision + 20)
    logs = [float(mpmath.log10(v)) if v else floor for v in values]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(range(1, len(logs) + 1), logs, "o", color="tab:purple")
    ax.axhline(-precision // 2, color="tab:red", linestyle="--", label="tolerance")
    ax.set_xlabel("Hessian point")
    ax.set_ylabel("log10 |B4(c+)|")
    ax.set_title(f"kernel points on the Burkhardt quartic ({precision} digits)")
    ax.legend()
    return _save(fig, directory, "hessian_residuals.png")
