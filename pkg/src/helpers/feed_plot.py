from pathlib import Path

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from models.trace import KinematicTrace  # noqa: E402


def plot_feed_profile(trace: KinematicTrace, path: str | Path, title: str | None = None) -> None:
    """Feed rate above, tangential and normal acceleration below, both against time."""
    with plt.rc_context({'svg.hashsalt': 'arcsim'}):
        _draw(trace, path, title)


def _draw(trace: KinematicTrace, path: str | Path, title: str | None) -> None:
    fig, (ax_feed, ax_accel) = plt.subplots(2, 1, sharex=True, figsize=(10, 6))

    ax_feed.plot(trace.t, trace.v_f * 60.0, color='tab:blue', linewidth=1.0)
    ax_feed.set_ylabel('Feed rate (m/min)')
    ax_feed.grid(alpha=0.5)

    ax_accel.plot(trace.t, trace.a_t, label='Tangential', linewidth=1.0)
    ax_accel.plot(trace.t, trace.a_n, label='Normal', linewidth=1.0)
    ax_accel.set_xlabel('Time (s)')
    ax_accel.set_ylabel('Acceleration (m/s$^2$)')
    ax_accel.grid(alpha=0.5)
    ax_accel.legend()

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    # Fixed metadata and hash salt keep repeated runs byte-identical.
    fig.savefig(str(path), format='svg', metadata={'Date': None})
    plt.close(fig)
