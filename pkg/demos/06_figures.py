"""Regenerate every figure preset as CSV files under figures/.

Each preset writes one CSV per curve (deformed and undeformed) and a JSON
manifest with the exact parameters. Plot the files with any tool you like.
Equivalent to running `qpacs figure <preset>` for each preset.
"""

import os
import sys
import time

from qpacs.sweeps import PRESETS, run_figure

out_root = sys.argv[1] if len(sys.argv) > 1 else "figures"
threads = min(8, os.cpu_count() or 1)
for pid, preset in PRESETS.items():
    start = time.perf_counter()
    run_figure(pid, os.path.join(out_root, pid), threads=threads)
    print(f"{pid}: {preset.title} ({len(preset.series)} curves, {time.perf_counter() - start:.1f} s)")
