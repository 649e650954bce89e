#!/usr/bin/env python3
"""Plot the momentum-exchange probability density from a density CSV."""
import sys

import matplotlib.pyplot as plt
import pandas as pd

path = sys.argv[1] if len(sys.argv) > 1 else "density_spectrum.csv"
df = pd.read_csv(path)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(df.delta_out, df.p_opposite, label="opposite directions (LR)")
ax.plot(df.delta_out, df.p_same, label="same direction (LL+RR)")
ax.set_xlabel(r"$\Delta'$")
ax.set_ylabel(r"$P(\Delta')$  [arb. units]")
ax.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print(f"wrote {out}")
