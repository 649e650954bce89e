#!/usr/bin/env python3
"""Plot second-order correlation curves from a g2 CSV."""
import sys

import matplotlib.pyplot as plt
import pandas as pd

path = sys.argv[1] if len(sys.argv) > 1 else "g2_correlations.csv"
df = pd.read_csv(path)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(df.tau, df.g2_same, label="same direction")
ax.plot(df.tau, df.g2_cross, label="opposite directions")
if "g2_same_markov" in df.columns:
    ax.plot(df.tau, df.g2_same_markov, "--", label="same, Markov")
    ax.plot(df.tau, df.g2_cross_markov, "--", label="opposite, Markov")
ax.set_xlabel(r"$\tau$")
ax.set_ylabel(r"$g^{(2)}(\tau)$")
ax.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print(f"wrote {out}")
