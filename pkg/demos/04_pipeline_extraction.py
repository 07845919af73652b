# %% [markdown]
# # From record to feature table
#
# `extract` runs the whole per-epoch catalog over a record: segment
# each montage channel, compute the configured base features, average
# within each hemisphere, and emit one labeled row per epoch with
# paired `<Name>L` / `<Name>R` columns.

# %%
import numpy as np

from eegfx import Montage, RunConfig, SynthSpec, extract, synth_record

spec = SynthSpec(
    duration_s=120.0,
    channels=("F3", "C3", "F4", "C4"),
    seizure_intervals=((40.0, 55.0), (90.0, 100.0)),
    seizure_gain=4.0,
    seed=3,
)
config = RunConfig(
    montage=Montage(left=("F3", "C3"), right=("F4", "C4")),
    features=("Variance", "Energy", "NE", "SampEn", "IWMF", "EnergyD5"),
)
table = extract(synth_record(spec), config)
print(f"{len(table)} epochs x {len(table.feature_names)} columns")
print("columns:", ", ".join(table.feature_names))
print(f"{int(table.labels.sum())} seizure epochs")

# %% [markdown]
# ## Class contrast per column
#
# Amplitude-driven features separate the classes by an order of
# magnitude; the entropy drops during the rhythmic burst; the weighted
# mean frequency falls toward the 3-8 Hz seizure band.

# %%
for name in table.feature_names:
    col = table.column(name)
    seizure = col[table.labels == 1].mean()
    normal = col[table.labels == 0].mean()
    print(f"{name:10s} seizure/normal mean ratio = {seizure / normal:6.2f}")

# %% [markdown]
# ## CSV round trip
#
# Tables persist as plain CSV with 9 significant digits: labels and
# names reload exactly, values to one part in 1e9, and re-serializing
# what was read reproduces the file byte for byte.

# %%
from pathlib import Path
import tempfile

from eegfx import FeatureTable

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "features.csv"
    table.write_csv(path)
    again = FeatureTable.read_csv(path)
    rel = np.max(np.abs(again.values - table.values) / np.abs(table.values))
    print("labels identical:", np.array_equal(table.labels, again.labels))
    print(f"max relative value error after reload = {rel:.1e}")
    print("re-serialization is byte-stable:",
          again.to_csv() == path.read_text())
    print("first line:", path.read_text().splitlines()[0][:72], "...")
