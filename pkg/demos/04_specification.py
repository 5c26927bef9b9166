# %% [markdown]
# # Specification tables
#
# The same devices can be listed flat, by location band, or by control loop.
# Devices sharing a designation, type and name collapse into one row.

# %%
from pathlib import Path

from schemeforge.dsl import load_scheme
from schemeforge.specgen import GroupBy, generate, render_spec_csv

scheme, _ = load_scheme(Path(__file__).resolve().parent.parent / "tests/fixtures/fig1.scm")

for mode in GroupBy:
    table = generate(scheme, mode)
    print(f"{mode.value}: sections {table.titles()}, total {table.total_quantity()}")

# %%
print(render_spec_csv(generate(scheme, GroupBy.BY_LOOP)))
