# %% [markdown]
# # Catalogs
#
# Catalog files describe concrete devices.  Only catalogs that measure the
# variable of an instrument's code are offered for it.

# %%
import dataclasses
from pathlib import Path

from schemeforge.catalog import apply_entry, filter_catalogs, load_catalogs
from schemeforge.model import Instrument, Point, SpecProps
from schemeforge.tagcodes import display_code, measured_variable, parse_code

root = Path(__file__).resolve().parent.parent
catalogs, diags = load_catalogs(root / "tests/fixtures/catalogs")

inst = Instrument("t1", Point(0, 0), parse_code("TI"), spec=SpecProps(note="в шкафу"))
for cat in filter_catalogs(catalogs, measured_variable(inst.code)):
    print(cat.catalog_id, [e.entry_id for e in cat.entries])

# %% [markdown]
# Applying an entry fills in the specifying fields without erasing ones the
# entry leaves blank.  A different letter code means the symbol must be redrawn.

# %%
_, entry = catalogs.find_entry("thermo/metran-910")
updated, regenerate_needed = apply_entry(inst, entry)
print(display_code(updated.code), regenerate_needed)
print({k: v for k, v in dataclasses.asdict(updated.spec).items() if v})
assert apply_entry(updated, entry) == (updated, False)
