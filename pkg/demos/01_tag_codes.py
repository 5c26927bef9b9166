# %% [markdown]
# # Letter codes and positional designations
#
# A functional code names the measured variable first, then an optional
# modifier, then what the device does with the signal.

# %%
from schemeforge.tagcodes import (
    TagError,
    display_code,
    measured_variable,
    parse_code,
    parse_designation,
)

for text in ["TE", "TIR", "PDI", "FQI", "LSA"]:
    code = parse_code(text)
    print(f"{text:5} variable={measured_variable(code).name:12} "
          f"modifier={code.modifier or '-'} functions={''.join(code.functions)}")

# %% [markdown]
# A second letter from D, F, J or Q is read as a modifier (difference, ratio,
# scanning, integration); none of them doubles as a function letter.

# %%
for text in ["PD", "TDI", "FFI"]:
    code = parse_code(text)
    print(text, "modifier:", code.modifier, "functions:", code.functions)
assert display_code(parse_code("TDI")) == "TDI"

try:
    parse_code("X9")
except TagError as exc:
    print("rejected:", exc)

# %% [markdown]
# Designations sort by loop number first, then by suffix.

# %%
designations = sorted(parse_designation(d) for d in ["12б", "3", "12а", "1в"])
print([str(d) for d in designations])
