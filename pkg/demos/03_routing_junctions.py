# %% [markdown]
# # Orthogonal routing and junction dots
#
# Waypoints are joined by horizontal-then-vertical steps.  A dot is drawn where
# a line ends on another line, or where three or more line ends meet.  Lines
# that merely cross get no dot.

# %%
from schemeforge.model import Point as P
from schemeforge.routing import junctions, orthogonalize

print(orthogonalize([P(0, 0), P(10, 5), P(20, 5)]))

# %%
bus = [P(0, 0), P(40, 0)]
tee = [P(10, -10), P(10, 0)]
crossing = [P(30, -10), P(30, 10)]
print("T-junction and crossing:", junctions([bus, tee, crossing]))

star = [[P(0, 20), P(10, 20)], [P(10, 20), P(10, 30)], [P(10, 20), P(20, 20)]]
print("three ends:", junctions(star))
print("two ends only:", junctions(star[:2]))

# %% [markdown]
# Tolerance is 0.01 mm: an end 5 µm short of a line still counts.

# %%
print(junctions([bus, [P(20, -10), P(20, -0.005)]]))
print(junctions([bus, [P(20, -10), P(20, -0.02)]]))
