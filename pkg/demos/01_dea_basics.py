# Output-oriented DEA on a toy technology
#
# Four banks, one input, one output. Under constant returns the frontier is
# the ray through the best output/input ratio; under variable returns it is
# the convex hull of the observed points.

import numpy as np

from bankperf import RTS, TechnologySet, efficiency_frontier, output_distance

x = np.array([[1.0], [2.0], [3.0], [4.0]])
y = np.array([[1.0], [3.0], [3.5], [3.6]])

# In[1]:

for rts in RTS:
    eff = efficiency_frontier(TechnologySet(x, y, rts))
    print(rts.value, np.round(eff, 4))

# Bank 2 (input 2, output 3) has the steepest ratio, so it alone is CRS efficient.
# The points bend downwards (a concave hull), so under VRS every bank lies on the frontier.

# In[2]:

# phi is how far outputs could be stretched; efficiency is its reciprocal
s = output_distance([2.5], [2.0], TechnologySet(x, y, RTS.VRS))
print(f"phi={s.phi:.4f}  efficiency={s.efficiency:.4f}")

# A unit outside the reference set can score above one: this happens in
# cross-period evaluation, when last year's frontier is judged against this year's bank.
s = output_distance([2.0], [4.0], TechnologySet(x, y, RTS.CRS))
print(f"outside the frontier: phi={s.phi:.4f}  distance={s.efficiency:.4f}")
