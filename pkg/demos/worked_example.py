"""
One string, three ways to its stabilization time
================================================

Run the evolution on a short string, look at its Young diagram losing
corners, and read the same number off the walk.
"""

from stabtime.evolution import stabilize, strip_to_core
from stabtime.walk import stabilization_time_closed_form, walk_profile
from stabtime.young import cut_corners, depth, render, young_diagram

s = "01101011"

# every 01 becomes 10 at once, until all 1s sit left of all 0s
final, steps, trace = stabilize(s, record_trace=True)
for state in trace:
    print(state)
print("steps:", steps)

# the core is what is left after dropping leading 1s and trailing 0s
core = strip_to_core(s).core
d = young_diagram(core)
print("\nrows, bottom first:", d.row_lengths, " depth:", depth(d))
while d:
    print(render(d))
    d = cut_corners(d)

# the walk steps up on 0 and down on 1
prof = walk_profile(core)
print("walk:", prof.values, " max:", prof.running_max)
print("closed form:", stabilization_time_closed_form(s))
