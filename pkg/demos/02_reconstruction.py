"""
Rebuilding an output from per-position views
=============================================

For each position i, hide everything else: positions before i become one
abstract "left" colour and positions after become "right".  The sequence of
these views determines the whole output with origins.
"""

from otx import characteristic_values, evaluate, load_machine, otimes_merge

pal = load_machine("pal.sst")  # w -> w wᴿ
out = evaluate(pal, "abb")
xs = characteristic_values(out)
for i, x in enumerate(xs, start=1):
    print(f"x{i} =", x)

merged = otimes_merge(xs, 3)
print(merged.render())
print(merged == out)

# %%
# the views are also what a characteristic table stores, indexed by the
# state of the prefix, the letter and the state of the suffix
from otx import canonical_table, table_eval, table_lookup

t = canonical_table(pal)
print(len(t.past), "past states,", len(t.future), "future states")
print(table_lookup(t, "a", "b", "b"))
print(table_eval(t, "abb") == out)
