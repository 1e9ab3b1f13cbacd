"""
Which transducers are simple?
=============================

Three questions answered on the canonical table: are origins monotone, can a
one-way machine without lookahead do the job, and is the function first-order
definable.
"""

from otx import classify, fixture_names, load_machine

for name in fixture_names():
    if name == "loop.2dfa":
        continue  # not a transducer: it never halts
    result = classify(load_machine(name))
    flags = " ".join(f"{k}={'-' if v is None else 'yes' if v else 'no'}" for k, v in result.items())
    print(f"{name:14} {flags}")

# %%
# EVENID is order preserving but needs to know the parity of the suffix, and
# counting parity is exactly what first-order logic cannot do
from otx import canonical_table
from otx.decisions import TransitionMonoid

t = canonical_table(load_machine("evenid.sst"))
monoid = TransitionMonoid(t.past)
print(len(monoid), "elements,", "aperiodic" if monoid.is_aperiodic() else "has a cycle")
