"""
Canonical devices and origin equivalence
========================================

Minimizing the characteristic table gives one lookaround transducer per
function.  Equal canonical tables mean equal functions, origins included.
"""

from otx import canonical_table, canonize, dumps, equivalent, load_machine, lookaround_eval

revdup = load_machine("revdup.sst")
evenid = load_machine("evenid.sst")

# REVDUP has two left derivatives (empty prefix or not), EVENID three
# (empty, odd, even non-empty)
print(len(canonical_table(revdup).past), len(canonical_table(evenid).past))

c = canonize(load_machine("dup.2dfa"))
print(c.registers)
print(lookaround_eval(c, "ab").render())
print(dumps(c)[:300], "...")

# %%
# the register machine and the two-way machine for w -> ww are the same function
print(bool(equivalent(load_machine("dup.sst"), load_machine("dup.2dfa"))))

# variants A and B print "ab" on "ab" but with different origins
verdict = equivalent(load_machine("ab-variant-a"), load_machine("ab-variant-b"))
print(bool(verdict))
print(verdict.witness.render())
