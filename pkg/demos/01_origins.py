"""
Origins of output letters
=========================

Every output letter remembers the input position that produced it.  Two
machines can compute the same string function yet disagree on origins.
"""

from otx import evaluate, factored_eval, load_machine

# w -> ww, once with registers and once with a two-way head
dup = load_machine("dup.sst")
dup2 = load_machine("dup.2dfa")
print(evaluate(dup, "abb").render())
print(evaluate(dup2, "abb").render())

# cut the input into three parts and colour the output by part;
# underlined parts (1 and 3 here) keep only their block structure
print(factored_eval(dup, ("ab", "ba", "b"), ()))
print(factored_eval(dup, ("ab", "ba", "b"), (1, 3)))

# the reversal w -> wᴿ w: the middle letter shows up twice, around the prefix
revdup = load_machine("revdup.sst")
print(factored_eval(revdup, ("b", "a", "b"), (1, 3)))

# %%
# "identity on ab, empty elsewhere" in four origin semantics
for x in "abcd":
    m = load_machine(f"ab-variant-{x}")
    print(x, repr(evaluate(m, "ab").letters), evaluate(m, "ab").render())
