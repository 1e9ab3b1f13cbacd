"""
Learning a transducer from a teacher
====================================

The teacher answers value queries (the output of one input, with origins) and
equivalence queries.  The learner runs L* on the encoded language of
characteristic values and decodes the result into a canonical device.
"""

from otx import canonical_equal, canonize, learn_transducer, load_machine, make_machine_teacher

target = load_machine("revdup.sst")
teacher = make_machine_teacher(target)
print("alphabet of the encoded language:", teacher.alphabet)

rounds = []
device, stats = learn_transducer(teacher, trace=rounds.append)
print("\n".join(rounds))
print(stats.summary())
print(bool(canonical_equal(device, canonize(target))))

# %%
# most membership questions are malformed words that the learner answers
# without bothering the teacher
print(stats.local_answers, "local answers,", stats.value_queries, "value queries")
