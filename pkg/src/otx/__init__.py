"""Regular string-to-string transducers with origin semantics."""

from .canonical import Verdict, Witness, canonical_equal, canonize, two_part_shapes
from .characteristic import (CharTable, canonical_table, char_table, lookaround_char_table,
                             minimize_table, sst_char_table, table_eval, table_lookup,
                             twoway_char_table)
from .core import (Alphabet, Block, FactoredOutput, OriginString, SourceColoring,
                   abstract_blocks, characteristic_values, factorize, otimes_merge)
from .decisions import (bounded_equivalent, classify, equivalent, is_first_order,
                        is_one_way_deterministic, is_order_preserving)
from .errors import *  # noqa: F401,F403
from .learning import (decode_table, learn_transducer, lf_dfa, lstar, make_machine_teacher)
from .machines import (Concat, Create, LookaroundTransducer, StreamingTransducer,
                       TwoWayStep, TwoWayTransducer, evaluate, factored_eval,
                       lookaround_eval, sst_eval, twoway_eval)
from .serialize import dumps, fixture_names, load_machine, machine_from_dict, save_machine

__version__ = "0.1.0"
