from .joint import (Configuration, JointTable, Shape, SubsetMask, all_subsets, config_of, index_of,
                    make_joint, marginalize, relabel)
from .processes import (ProcessSpec, build_process, giant_bit_process, independent_uniform,
                        known_state, modulo_process, random_simplex)
from .utils import format_joint, read_joint, read_transition, write_joint
