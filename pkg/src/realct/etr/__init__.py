"""Existential theory of the reals: formulas, constraint systems and reduction passes."""
from .formula import (CLOSED_CUBE, OPEN_CUBE, And, Atom, Formula, Not, Or, eval_formula,
                      format_node, nnf, parse_formula)
from .passes import (CompactParams, am_to_uninv, chain_length, threecol_to_etr, to_am,
                     to_bounded, to_compact, to_equations)
from .polynomial import Polynomial
from .systems import Add, AMSystem, INVSystem, Inv, Mul, One, check_system, parse_system
from .trace import (BACKWARD, FORWARD, PassTrace, bounded_enclosures, bounded_f,
                    bounded_preimage, map_solution)
