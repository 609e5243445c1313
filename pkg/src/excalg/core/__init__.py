from .field import QQ, GF, Field, Fp, ConfigError, parse_field
from .exact import FMat, stack, concat, vec
from .linalg import (nullspace, rank, span_rank, matrix, inverse, solve_square,
                     Coordinatizer, NotInSpan, LinAlgError, greedy_rows,
                     greedy_stream)
