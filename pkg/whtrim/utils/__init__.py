"""
Utility modules for whtrim.
"""

from whtrim.utils.csv_output import (
    GROWTH_HEADER,
    HISTORY_HEADER,
    SWEEP_HEADER,
    VERIFY_HEADER,
    format_bound,
    format_growth,
    growth_row,
    history_rows,
    sweep_row,
    to_csv,
    verify_row,
)
from whtrim.utils.generator import MissStrategy, PairGenerator, generate_pair
from whtrim.utils.json_output import JSONOutput, build_success, verify_success
from whtrim.utils.pairs import PairFormatError, dump_pair, load_pair, parse_pair, save_pair

__all__ = [
    "GROWTH_HEADER",
    "HISTORY_HEADER",
    "SWEEP_HEADER",
    "VERIFY_HEADER",
    "JSONOutput",
    "MissStrategy",
    "PairFormatError",
    "PairGenerator",
    "build_success",
    "dump_pair",
    "format_bound",
    "format_growth",
    "generate_pair",
    "growth_row",
    "history_rows",
    "load_pair",
    "parse_pair",
    "save_pair",
    "sweep_row",
    "to_csv",
    "verify_row",
    "verify_success",
]
