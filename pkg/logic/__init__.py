"""Threshold language L and friendship language L′: syntax and semantics."""
from logic.checker import ModelChecker, SubsetOracle, eval_subset_oracle, evaluate, extension
from logic.formula import Formula, to_text
from logic.parser import parse

__all__ = [
    "Formula",
    "ModelChecker",
    "SubsetOracle",
    "eval_subset_oracle",
    "evaluate",
    "extension",
    "parse",
    "to_text",
]
