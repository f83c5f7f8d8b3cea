"""Census pipeline, property suites and the command line."""

from .census import CensusResult, format_table, run_census
from .report import AnalysisReport, PropertyFailure, analyze
