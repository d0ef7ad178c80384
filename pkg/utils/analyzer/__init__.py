from utils.analyzer.report import Check, BoundsReport, holds
from utils.analyzer.cost import ExpectedCost, expected_cost
from utils.analyzer.validate import check_provenance, hash_cut_expectation, validate
from utils.analyzer.correlation import CorrelationRun, CorrelationReport, spearman, correlation_report, \
    correlation_suite
