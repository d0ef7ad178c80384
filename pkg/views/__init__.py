from views.pipeline import pipeline
from views.stages import generate, partition, metagraph, simulate, validate, report

COMMANDS = [generate, partition, metagraph, simulate, validate, report, pipeline]
