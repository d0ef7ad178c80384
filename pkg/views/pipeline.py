import click

from utils.run_store.config import RunConfig
from utils.run_store.stages import StageWorker
from views.options import UsageErrors, config_options
from views.stages import exit_on_failed_claims


@click.command()
@config_options(needs_input=True)
def pipeline(config: RunConfig):
    """generate -> partition -> metagraph -> simulate -> validate -> report 를 한번에 실행"""
    with UsageErrors():
        results = StageWorker(config)()
    report = results['validate']
    click.echo(report.to_text())
    exit_on_failed_claims(report)
