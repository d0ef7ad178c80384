import click

from utils.metagraph import meta_degree_cdf
from utils.partitioner import partition_sizes
from utils.run_store.config import RunConfig
from utils.run_store.stages import run_stage
from views.options import UsageErrors, config_options


def exit_on_failed_claims(report):
    """
    검증에 실패한 claim 이 있으면 claim id 를 알려주고 exit 1
    """
    failures = report.failures()
    if failures:
        claim_ids = sorted({check.claim_id for check in failures})
        click.echo(f"validation failed: {', '.join(claim_ids)}", err=True)
        click.get_current_context().exit(1)


@click.command()
@config_options(needs_input=True)
def generate(config: RunConfig):
    """그래프를 생성하거나 읽어서 graph.edges 로 저장"""
    with UsageErrors():
        g = run_stage(config, 'generate')
    click.echo(f"graph: n={g.n} m={g.edge_count}")


@click.command()
@config_options()
def partition(config: RunConfig):
    """graph.edges 를 DP/FP/HP/HA 로 분할"""
    with UsageErrors():
        layout = run_stage(config, 'partition')
    click.echo(f"{layout.strategy}: p={layout.p} sizes={partition_sizes(layout)}"
               + (' (over balance)' if layout.over_balance else ''))


@click.command()
@config_options()
def metagraph(config: RunConfig):
    """분할에서 meta-graph 를 만들고 요약 통계를 남긴다."""
    with UsageErrors():
        mg = run_stage(config, 'metagraph')
    click.echo(f"meta-graph: q={mg.q} meta_edges={len(mg.meta_edges)}"
               f" max_meta_degree={meta_degree_cdf(mg).max_degree}")


@click.command()
@config_options()
def simulate(config: RunConfig):
    """PageRank / BFS 를 vertex, subgraph 모델로 시뮬레이션"""
    with UsageErrors():
        bundle = run_stage(config, 'simulate')
    for name, metrics in bundle.runs():
        click.echo(f"{name}: supersteps={metrics.total_supersteps} physical={metrics.total_physical}"
                   f" makespan={metrics.makespan_estimate}")


@click.command()
@config_options()
def validate(config: RunConfig):
    """저장된 결과물로 항등식/부등식을 검사한다."""
    with UsageErrors():
        report = run_stage(config, 'validate')
    click.echo(report.to_text())
    exit_on_failed_claims(report)


@click.command()
@config_options()
def report(config: RunConfig):
    """전략별 요약 표와 비용 예측 상관관계"""
    with UsageErrors():
        rows, correlation = run_stage(config, 'report')
    click.echo(f"table rows: {len(rows)}, spearman rho={correlation.rho:.4f}"
               f" ({'PASS' if correlation.passed else 'below target'})")
