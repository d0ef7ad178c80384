import logging

import click

from views import COMMANDS


def __set_logging(verbose: bool, log_file: str):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        filename=log_file,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


@click.group()
@click.option('-v', '--verbose', is_flag=True, help='DEBUG 로그까지 출력')
@click.option('--log-file', default=None, type=click.Path(dir_okay=False), help='로그를 파일로 남긴다.')
def cli(verbose: bool, log_file: str):
    """meta-graph 분석 툴킷"""
    __set_logging(verbose, log_file)


def __set_commands(group: click.Group):
    for command in COMMANDS:
        group.add_command(command)


def get_cli() -> click.Group:
    __set_commands(cli)
    return cli


def main():
    get_cli()()


if __name__ == '__main__':
    main()
